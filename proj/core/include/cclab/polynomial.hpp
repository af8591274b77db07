#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cclab/bipartite.hpp"
#include "cclab/builders.hpp"
#include "cclab/matrix.hpp"
#include "cclab/parameters.hpp"
#include "cclab/relations.hpp"
#include "cclab/scheme.hpp"
#include "cclab/tolerance.hpp"

namespace cclab {

struct RelationRef {
    std::size_t source = 0;
    std::size_t target = 0;
    std::size_t index = 0;

    bool within() const { return source == target; }
    std::string name() const;
    bool operator==(const RelationRef&) const = default;
};

// Eigen data of one row of a configuration: every relation whose source is
// the given fibre, together with its eigenvalue column over the row's
// spectral idempotents (cross columns zero-padded up to the within-fibre
// idempotent count).
struct RowSystem {
    std::size_t fibre = 0;
    bool two_fibre = false;
    std::vector<RelationRef> relations;
    std::vector<Matrix> matrices;
    std::vector<std::vector<double>> eigencolumns;
};

RowSystem row_system(const BipartiteConfig& bc, const EigenSystem& es, std::size_t fibre);
RowSystem row_system(const CoherentConfig& one_fibre, const SchemeSystem& ss);

// A successful detection: the ordering M_0..M_t of the row, the eigenvalue
// vector theta of M_1, and one monomial coefficient vector per position
// with nu[h] of degree exactly h and nu[h](theta_r) equal to the eigenvalue
// of M_h on idempotent r.
struct PPolyCertificate {
    std::size_t fibre = 0;
    bool two_fibre = false;
    std::vector<RelationRef> ordering;
    std::vector<double> theta;
    std::vector<std::vector<double>> nu;
};

struct PPolyRefutation {
    RelationRef candidate;
    std::size_t step = 0;
    std::string reason;
};

struct PPolyOutcome {
    std::optional<PPolyCertificate> certificate;
    std::vector<PPolyRefutation> refutations;

    bool success() const { return certificate.has_value(); }
};

// Tries every non-identity relation of the row as M_1. The ordering is
// forced step by step: the next relation is the unique unconsumed one whose
// support meets the product of M_1 with the previous pick, and its
// eigenvalue column must be matched by a polynomial of degree exactly h
// (even/odd in the alternating two-fibre pattern). Candidates whose forcing
// fails are refuted with the failing step.
PPolyOutcome detect_p_polynomial(const RowSystem& row, const Tolerance& tol = {});

enum class GraphClass {
    distance_regular,
    distance_biregular,
};

std::string to_string(GraphClass c);

// Reads the certificate pattern (all within-fibre on a one-fibre
// configuration versus alternating on a two-fibre one) and validates it by
// rebuilding the configuration from the distance partition of the
// designated adjacency relation, comparing relation by relation. A pattern
// matching neither class, or a rebuild mismatch, throws std::logic_error.
GraphClass classify(const CoherentConfig& cc, const PPolyCertificate& cert,
                    const Tolerance& tol = {});

// The four polynomial sequences of a distance-biregular graph, as monomial
// coefficient vectors: p_beta[i] maps the point-side Gram matrix to the
// distance-2i matrix X_i, i_beta[h] times N_1 gives N_{h+1}; likewise on
// the block side.
struct DBRGSequences {
    std::vector<std::vector<double>> p_beta, i_beta, p_gamma, i_gamma;
};

struct DBRGOutcome {
    std::optional<DBRGSequences> sequences;
    std::string failure;

    bool success() const { return sequences.has_value(); }
};

DBRGOutcome dbrg_sequences(const BipartiteGraph& g, const Tolerance& tol = {});

// Dual detection on one block: columns of Q are spectral idempotents, rows
// are relations. Position 0 must be the all-ones column; every other
// idempotent is tried as E_1 (its column must take distinct values), and
// the rest are ordered greedily by minimal interpolation degree.
struct QPolyCertificate {
    std::vector<std::size_t> ordering;
    std::vector<std::vector<double>> nubar;
};

struct QPolyOutcome {
    std::optional<QPolyCertificate> certificate;
    std::vector<std::string> refutations;

    bool success() const { return certificate.has_value(); }
};

// Throws UnsupportedError when the block has more than nine idempotents.
QPolyOutcome detect_q_polynomial(const Matrix& q, const Tolerance& tol = {});

double poly_eval(const std::vector<double>& coeffs, double x);

} // namespace cclab
