#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cclab/matrix.hpp"
#include "cclab/tolerance.hpp"

namespace cclab {

// Contiguous layout of the ground set into fibres: fibre i occupies indices
// [offsets[i], offsets[i] + sizes[i]).
struct FibrePartition {
    std::vector<std::size_t> sizes;
    std::vector<std::size_t> offsets;

    static FibrePartition from_sizes(std::vector<std::size_t> sizes);

    std::size_t count() const { return sizes.size(); }
    std::size_t ground_size() const;
};

// One relation matrix A_r of the block (source, target). Diagonal blocks
// index from 0 (with index 0 the identity), off-diagonal blocks from 1.
struct Relation {
    std::size_t source = 0;
    std::size_t target = 0;
    std::size_t index = 0;
    Matrix matrix;

    std::string name() const;
};

class CoherentConfig {
public:
    CoherentConfig() = default;
    // Canonicalizes (sorts relations by block and index) and validates
    // shapes, 01-ness and contiguous indexing; throws StructuralError.
    CoherentConfig(FibrePartition fibres, std::vector<Relation> relations);

    const FibrePartition& fibres() const { return fibres_; }
    const std::vector<Relation>& relations() const { return relations_; }

    // t_ij: the largest relation index in block (i,j); the diagonal block
    // (i,i) holds t_ii + 1 relations, an off-diagonal one t_ij.
    std::size_t block_count(std::size_t i, std::size_t j) const;
    std::vector<const Relation*> block(std::size_t i, std::size_t j) const;
    const Relation* find(std::size_t i, std::size_t j, std::size_t index) const;

private:
    FibrePartition fibres_;
    std::vector<Relation> relations_;
};

struct CheckResult {
    std::string condition;
    bool pass = true;
    std::string witness;
    double residual = 0.0;
};

struct VerificationReport {
    std::vector<CheckResult> checks;

    bool pass() const;
    const CheckResult* find(std::string_view condition) const;
};

// Table of relation counts per fibre pair: t_ii + 1 on the diagonal, t_ij
// off it. Rendered as the usual symbol, e.g. "(2 2; 3)".
struct TypeMatrix {
    std::vector<std::vector<std::size_t>> counts;

    bool is_symmetric() const;
    std::string symbol() const;
};

// Checks A1 (identity split), A2 (each block partitions the all-ones
// matrix), A3 (transpose closure) and A4 (all pairwise products stay in the
// integer span of the family). Everything is exact integer arithmetic.
VerificationReport verify_axioms(const CoherentConfig& cc, const Tolerance& tol = {});

// True iff every diagonal-block relation matrix is symmetric.
bool is_fibre_symmetric(const CoherentConfig& cc);

TypeMatrix type_of(const CoherentConfig& cc);

// The A3 pairing: for each relation, the index of its transpose partner in
// the opposite block. Empty optional when the partner is missing.
std::vector<std::optional<std::size_t>> transpose_closure_map(const CoherentConfig& cc);

} // namespace cclab
