#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "cclab/matrix.hpp"
#include "cclab/relations.hpp"
#include "cclab/tolerance.hpp"

namespace cclab {

// Spectral data of a one-fibre configuration whose relations are symmetric
// and commute (a symmetric association scheme): the minimal idempotents
// E_0 = J/n, ..., E_t, the eigenmatrix P (row r = idempotent, column i =
// relation), its scaled-inverse dual Q, valencies and multiplicities.
struct SchemeSystem {
    std::vector<Matrix> idempotents;
    Matrix P, Q;
    std::vector<double> valencies;
    std::vector<double> multiplicities;
};

// Throws StructuralError when the configuration has more than one fibre or
// a relation is asymmetric or the family fails to commute, and BuildError
// when the common eigenspace count disagrees with the relation count.
SchemeSystem scheme_system(const CoherentConfig& cc, const Tolerance& tol = {});

// Structure constants of the scheme, each computed two ways: the
// eigenvalue-sum formula and the exact integer product oracle.
struct SchemeTables {
    std::size_t size = 0;                // t + 1
    std::vector<double> formula;         // p_{ij}^h before rounding
    std::vector<double> oracle;          // exact counts
    std::vector<std::string> defects;    // integrality or constancy failures
    double max_round_residual = 0.0;

    double& at(std::vector<double>& cube, std::size_t i, std::size_t j, std::size_t h);
    double formula_at(std::size_t i, std::size_t j, std::size_t h) const;
    double oracle_at(std::size_t i, std::size_t j, std::size_t h) const;
};

SchemeTables scheme_intersection(const CoherentConfig& cc, const SchemeSystem& ss,
                                 double int_tol = 1e-6);

// Krein parameters of the scheme (dual structure constants), with the
// direct Schur-projection residual attached.
struct SchemeKrein {
    std::size_t size = 0;
    std::vector<double> values;
    double cross_check_residual = 0.0;

    double at(std::size_t i, std::size_t j, std::size_t h) const;
};

SchemeKrein scheme_krein(const SchemeSystem& ss, std::size_t ground_size);

} // namespace cclab
