#pragma once

#include <cstddef>
#include <vector>

#include "cclab/matrix.hpp"
#include "cclab/tolerance.hpp"

namespace cclab {

// One clustered eigenspace. For a single matrix `values` has one entry; for
// a commuting family it holds the eigenvalue of every family member on this
// space. The projector is symmetric and idempotent, distinct projectors are
// mutually orthogonal, and all projectors of a decomposition sum to I.
struct EigenSpace {
    std::vector<double> values;
    std::size_t multiplicity = 0;
    Matrix projector;

    double value() const { return values.front(); }
};

struct EigenDecomposition {
    std::vector<EigenSpace> spaces;

    std::size_t dimension() const;
    // Sum of values[member] * projector over all spaces.
    Matrix reconstruct(std::size_t member = 0) const;
};

// Spectral decomposition of a symmetric matrix with eigenvalue clustering.
// Cyclic Jacobi rotations in a fixed sweep order make the result
// reproducible bit for bit across runs. Eigenvalues are merged when
// |a - b| <= eps * (1 + max(|a|,|b|)) and reported in decreasing order.
EigenDecomposition sym_eigen(const Matrix& m, const Tolerance& tol = {});

// Common refinement of a family of pairwise commuting symmetric matrices:
// the minimal idempotents E with E*M*E = theta_M * E for every member M,
// each labelled with its eigenvalue vector across the family. Spaces are
// ordered lexicographically by decreasing label vector.
EigenDecomposition common_eigen(const std::vector<Matrix>& family, const Tolerance& tol = {});

// Dimension of the linear span of equally shaped matrices, each flattened to
// a vector. Integer families are ranked by exact fraction-free elimination;
// otherwise the singular values sigma of the flattened family are computed
// by one-sided Jacobi and values above eps * sigma_max are counted. The
// empty family has dimension 0.
std::size_t span_dimension(const std::vector<Matrix>& family, const Tolerance& tol = {});

} // namespace cclab
