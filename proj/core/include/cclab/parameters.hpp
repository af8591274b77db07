#pragma once

#include <cstddef>
#include <vector>

#include "cclab/bipartite.hpp"
#include "cclab/matrix.hpp"
#include "cclab/spectral.hpp"
#include "cclab/tolerance.hpp"

namespace cclab {

// Eigenvalue tables of a bipartite coherent configuration. P_bg is the
// t_cross x t_cross cross eigenmatrix: row r, column i-1 holds the
// coefficient of D_r in N_i. P_beta and P_gamma are the within-fibre
// eigenmatrices (row r = idempotent, column i = relation). The dual tables
// are the scaled inverses: Q_bg rows are indexed by the cross relations
// (row j-1 for N_j) and columns by the D idempotents; the within-fibre
// duals are laid out likewise. Valencies are exact integer row sums and the
// multiplicities are the idempotent traces.
struct EigenSystem {
    Matrix P_beta, P_gamma, P_bg;
    Matrix Q_beta, Q_gamma, Q_bg;
    std::vector<double> k_beta, k_gamma, k_bg, k_gb;
    std::vector<double> m_beta, m_gamma;
};

// Entries of P are trace projections onto the basis; Q matrices come from
// the inverse expansion, which makes the P*Q identities hold by
// construction and turns their residuals into a diagnostic. Throws
// BuildError (with a condition estimate) if a P matrix is singular.
EigenSystem eigenmatrices(const BipartiteConfig& bc, const SpectralBasis& sb,
                          const Tolerance& tol = {});

struct PqResiduals {
    double cross = 0.0;  // || P_bg Q_bg - sqrt(|beta||gamma|) I ||_inf
    double beta = 0.0;   // || P_beta Q_beta - |beta| I ||_inf
    double gamma = 0.0;  // || P_gamma Q_gamma - |gamma| I ||_inf

    double max() const;
};

PqResiduals check_pq_identity(const EigenSystem& es, std::size_t beta_size,
                              std::size_t gamma_size, const Tolerance& tol = {});

// Multiplicities recomputed along the two dual routes: row 0 of the
// within-fibre dual eigenmatrices, and the valency-weighted squared dual
// eigenvalue sums for the paired indices.
struct MultiplicityCheck {
    std::vector<double> trace_beta, trace_gamma;
    std::vector<double> q_row_beta, q_row_gamma;
    std::vector<double> dual_sum;  // one entry per D index
    double max_deviation = 0.0;
};

MultiplicityCheck multiplicity_from_q(const EigenSystem& es, const BipartiteConfig& bc);

// Gauss-Jordan inverse used for the dual tables; exposed for the scheme
// variant. Throws BuildError when the matrix is singular.
Matrix invert(const Matrix& m, const char* label);

} // namespace cclab
