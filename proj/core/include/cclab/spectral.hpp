#pragma once

#include <cstddef>
#include <vector>

#include "cclab/bipartite.hpp"
#include "cclab/matrix.hpp"
#include "cclab/relations.hpp"
#include "cclab/tolerance.hpp"

namespace cclab {

// The second basis of a bipartite coherent configuration: symmetric
// idempotents L_r on beta and R_r on gamma, and rectangular blocks D_r
// pairing the first t_tilde+1 of each (D_r D_r^T = L_r, D_r^T D_r = R_r).
// L_0 = J/|beta|, R_0 = J/|gamma|, D_0 = J/sqrt(|beta||gamma|); the L sum to
// I_beta and the R to I_gamma. Triples are ordered by decreasing eigenvalue
// of N_1 N_1^T, which puts the all-ones triple first; a kernel idempotent
// without a D block, when present, sits last in its list.
struct SpectralBasis {
    std::vector<Matrix> L;
    std::vector<Matrix> R;
    std::vector<Matrix> D;

    // Eigenvalue of N_1 N_1^T attached to each L_r.
    std::vector<double> l_labels;
    // Signed eigenvalue vector of each D_r across N_1..N_t; the sign of D_r
    // is fixed so that the first nonzero entry is positive.
    std::vector<std::vector<double>> d_theta;

    std::size_t t_tilde() const { return D.size() - 1; }
    std::size_t basis_count() const { return L.size() + R.size() + 2 * D.size(); }
};

// Builds the basis from the common eigenspaces of the assembled bipartite
// forms of N_1..N_t together with I. Throws StructuralError when the family
// fails to commute (a C4 violation upstream) and BuildError when the basis
// cardinality disagrees with the relation count, which signals that the
// input is not a genuine bipartite coherent configuration.
SpectralBasis build_spectral_basis(const BipartiteConfig& bc, const Tolerance& tol = {});

// B1: the index-0 elements are the normalized all-ones matrices. B2: each
// block of the basis is independent and lies in the span of its relation
// family. B3: the within-fibre idempotents are symmetric. B4: all composable
// products of the embedded basis elements collapse by Kronecker deltas.
// Failures carry the max residual; nothing is thrown.
VerificationReport verify_suda_conditions(const SpectralBasis& sb, const BipartiteConfig& bc,
                                          const Tolerance& tol = {});

} // namespace cclab
