#pragma once

#include <cstddef>
#include <vector>

#include "cclab/matrix.hpp"
#include "cclab/relations.hpp"
#include "cclab/tolerance.hpp"

namespace cclab {

// Two-fibre block model: X relations on the point side beta, Y relations on
// the block side gamma, and the cross relations N from beta to gamma. X[0]
// and Y[0] are identities; transposes of the N are implied, never stored.
// N[h] holds the relation usually written N_{h+1}.
struct BipartiteConfig {
    std::size_t beta_size = 0;
    std::size_t gamma_size = 0;
    std::vector<Matrix> X;
    std::vector<Matrix> Y;
    std::vector<Matrix> N;

    std::size_t t_beta() const { return X.size() - 1; }
    std::size_t t_gamma() const { return Y.size() - 1; }
    std::size_t t_cross() const { return N.size(); }

    // Throws StructuralError when shapes or 01-ness are off.
    void validate_shapes() const;
};

// Checks, in order: C1 (X0 and Y0 are identities), C2 (each of the three
// families partitions its all-ones block), C3 (every X_i and Y_j is
// symmetric), C4 (the Gram products of the N commute: N_i N_j^T = N_j N_i^T
// and N_i^T N_j = N_j^T N_i), C5 (every composable product lies in the exact
// integer span of the family) and C6 (the Gram products together with I span
// the full within-fibre span on each side). All verdicts are exact.
VerificationReport verify_bcc(const BipartiteConfig& bc, const Tolerance& tol = {});

// Span bookkeeping behind the C6 verdict. `with_identity` is the dimension
// of span({N_i N_j^T} ∪ {I}) (resp. the gamma-side Grams), `without_identity`
// drops I, and `relations` is the dimension the side must reach.
struct SpanReport {
    struct Side {
        std::size_t with_identity = 0;
        std::size_t without_identity = 0;
        std::size_t relations = 0;
        bool deficit = false;
    };
    Side beta;
    Side gamma;

    bool any_deficit() const { return beta.deficit || gamma.deficit; }
};

SpanReport hobart_diagnostic(const BipartiteConfig& bc);

// Shortcut from the spectral theory: a fibre-symmetric two-fibre
// configuration of type (t+1, t; t+1) whose spectral basis exists is always
// a bipartite coherent configuration, so the C6 span test may be skipped.
// `spectral_ok` asserts that the basis construction succeeded upstream.
bool check_t1tt1_shortcut(const CoherentConfig& cc, bool spectral_ok);

// Splits a two-fibre configuration into its block model. Throws BuildError
// when the (1,0) relations are not exactly the transposes of the (0,1)
// relations in matching index order.
BipartiteConfig from_coherent(const CoherentConfig& cc);

} // namespace cclab
