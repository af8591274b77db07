#pragma once

namespace cclab {

// Relative tolerance for eigenvalue clustering and residual checks. Axiom
// verdicts on integer matrices never consult it; only spectral quantities do.
struct Tolerance {
    double eps = 1e-8;
};

} // namespace cclab
