#include "cclab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "cclab/eigen.hpp"
#include "cclab/errors.hpp"

namespace cclab {

namespace {

Matrix embed_bipartite(const Matrix& n, std::size_t b, std::size_t g) {
    Matrix a(b + g, b + g);
    for (std::size_t i = 0; i < b; ++i)
        for (std::size_t j = 0; j < g; ++j) {
            a(i, b + j) = n(i, j);
            a(b + j, i) = n(i, j);
        }
    return a;
}

Matrix block(const Matrix& m, std::size_t row0, std::size_t rows, std::size_t col0,
             std::size_t cols) {
    Matrix out(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) out(i, j) = m(row0 + i, col0 + j);
    return out;
}

bool close(double a, double b, double eps) {
    return std::abs(a - b) <= eps * (1.0 + std::max(std::abs(a), std::abs(b)));
}

struct Triple {
    std::vector<double> theta;
    Matrix l, d, r;
    bool perron = false;
};

} // namespace

SpectralBasis build_spectral_basis(const BipartiteConfig& bc, const Tolerance& tol) {
    bc.validate_shapes();
    const std::size_t b = bc.beta_size;
    const std::size_t g = bc.gamma_size;
    const std::size_t t = bc.t_cross();

    std::vector<Matrix> family;
    family.reserve(t + 1);
    for (const Matrix& n : bc.N) family.push_back(embed_bipartite(n, b, g));
    family.push_back(Matrix::identity(b + g));

    // Throws when the embedded family fails to commute, i.e. C4 is violated.
    const EigenDecomposition dec = common_eigen(family, tol);

    double theta_scale = 0.0;
    for (const EigenSpace& s : dec.spaces)
        for (std::size_t k = 0; k < t; ++k) theta_scale = std::max(theta_scale, std::abs(s.values[k]));
    const double zero_thresh = tol.eps * (1.0 + theta_scale);

    // Pair every eigenspace with its sign flip: conjugating by
    // diag(I_beta, -I_gamma) negates every cross eigenvalue.
    const std::size_t count = dec.spaces.size();
    std::vector<std::size_t> partner(count, count);
    for (std::size_t i = 0; i < count; ++i) {
        for (std::size_t j = 0; j < count; ++j) {
            bool negated = true;
            for (std::size_t k = 0; k < t && negated; ++k)
                negated = close(dec.spaces[i].values[k], -dec.spaces[j].values[k], tol.eps);
            if (negated) {
                partner[i] = j;
                break;
            }
        }
        if (partner[i] == count) {
            throw BuildError("spectral basis: eigenspace " + std::to_string(i) +
                             " has no sign-flip partner");
        }
    }

    std::vector<Triple> triples;
    std::vector<Matrix> kernel_l, kernel_r;
    for (std::size_t i = 0; i < count; ++i) {
        const EigenSpace& space = dec.spaces[i];
        if (partner[i] == i) {
            // The common kernel is flip-invariant and splits into pure
            // beta and gamma parts; either block may be absent.
            const Matrix lb = block(space.projector, 0, b, 0, b);
            const Matrix rb = block(space.projector, b, g, b, g);
            if (!lb.is_zero(zero_thresh)) kernel_l.push_back(lb);
            if (!rb.is_zero(zero_thresh)) kernel_r.push_back(rb);
            continue;
        }
        if (partner[i] < i) continue;

        // Pick the representative whose first nonzero eigenvalue is
        // positive; this pins the sign of D_r.
        bool take_this = true;
        for (std::size_t k = 0; k < t; ++k) {
            if (std::abs(space.values[k]) > zero_thresh) {
                take_this = space.values[k] > 0.0;
                break;
            }
        }
        const EigenSpace& rep = take_this ? space : dec.spaces[partner[i]];

        Triple tr;
        tr.theta.assign(rep.values.begin(), rep.values.begin() + static_cast<std::ptrdiff_t>(t));
        tr.l = 2.0 * block(rep.projector, 0, b, 0, b);
        tr.d = 2.0 * block(rep.projector, 0, b, b, g);
        tr.r = 2.0 * block(rep.projector, b, g, b, g);
        const double theta_sum = std::accumulate(tr.theta.begin(), tr.theta.end(), 0.0);
        tr.perron = close(theta_sum, std::sqrt(static_cast<double>(b * g)), tol.eps);
        triples.push_back(std::move(tr));
    }

    std::stable_sort(triples.begin(), triples.end(), [&](const Triple& a, const Triple& c) {
        if (a.perron != c.perron) return a.perron;
        for (std::size_t k = 0; k < t; ++k) {
            const double ak = a.theta[k] * a.theta[k];
            const double ck = c.theta[k] * c.theta[k];
            if (!close(ak, ck, tol.eps)) return ak > ck;
        }
        for (std::size_t k = 0; k < t; ++k) {
            if (!close(a.theta[k], c.theta[k], tol.eps)) return a.theta[k] > c.theta[k];
        }
        return false;
    });

    SpectralBasis sb;
    for (Triple& tr : triples) {
        sb.l_labels.push_back(tr.theta.empty() ? 0.0 : tr.theta[0] * tr.theta[0]);
        sb.d_theta.push_back(std::move(tr.theta));
        sb.L.push_back(std::move(tr.l));
        sb.D.push_back(std::move(tr.d));
        sb.R.push_back(std::move(tr.r));
    }
    for (Matrix& m : kernel_l) {
        sb.L.push_back(std::move(m));
        sb.l_labels.push_back(0.0);
    }
    for (Matrix& m : kernel_r) sb.R.push_back(std::move(m));

    const std::size_t relation_count = (bc.t_beta() + 1) + (bc.t_gamma() + 1) + 2 * t;
    if (sb.L.size() != bc.t_beta() + 1 || sb.R.size() != bc.t_gamma() + 1 ||
        sb.D.size() != t) {
        throw BuildError(
            "spectral basis cardinality " + std::to_string(sb.basis_count()) + " (" +
            std::to_string(sb.L.size()) + " L, " + std::to_string(sb.R.size()) + " R, " +
            std::to_string(sb.D.size()) + " D) does not match the relation count " +
            std::to_string(relation_count) + "; the input is not a bipartite coherent configuration");
    }
    return sb;
}

namespace {

// Best approximation of `m` inside the span of a disjointly supported
// 01-family, and the residual left over.
double span_residual(const Matrix& m, const std::vector<Matrix>& family) {
    Matrix recon(m.rows(), m.cols());
    for (const Matrix& f : family) {
        const double support = f.sum();
        if (support == 0.0) continue;
        const double coeff = m.schur(f).sum() / support;
        recon += coeff * f;
    }
    return m.max_abs_diff(recon);
}

} // namespace

VerificationReport verify_suda_conditions(const SpectralBasis& sb, const BipartiteConfig& bc,
                                          const Tolerance& tol) {
    VerificationReport report;
    const double b = static_cast<double>(bc.beta_size);
    const double g = static_cast<double>(bc.gamma_size);
    const double thresh = tol.eps;

    // B1: index-0 blocks are the normalized all-ones matrices.
    {
        CheckResult c{"B1", true, "", 0.0};
        double res = sb.L[0].max_abs_diff((1.0 / b) * Matrix::ones(bc.beta_size, bc.beta_size));
        res = std::max(res,
                       sb.R[0].max_abs_diff((1.0 / g) * Matrix::ones(bc.gamma_size, bc.gamma_size)));
        res = std::max(res, sb.D[0].max_abs_diff((1.0 / std::sqrt(b * g)) *
                                                 Matrix::ones(bc.beta_size, bc.gamma_size)));
        c.residual = res;
        c.pass = res <= thresh;
        if (!c.pass) c.witness = "index-0 basis elements deviate from normalized all-ones";
        report.checks.push_back(std::move(c));
    }

    // B2: per block, the basis is independent and spans the relation span.
    {
        CheckResult c{"B2", true, "", 0.0};
        double res = 0.0;
        for (const Matrix& m : sb.L) res = std::max(res, span_residual(m, bc.X));
        for (const Matrix& m : sb.R) res = std::max(res, span_residual(m, bc.Y));
        for (const Matrix& m : sb.D) res = std::max(res, span_residual(m, bc.N));
        c.residual = res;
        const std::size_t dim_l = span_dimension(sb.L, tol);
        const std::size_t dim_r = span_dimension(sb.R, tol);
        const std::size_t dim_d = span_dimension(sb.D, tol);
        if (dim_l != sb.L.size() || dim_r != sb.R.size() || dim_d != sb.D.size()) {
            c.pass = false;
            c.witness = "basis blocks are linearly dependent";
        } else if (res > thresh) {
            c.pass = false;
            c.witness = "basis element leaves the span of its relation block";
        }
        report.checks.push_back(std::move(c));
    }

    // B3: transpose symmetry of the within-fibre idempotents.
    {
        CheckResult c{"B3", true, "", 0.0};
        double res = 0.0;
        for (const Matrix& m : sb.L) res = std::max(res, m.max_abs_diff(m.transpose()));
        for (const Matrix& m : sb.R) res = std::max(res, m.max_abs_diff(m.transpose()));
        c.residual = res;
        c.pass = res <= thresh;
        if (!c.pass) c.witness = "within-fibre idempotent is not symmetric";
        report.checks.push_back(std::move(c));
    }

    // B4: all composable products collapse by Kronecker deltas.
    {
        CheckResult c{"B4", true, "", 0.0};
        double res = 0.0;
        const std::size_t tt = sb.D.size();
        for (std::size_t r = 0; r < sb.L.size(); ++r) {
            for (std::size_t s = 0; s < sb.L.size(); ++s) {
                Matrix want(bc.beta_size, bc.beta_size);
                if (r == s) want = sb.L[r];
                res = std::max(res, (sb.L[r] * sb.L[s]).max_abs_diff(want));
            }
            for (std::size_t s = 0; s < tt; ++s) {
                Matrix want(bc.beta_size, bc.gamma_size);
                if (r == s) want = sb.D[r];
                res = std::max(res, (sb.L[r] * sb.D[s]).max_abs_diff(want));
            }
        }
        for (std::size_t r = 0; r < sb.R.size(); ++r) {
            for (std::size_t s = 0; s < sb.R.size(); ++s) {
                Matrix want(bc.gamma_size, bc.gamma_size);
                if (r == s) want = sb.R[r];
                res = std::max(res, (sb.R[r] * sb.R[s]).max_abs_diff(want));
            }
        }
        for (std::size_t r = 0; r < tt; ++r) {
            for (std::size_t s = 0; s < sb.R.size(); ++s) {
                Matrix want(bc.beta_size, bc.gamma_size);
                if (r == s) want = sb.D[r];
                res = std::max(res, (sb.D[r] * sb.R[s]).max_abs_diff(want));
            }
            for (std::size_t s = 0; s < tt; ++s) {
                Matrix want_l(bc.beta_size, bc.beta_size);
                Matrix want_r(bc.gamma_size, bc.gamma_size);
                if (r == s) {
                    want_l = sb.L[r];
                    want_r = sb.R[r];
                }
                res = std::max(res, (sb.D[r] * sb.D[s].transpose()).max_abs_diff(want_l));
                res = std::max(res, (sb.D[r].transpose() * sb.D[s]).max_abs_diff(want_r));
            }
        }
        c.residual = res;
        c.pass = res <= thresh;
        if (!c.pass) c.witness = "a basis product deviates from its Kronecker collapse";
        report.checks.push_back(std::move(c));
    }

    return report;
}

} // namespace cclab
