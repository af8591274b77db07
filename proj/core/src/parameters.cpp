#include "cclab/parameters.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cclab/errors.hpp"

namespace cclab {

Matrix invert(const Matrix& m, const char* label) {
    const std::size_t n = m.rows();
    Matrix a = m;
    Matrix inv = Matrix::identity(n);
    double max_pivot = 0.0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
        const double pv = a(pivot, col);
        if (std::abs(pv) < 1e-12 * (1.0 + m.max_abs())) {
            throw BuildError(std::string(label) + " is singular: pivot " + std::to_string(pv) +
                             " at column " + std::to_string(col) + ", condition estimate " +
                             std::to_string(max_pivot / (std::abs(pv) + 1e-300)));
        }
        if (pivot != col) {
            for (std::size_t c = 0; c < n; ++c) {
                std::swap(a(col, c), a(pivot, c));
                std::swap(inv(col, c), inv(pivot, c));
            }
        }
        max_pivot = std::max(max_pivot, std::abs(pv));
        const double scale = 1.0 / a(col, col);
        for (std::size_t c = 0; c < n; ++c) {
            a(col, c) *= scale;
            inv(col, c) *= scale;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const double f = a(r, col);
            if (f == 0.0) continue;
            for (std::size_t c = 0; c < n; ++c) {
                a(r, c) -= f * a(col, c);
                inv(r, c) -= f * inv(col, c);
            }
        }
    }
    return inv;
}

EigenSystem eigenmatrices(const BipartiteConfig& bc, const SpectralBasis& sb, const Tolerance&) {
    EigenSystem es;
    const double b = static_cast<double>(bc.beta_size);
    const double g = static_cast<double>(bc.gamma_size);

    for (const Matrix& l : sb.L) es.m_beta.push_back(l.trace());
    for (const Matrix& r : sb.R) es.m_gamma.push_back(r.trace());
    for (const Matrix& x : bc.X) es.k_beta.push_back(x.row_sum(0));
    for (const Matrix& y : bc.Y) es.k_gamma.push_back(y.row_sum(0));
    for (const Matrix& n : bc.N) {
        es.k_bg.push_back(n.row_sum(0));
        es.k_gb.push_back(n.col_sum(0));
    }

    const std::size_t nb = sb.L.size();
    es.P_beta = Matrix(nb, nb);
    for (std::size_t r = 0; r < nb; ++r)
        for (std::size_t i = 0; i < nb; ++i)
            es.P_beta(r, i) = (sb.L[r] * bc.X[i]).trace() / es.m_beta[r];

    const std::size_t ng = sb.R.size();
    es.P_gamma = Matrix(ng, ng);
    for (std::size_t r = 0; r < ng; ++r)
        for (std::size_t i = 0; i < ng; ++i)
            es.P_gamma(r, i) = (sb.R[r] * bc.Y[i]).trace() / es.m_gamma[r];

    const std::size_t nc = sb.D.size();
    es.P_bg = Matrix(nc, nc);
    for (std::size_t r = 0; r < nc; ++r) {
        const double norm = (sb.D[r].transpose() * sb.D[r]).trace();
        for (std::size_t i = 0; i < nc; ++i)
            es.P_bg(r, i) = (sb.D[r].transpose() * bc.N[i]).trace() / norm;
    }

    es.Q_beta = b * invert(es.P_beta, "P_beta");
    es.Q_gamma = g * invert(es.P_gamma, "P_gamma");
    es.Q_bg = std::sqrt(b * g) * invert(es.P_bg, "P_bg");
    return es;
}

double PqResiduals::max() const {
    return std::max(cross, std::max(beta, gamma));
}

PqResiduals check_pq_identity(const EigenSystem& es, std::size_t beta_size,
                              std::size_t gamma_size, const Tolerance&) {
    PqResiduals res;
    const double b = static_cast<double>(beta_size);
    const double g = static_cast<double>(gamma_size);
    res.cross = (es.P_bg * es.Q_bg)
                    .max_abs_diff(std::sqrt(b * g) * Matrix::identity(es.P_bg.rows()));
    res.beta = (es.P_beta * es.Q_beta).max_abs_diff(b * Matrix::identity(es.P_beta.rows()));
    res.gamma = (es.P_gamma * es.Q_gamma).max_abs_diff(g * Matrix::identity(es.P_gamma.rows()));
    return res;
}

MultiplicityCheck multiplicity_from_q(const EigenSystem& es, const BipartiteConfig& bc) {
    MultiplicityCheck mc;
    mc.trace_beta = es.m_beta;
    mc.trace_gamma = es.m_gamma;
    for (std::size_t i = 0; i < es.Q_beta.cols(); ++i)
        mc.q_row_beta.push_back(es.Q_beta(0, i));
    for (std::size_t i = 0; i < es.Q_gamma.cols(); ++i)
        mc.q_row_gamma.push_back(es.Q_gamma(0, i));

    const double g = static_cast<double>(bc.gamma_size);
    for (std::size_t h = 0; h < es.Q_bg.cols(); ++h) {
        double sum = 0.0;
        for (std::size_t j = 0; j < es.Q_bg.rows(); ++j)
            sum += es.Q_bg(j, h) * es.Q_bg(j, h) * es.k_bg[j];
        mc.dual_sum.push_back(sum / g);
    }

    double dev = 0.0;
    for (std::size_t i = 0; i < mc.q_row_beta.size(); ++i)
        dev = std::max(dev, std::abs(mc.q_row_beta[i] - mc.trace_beta[i]));
    for (std::size_t i = 0; i < mc.q_row_gamma.size(); ++i)
        dev = std::max(dev, std::abs(mc.q_row_gamma[i] - mc.trace_gamma[i]));
    for (std::size_t h = 0; h < mc.dual_sum.size(); ++h)
        dev = std::max(dev, std::abs(mc.dual_sum[h] - mc.trace_beta[h]));
    mc.max_deviation = dev;
    return mc;
}

} // namespace cclab
