#include "cclab/structure_constants.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace cclab {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

std::string slot(std::size_t a, std::size_t b, std::size_t h) {
    return "(" + std::to_string(a) + "," + std::to_string(b) + ";" + std::to_string(h) + ")";
}

struct CubeWriter {
    std::vector<double>& cube;
    std::size_t size;
    double& at(std::size_t a, std::size_t b, std::size_t h) {
        return cube[(a * size + b) * size + h];
    }
};

// Rounds formula values to integers within int_tol, recording residuals and
// integrality defects.
void store_rounded(CubeWriter w, std::size_t a, std::size_t b, std::size_t h, double value,
                   double int_tol, const char* table, IntersectionTable& out) {
    const double rounded = std::round(value);
    out.max_round_residual = std::max(out.max_round_residual, std::abs(value - rounded));
    if (std::abs(value - rounded) > int_tol) {
        out.defects.push_back(std::string(table) + slot(a, b, h) + " = " +
                              std::to_string(value) + " is not an integer");
        w.at(a, b, h) = value;
    } else {
        w.at(a, b, h) = rounded;
    }
}

// Reads the coefficient of `prod` on the support of each target; the value
// must be constant over every support. Returns the coefficients and appends
// a defect entry with the conflicting coordinates otherwise.
std::vector<double> decompose_on_supports(const Matrix& prod, const std::vector<Matrix>& targets,
                                          const std::string& label,
                                          std::vector<std::string>& defects) {
    std::vector<double> coeffs;
    coeffs.reserve(targets.size());
    for (std::size_t t = 0; t < targets.size(); ++t) {
        const Matrix& target = targets[t];
        double coeff = 0.0;
        bool found = false;
        std::size_t fr = 0, fc = 0;
        bool conflict = false;
        for (std::size_t r = 0; r < prod.rows() && !conflict; ++r) {
            for (std::size_t c = 0; c < prod.cols(); ++c) {
                if (target(r, c) != 1.0) continue;
                if (!found) {
                    coeff = prod(r, c);
                    found = true;
                    fr = r;
                    fc = c;
                } else if (prod(r, c) != coeff) {
                    defects.push_back(label + " is not constant on target " + std::to_string(t) +
                                      ": entry (" + std::to_string(fr) + "," +
                                      std::to_string(fc) + ") = " + std::to_string(coeff) +
                                      " vs (" + std::to_string(r) + "," + std::to_string(c) +
                                      ") = " + std::to_string(prod(r, c)));
                    conflict = true;
                    break;
                }
            }
        }
        coeffs.push_back(coeff);
    }
    return coeffs;
}

} // namespace

bool IntersectionTable::xi_defined(std::size_t a, std::size_t b, std::size_t h) const {
    return !std::isnan(xi_at(a, b, h));
}

bool IntersectionTable::sigma_defined(std::size_t a, std::size_t b, std::size_t h) const {
    return !std::isnan(sigma_at(a, b, h));
}

IntersectionTable intersection_numbers(const BipartiteConfig& bc, const EigenSystem& es,
                                       const Tolerance&, double int_tol) {
    const std::size_t tb = bc.t_beta();
    const std::size_t tg = bc.t_gamma();
    const std::size_t tc = bc.t_cross();
    const double b = static_cast<double>(bc.beta_size);
    const double g = static_cast<double>(bc.gamma_size);

    IntersectionTable out;
    // One shared edge: mixed products take a within-fibre factor from the
    // opposite side, so even slots must reach both t_beta and t_gamma.
    const std::size_t edge = std::max(2 * std::max(tb, tg), 2 * tc - 1) + 1;
    out.xi_size = edge;
    out.sigma_size = edge;
    out.xi.assign(edge * edge * edge, kNan);
    out.sigma.assign(edge * edge * edge, kNan);
    CubeWriter xi{out.xi, out.xi_size};
    CubeWriter sg{out.sigma, out.sigma_size};

    const std::size_t paired = es.P_bg.rows();  // t_tilde + 1

    // Beta side. X_i N_j lands on the odd (cross) slots.
    for (std::size_t i = 0; i <= tb; ++i) {
        for (std::size_t j = 1; j <= tc; ++j) {
            for (std::size_t slot_h = 1; slot_h < out.xi_size; slot_h += 2) {
                const std::size_t h = (slot_h + 1) / 2;
                double value = 0.0;
                if (h <= tc) {
                    for (std::size_t r = 0; r < paired; ++r)
                        value += es.m_beta[r] * es.P_bg(r, h - 1) * es.P_beta(r, i) *
                                 es.P_bg(r, j - 1);
                    value /= b * es.k_bg[h - 1];
                }
                store_rounded(xi, 2 * i, 2 * j - 1, slot_h, value, int_tol, "xi", out);
            }
        }
    }
    // N_i Y_j also lands on the cross slots.
    for (std::size_t i = 1; i <= tc; ++i) {
        for (std::size_t j = 0; j <= tg; ++j) {
            for (std::size_t slot_h = 1; slot_h < out.xi_size; slot_h += 2) {
                const std::size_t h = (slot_h + 1) / 2;
                double value = 0.0;
                if (h <= tc) {
                    for (std::size_t r = 0; r < paired; ++r)
                        value += es.m_gamma[r] * es.P_bg(r, h - 1) * es.P_bg(r, i - 1) *
                                 es.P_gamma(r, j);
                    value /= b * es.k_bg[h - 1];
                }
                store_rounded(xi, 2 * i - 1, 2 * j, slot_h, value, int_tol, "xi", out);
            }
        }
    }
    // X_i X_j lands on the even (within-fibre) slots.
    for (std::size_t i = 0; i <= tb; ++i) {
        for (std::size_t j = 0; j <= tb; ++j) {
            for (std::size_t slot_h = 0; slot_h < out.xi_size; slot_h += 2) {
                const std::size_t h = slot_h / 2;
                double value = 0.0;
                if (h <= tb) {
                    for (std::size_t r = 0; r <= tb; ++r)
                        value += es.m_beta[r] * es.P_beta(r, h) * es.P_beta(r, i) *
                                 es.P_beta(r, j);
                    value /= b * es.k_beta[h];
                }
                store_rounded(xi, 2 * i, 2 * j, slot_h, value, int_tol, "xi", out);
            }
        }
    }
    // N_i N_j^T lands on the even slots.
    for (std::size_t i = 1; i <= tc; ++i) {
        for (std::size_t j = 1; j <= tc; ++j) {
            for (std::size_t slot_h = 0; slot_h < out.xi_size; slot_h += 2) {
                const std::size_t h = slot_h / 2;
                double value = 0.0;
                if (h <= tb) {
                    for (std::size_t r = 0; r < paired; ++r)
                        value += es.m_beta[r] * es.P_beta(r, h) * es.P_bg(r, i - 1) *
                                 es.P_bg(r, j - 1);
                    value /= b * es.k_beta[h];
                }
                store_rounded(xi, 2 * i - 1, 2 * j - 1, slot_h, value, int_tol, "xi", out);
            }
        }
    }

    // Gamma side, with the roles of the fibres flipped.
    for (std::size_t i = 0; i <= tg; ++i) {
        for (std::size_t j = 1; j <= tc; ++j) {
            for (std::size_t slot_h = 1; slot_h < out.sigma_size; slot_h += 2) {
                const std::size_t h = (slot_h + 1) / 2;
                double value = 0.0;
                if (h <= tc) {
                    for (std::size_t r = 0; r < paired; ++r)
                        value += es.m_gamma[r] * es.P_bg(r, h - 1) * es.P_gamma(r, i) *
                                 es.P_bg(r, j - 1);
                    value /= g * es.k_gb[h - 1];
                }
                store_rounded(sg, 2 * i, 2 * j - 1, slot_h, value, int_tol, "sigma", out);
            }
        }
    }
    for (std::size_t i = 1; i <= tc; ++i) {
        for (std::size_t j = 0; j <= tb; ++j) {
            for (std::size_t slot_h = 1; slot_h < out.sigma_size; slot_h += 2) {
                const std::size_t h = (slot_h + 1) / 2;
                double value = 0.0;
                if (h <= tc) {
                    for (std::size_t r = 0; r < paired; ++r)
                        value += es.m_beta[r] * es.P_bg(r, h - 1) * es.P_bg(r, i - 1) *
                                 es.P_beta(r, j);
                    value /= g * es.k_gb[h - 1];
                }
                store_rounded(sg, 2 * i - 1, 2 * j, slot_h, value, int_tol, "sigma", out);
            }
        }
    }
    for (std::size_t i = 0; i <= tg; ++i) {
        for (std::size_t j = 0; j <= tg; ++j) {
            for (std::size_t slot_h = 0; slot_h < out.sigma_size; slot_h += 2) {
                const std::size_t h = slot_h / 2;
                double value = 0.0;
                if (h <= tg) {
                    for (std::size_t r = 0; r <= tg; ++r)
                        value += es.m_gamma[r] * es.P_gamma(r, h) * es.P_gamma(r, i) *
                                 es.P_gamma(r, j);
                    value /= g * es.k_gamma[h];
                }
                store_rounded(sg, 2 * i, 2 * j, slot_h, value, int_tol, "sigma", out);
            }
        }
    }
    for (std::size_t i = 1; i <= tc; ++i) {
        for (std::size_t j = 1; j <= tc; ++j) {
            for (std::size_t slot_h = 0; slot_h < out.sigma_size; slot_h += 2) {
                const std::size_t h = slot_h / 2;
                double value = 0.0;
                if (h <= tg) {
                    for (std::size_t r = 0; r < paired; ++r)
                        value += es.m_gamma[r] * es.P_gamma(r, h) * es.P_bg(r, i - 1) *
                                 es.P_bg(r, j - 1);
                    value /= g * es.k_gamma[h];
                }
                store_rounded(sg, 2 * i - 1, 2 * j - 1, slot_h, value, int_tol, "sigma", out);
            }
        }
    }

    return out;
}

IntersectionTable intersection_oracle(const BipartiteConfig& bc) {
    const std::size_t tb = bc.t_beta();
    const std::size_t tg = bc.t_gamma();
    const std::size_t tc = bc.t_cross();

    IntersectionTable out;
    const std::size_t edge = std::max(2 * std::max(tb, tg), 2 * tc - 1) + 1;
    out.xi_size = edge;
    out.sigma_size = edge;
    out.xi.assign(edge * edge * edge, kNan);
    out.sigma.assign(edge * edge * edge, kNan);
    CubeWriter xi{out.xi, out.xi_size};
    CubeWriter sg{out.sigma, out.sigma_size};

    std::vector<Matrix> nt;
    for (const Matrix& n : bc.N) nt.push_back(n.transpose());

    auto fill = [&](CubeWriter& w, std::size_t wsize, std::size_t a, std::size_t b,
                    const Matrix& prod, const std::vector<Matrix>& targets, bool odd_targets,
                    const std::string& label) {
        const auto coeffs = decompose_on_supports(prod, targets, label, out.defects);
        const std::size_t start = odd_targets ? 1 : 0;
        for (std::size_t slot_h = start; slot_h < wsize; slot_h += 2) {
            const std::size_t t = odd_targets ? (slot_h + 1) / 2 - 1 : slot_h / 2;
            w.at(a, b, slot_h) = (t < targets.size()) ? coeffs[t] : 0.0;
        }
    };

    for (std::size_t i = 0; i <= tb; ++i) {
        for (std::size_t j = 1; j <= tc; ++j)
            fill(xi, out.xi_size, 2 * i, 2 * j - 1, bc.X[i] * bc.N[j - 1], bc.N, true,
                 "X[" + std::to_string(i) + "]N[" + std::to_string(j) + "]");
        for (std::size_t j = 0; j <= tb; ++j)
            fill(xi, out.xi_size, 2 * i, 2 * j, bc.X[i] * bc.X[j], bc.X, false,
                 "X[" + std::to_string(i) + "]X[" + std::to_string(j) + "]");
    }
    for (std::size_t i = 1; i <= tc; ++i) {
        for (std::size_t j = 0; j <= tg; ++j)
            fill(xi, out.xi_size, 2 * i - 1, 2 * j, bc.N[i - 1] * bc.Y[j], bc.N, true,
                 "N[" + std::to_string(i) + "]Y[" + std::to_string(j) + "]");
        for (std::size_t j = 1; j <= tc; ++j)
            fill(xi, out.xi_size, 2 * i - 1, 2 * j - 1, bc.N[i - 1] * nt[j - 1], bc.X, false,
                 "N[" + std::to_string(i) + "]N^T[" + std::to_string(j) + "]");
    }

    for (std::size_t i = 0; i <= tg; ++i) {
        for (std::size_t j = 1; j <= tc; ++j)
            fill(sg, out.sigma_size, 2 * i, 2 * j - 1, bc.Y[i] * nt[j - 1], nt, true,
                 "Y[" + std::to_string(i) + "]N^T[" + std::to_string(j) + "]");
        for (std::size_t j = 0; j <= tg; ++j)
            fill(sg, out.sigma_size, 2 * i, 2 * j, bc.Y[i] * bc.Y[j], bc.Y, false,
                 "Y[" + std::to_string(i) + "]Y[" + std::to_string(j) + "]");
    }
    for (std::size_t i = 1; i <= tc; ++i) {
        for (std::size_t j = 0; j <= tb; ++j)
            fill(sg, out.sigma_size, 2 * i - 1, 2 * j, nt[i - 1] * bc.X[j], nt, true,
                 "N^T[" + std::to_string(i) + "]X[" + std::to_string(j) + "]");
        for (std::size_t j = 1; j <= tc; ++j)
            fill(sg, out.sigma_size, 2 * i - 1, 2 * j - 1, nt[i - 1] * bc.N[j - 1], bc.Y, false,
                 "N^T[" + std::to_string(i) + "]N[" + std::to_string(j) + "]");
    }

    return out;
}

KreinTable krein_parameters(const SpectralBasis& sb, const EigenSystem& es,
                            std::size_t beta_size, std::size_t gamma_size, const Tolerance&) {
    KreinTable kt;
    const double b = static_cast<double>(beta_size);
    const double g = static_cast<double>(gamma_size);
    kt.n_beta = sb.L.size();
    kt.n_cross = sb.D.size();
    kt.n_gamma = sb.R.size();
    kt.lambda.assign(kt.n_beta * kt.n_beta * kt.n_beta, 0.0);
    kt.delta.assign(kt.n_cross * kt.n_cross * kt.n_cross, 0.0);
    kt.rho.assign(kt.n_gamma * kt.n_gamma * kt.n_gamma, 0.0);

    for (std::size_t i = 0; i < kt.n_beta; ++i) {
        for (std::size_t j = 0; j < kt.n_beta; ++j) {
            const Matrix schur = sb.L[i].schur(sb.L[j]);
            for (std::size_t h = 0; h < kt.n_beta; ++h) {
                double sum = 0.0;
                for (std::size_t l = 0; l < kt.n_beta; ++l)
                    sum += es.Q_beta(l, h) * es.Q_beta(l, i) * es.Q_beta(l, j) * es.k_beta[l];
                const double formula = sum / (b * es.m_beta[h]);
                const double direct = b * (schur * sb.L[h]).trace() / es.m_beta[h];
                kt.lambda[(i * kt.n_beta + j) * kt.n_beta + h] = formula;
                kt.cross_check_residual =
                    std::max(kt.cross_check_residual, std::abs(formula - direct));
            }
        }
    }

    for (std::size_t i = 0; i < kt.n_cross; ++i) {
        for (std::size_t j = 0; j < kt.n_cross; ++j) {
            const Matrix schur = sb.D[i].schur(sb.D[j]);
            for (std::size_t h = 0; h < kt.n_cross; ++h) {
                double beta_sum = 0.0, gamma_sum = 0.0;
                for (std::size_t l = 0; l < es.Q_bg.rows(); ++l) {
                    const double q3 = es.Q_bg(l, h) * es.Q_bg(l, i) * es.Q_bg(l, j);
                    beta_sum += q3 * es.k_bg[l];
                    gamma_sum += q3 * es.k_gb[l];
                }
                const double formula = beta_sum / (g * es.m_beta[h]);
                const double flipped = gamma_sum / (b * es.m_gamma[h]);
                const double direct =
                    std::sqrt(b * g) * (sb.D[h].transpose() * schur).trace() / es.m_beta[h];
                kt.delta[(i * kt.n_cross + j) * kt.n_cross + h] = formula;
                kt.cross_check_residual =
                    std::max(kt.cross_check_residual, std::abs(formula - direct));
                kt.side_symmetry_residual =
                    std::max(kt.side_symmetry_residual, std::abs(formula - flipped));
            }
        }
    }

    for (std::size_t i = 0; i < kt.n_gamma; ++i) {
        for (std::size_t j = 0; j < kt.n_gamma; ++j) {
            const Matrix schur = sb.R[i].schur(sb.R[j]);
            for (std::size_t h = 0; h < kt.n_gamma; ++h) {
                double sum = 0.0;
                for (std::size_t l = 0; l < kt.n_gamma; ++l)
                    sum += es.Q_gamma(l, h) * es.Q_gamma(l, i) * es.Q_gamma(l, j) * es.k_gamma[l];
                const double formula = sum / (g * es.m_gamma[h]);
                const double direct = g * (schur * sb.R[h]).trace() / es.m_gamma[h];
                kt.rho[(i * kt.n_gamma + j) * kt.n_gamma + h] = formula;
                kt.cross_check_residual =
                    std::max(kt.cross_check_residual, std::abs(formula - direct));
            }
        }
    }

    return kt;
}

std::vector<KreinVerdict> krein_feasibility(const KreinTable& kt, const Tolerance& tol) {
    std::vector<KreinVerdict> verdicts;
    for (std::size_t i = 0; i < kt.n_beta; ++i)
        for (std::size_t j = 0; j < kt.n_beta; ++j)
            for (std::size_t h = 0; h < kt.n_beta; ++h) {
                const double margin = kt.lambda_at(i, j, h);
                verdicts.push_back({"lambda", i, j, h, margin, margin >= -tol.eps});
            }
    for (std::size_t i = 0; i < kt.n_gamma; ++i)
        for (std::size_t j = 0; j < kt.n_gamma; ++j)
            for (std::size_t h = 0; h < kt.n_gamma; ++h) {
                const double margin = kt.rho_at(i, j, h);
                verdicts.push_back({"rho", i, j, h, margin, margin >= -tol.eps});
            }
    for (std::size_t i = 0; i < kt.n_cross; ++i)
        for (std::size_t j = 0; j < kt.n_cross; ++j)
            for (std::size_t h = 0; h < kt.n_cross; ++h) {
                const double margin = kt.lambda_at(i, j, h) * kt.rho_at(i, j, h) -
                                      kt.delta_at(i, j, h) * kt.delta_at(i, j, h);
                verdicts.push_back({"psd", i, j, h, margin, margin >= -tol.eps});
            }
    return verdicts;
}

} // namespace cclab
