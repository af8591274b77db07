#include "cclab/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "cclab/errors.hpp"
#include "cclab/exact.hpp"

namespace cclab {

namespace {

constexpr int kMaxSweeps = 64;

// Cyclic Jacobi on a symmetric matrix. Returns eigenvalues in `values` and
// the accumulated rotation in `vectors` (columns are eigenvectors). The
// iteration stops when the off-diagonal Frobenius mass is negligible
// relative to the diagonal, at machine precision.
struct JacobiResult {
    std::vector<double> values;
    Matrix vectors;
};

double off_diagonal_sq(const Matrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = i + 1; j < a.cols(); ++j) s += 2.0 * a(i, j) * a(i, j);
    return s;
}

JacobiResult jacobi(Matrix a) {
    const std::size_t n = a.rows();
    Matrix v = Matrix::identity(n);
    if (n == 1) return {{a(0, 0)}, v};

    double diag_sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) diag_sq += a(i, i) * a(i, i);
    const double eps = std::numeric_limits<double>::epsilon();
    const double stop = eps * eps * std::max(1.0, diag_sq + off_diagonal_sq(a));

    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        if (off_diagonal_sq(a) <= stop) break;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                double t = 1.0 / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
                if (theta < 0.0) t = -t;
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const double tau = s / (1.0 + c);
                const double h = t * apq;

                a(p, p) -= h;
                a(q, q) += h;
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    if (k != p && k != q) {
                        const double akp = a(k, p);
                        const double akq = a(k, q);
                        a(k, p) = akp - s * (akq + tau * akp);
                        a(p, k) = a(k, p);
                        a(k, q) = akq + s * (akp - tau * akq);
                        a(q, k) = a(k, q);
                    }
                    const double vkp = v(k, p);
                    const double vkq = v(k, q);
                    v(k, p) = vkp - s * (vkq + tau * vkp);
                    v(k, q) = vkq + s * (vkp - tau * vkq);
                }
            }
        }
    }

    std::vector<double> values(n);
    for (std::size_t i = 0; i < n; ++i) values[i] = a(i, i);
    return {values, v};
}

bool cluster_equal(double a, double b, double eps) {
    return std::abs(a - b) <= eps * (1.0 + std::max(std::abs(a), std::abs(b)));
}

// Groups sorted-descending eigenvalues by single linkage.
std::vector<std::pair<double, std::vector<std::size_t>>> cluster_values(
    const std::vector<double>& values, double eps) {
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });

    std::vector<std::pair<double, std::vector<std::size_t>>> clusters;
    for (std::size_t idx : order) {
        if (!clusters.empty() && cluster_equal(clusters.back().first, values[idx], eps)) {
            clusters.back().second.push_back(idx);
        } else {
            clusters.push_back({values[idx], {idx}});
        }
    }
    for (auto& [rep, members] : clusters) {
        double mean = 0.0;
        for (std::size_t idx : members) mean += values[idx];
        rep = mean / static_cast<double>(members.size());
    }
    return clusters;
}

void check_symmetric_input(const Matrix& m, const Tolerance& tol, const char* op) {
    if (!m.is_square()) {
        throw StructuralError(std::string(op) + ": matrix is not square (" + m.shape_string() +
                              ")");
    }
    const double scale = tol.eps * (1.0 + m.max_abs());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = i + 1; j < m.cols(); ++j) {
            if (std::abs(m(i, j) - m(j, i)) > scale) {
                throw StructuralError(std::string(op) + ": asymmetric entries (" +
                                      std::to_string(i) + "," + std::to_string(j) + ") vs (" +
                                      std::to_string(j) + "," + std::to_string(i) + ")");
            }
        }
    }
}

Matrix symmetrized(const Matrix& m) {
    Matrix s = m;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = i + 1; j < m.cols(); ++j) {
            const double avg = 0.5 * (m(i, j) + m(j, i));
            s(i, j) = avg;
            s(j, i) = avg;
        }
    }
    return s;
}

Matrix projector_from_columns(const Matrix& v, const std::vector<std::size_t>& columns) {
    Matrix p(v.rows(), v.rows());
    for (std::size_t c : columns) {
        for (std::size_t i = 0; i < v.rows(); ++i) {
            const double vic = v(i, c);
            if (vic == 0.0) continue;
            for (std::size_t j = 0; j < v.rows(); ++j) p(i, j) += vic * v(j, c);
        }
    }
    return p;
}

} // namespace

std::size_t EigenDecomposition::dimension() const {
    std::size_t d = 0;
    for (const EigenSpace& s : spaces) d += s.multiplicity;
    return d;
}

Matrix EigenDecomposition::reconstruct(std::size_t member) const {
    Matrix acc(spaces.front().projector.rows(), spaces.front().projector.cols());
    for (const EigenSpace& s : spaces) acc += s.values.at(member) * s.projector;
    return acc;
}

EigenDecomposition sym_eigen(const Matrix& m, const Tolerance& tol) {
    check_symmetric_input(m, tol, "sym_eigen");
    const JacobiResult jr = jacobi(symmetrized(m));
    EigenDecomposition dec;
    for (const auto& [value, members] : cluster_values(jr.values, tol.eps)) {
        EigenSpace space;
        space.values = {value};
        space.multiplicity = members.size();
        space.projector = projector_from_columns(jr.vectors, members);
        dec.spaces.push_back(std::move(space));
    }
    return dec;
}

EigenDecomposition common_eigen(const std::vector<Matrix>& family, const Tolerance& tol) {
    if (family.empty()) {
        throw StructuralError("common_eigen: empty family");
    }
    const std::size_t n = family.front().rows();
    for (std::size_t k = 0; k < family.size(); ++k) {
        check_symmetric_input(family[k], tol, "common_eigen");
        if (family[k].rows() != n) {
            throw StructuralError("common_eigen: member " + std::to_string(k) +
                                  " has mismatched size " + family[k].shape_string());
        }
    }
    for (std::size_t a = 0; a < family.size(); ++a) {
        for (std::size_t b = a + 1; b < family.size(); ++b) {
            const Matrix comm = family[a] * family[b] - family[b] * family[a];
            const double scale = static_cast<double>(n) * (1.0 + family[a].max_abs()) *
                                 (1.0 + family[b].max_abs());
            if (comm.max_abs() > tol.eps * scale) {
                throw StructuralError("common_eigen: members " + std::to_string(a) + " and " +
                                      std::to_string(b) + " do not commute (residual " +
                                      std::to_string(comm.max_abs()) + ")");
            }
        }
    }

    // Successively refine an orthonormal basis: each family member is
    // diagonalised inside every block found so far, splitting the block by
    // eigenvalue cluster. Blocks are contiguous column ranges of `basis`.
    Matrix basis = Matrix::identity(n);
    struct Block {
        std::size_t lo, hi;
        std::vector<double> labels;
    };
    std::vector<Block> blocks{{0, n, {}}};

    for (const Matrix& a : family) {
        std::vector<Block> next;
        for (const Block& blk : blocks) {
            const std::size_t k = blk.hi - blk.lo;
            // Restrict to the block: b = W^T a W with W = basis columns.
            Matrix b(k, k);
            for (std::size_t i = 0; i < k; ++i) {
                for (std::size_t j = 0; j < k; ++j) {
                    double s = 0.0;
                    for (std::size_t r = 0; r < n; ++r)
                        for (std::size_t c = 0; c < n; ++c)
                            s += basis(r, blk.lo + i) * a(r, c) * basis(c, blk.lo + j);
                    b(i, j) = s;
                }
            }
            const JacobiResult jr = jacobi(symmetrized(b));
            auto clusters = cluster_values(jr.values, tol.eps);

            // Reorder the block columns so clusters are contiguous.
            Matrix rotated(n, k);
            std::size_t out = 0;
            for (const auto& [value, members] : clusters) {
                for (std::size_t mcol : members) {
                    for (std::size_t r = 0; r < n; ++r) {
                        double s = 0.0;
                        for (std::size_t i = 0; i < k; ++i)
                            s += basis(r, blk.lo + i) * jr.vectors(i, mcol);
                        rotated(r, out) = s;
                    }
                    ++out;
                }
            }
            for (std::size_t c = 0; c < k; ++c)
                for (std::size_t r = 0; r < n; ++r) basis(r, blk.lo + c) = rotated(r, c);

            std::size_t offset = blk.lo;
            for (const auto& [value, members] : clusters) {
                Block sub{offset, offset + members.size(), blk.labels};
                sub.labels.push_back(value);
                next.push_back(std::move(sub));
                offset += members.size();
            }
        }
        blocks = std::move(next);
    }

    EigenDecomposition dec;
    for (const Block& blk : blocks) {
        EigenSpace space;
        space.values = blk.labels;
        space.multiplicity = blk.hi - blk.lo;
        std::vector<std::size_t> cols(blk.hi - blk.lo);
        std::iota(cols.begin(), cols.end(), blk.lo);
        space.projector = projector_from_columns(basis, cols);
        dec.spaces.push_back(std::move(space));
    }

    // Merge blocks whose full label vectors coincide; a later family member
    // may have failed to separate what an earlier cluster split.
    for (std::size_t i = 0; i < dec.spaces.size(); ++i) {
        for (std::size_t j = i + 1; j < dec.spaces.size();) {
            bool same = true;
            for (std::size_t m = 0; m < family.size(); ++m) {
                if (!cluster_equal(dec.spaces[i].values[m], dec.spaces[j].values[m], tol.eps)) {
                    same = false;
                    break;
                }
            }
            if (same) {
                dec.spaces[i].projector += dec.spaces[j].projector;
                dec.spaces[i].multiplicity += dec.spaces[j].multiplicity;
                dec.spaces.erase(dec.spaces.begin() + static_cast<std::ptrdiff_t>(j));
            } else {
                ++j;
            }
        }
    }

    std::stable_sort(dec.spaces.begin(), dec.spaces.end(),
                     [&](const EigenSpace& a, const EigenSpace& b) {
                         for (std::size_t m = 0; m < a.values.size(); ++m) {
                             if (!cluster_equal(a.values[m], b.values[m], tol.eps))
                                 return a.values[m] > b.values[m];
                         }
                         return false;
                     });
    return dec;
}

std::size_t span_dimension(const std::vector<Matrix>& family, const Tolerance& tol) {
    if (family.empty()) return 0;
    const std::size_t rows = family.front().rows();
    const std::size_t cols = family.front().cols();
    bool integral = true;
    for (const Matrix& m : family) {
        if (m.rows() != rows || m.cols() != cols) {
            throw StructuralError("span_dimension: shape mismatch " + m.shape_string() + " vs " +
                                  family.front().shape_string());
        }
        integral = integral && m.is_integral();
    }
    if (integral) {
        return exact_span_dimension(family);
    }

    // One-sided Jacobi on the flattened family: rotate row pairs until they
    // are mutually orthogonal; the surviving row norms are singular values.
    std::vector<std::vector<double>> u;
    u.reserve(family.size());
    for (const Matrix& m : family) u.push_back(m.data());

    const std::size_t dim = rows * cols;
    const double conv = 1e-14;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        bool rotated = false;
        for (std::size_t i = 0; i + 1 < u.size(); ++i) {
            for (std::size_t j = i + 1; j < u.size(); ++j) {
                double alpha = 0.0, beta = 0.0, gamma = 0.0;
                for (std::size_t k = 0; k < dim; ++k) {
                    alpha += u[i][k] * u[i][k];
                    beta += u[j][k] * u[j][k];
                    gamma += u[i][k] * u[j][k];
                }
                if (std::abs(gamma) <= conv * std::sqrt(alpha * beta) || gamma == 0.0) continue;
                rotated = true;
                const double zeta = (beta - alpha) / (2.0 * gamma);
                double t = 1.0 / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                if (zeta < 0.0) t = -t;
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                for (std::size_t k = 0; k < dim; ++k) {
                    const double x = u[i][k];
                    const double y = u[j][k];
                    u[i][k] = c * x - s * y;
                    u[j][k] = s * x + c * y;
                }
            }
        }
        if (!rotated) break;
    }

    double sigma_max = 0.0;
    std::vector<double> sigma(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        double norm_sq = 0.0;
        for (double x : u[i]) norm_sq += x * x;
        sigma[i] = std::sqrt(norm_sq);
        sigma_max = std::max(sigma_max, sigma[i]);
    }
    if (sigma_max == 0.0) return 0;
    std::size_t rank = 0;
    for (double s : sigma)
        if (s > tol.eps * sigma_max) ++rank;
    return rank;
}

} // namespace cclab
