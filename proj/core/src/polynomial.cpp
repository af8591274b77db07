#include "cclab/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>

#include "cclab/eigen.hpp"
#include "cclab/errors.hpp"

namespace cclab {

namespace {

// Newton divided differences expanded into monomial coefficients.
std::vector<double> newton_interpolant(const std::vector<double>& xs,
                                       const std::vector<double>& ys) {
    const std::size_t p = xs.size();
    std::vector<double> dd = ys;
    for (std::size_t level = 1; level < p; ++level) {
        for (std::size_t k = p - 1; k >= level; --k) {
            dd[k] = (dd[k] - dd[k - 1]) / (xs[k] - xs[k - level]);
        }
    }
    std::vector<double> poly{0.0};
    std::vector<double> basis{1.0};
    for (std::size_t k = 0; k < p; ++k) {
        if (poly.size() < basis.size()) poly.resize(basis.size(), 0.0);
        for (std::size_t c = 0; c < basis.size(); ++c) poly[c] += dd[k] * basis[c];
        // basis *= (x - xs[k])
        basis.insert(basis.begin(), 0.0);
        for (std::size_t c = 0; c + 1 < basis.size(); ++c) basis[c] -= xs[k] * basis[c + 1];
    }
    return poly;
}

std::size_t numeric_degree(const std::vector<double>& coeffs, double eps) {
    double scale = 0.0;
    for (double c : coeffs) scale = std::max(scale, std::abs(c));
    const double thresh = eps * (1.0 + scale);
    std::size_t deg = 0;
    for (std::size_t k = 0; k < coeffs.size(); ++k)
        if (std::abs(coeffs[k]) > thresh) deg = k;
    return deg;
}

void trim_to_degree(std::vector<double>& coeffs, std::size_t degree) {
    coeffs.resize(degree + 1, 0.0);
}

// Monic annihilator prod (x - xs[k]).
std::vector<double> annihilator(const std::vector<double>& xs) {
    std::vector<double> poly{1.0};
    for (double x : xs) {
        poly.insert(poly.begin(), 0.0);
        for (std::size_t c = 0; c + 1 < poly.size(); ++c) poly[c] -= x * poly[c + 1];
    }
    return poly;
}

// The unique-or-padded polynomial of degree exactly `degree` through the
// points, or nullopt when none exists. With p distinct points and
// degree < p the interpolant is unique and must land on the degree; with
// degree >= p the minimal interpolant is padded by x^(degree-p) times the
// monic annihilator.
std::optional<std::vector<double>> exact_degree_interpolant(const std::vector<double>& xs,
                                                            const std::vector<double>& ys,
                                                            std::size_t degree, double eps) {
    const std::size_t p = xs.size();
    std::vector<double> minimal = newton_interpolant(xs, ys);
    if (degree < p) {
        if (numeric_degree(minimal, eps) != degree) return std::nullopt;
        trim_to_degree(minimal, degree);
        return minimal;
    }
    std::vector<double> padded = minimal;
    padded.resize(degree + 1, 0.0);
    const std::vector<double> ann = annihilator(xs);
    const std::size_t shift = degree - p;
    for (std::size_t c = 0; c < ann.size(); ++c) padded[c + shift] += ann[c];
    return padded;
}

// Same, but restricted to even polynomials (g(x^2)) or odd ones (x*g(x^2)).
// Odd targets must vanish at a zero abscissa.
std::optional<std::vector<double>> parity_interpolant(const std::vector<double>& xs,
                                                      const std::vector<double>& ys,
                                                      std::size_t degree, double eps) {
    std::vector<double> sq, vals;
    const bool odd = degree % 2 == 1;
    double scale = 0.0;
    for (double y : ys) scale = std::max(scale, std::abs(y));
    for (std::size_t k = 0; k < xs.size(); ++k) {
        if (odd) {
            if (std::abs(xs[k]) <= eps * (1.0 + std::abs(xs[k]))) {
                if (std::abs(ys[k]) > eps * (1.0 + scale)) return std::nullopt;
                continue;
            }
            sq.push_back(xs[k] * xs[k]);
            vals.push_back(ys[k] / xs[k]);
        } else {
            sq.push_back(xs[k] * xs[k]);
            vals.push_back(ys[k]);
        }
    }
    if (sq.empty()) return std::nullopt;
    auto g = exact_degree_interpolant(sq, vals, degree / 2, eps);
    if (!g) return std::nullopt;
    std::vector<double> poly(degree + 1, 0.0);
    for (std::size_t k = 0; k < g->size(); ++k) poly[2 * k + (odd ? 1 : 0)] = (*g)[k];
    return poly;
}

bool has_duplicates(const std::vector<double>& xs, double eps) {
    for (std::size_t a = 0; a < xs.size(); ++a)
        for (std::size_t b = a + 1; b < xs.size(); ++b)
            if (std::abs(xs[a] - xs[b]) <=
                eps * (1.0 + std::max(std::abs(xs[a]), std::abs(xs[b]))))
                return true;
    return false;
}

bool supports_overlap(const Matrix& product, const Matrix& relation) {
    for (std::size_t i = 0; i < product.rows(); ++i)
        for (std::size_t j = 0; j < product.cols(); ++j)
            if (product(i, j) != 0.0 && relation(i, j) == 1.0) return true;
    return false;
}

} // namespace

double poly_eval(const std::vector<double>& coeffs, double x) {
    double acc = 0.0;
    for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * x + coeffs[k];
    return acc;
}

std::string RelationRef::name() const {
    return "A[" + std::to_string(source) + "," + std::to_string(target) + ";" +
           std::to_string(index) + "]";
}

RowSystem row_system(const BipartiteConfig& bc, const EigenSystem& es, std::size_t fibre) {
    if (fibre > 1) throw StructuralError("row_system: fibre index out of range");
    RowSystem row;
    row.fibre = fibre;
    row.two_fibre = true;
    const std::size_t idempotents = fibre == 0 ? es.P_beta.rows() : es.P_gamma.rows();
    const std::size_t paired = es.P_bg.rows();

    auto cross_column = [&](std::size_t j) {
        std::vector<double> col(idempotents, 0.0);
        for (std::size_t r = 0; r < paired; ++r) col[r] = es.P_bg(r, j);
        return col;
    };

    if (fibre == 0) {
        for (std::size_t i = 0; i < bc.X.size(); ++i) {
            row.relations.push_back({0, 0, i});
            row.matrices.push_back(bc.X[i]);
            std::vector<double> col(idempotents);
            for (std::size_t r = 0; r < idempotents; ++r) col[r] = es.P_beta(r, i);
            row.eigencolumns.push_back(std::move(col));
        }
        for (std::size_t j = 0; j < bc.N.size(); ++j) {
            row.relations.push_back({0, 1, j + 1});
            row.matrices.push_back(bc.N[j]);
            row.eigencolumns.push_back(cross_column(j));
        }
    } else {
        for (std::size_t i = 0; i < bc.Y.size(); ++i) {
            row.relations.push_back({1, 1, i});
            row.matrices.push_back(bc.Y[i]);
            std::vector<double> col(idempotents);
            for (std::size_t r = 0; r < idempotents; ++r) col[r] = es.P_gamma(r, i);
            row.eigencolumns.push_back(std::move(col));
        }
        for (std::size_t j = 0; j < bc.N.size(); ++j) {
            row.relations.push_back({1, 0, j + 1});
            row.matrices.push_back(bc.N[j].transpose());
            row.eigencolumns.push_back(cross_column(j));
        }
    }
    return row;
}

RowSystem row_system(const CoherentConfig& one_fibre, const SchemeSystem& ss) {
    if (one_fibre.fibres().count() != 1) {
        throw StructuralError("row_system: expected a one-fibre configuration");
    }
    RowSystem row;
    row.fibre = 0;
    row.two_fibre = false;
    const std::size_t count = one_fibre.relations().size();
    for (std::size_t i = 0; i < count; ++i) {
        row.relations.push_back({0, 0, i});
        row.matrices.push_back(one_fibre.relations()[i].matrix);
        std::vector<double> col(count);
        for (std::size_t r = 0; r < count; ++r) col[r] = ss.P(r, i);
        row.eigencolumns.push_back(std::move(col));
    }
    return row;
}

PPolyOutcome detect_p_polynomial(const RowSystem& row, const Tolerance& tol) {
    PPolyOutcome outcome;
    const std::size_t count = row.relations.size();
    if (count == 0 || !(row.relations[0].within() && row.relations[0].index == 0)) {
        throw StructuralError("detect_p_polynomial: row must start with the identity relation");
    }

    // Candidates in block-then-index order.
    std::vector<std::size_t> candidates;
    for (std::size_t k = 1; k < count; ++k) candidates.push_back(k);
    std::sort(candidates.begin(), candidates.end(), [&](std::size_t a, std::size_t b) {
        const RelationRef& ra = row.relations[a];
        const RelationRef& rb = row.relations[b];
        return std::tie(ra.source, ra.target, ra.index) <
               std::tie(rb.source, rb.target, rb.index);
    });

    for (std::size_t m1 : candidates) {
        const std::vector<double>& theta = row.eigencolumns[m1];
        if (has_duplicates(theta, tol.eps)) {
            outcome.refutations.push_back(
                {row.relations[m1], 1, "duplicate theta values make interpolation singular"});
            continue;
        }
        const bool alternating = row.two_fibre && !row.relations[m1].within();

        auto interpolate = [&](const std::vector<double>& values, std::size_t degree) {
            return alternating ? parity_interpolant(theta, values, degree, tol.eps)
                               : exact_degree_interpolant(theta, values, degree, tol.eps);
        };

        std::vector<std::size_t> ordering{0, m1};
        std::vector<std::vector<double>> nu;
        nu.push_back({1.0});
        auto nu1 = interpolate(row.eigencolumns[m1], 1);
        if (!nu1) {
            outcome.refutations.push_back(
                {row.relations[m1], 1, "eigenvalues of the candidate are not degree-1"});
            continue;
        }
        nu.push_back(*nu1);

        std::vector<bool> consumed(count, false);
        consumed[0] = consumed[m1] = true;

        bool failed = false;
        for (std::size_t h = 2; h < count && !failed; ++h) {
            const Matrix& prev = row.matrices[ordering.back()];
            const RelationRef prev_ref = row.relations[ordering.back()];
            const RelationRef m1_ref = row.relations[m1];

            // Extend the chain by one step of M_1, oriented to compose.
            Matrix product;
            std::size_t target_block;
            if (m1_ref.source == prev_ref.target) {
                product = prev * row.matrices[m1];
                target_block = m1_ref.target;
            } else {
                product = prev * row.matrices[m1].transpose();
                target_block = m1_ref.source;
            }

            std::size_t next = count;
            std::size_t hits = 0;
            for (std::size_t cand = 0; cand < count; ++cand) {
                if (consumed[cand] || row.relations[cand].target != target_block) continue;
                if (supports_overlap(product, row.matrices[cand])) {
                    ++hits;
                    next = cand;
                }
            }
            if (hits != 1) {
                outcome.refutations.push_back({row.relations[m1], h,
                                               "forcing failed: " + std::to_string(hits) +
                                                   " unconsumed relations meet the step product"});
                failed = true;
                break;
            }
            auto nuh = interpolate(row.eigencolumns[next], h);
            if (!nuh) {
                outcome.refutations.push_back(
                    {row.relations[m1], h,
                     "no degree-" + std::to_string(h) + " polynomial matches " +
                         row.relations[next].name()});
                failed = true;
                break;
            }
            ordering.push_back(next);
            nu.push_back(*nuh);
            consumed[next] = true;
        }
        if (failed) continue;

        PPolyCertificate cert;
        cert.fibre = row.fibre;
        cert.two_fibre = row.two_fibre;
        cert.theta = theta;
        cert.nu = std::move(nu);
        for (std::size_t k : ordering) cert.ordering.push_back(row.relations[k]);
        outcome.certificate = std::move(cert);
        return outcome;
    }
    return outcome;
}

std::string to_string(GraphClass c) {
    return c == GraphClass::distance_regular ? "distance_regular" : "distance_biregular";
}

namespace {

const Matrix& relation_matrix(const CoherentConfig& cc, const RelationRef& ref) {
    const Relation* rel = cc.find(ref.source, ref.target, ref.index);
    if (!rel) throw std::logic_error("classify: certificate references missing relation " +
                                     ref.name());
    return rel->matrix;
}

// Multiset equality of two blocks of relation matrices.
bool same_relation_family(std::vector<const Relation*> a, std::vector<const Relation*> b) {
    if (a.size() != b.size()) return false;
    std::vector<bool> used(b.size(), false);
    for (const Relation* ra : a) {
        bool matched = false;
        for (std::size_t k = 0; k < b.size(); ++k) {
            if (!used[k] && ra->matrix == b[k]->matrix) {
                used[k] = true;
                matched = true;
                break;
            }
        }
        if (!matched) return false;
    }
    return true;
}

} // namespace

GraphClass classify(const CoherentConfig& cc, const PPolyCertificate& cert, const Tolerance&) {
    const std::size_t f = cc.fibres().count();
    bool all_within = true;
    for (const RelationRef& ref : cert.ordering) all_within = all_within && ref.within();
    bool alternating = cert.ordering.size() >= 2;
    for (std::size_t k = 0; k < cert.ordering.size(); ++k) {
        const bool want_within = k % 2 == 0;
        if (cert.ordering[k].within() != want_within) alternating = false;
    }

    if (all_within && f == 1) {
        // Rebuild from the distance partition of the designated adjacency;
        // the certificate ordering must be the distance ordering.
        const Matrix& adjacency = relation_matrix(cc, cert.ordering[1]);
        const CoherentConfig rebuilt = distance_configuration(adjacency);
        if (rebuilt.relations().size() != cert.ordering.size()) {
            throw std::logic_error("classify: BFS rebuild yields " +
                                   std::to_string(rebuilt.relations().size()) +
                                   " distance classes for " +
                                   std::to_string(cert.ordering.size()) + " relations");
        }
        for (std::size_t h = 0; h < cert.ordering.size(); ++h) {
            if (!(rebuilt.relations()[h].matrix == relation_matrix(cc, cert.ordering[h]))) {
                throw std::logic_error("classify: distance-" + std::to_string(h) +
                                       " matrix disagrees with certificate relation " +
                                       cert.ordering[h].name());
            }
        }
        return GraphClass::distance_regular;
    }

    if (alternating && f == 2) {
        // The designated adjacency is the cross relation M_1, oriented from
        // fibre 0 to fibre 1.
        Matrix n1 = relation_matrix(cc, cert.ordering[1]);
        if (cert.ordering[1].source == 1) n1 = n1.transpose();
        BipartiteGraph g{n1.rows(), n1.cols(), {}};
        for (std::size_t i = 0; i < n1.rows(); ++i)
            for (std::size_t j = 0; j < n1.cols(); ++j)
                if (n1(i, j) == 1.0) g.edges.push_back({i, j});
        const CoherentConfig rebuilt = assemble(from_bipartite_graph(g));
        for (std::size_t i = 0; i < 2; ++i) {
            for (std::size_t j = 0; j < 2; ++j) {
                if (!same_relation_family(rebuilt.block(i, j), cc.block(i, j))) {
                    throw std::logic_error(
                        "classify: BFS rebuild disagrees with the configuration on block (" +
                        std::to_string(i) + "," + std::to_string(j) + ")");
                }
            }
        }
        // Certificate order must follow the distance order along its row.
        for (std::size_t k = 0; k < cert.ordering.size(); ++k) {
            const RelationRef& ref = cert.ordering[k];
            const std::size_t expected_index = ref.within() ? k / 2 : (k + 1) / 2;
            const Relation* rebuilt_rel =
                rebuilt.find(ref.source, ref.target, expected_index);
            if (!rebuilt_rel || !(rebuilt_rel->matrix == relation_matrix(cc, ref))) {
                throw std::logic_error("classify: certificate position " + std::to_string(k) +
                                       " does not match distance relation " +
                                       std::to_string(expected_index));
            }
        }
        return GraphClass::distance_biregular;
    }

    throw std::logic_error(
        "classify: certificate ordering matches neither the within-fibre nor the alternating "
        "pattern");
}

DBRGOutcome dbrg_sequences(const BipartiteGraph& g, const Tolerance& tol) {
    DBRGOutcome outcome;
    const BipartiteConfig bc = from_bipartite_graph(g);
    DBRGSequences seq;

    // Solves P_i(gram) = targets[i] and I_h(gram) * n1 = cross[h+1] on one
    // side; `side` names the fibre in failure messages.
    auto solve_side = [&](const Matrix& n1, const std::vector<Matrix>& targets,
                          const std::vector<Matrix>& cross,
                          std::vector<std::vector<double>>& p_out,
                          std::vector<std::vector<double>>& i_out, const char* side) {
        const Matrix gram = n1 * n1.transpose();
        const EigenDecomposition dec = sym_eigen(gram, tol);
        std::vector<double> mu;
        for (const auto& s : dec.spaces) mu.push_back(s.value());
        const double scale = 1.0 + gram.max_abs();

        for (std::size_t i = 0; i < targets.size(); ++i) {
            std::vector<double> coeffs;
            Matrix recon(targets[i].rows(), targets[i].cols());
            for (const auto& s : dec.spaces) {
                const double c =
                    (targets[i] * s.projector).trace() / static_cast<double>(s.multiplicity);
                coeffs.push_back(c);
                recon += c * s.projector;
            }
            if (recon.max_abs_diff(targets[i]) > tol.eps * scale) {
                outcome.failure = std::string(side) + "-side distance matrix " +
                                  std::to_string(2 * i) +
                                  " is not a polynomial in the Gram matrix";
                return false;
            }
            auto poly = exact_degree_interpolant(mu, coeffs, i, tol.eps);
            if (!poly) {
                outcome.failure = std::string(side) + "-side distance matrix " +
                                  std::to_string(2 * i) + " needs a degree above " +
                                  std::to_string(i);
                return false;
            }
            p_out.push_back(*poly);
        }

        for (std::size_t h = 0; h < cross.size(); ++h) {
            std::vector<double> xs, ys;
            Matrix recon(cross[h].rows(), cross[h].cols());
            for (const auto& s : dec.spaces) {
                const Matrix pn = s.projector * n1;
                const double norm = s.value() * static_cast<double>(s.multiplicity);
                if (std::abs(norm) <= tol.eps * scale) continue;
                const double c = pn.schur(cross[h]).sum() / norm;
                xs.push_back(s.value());
                ys.push_back(c);
                recon += c * pn;
            }
            if (recon.max_abs_diff(cross[h]) > tol.eps * scale) {
                outcome.failure = std::string(side) + "-side cross relation " +
                                  std::to_string(h + 1) +
                                  " is not a Gram polynomial multiple of the biadjacency";
                return false;
            }
            auto poly = exact_degree_interpolant(xs, ys, h, tol.eps);
            if (!poly) {
                outcome.failure = std::string(side) + "-side cross relation " +
                                  std::to_string(h + 1) + " needs a degree above " +
                                  std::to_string(h);
                return false;
            }
            i_out.push_back(*poly);
        }
        return true;
    };

    std::vector<Matrix> cross_beta = bc.N;
    std::vector<Matrix> cross_gamma;
    for (const Matrix& n : bc.N) cross_gamma.push_back(n.transpose());

    if (!solve_side(bc.N[0], bc.X, cross_beta, seq.p_beta, seq.i_beta, "beta")) return outcome;
    if (!solve_side(bc.N[0].transpose(), bc.Y, cross_gamma, seq.p_gamma, seq.i_gamma, "gamma"))
        return outcome;

    outcome.sequences = std::move(seq);
    return outcome;
}

QPolyOutcome detect_q_polynomial(const Matrix& q, const Tolerance& tol) {
    QPolyOutcome outcome;
    const std::size_t cols = q.cols();
    const std::size_t rows = q.rows();
    if (cols > 9) {
        throw UnsupportedError("q-polynomial search supports at most 9 idempotents, got " +
                               std::to_string(cols));
    }

    // Position 0 carries the constant polynomial, so its column must be
    // constant (it is all-ones for a normalized dual eigenmatrix).
    for (std::size_t r = 0; r + 1 < rows; ++r) {
        if (std::abs(q(r, 0) - q(r + 1, 0)) > tol.eps * (1.0 + std::abs(q(r, 0)))) {
            outcome.refutations.push_back("column 0 is not constant");
            return outcome;
        }
    }
    if (cols == 1) {
        outcome.certificate = QPolyCertificate{{0}, {{q(0, 0)}}};
        return outcome;
    }

    auto column = [&](std::size_t c) {
        std::vector<double> v(rows);
        for (std::size_t r = 0; r < rows; ++r) v[r] = q(r, c);
        return v;
    };

    for (std::size_t e1 = 1; e1 < cols; ++e1) {
        const std::vector<double> xs = column(e1);
        if (has_duplicates(xs, tol.eps)) {
            outcome.refutations.push_back("idempotent " + std::to_string(e1) +
                                          " as E_1: base values are not distinct");
            continue;
        }
        std::vector<std::size_t> ordering{0, e1};
        std::vector<std::vector<double>> nubar;
        nubar.push_back({q(0, 0)});
        nubar.push_back({0.0, 1.0});
        std::vector<bool> consumed(cols, false);
        consumed[0] = consumed[e1] = true;

        bool failed = false;
        for (std::size_t h = 2; h < cols && !failed; ++h) {
            // Greedy: the unconsumed column of minimal interpolation degree.
            std::size_t best = cols;
            std::size_t best_degree = 0;
            for (std::size_t cand = 0; cand < cols; ++cand) {
                if (consumed[cand]) continue;
                const std::size_t d = numeric_degree(newton_interpolant(xs, column(cand)), tol.eps);
                if (best == cols || d < best_degree) {
                    best = cand;
                    best_degree = d;
                }
            }
            auto poly = exact_degree_interpolant(xs, column(best), h, tol.eps);
            if (!poly) {
                outcome.refutations.push_back(
                    "idempotent " + std::to_string(e1) + " as E_1: no degree-" +
                    std::to_string(h) + " polynomial reaches idempotent " + std::to_string(best));
                failed = true;
                break;
            }
            ordering.push_back(best);
            nubar.push_back(*poly);
            consumed[best] = true;
        }
        if (failed) continue;
        outcome.certificate = QPolyCertificate{std::move(ordering), std::move(nubar)};
        return outcome;
    }
    return outcome;
}

} // namespace cclab
