#include "cclab/bipartite.hpp"

#include <string>

#include "cclab/errors.hpp"
#include "cclab/exact.hpp"
#include "cclab/eigen.hpp"

namespace cclab {

namespace {

std::string coord(std::size_t i, std::size_t j) {
    return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

// First row-major entry where `m` differs from `want`, or empty.
std::string first_mismatch(const Matrix& m, const Matrix& want, const std::string& label) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (m(i, j) != want(i, j)) return label + " entry " + coord(i, j);
    return "";
}

// Exact span membership check for a whole family of products; returns the
// first product escaping the span, or empty.
std::string products_in_span(const std::vector<Matrix>& basis,
                             const std::vector<std::pair<std::string, Matrix>>& products) {
    ExactSpan span;
    for (const Matrix& m : basis) span.add(flatten_integral(m));
    for (const auto& [label, prod] : products) {
        if (!span.contains(flatten_integral(prod))) return label;
    }
    return "";
}

} // namespace

void BipartiteConfig::validate_shapes() const {
    if (beta_size == 0 || gamma_size == 0) {
        throw StructuralError("bipartite configuration: fibre sizes must be positive");
    }
    if (X.empty() || Y.empty() || N.empty()) {
        throw StructuralError("bipartite configuration: X, Y and N must be nonempty");
    }
    for (std::size_t i = 0; i < X.size(); ++i) {
        if (X[i].rows() != beta_size || X[i].cols() != beta_size)
            throw StructuralError("X[" + std::to_string(i) + "] has shape " +
                                  X[i].shape_string() + ", expected square of size " +
                                  std::to_string(beta_size));
        if (!X[i].is_binary())
            throw StructuralError("X[" + std::to_string(i) + "] is not a 01-matrix");
    }
    for (std::size_t i = 0; i < Y.size(); ++i) {
        if (Y[i].rows() != gamma_size || Y[i].cols() != gamma_size)
            throw StructuralError("Y[" + std::to_string(i) + "] has shape " +
                                  Y[i].shape_string() + ", expected square of size " +
                                  std::to_string(gamma_size));
        if (!Y[i].is_binary())
            throw StructuralError("Y[" + std::to_string(i) + "] is not a 01-matrix");
    }
    for (std::size_t i = 0; i < N.size(); ++i) {
        if (N[i].rows() != beta_size || N[i].cols() != gamma_size)
            throw StructuralError("N[" + std::to_string(i + 1) + "] has shape " +
                                  N[i].shape_string() + ", expected " +
                                  std::to_string(beta_size) + "x" + std::to_string(gamma_size));
        if (!N[i].is_binary())
            throw StructuralError("N[" + std::to_string(i + 1) + "] is not a 01-matrix");
    }
}

VerificationReport verify_bcc(const BipartiteConfig& bc, const Tolerance&) {
    bc.validate_shapes();
    VerificationReport report;

    // C1: X0 = I, Y0 = I.
    {
        CheckResult c{"C1", true, "", 0.0};
        c.witness = first_mismatch(bc.X[0], Matrix::identity(bc.beta_size), "X[0]");
        if (c.witness.empty())
            c.witness = first_mismatch(bc.Y[0], Matrix::identity(bc.gamma_size), "Y[0]");
        c.pass = c.witness.empty();
        report.checks.push_back(std::move(c));
    }

    // C2: each family partitions its all-ones block.
    {
        CheckResult c{"C2", true, "", 0.0};
        Matrix sx(bc.beta_size, bc.beta_size);
        for (const Matrix& m : bc.X) sx += m;
        c.witness = first_mismatch(sx, Matrix::ones(bc.beta_size, bc.beta_size), "sum X");
        if (c.witness.empty()) {
            Matrix sy(bc.gamma_size, bc.gamma_size);
            for (const Matrix& m : bc.Y) sy += m;
            c.witness = first_mismatch(sy, Matrix::ones(bc.gamma_size, bc.gamma_size), "sum Y");
        }
        if (c.witness.empty()) {
            Matrix sn(bc.beta_size, bc.gamma_size);
            for (const Matrix& m : bc.N) sn += m;
            c.witness = first_mismatch(sn, Matrix::ones(bc.beta_size, bc.gamma_size), "sum N");
        }
        c.pass = c.witness.empty();
        report.checks.push_back(std::move(c));
    }

    // C3: within-fibre relations are symmetric.
    {
        CheckResult c{"C3", true, "", 0.0};
        for (std::size_t i = 0; i < bc.X.size() && c.pass; ++i) {
            if (!bc.X[i].is_symmetric(0.0)) {
                c.pass = false;
                c.witness = "X[" + std::to_string(i) + "] is not symmetric";
            }
        }
        for (std::size_t i = 0; i < bc.Y.size() && c.pass; ++i) {
            if (!bc.Y[i].is_symmetric(0.0)) {
                c.pass = false;
                c.witness = "Y[" + std::to_string(i) + "] is not symmetric";
            }
        }
        report.checks.push_back(std::move(c));
    }

    // C4: Gram products commute, N_i N_j^T = N_j N_i^T and transposed.
    {
        CheckResult c{"C4", true, "", 0.0};
        for (std::size_t i = 0; i < bc.N.size() && c.pass; ++i) {
            for (std::size_t j = i + 1; j < bc.N.size() && c.pass; ++j) {
                const Matrix left = bc.N[i] * bc.N[j].transpose();
                const Matrix right = bc.N[j] * bc.N[i].transpose();
                if (left != right) {
                    c.pass = false;
                    c.witness = "N[" + std::to_string(i + 1) + "]N[" + std::to_string(j + 1) +
                                "]^T != N[" + std::to_string(j + 1) + "]N[" +
                                std::to_string(i + 1) + "]^T";
                    c.residual = left.max_abs_diff(right);
                    break;
                }
                const Matrix left2 = bc.N[i].transpose() * bc.N[j];
                const Matrix right2 = bc.N[j].transpose() * bc.N[i];
                if (left2 != right2) {
                    c.pass = false;
                    c.witness = "N[" + std::to_string(i + 1) + "]^T N[" + std::to_string(j + 1) +
                                "] != N[" + std::to_string(j + 1) + "]^T N[" +
                                std::to_string(i + 1) + "]";
                    c.residual = left2.max_abs_diff(right2);
                }
            }
        }
        report.checks.push_back(std::move(c));
    }

    // C5: all composable products stay in the exact span of the family.
    {
        CheckResult c{"C5", true, "", 0.0};
        auto label = [](const char* a, std::size_t i, const char* b, std::size_t j) {
            return std::string(a) + "[" + std::to_string(i) + "] * " + b + "[" +
                   std::to_string(j) + "]";
        };
        std::vector<std::pair<std::string, Matrix>> to_beta, to_gamma, to_cross;
        for (std::size_t i = 0; i < bc.X.size(); ++i) {
            for (std::size_t j = 0; j < bc.X.size(); ++j)
                to_beta.push_back({label("X", i, "X", j), bc.X[i] * bc.X[j]});
            for (std::size_t j = 0; j < bc.N.size(); ++j)
                to_cross.push_back({label("X", i, "N", j + 1), bc.X[i] * bc.N[j]});
        }
        for (std::size_t i = 0; i < bc.N.size(); ++i) {
            for (std::size_t j = 0; j < bc.Y.size(); ++j)
                to_cross.push_back({label("N", i + 1, "Y", j), bc.N[i] * bc.Y[j]});
            for (std::size_t j = 0; j < bc.N.size(); ++j) {
                to_beta.push_back(
                    {label("N", i + 1, "N^T", j + 1), bc.N[i] * bc.N[j].transpose()});
                to_gamma.push_back(
                    {label("N^T", i + 1, "N", j + 1), bc.N[i].transpose() * bc.N[j]});
            }
        }
        for (std::size_t i = 0; i < bc.Y.size(); ++i)
            for (std::size_t j = 0; j < bc.Y.size(); ++j)
                to_gamma.push_back({label("Y", i, "Y", j), bc.Y[i] * bc.Y[j]});

        c.witness = products_in_span(bc.X, to_beta);
        if (c.witness.empty()) c.witness = products_in_span(bc.Y, to_gamma);
        if (c.witness.empty()) c.witness = products_in_span(bc.N, to_cross);
        if (!c.witness.empty()) c.witness += " escapes the family span";
        c.pass = c.witness.empty();
        report.checks.push_back(std::move(c));
    }

    // C6: Gram products plus I span the whole within-fibre space.
    {
        CheckResult c{"C6", true, "", 0.0};
        const SpanReport sr = hobart_diagnostic(bc);
        if (sr.beta.deficit) {
            c.pass = false;
            c.witness = "beta-side Gram span has dimension " +
                        std::to_string(sr.beta.with_identity) + " < " +
                        std::to_string(sr.beta.relations);
        } else if (sr.gamma.deficit) {
            c.pass = false;
            c.witness = "gamma-side Gram span has dimension " +
                        std::to_string(sr.gamma.with_identity) + " < " +
                        std::to_string(sr.gamma.relations);
        }
        report.checks.push_back(std::move(c));
    }

    return report;
}

SpanReport hobart_diagnostic(const BipartiteConfig& bc) {
    bc.validate_shapes();
    SpanReport sr;

    std::vector<Matrix> beta_products, gamma_products;
    for (std::size_t i = 0; i < bc.N.size(); ++i) {
        for (std::size_t j = 0; j < bc.N.size(); ++j) {
            beta_products.push_back(bc.N[i] * bc.N[j].transpose());
            gamma_products.push_back(bc.N[i].transpose() * bc.N[j]);
        }
    }

    sr.beta.without_identity = exact_span_dimension(beta_products);
    beta_products.push_back(Matrix::identity(bc.beta_size));
    sr.beta.with_identity = exact_span_dimension(beta_products);
    sr.beta.relations = exact_span_dimension(bc.X);
    sr.beta.deficit = sr.beta.with_identity < sr.beta.relations;

    sr.gamma.without_identity = exact_span_dimension(gamma_products);
    gamma_products.push_back(Matrix::identity(bc.gamma_size));
    sr.gamma.with_identity = exact_span_dimension(gamma_products);
    sr.gamma.relations = exact_span_dimension(bc.Y);
    sr.gamma.deficit = sr.gamma.with_identity < sr.gamma.relations;

    return sr;
}

BipartiteConfig from_coherent(const CoherentConfig& cc) {
    if (cc.fibres().count() != 2) {
        throw StructuralError("from_coherent expects exactly two fibres, got " +
                              std::to_string(cc.fibres().count()));
    }
    BipartiteConfig bc;
    bc.beta_size = cc.fibres().sizes[0];
    bc.gamma_size = cc.fibres().sizes[1];
    for (const Relation* rel : cc.block(0, 0)) bc.X.push_back(rel->matrix);
    for (const Relation* rel : cc.block(1, 1)) bc.Y.push_back(rel->matrix);
    for (const Relation* rel : cc.block(0, 1)) bc.N.push_back(rel->matrix);

    const auto back = cc.block(1, 0);
    if (back.size() != bc.N.size()) {
        throw BuildError("two-fibre configuration: " + std::to_string(bc.N.size()) +
                         " cross relations but " + std::to_string(back.size()) +
                         " reverse relations");
    }
    // The (1,0) block must consist of the transposes of the (0,1) block,
    // in any order.
    std::vector<bool> used(back.size(), false);
    for (std::size_t h = 0; h < bc.N.size(); ++h) {
        const Matrix want = bc.N[h].transpose();
        bool matched = false;
        for (std::size_t k = 0; k < back.size(); ++k) {
            if (!used[k] && back[k]->matrix == want) {
                used[k] = true;
                matched = true;
                break;
            }
        }
        if (!matched) {
            throw BuildError("two-fibre configuration: the transpose of N[" +
                             std::to_string(h + 1) + "] does not appear among the (1,0) relations");
        }
    }
    bc.validate_shapes();
    return bc;
}

bool check_t1tt1_shortcut(const CoherentConfig& cc, bool spectral_ok) {
    if (!spectral_ok) return false;
    if (cc.fibres().count() != 2) return false;
    if (!is_fibre_symmetric(cc)) return false;
    const TypeMatrix tm = type_of(cc);
    const std::size_t t = tm.counts[0][1];
    if (t == 0) return false;
    return tm.counts[0][0] == t + 1 && tm.counts[1][1] == t + 1 && tm.counts[1][0] == t;
}

} // namespace cclab
