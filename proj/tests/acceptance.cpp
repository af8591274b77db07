// Acceptance suite: one line per criterion, PASS/FAIL, exit 1 on any FAIL.
// Usage: cclab_acceptance [data-dir]   (default: data)

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cclab/bipartite.hpp"
#include "cclab/builders.hpp"
#include "cclab/eigen.hpp"
#include "cclab/formats.hpp"
#include "cclab/parameters.hpp"
#include "cclab/polynomial.hpp"
#include "cclab/report.hpp"
#include "cclab/scheme.hpp"
#include "cclab/spectral.hpp"
#include "cclab/structure_constants.hpp"

#include "corpus.hpp"

using namespace cclab;

namespace {

struct Criterion {
    int number;
    std::string description;
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok && pass) {
            pass = false;
            detail = what;
        }
    }
};

std::vector<Criterion> results;

Criterion& begin(int number, const std::string& description) {
    results.push_back({number, description, true, ""});
    return results.back();
}

struct Loaded {
    std::string name;
    BipartiteConfig bc;
    CoherentConfig cc;
    SpectralBasis sb;
    EigenSystem es;
};

std::vector<Loaded> load_corpus() {
    std::vector<Loaded> out;
    for (const auto& named : corpus::bcc_corpus()) {
        Loaded l{named.name, named.bc, assemble(named.bc), build_spectral_basis(named.bc), {}};
        l.es = eigenmatrices(l.bc, l.sb);
        out.push_back(std::move(l));
    }
    return out;
}

// Flip one entry of one stored relation matrix and report whether the
// verifier fails with a witness naming the flipped coordinate.
bool mutation_caught(const BipartiteConfig& bc, std::size_t family, std::size_t member,
                     std::size_t r, std::size_t c) {
    BipartiteConfig mutated = bc;
    Matrix& m = family == 0   ? mutated.X[member]
                : family == 1 ? mutated.Y[member]
                              : mutated.N[member];
    m(r, c) = m(r, c) == 1.0 ? 0.0 : 1.0;
    const auto report = verify_bcc(mutated);
    if (report.pass()) return false;
    const std::string coord = "(" + std::to_string(r) + "," + std::to_string(c) + ")";
    for (const CheckResult& check : report.checks) {
        if (!check.pass && check.witness.find(coord) != std::string::npos) return true;
    }
    return false;
}

double parity_residual(const PPolyCertificate& cert) {
    double res = 0.0;
    for (std::size_t h = 0; h < cert.nu.size(); ++h)
        for (std::size_t k = 0; k < cert.nu[h].size(); ++k)
            if (k % 2 != h % 2) res = std::max(res, std::abs(cert.nu[h][k]));
    return res;
}

} // namespace

int main(int argc, char** argv) {
    const std::filesystem::path data_dir = argc > 1 ? argv[1] : "data";
    const auto corpus_instances = load_corpus();

    // ------------------------------------------------------------------
    {
        auto& c = begin(1, "axiom suite with single-entry mutation witnesses");
        for (const auto& inst : corpus_instances) {
            c.require(verify_bcc(inst.bc).pass(), inst.name + ": verify_bcc");
            c.require(verify_axioms(inst.cc).pass(), inst.name + ": verify_axioms");
            for (std::size_t fam = 0; fam < 3; ++fam) {
                const auto& list =
                    fam == 0 ? inst.bc.X : fam == 1 ? inst.bc.Y : inst.bc.N;
                for (std::size_t member = 0; member < list.size(); ++member) {
                    for (std::size_t r = 0; r < list[member].rows(); ++r) {
                        for (std::size_t col = 0; col < list[member].cols(); ++col) {
                            if (!mutation_caught(inst.bc, fam, member, r, col)) {
                                c.require(false, inst.name + ": mutation of family " +
                                                     std::to_string(fam) + " member " +
                                                     std::to_string(member) + " at (" +
                                                     std::to_string(r) + "," +
                                                     std::to_string(col) + ") escaped");
                            }
                        }
                    }
                }
            }
        }
    }

    // ------------------------------------------------------------------
    {
        auto& c = begin(2, "Hobart span collapse on the three-intersection design");
        const auto bc = from_design(corpus::triples_design());
        const auto report = verify_bcc(bc);
        c.require(!report.pass(), "verify_bcc unexpectedly passed");
        const CheckResult* c6 = report.find("C6");
        c.require(c6 && !c6->pass, "C6 did not fail");
        const auto span = hobart_diagnostic(bc);
        c.require(span.gamma.with_identity == 3, "gamma Gram span is not 3");
        c.require(span.gamma.relations == 4, "gamma relation span is not 4");
        c.require(span.gamma.with_identity < span.gamma.relations, "no strict deficit");
        for (const char* ok : {"C1", "C2", "C3", "C4", "C5"}) {
            const CheckResult* chk = report.find(ok);
            c.require(chk && chk->pass, std::string(ok) + " failed unexpectedly");
        }
    }

    // ------------------------------------------------------------------
    {
        auto& c = begin(3, "dual-basis conditions at 1e-9 with matching cardinalities");
        for (const auto& inst : corpus_instances) {
            const auto& sb = inst.sb;
            const std::size_t relations =
                (inst.bc.t_beta() + 1) + (inst.bc.t_gamma() + 1) + 2 * inst.bc.t_cross();
            c.require(sb.basis_count() == relations, inst.name + ": cardinality");

            const auto suda = verify_suda_conditions(sb, inst.bc);
            for (const auto& check : suda.checks) {
                c.require(check.pass && check.residual <= 1e-9,
                          inst.name + ": " + check.condition + " residual " +
                              std::to_string(check.residual));
            }
            // Idempotency, orthogonality, completeness on each side.
            Matrix lsum(inst.bc.beta_size, inst.bc.beta_size);
            for (std::size_t a = 0; a < sb.L.size(); ++a) {
                lsum += sb.L[a];
                for (std::size_t b = 0; b < sb.L.size(); ++b) {
                    const Matrix want = a == b ? sb.L[a] : Matrix(inst.bc.beta_size,
                                                                  inst.bc.beta_size);
                    c.require((sb.L[a] * sb.L[b]).max_abs_diff(want) <= 1e-9,
                              inst.name + ": L idempotency/orthogonality");
                }
            }
            c.require(lsum.max_abs_diff(Matrix::identity(inst.bc.beta_size)) <= 1e-9,
                      inst.name + ": L completeness");
            Matrix rsum(inst.bc.gamma_size, inst.bc.gamma_size);
            for (const Matrix& rr : sb.R) rsum += rr;
            c.require(rsum.max_abs_diff(Matrix::identity(inst.bc.gamma_size)) <= 1e-9,
                      inst.name + ": R completeness");
            // Pairing D_r D_r^T = L_r, D_r^T D_r = R_r.
            for (std::size_t r = 0; r < sb.D.size(); ++r) {
                c.require((sb.D[r] * sb.D[r].transpose()).max_abs_diff(sb.L[r]) <= 1e-9,
                          inst.name + ": pairing L");
                c.require((sb.D[r].transpose() * sb.D[r]).max_abs_diff(sb.R[r]) <= 1e-9,
                          inst.name + ": pairing R");
                const double lt = sb.L[r].trace();
                const double rt = sb.R[r].trace();
                c.require(std::abs(lt - std::round(lt)) <= 1e-9,
                          inst.name + ": trace integrality");
                c.require(std::round(lt) == std::round(rt) && std::abs(lt - rt) <= 1e-9,
                          inst.name + ": trace(L_r) = trace(R_r)");
            }
            // Schur closure of the second basis inside the configuration span.
            auto span_res = [](const Matrix& m, const std::vector<Matrix>& fam) {
                Matrix recon(m.rows(), m.cols());
                for (const Matrix& f : fam)
                    if (f.sum() != 0.0) recon += (m.schur(f).sum() / f.sum()) * f;
                return m.max_abs_diff(recon);
            };
            for (std::size_t a = 0; a < sb.L.size(); ++a)
                for (std::size_t b = 0; b < sb.L.size(); ++b)
                    c.require(span_res(sb.L[a].schur(sb.L[b]), inst.bc.X) <= 1e-9,
                              inst.name + ": Schur closure L");
            for (std::size_t a = 0; a < sb.D.size(); ++a)
                for (std::size_t b = 0; b < sb.D.size(); ++b)
                    c.require(span_res(sb.D[a].schur(sb.D[b]), inst.bc.N) <= 1e-9,
                              inst.name + ": Schur closure D");
            for (std::size_t a = 0; a < sb.R.size(); ++a)
                for (std::size_t b = 0; b < sb.R.size(); ++b)
                    c.require(span_res(sb.R[a].schur(sb.R[b]), inst.bc.Y) <= 1e-9,
                              inst.name + ": Schur closure R");
        }
    }

    // ------------------------------------------------------------------
    {
        auto& c = begin(4, "eigenvalue identities and Fano spot values at 1e-9");
        for (const auto& inst : corpus_instances) {
            const auto pq = check_pq_identity(inst.es, inst.bc.beta_size, inst.bc.gamma_size);
            c.require(pq.max() <= 1e-9, inst.name + ": PQ identity");
            const double b = static_cast<double>(inst.bc.beta_size);
            const double g = static_cast<double>(inst.bc.gamma_size);
            for (std::size_t i = 0; i < inst.bc.N.size(); ++i) {
                for (std::size_t r = 0; r < inst.bc.beta_size; ++r)
                    c.require(inst.bc.N[i].row_sum(r) == inst.es.k_bg[i],
                              inst.name + ": integer row sums");
                c.require(std::abs(inst.es.k_bg[i] - std::sqrt(g / b) * inst.es.P_bg(0, i)) <=
                              1e-9,
                          inst.name + ": valency identity");
            }
            const auto mc = multiplicity_from_q(inst.es, inst.bc);
            c.require(mc.max_deviation <= 1e-9, inst.name + ": multiplicity routes");
        }
        // Fano spot values.
        const auto fano = from_design(corpus::fano_design());
        const auto gram_eigen = sym_eigen(fano.N[0] * fano.N[0].transpose());
        c.require(gram_eigen.spaces.size() == 2 &&
                      std::abs(gram_eigen.spaces[0].value() - 9.0) <= 1e-9 &&
                      gram_eigen.spaces[0].multiplicity == 1 &&
                      std::abs(gram_eigen.spaces[1].value() - 2.0) <= 1e-9 &&
                      gram_eigen.spaces[1].multiplicity == 6,
                  "Fano Gram spectrum is not {9, 2x6}");
        for (const auto& inst : corpus_instances) {
            if (inst.name != std::string("fano")) continue;
            const double s2 = std::sqrt(2.0);
            const double want[2][2] = {{3.0, 4.0}, {s2, -s2}};
            for (std::size_t r = 0; r < 2; ++r)
                for (std::size_t i = 0; i < 2; ++i)
                    c.require(std::abs(inst.es.P_bg(r, i) - want[r][i]) <= 1e-9,
                              "Fano P_cross entry");
        }
    }

    // ------------------------------------------------------------------
    {
        auto& c = begin(5, "intersection formula equals the exact oracle");
        for (const auto& inst : corpus_instances) {
            const auto formula = intersection_numbers(inst.bc, inst.es);
            const auto oracle = intersection_oracle(inst.bc);
            c.require(formula.defects.empty() && oracle.defects.empty(),
                      inst.name + ": defects");
            c.require(formula.max_round_residual <= 1e-6, inst.name + ": rounding residual");
            for (std::size_t k = 0; k < formula.xi.size(); ++k) {
                const bool fn = std::isnan(formula.xi[k]);
                const bool on = std::isnan(oracle.xi[k]);
                c.require(fn == on, inst.name + ": xi definedness");
                if (!fn) {
                    c.require(formula.xi[k] == oracle.xi[k], inst.name + ": xi entry");
                    c.require(formula.xi[k] >= 0.0 &&
                                  formula.xi[k] == std::round(formula.xi[k]),
                              inst.name + ": xi nonnegative integer");
                }
            }
            for (std::size_t k = 0; k < formula.sigma.size(); ++k) {
                const bool fn = std::isnan(formula.sigma[k]);
                const bool on = std::isnan(oracle.sigma[k]);
                c.require(fn == on, inst.name + ": sigma definedness");
                if (!fn) {
                    c.require(formula.sigma[k] == oracle.sigma[k], inst.name + ": sigma");
                    c.require(formula.sigma[k] >= 0.0 &&
                                  formula.sigma[k] == std::round(formula.sigma[k]),
                              inst.name + ": sigma nonnegative integer");
                }
            }
            for (std::size_t bcol = 0; bcol < formula.xi_size; ++bcol)
                for (std::size_t h = 0; h < formula.xi_size; ++h)
                    if (formula.xi_defined(0, bcol, h))
                        c.require(formula.xi_at(0, bcol, h) == (bcol == h ? 1.0 : 0.0),
                                  inst.name + ": xi(0,b;c) Kronecker");
        }
    }

    // ------------------------------------------------------------------
    {
        auto& c = begin(6, "Krein agreement, symmetry and feasibility");
        for (const auto& inst : corpus_instances) {
            const auto kt =
                krein_parameters(inst.sb, inst.es, inst.bc.beta_size, inst.bc.gamma_size);
            c.require(kt.cross_check_residual <= 1e-9, inst.name + ": formula vs projection");
            c.require(kt.side_symmetry_residual <= 1e-9, inst.name + ": beta/gamma symmetry");
            for (const auto& verdict : krein_feasibility(kt)) {
                c.require(verdict.margin >= -1e-9,
                          inst.name + ": margin " + std::to_string(verdict.margin));
                c.require(verdict.pass, inst.name + ": feasibility verdict");
            }
        }
        KreinTable synthetic;
        synthetic.n_beta = synthetic.n_cross = synthetic.n_gamma = 1;
        synthetic.lambda = {1.0};
        synthetic.rho = {1.0};
        synthetic.delta = {2.0};
        const auto verdicts = krein_feasibility(synthetic);
        c.require(verdicts.size() == 3 && verdicts[0].pass && verdicts[1].pass &&
                      !verdicts[2].pass && std::abs(verdicts[2].margin + 3.0) <= 1e-12,
                  "synthetic psd violation");
    }

    // ------------------------------------------------------------------
    {
        auto& c = begin(7, "classification with BFS rebuild agreement");
        const struct {
            const char* name;
            CoherentConfig cc;
            GraphClass want;
        } cases[] = {
            {"c5", corpus::c5_config(), GraphClass::distance_regular},
            {"petersen", corpus::petersen_config(), GraphClass::distance_regular},
            {"k23", assemble(from_bipartite_graph(corpus::k23_graph())),
             GraphClass::distance_biregular},
            {"k13", assemble(from_bipartite_graph(corpus::k13_graph())),
             GraphClass::distance_biregular},
            {"heawood", assemble(from_bipartite_graph(corpus::heawood_graph())),
             GraphClass::distance_biregular},
        };
        for (const auto& test : cases) {
            try {
                PPolyOutcome outcome;
                if (test.cc.fibres().count() == 1) {
                    const auto ss = scheme_system(test.cc);
                    outcome = detect_p_polynomial(row_system(test.cc, ss));
                } else {
                    const auto bc = from_coherent(test.cc);
                    const auto sb = build_spectral_basis(bc);
                    const auto es = eigenmatrices(bc, sb);
                    outcome = detect_p_polynomial(row_system(bc, es, 0));
                }
                c.require(outcome.success(), std::string(test.name) + ": no certificate");
                if (outcome.success()) {
                    // classify throws if the BFS rebuild disagrees.
                    const GraphClass got = classify(test.cc, *outcome.certificate);
                    c.require(got == test.want, std::string(test.name) + ": wrong class");
                }
            } catch (const std::exception& e) {
                c.require(false, std::string(test.name) + ": " + e.what());
            }
        }
    }

    // ------------------------------------------------------------------
    {
        auto& c = begin(8, "P-polynomial and distance-biregular routes coincide");
        for (const auto& inst : corpus_instances) {
            const Matrix& n1 = inst.bc.N[0];
            BipartiteGraph g{n1.rows(), n1.cols(), {}};
            for (std::size_t i = 0; i < n1.rows(); ++i)
                for (std::size_t j = 0; j < n1.cols(); ++j)
                    if (n1(i, j) == 1.0) g.edges.push_back({i, j});
            const bool dbrg_ok = dbrg_sequences(g).success();
            const auto beta = detect_p_polynomial(row_system(inst.bc, inst.es, 0));
            const auto gamma = detect_p_polynomial(row_system(inst.bc, inst.es, 1));
            c.require(beta.success() == dbrg_ok, inst.name + ": beta route mismatch");
            c.require(gamma.success() == dbrg_ok, inst.name + ": gamma route mismatch");
            if (beta.success())
                c.require(parity_residual(*beta.certificate) <= 1e-9,
                          inst.name + ": beta parity");
            if (gamma.success())
                c.require(parity_residual(*gamma.certificate) <= 1e-9,
                          inst.name + ": gamma parity");
        }
        // A connected bipartite graph that is not semiregular fails both.
        BipartiteGraph p4{2, 2, {{0, 0}, {1, 0}, {1, 1}}};
        c.require(!dbrg_sequences(p4).success(), "P4 dbrg unexpectedly succeeded");
    }

    // ------------------------------------------------------------------
    {
        auto& c = begin(9, "byte-identical reports across runs");
        const char* files[] = {"k23.bgr",
                               "k13.bgr",
                               "p3.bgr",
                               "heawood.bgr",
                               "pair-design.design.json",
                               "fano.design.json",
                               "rook3.design.json",
                               "gq22.design.json",
                               "triples-6.design.json",
                               "c5.ccjson",
                               "petersen.ccjson"};
        for (const char* file : files) {
            const std::filesystem::path path = data_dir / file;
            if (!std::filesystem::exists(path)) {
                c.require(false, "missing corpus file " + path.string());
                continue;
            }
            for (bool json : {false, true}) {
                try {
                    const ParsedInput input = load_input(path.string());
                    ReportOptions opts;
                    opts.json = json;
                    const auto first = run_report(input, opts);
                    const auto second = run_report(input, opts);
                    c.require(first.body == second.body && !first.body.empty(),
                              std::string(file) + ": nondeterministic output");
                } catch (const std::exception& e) {
                    c.require(false, std::string(file) + ": " + e.what());
                }
            }
        }
    }

    // ------------------------------------------------------------------
    bool all_pass = true;
    for (const auto& c : results) {
        std::printf("criterion %d %-4s %s%s%s\n", c.number, c.pass ? "PASS" : "FAIL",
                    c.description.c_str(), c.pass ? "" : " -- ", c.detail.c_str());
        all_pass = all_pass && c.pass;
    }
    return all_pass ? 0 : 1;
}
