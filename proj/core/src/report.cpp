#include "cclab/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "cclab/bipartite.hpp"
#include "cclab/builders.hpp"
#include "cclab/eigen.hpp"
#include "cclab/errors.hpp"
#include "cclab/parameters.hpp"
#include "cclab/polynomial.hpp"
#include "cclab/relations.hpp"
#include "cclab/scheme.hpp"
#include "cclab/spectral.hpp"
#include "cclab/structure_constants.hpp"

namespace cclab {

namespace {

using ordered_json = nlohmann::ordered_json;

// Doubles are rendered at 12 significant digits everywhere. For JSON the
// formatted value is parsed back so the dumper emits exactly the shortest
// representation of the rounded number.
std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

ordered_json json_number(double v) {
    if (std::isnan(v)) return nullptr;
    return std::strtod(format_double(v).c_str(), nullptr);
}

ordered_json json_vector(const std::vector<double>& v) {
    ordered_json arr = ordered_json::array();
    for (double x : v) arr.push_back(json_number(x));
    return arr;
}

ordered_json json_matrix(const Matrix& m) {
    ordered_json rows = ordered_json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        ordered_json row = ordered_json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(json_number(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

ordered_json json_cube(const std::vector<double>& cube, std::size_t n) {
    ordered_json out = ordered_json::array();
    for (std::size_t i = 0; i < n; ++i) {
        ordered_json plane = ordered_json::array();
        for (std::size_t j = 0; j < n; ++j) {
            ordered_json row = ordered_json::array();
            for (std::size_t h = 0; h < n; ++h)
                row.push_back(json_number(cube[(i * n + j) * n + h]));
            plane.push_back(std::move(row));
        }
        out.push_back(std::move(plane));
    }
    return out;
}

ordered_json json_checks(const VerificationReport& report) {
    ordered_json arr = ordered_json::array();
    for (const CheckResult& c : report.checks) {
        ordered_json j;
        j["name"] = c.condition;
        j["pass"] = c.pass;
        if (!c.witness.empty()) j["witness"] = c.witness;
        if (c.residual != 0.0) j["residual"] = json_number(c.residual);
        arr.push_back(std::move(j));
    }
    return arr;
}

// ---------------------------------------------------------------------------
// Text rendering: a YAML-like deterministic walk of the JSON document.

bool is_scalar_array(const ordered_json& j) {
    for (const auto& e : j)
        if (e.is_structured()) return false;
    return true;
}

std::string inline_value(const ordered_json& j) {
    if (j.is_null()) return "~";
    if (j.is_boolean()) return j.get<bool>() ? "true" : "false";
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_float()) return format_double(j.get<double>());
    if (j.is_number()) return j.dump();
    if (j.is_array()) {
        std::string out = "[";
        bool first = true;
        for (const auto& e : j) {
            if (!first) out += ", ";
            out += inline_value(e);
            first = false;
        }
        return out + "]";
    }
    return j.dump();
}

void render_text(const ordered_json& j, std::string& out, int indent) {
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    if (j.is_object()) {
        for (const auto& [key, value] : j.items()) {
            if (value.is_object() && !value.empty()) {
                out += pad + key + ":\n";
                render_text(value, out, indent + 1);
            } else if (value.is_array() && !value.empty() && !is_scalar_array(value)) {
                const std::string inlined = inline_value(value);
                if (inlined.size() <= 100) {
                    out += pad + key + ": " + inlined + "\n";
                } else {
                    out += pad + key + ":\n";
                    render_text(value, out, indent + 1);
                }
            } else {
                out += pad + key + ": " + inline_value(value) + "\n";
            }
        }
    } else if (j.is_array()) {
        for (const auto& e : j) {
            if (e.is_object()) {
                // First key inline after the dash, the rest indented below.
                bool first = true;
                for (const auto& [key, value] : e.items()) {
                    const std::string lead = first ? pad + "- " : pad + "  ";
                    if (value.is_structured() && !value.empty() && !is_scalar_array(value)) {
                        out += lead + key + ":\n";
                        render_text(value, out, indent + 2);
                    } else {
                        out += lead + key + ": " + inline_value(value) + "\n";
                    }
                    first = false;
                }
            } else {
                out += pad + "- " + inline_value(e) + "\n";
            }
        }
    } else {
        out += pad + inline_value(j) + "\n";
    }
}

// ---------------------------------------------------------------------------

struct Pipeline {
    const ParsedInput& input;
    const ReportOptions& opts;
    ordered_json doc;
    bool pass = true;

    // Model under analysis; exactly one of the two is active.
    std::optional<BipartiteConfig> bc;
    std::optional<CoherentConfig> cc;
    bool two_fibre = false;
    bool fibre_symmetric = false;

    std::optional<SpectralBasis> sb;
    std::optional<EigenSystem> es;
    std::optional<SchemeSystem> ss;
    std::optional<PPolyCertificate> beta_cert;

    explicit Pipeline(const ParsedInput& in, const ReportOptions& o) : input(in), opts(o) {}

    void header() {
        doc["tool"]["name"] = kToolName;
        doc["tool"]["version"] = kToolVersion;
        doc["input"]["path"] = input.path;
        doc["input"]["kind"] = to_string(input.kind);
        doc["input"]["digest"] = input.digest;
        doc["tolerance"]["eps"] = json_number(opts.tol.eps);
        doc["tolerance"]["int_tol"] = json_number(opts.int_tol);
    }

    void build_model() {
        if (input.kind == InputKind::design) {
            bc = from_design(*input.design);
            cc = assemble(*bc);
            two_fibre = true;
        } else if (input.kind == InputKind::bgr) {
            bc = from_bipartite_graph(*input.graph);
            cc = assemble(*bc);
            two_fibre = true;
        } else {
            cc = *input.config;
            if (cc->fibres().count() == 2) {
                bc = from_coherent(*cc);  // BuildError falls through to caller
                two_fibre = true;
            }
        }
    }

    void verification() {
        ordered_json v;
        const auto axioms = verify_axioms(*cc, opts.tol);
        fibre_symmetric = is_fibre_symmetric(*cc);
        bool ok = axioms.pass();
        v["kind"] = two_fibre ? "bipartite" : "coherent";
        if (two_fibre) {
            const auto bcc = verify_bcc(*bc, opts.tol);
            ok = ok && bcc.pass();
            v["bcc_checks"] = json_checks(bcc);
            bool c15 = true;
            for (const CheckResult& c : bcc.checks)
                if (c.condition != "C6" && !c.pass) c15 = false;
            if (c15) {
                const SpanReport sr = hobart_diagnostic(*bc);
                ordered_json span;
                for (const auto& [side, name] :
                     {std::pair{&sr.beta, "beta"}, std::pair{&sr.gamma, "gamma"}}) {
                    span[name]["gram_span_with_identity"] = side->with_identity;
                    span[name]["gram_span_without_identity"] = side->without_identity;
                    span[name]["relation_span"] = side->relations;
                    span[name]["deficit"] = side->deficit;
                }
                v["gram_span"] = std::move(span);
            }
        }
        v["axiom_checks"] = json_checks(axioms);
        v["fibre_symmetric"] = fibre_symmetric;
        if (two_fibre) v["t1tt1_shortcut"] = check_t1tt1_shortcut(*cc, true);
        v["pass"] = ok;
        doc["verification"] = std::move(v);
        doc["type"]["symbol"] = type_of(*cc).symbol();
        doc["type"]["counts"] = type_of(*cc).counts;
        pass = pass && ok;
    }

    bool spectral_stage() {
        ordered_json s;
        if (two_fibre) {
            try {
                sb = build_spectral_basis(*bc, opts.tol);
            } catch (const std::runtime_error& e) {
                s["error"] = e.what();
                doc["spectral"] = std::move(s);
                pass = false;
                return false;
            }
            const auto suda = verify_suda_conditions(*sb, *bc, opts.tol);
            s["t_tilde"] = sb->t_tilde();
            s["l_labels"] = json_vector(sb->l_labels);
            ordered_json thetas = ordered_json::array();
            for (const auto& th : sb->d_theta) thetas.push_back(json_vector(th));
            s["d_theta"] = std::move(thetas);
            ordered_json l = ordered_json::array(), r = ordered_json::array(),
                         d = ordered_json::array();
            for (const Matrix& m : sb->L) l.push_back(json_matrix(m));
            for (const Matrix& m : sb->R) r.push_back(json_matrix(m));
            for (const Matrix& m : sb->D) d.push_back(json_matrix(m));
            s["L"] = std::move(l);
            s["R"] = std::move(r);
            s["D"] = std::move(d);
            s["suda_checks"] = json_checks(suda);
            pass = pass && suda.pass();
        } else {
            if (!fibre_symmetric) {
                s["error"] = "spectral analysis requires a fibre-symmetric configuration";
                doc["spectral"] = std::move(s);
                pass = false;
                return false;
            }
            try {
                ss = scheme_system(*cc, opts.tol);
            } catch (const std::runtime_error& e) {
                s["error"] = e.what();
                doc["spectral"] = std::move(s);
                pass = false;
                return false;
            }
            s["idempotent_count"] = ss->idempotents.size();
            ordered_json e = ordered_json::array();
            for (const Matrix& m : ss->idempotents) e.push_back(json_matrix(m));
            s["E"] = std::move(e);
        }
        doc["spectral"] = std::move(s);
        return true;
    }

    void eigen_stage() {
        ordered_json e;
        if (two_fibre) {
            es = eigenmatrices(*bc, *sb, opts.tol);
            e["P_beta"] = json_matrix(es->P_beta);
            e["P_gamma"] = json_matrix(es->P_gamma);
            e["P_cross"] = json_matrix(es->P_bg);
            e["Q_beta"] = json_matrix(es->Q_beta);
            e["Q_gamma"] = json_matrix(es->Q_gamma);
            e["Q_cross"] = json_matrix(es->Q_bg);
            e["valencies"]["beta"] = json_vector(es->k_beta);
            e["valencies"]["gamma"] = json_vector(es->k_gamma);
            e["valencies"]["cross"] = json_vector(es->k_bg);
            e["valencies"]["cross_transpose"] = json_vector(es->k_gb);
            e["multiplicities"]["beta"] = json_vector(es->m_beta);
            e["multiplicities"]["gamma"] = json_vector(es->m_gamma);
            const auto mc = multiplicity_from_q(*es, *bc);
            e["multiplicities"]["q_row_beta"] = json_vector(mc.q_row_beta);
            e["multiplicities"]["q_row_gamma"] = json_vector(mc.q_row_gamma);
            e["multiplicities"]["dual_sum"] = json_vector(mc.dual_sum);
            e["multiplicities"]["max_deviation"] = json_number(mc.max_deviation);
            const auto pq = check_pq_identity(*es, bc->beta_size, bc->gamma_size, opts.tol);
            e["pq_residuals"]["cross"] = json_number(pq.cross);
            e["pq_residuals"]["beta"] = json_number(pq.beta);
            e["pq_residuals"]["gamma"] = json_number(pq.gamma);
            pass = pass && pq.max() <= opts.tol.eps && mc.max_deviation <= opts.tol.eps;
        } else {
            e["P"] = json_matrix(ss->P);
            e["Q"] = json_matrix(ss->Q);
            e["valencies"] = json_vector(ss->valencies);
            e["multiplicities"] = json_vector(ss->multiplicities);
            const double n = static_cast<double>(cc->fibres().ground_size());
            const double residual =
                (ss->P * ss->Q).max_abs_diff(n * Matrix::identity(ss->P.rows()));
            e["pq_residual"] = json_number(residual);
            pass = pass && residual <= opts.tol.eps;
        }
        doc["eigen"] = std::move(e);
    }

    void intersection_stage() {
        ordered_json s;
        if (two_fibre) {
            const auto formula = intersection_numbers(*bc, *es, opts.tol, opts.int_tol);
            const auto oracle = intersection_oracle(*bc);
            bool agree = formula.defects.empty() && oracle.defects.empty();
            for (std::size_t k = 0; k < formula.xi.size() && agree; ++k) {
                const bool fn = std::isnan(formula.xi[k]), on = std::isnan(oracle.xi[k]);
                if (fn != on || (!fn && formula.xi[k] != oracle.xi[k])) agree = false;
            }
            for (std::size_t k = 0; k < formula.sigma.size() && agree; ++k) {
                const bool fn = std::isnan(formula.sigma[k]), on = std::isnan(oracle.sigma[k]);
                if (fn != on || (!fn && formula.sigma[k] != oracle.sigma[k])) agree = false;
            }
            s["legend"] =
                "index 2i = within-fibre relation i, index 2j-1 = cross relation j";
            s["xi"] = json_cube(formula.xi, formula.xi_size);
            s["sigma"] = json_cube(formula.sigma, formula.sigma_size);
            s["max_round_residual"] = json_number(formula.max_round_residual);
            s["formula_oracle_agree"] = agree;
            ordered_json defects = ordered_json::array();
            for (const auto& d : formula.defects) defects.push_back(d);
            for (const auto& d : oracle.defects) defects.push_back(d);
            s["defects"] = std::move(defects);
            pass = pass && agree;
        } else {
            const auto tables = scheme_intersection(*cc, *ss, opts.int_tol);
            bool agree = tables.defects.empty();
            for (std::size_t k = 0; k < tables.formula.size() && agree; ++k)
                if (tables.formula[k] != tables.oracle[k]) agree = false;
            s["p"] = json_cube(tables.formula, tables.size);
            s["max_round_residual"] = json_number(tables.max_round_residual);
            s["formula_oracle_agree"] = agree;
            ordered_json defects = ordered_json::array();
            for (const auto& d : tables.defects) defects.push_back(d);
            s["defects"] = std::move(defects);
            pass = pass && agree;
        }
        doc["intersection"] = std::move(s);
    }

    void krein_stage() {
        ordered_json s;
        std::vector<KreinVerdict> verdicts;
        if (two_fibre) {
            const auto kt = krein_parameters(*sb, *es, bc->beta_size, bc->gamma_size, opts.tol);
            s["lambda"] = json_cube(kt.lambda, kt.n_beta);
            s["delta"] = json_cube(kt.delta, kt.n_cross);
            s["rho"] = json_cube(kt.rho, kt.n_gamma);
            s["cross_check_residual"] = json_number(kt.cross_check_residual);
            s["side_symmetry_residual"] = json_number(kt.side_symmetry_residual);
            verdicts = krein_feasibility(kt, opts.tol);
            pass = pass && kt.cross_check_residual <= opts.tol.eps &&
                   kt.side_symmetry_residual <= opts.tol.eps;
        } else {
            const auto kr = scheme_krein(*ss, cc->fibres().ground_size());
            s["q"] = json_cube(kr.values, kr.size);
            s["cross_check_residual"] = json_number(kr.cross_check_residual);
            KreinTable kt;
            kt.n_beta = kr.size;
            kt.lambda = kr.values;
            verdicts = krein_feasibility(kt, opts.tol);
            pass = pass && kr.cross_check_residual <= opts.tol.eps;
        }
        bool feasible = true;
        double min_margin = 0.0;
        ordered_json failures = ordered_json::array();
        bool first = true;
        for (const auto& v : verdicts) {
            if (first || v.margin < min_margin) min_margin = v.margin;
            first = false;
            if (!v.pass) {
                feasible = false;
                ordered_json f;
                f["family"] = v.family;
                f["i"] = v.i;
                f["j"] = v.j;
                f["h"] = v.h;
                f["margin"] = json_number(v.margin);
                failures.push_back(std::move(f));
            }
        }
        s["feasibility"]["pass"] = feasible;
        s["feasibility"]["min_margin"] = json_number(min_margin);
        s["feasibility"]["failures"] = std::move(failures);
        pass = pass && feasible;
        doc["krein"] = std::move(s);
    }

    ordered_json certificate_json(const PPolyCertificate& cert) {
        ordered_json c;
        c["fibre"] = cert.fibre;
        ordered_json names = ordered_json::array();
        for (const RelationRef& ref : cert.ordering) names.push_back(ref.name());
        c["ordering"] = std::move(names);
        c["theta"] = json_vector(cert.theta);
        ordered_json nus = ordered_json::array();
        for (const auto& nu : cert.nu) nus.push_back(json_vector(nu));
        c["nu"] = std::move(nus);
        return c;
    }

    void polynomial_stage() {
        ordered_json s;
        ordered_json certs = ordered_json::array();
        std::optional<GraphClass> verdict;
        std::string inconsistency;

        auto run_row = [&](const RowSystem& row) {
            const auto outcome = detect_p_polynomial(row, opts.tol);
            ordered_json entry;
            entry["fibre"] = row.fibre;
            entry["p_polynomial"] = outcome.success();
            if (outcome.success()) {
                entry["certificate"] = certificate_json(*outcome.certificate);
                if (row.fibre == 0) beta_cert = outcome.certificate;
                if (!verdict) {
                    try {
                        verdict = classify(*cc, *outcome.certificate, opts.tol);
                    } catch (const std::logic_error& e) {
                        inconsistency = e.what();
                    }
                }
            } else {
                ordered_json refs = ordered_json::array();
                for (const auto& r : outcome.refutations) {
                    ordered_json rj;
                    rj["candidate"] = r.candidate.name();
                    rj["step"] = r.step;
                    rj["reason"] = r.reason;
                    refs.push_back(std::move(rj));
                }
                entry["refutations"] = std::move(refs);
            }
            certs.push_back(std::move(entry));
        };

        if (two_fibre) {
            run_row(row_system(*bc, *es, 0));
            run_row(row_system(*bc, *es, 1));
        } else {
            run_row(row_system(*cc, *ss));
        }
        s["p_certificates"] = std::move(certs);
        if (verdict) s["classification"] = to_string(*verdict);
        if (!inconsistency.empty()) {
            s["classification_error"] = inconsistency;
            pass = false;
        }

        if (two_fibre && beta_cert) {
            // Distance-polynomial sequences over the graph of the designated
            // adjacency relation.
            Matrix n1 = bc->N[beta_cert->ordering[1].index - 1];
            BipartiteGraph g{n1.rows(), n1.cols(), {}};
            for (std::size_t i = 0; i < n1.rows(); ++i)
                for (std::size_t j = 0; j < n1.cols(); ++j)
                    if (n1(i, j) == 1.0) g.edges.push_back({i, j});
            const auto dbrg = dbrg_sequences(g, opts.tol);
            ordered_json d;
            d["success"] = dbrg.success();
            if (dbrg.success()) {
                auto polys = [&](const std::vector<std::vector<double>>& seq) {
                    ordered_json arr = ordered_json::array();
                    for (const auto& p : seq) arr.push_back(json_vector(p));
                    return arr;
                };
                d["p_beta"] = polys(dbrg.sequences->p_beta);
                d["i_beta"] = polys(dbrg.sequences->i_beta);
                d["p_gamma"] = polys(dbrg.sequences->p_gamma);
                d["i_gamma"] = polys(dbrg.sequences->i_gamma);
            } else {
                d["failure"] = dbrg.failure;
            }
            doc["polynomial"] = std::move(s);
            doc["polynomial"]["dbrg"] = std::move(d);
        } else {
            doc["polynomial"] = std::move(s);
        }

        // Dual detection per block.
        ordered_json qcerts = ordered_json::array();
        std::optional<QPolyCertificate> q_beta, q_cross;
        auto run_q = [&](const char* block, const Matrix& q) {
            ordered_json entry;
            entry["block"] = block;
            try {
                const auto outcome = detect_q_polynomial(q, opts.tol);
                entry["q_polynomial"] = outcome.success();
                if (outcome.success()) {
                    ordered_json c;
                    c["ordering"] = outcome.certificate->ordering;
                    ordered_json nubar = ordered_json::array();
                    for (const auto& p : outcome.certificate->nubar)
                        nubar.push_back(json_vector(p));
                    c["nubar"] = std::move(nubar);
                    entry["certificate"] = std::move(c);
                    if (std::string(block) == "beta") q_beta = outcome.certificate;
                    if (std::string(block) == "cross") q_cross = outcome.certificate;
                } else {
                    ordered_json refs = ordered_json::array();
                    for (const auto& r : outcome.refutations) refs.push_back(r);
                    entry["refutations"] = std::move(refs);
                }
            } catch (const UnsupportedError& e) {
                entry["error"] = e.what();
            }
            qcerts.push_back(std::move(entry));
        };
        if (two_fibre) {
            run_q("beta", es->Q_beta);
            run_q("cross", es->Q_bg);
            run_q("gamma", es->Q_gamma);
        } else {
            run_q("beta", ss->Q);
        }
        doc["polynomial"]["q_certificates"] = std::move(qcerts);
        if (two_fibre) {
            // Whether the cross-block ordering agrees with the beta-block
            // ordering restricted to the paired idempotents.
            if (q_beta && q_cross) {
                std::vector<std::size_t> restricted;
                for (std::size_t idx : q_beta->ordering)
                    if (idx < q_cross->ordering.size()) restricted.push_back(idx);
                doc["polynomial"]["q_row_consistent"] = restricted == q_cross->ordering;
            } else {
                doc["polynomial"]["q_row_consistent"] = nullptr;
            }
        }
    }

    ReportResult finish() {
        doc["verdict"] = pass ? "pass" : "violation";
        ordered_json selected;
        const auto copy_if_present = [&](const char* key) {
            if (doc.contains(key)) selected[key] = doc[key];
        };
        copy_if_present("tool");
        copy_if_present("input");
        copy_if_present("tolerance");
        switch (opts.scope) {
            case ReportScope::verify:
                copy_if_present("verification");
                copy_if_present("type");
                break;
            case ReportScope::full:
                copy_if_present("verification");
                copy_if_present("type");
                copy_if_present("spectral");
                copy_if_present("eigen");
                copy_if_present("intersection");
                copy_if_present("krein");
                copy_if_present("polynomial");
                break;
            case ReportScope::classify:
                if (doc.contains("polynomial")) {
                    if (doc["polynomial"].contains("classification"))
                        selected["classification"] = doc["polynomial"]["classification"];
                    else
                        selected["classification"] = nullptr;
                    if (doc["polynomial"].contains("classification_error"))
                        selected["classification_error"] =
                            doc["polynomial"]["classification_error"];
                } else {
                    copy_if_present("verification");
                }
                break;
            case ReportScope::params: copy_if_present("eigen"); break;
            case ReportScope::krein: copy_if_present("krein"); break;
            case ReportScope::spectral: copy_if_present("spectral"); break;
        }
        selected["verdict"] = doc["verdict"];

        int exit_code = pass ? 0 : 1;
        if (opts.scope == ReportScope::classify) {
            const bool classified = selected.contains("classification") &&
                                    !selected["classification"].is_null();
            exit_code = classified && pass ? 0 : 1;
        }

        ReportResult result;
        result.exit_code = exit_code;
        if (opts.json) {
            result.body = selected.dump(2) + "\n";
        } else {
            render_text(selected, result.body, 0);
        }
        return result;
    }
};

} // namespace

ReportResult run_report(const ParsedInput& input, const ReportOptions& opts) {
    Pipeline p(input, opts);
    p.header();

    try {
        p.build_model();
    } catch (const BuildError& e) {
        // A two-fibre configuration whose cross blocks cannot be split is a
        // mathematical violation, reported rather than thrown.
        if (input.kind == InputKind::ccjson) {
            p.cc = *input.config;
            p.two_fibre = false;
            p.doc["verification"]["kind"] = "coherent";
            p.doc["verification"]["pass"] = false;
            p.doc["verification"]["error"] = e.what();
            p.pass = false;
            return p.finish();
        }
        throw;
    }

    p.verification();
    if (opts.scope == ReportScope::verify || !p.pass) return p.finish();
    if (p.cc->fibres().count() > 2) return p.finish();

    if (!p.spectral_stage()) return p.finish();
    if (opts.scope == ReportScope::spectral) return p.finish();

    p.eigen_stage();
    if (opts.scope == ReportScope::params) return p.finish();

    p.intersection_stage();
    p.krein_stage();
    if (opts.scope == ReportScope::krein) return p.finish();

    p.polynomial_stage();
    return p.finish();
}

} // namespace cclab
