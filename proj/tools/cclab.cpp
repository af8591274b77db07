// Command-line front end: verify, report, classify, params, krein and
// spectral subcommands over .ccjson, .design.json and .bgr files.
//
// Exit codes: 0 all checks pass, 1 a mathematical condition fails,
// 2 unreadable or ill-formed input.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "cclab/errors.hpp"
#include "cclab/formats.hpp"
#include "cclab/report.hpp"

namespace {

double default_tolerance() {
    if (const char* env = std::getenv("CC_LAB_TOL")) {
        char* end = nullptr;
        const double v = std::strtod(env, &end);
        if (end != env && v > 0.0) return v;
        std::cerr << "warning: ignoring invalid CC_LAB_TOL value \"" << env << "\"\n";
    }
    return 1e-8;
}

struct CommandSpec {
    const char* name;
    const char* help;
    cclab::ReportScope scope;
};

constexpr CommandSpec kCommands[] = {
    {"verify", "Check the coherent-configuration axioms (and C1-C6 for two fibres)",
     cclab::ReportScope::verify},
    {"report", "Run the full pipeline: verification, spectral basis, eigenvalue tables, "
               "intersection numbers, Krein parameters, polynomial certificates",
     cclab::ReportScope::full},
    {"classify", "Decide distance-regular versus distance-biregular",
     cclab::ReportScope::classify},
    {"params", "Eigenmatrices, dual eigenmatrices, valencies and multiplicities",
     cclab::ReportScope::params},
    {"krein", "Krein parameters and feasibility verdicts", cclab::ReportScope::krein},
    {"spectral", "The spectral idempotent basis and its conditions",
     cclab::ReportScope::spectral},
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"coherent configuration laboratory"};
    app.require_subcommand(1);

    std::string file;
    std::string format = "text";
    double tol = default_tolerance();
    double int_tol = 1e-6;
    cclab::ReportScope scope = cclab::ReportScope::full;

    for (const CommandSpec& spec : kCommands) {
        CLI::App* cmd = app.add_subcommand(spec.name, spec.help);
        cmd->add_option("file", file, "input file (.ccjson, .design.json or .bgr)")
            ->required();
        cmd->add_option("--tol", tol, "relative tolerance for spectral checks");
        cmd->add_option("--int-tol", int_tol, "integrality tolerance for intersection numbers");
        cmd->add_option("--format", format, "output format")
            ->check(CLI::IsMember({"text", "json"}));
        cmd->callback([&scope, spec]() { scope = spec.scope; });
    }

    CLI11_PARSE(app, argc, argv);

    try {
        const cclab::ParsedInput input = cclab::load_input(file);
        cclab::ReportOptions opts;
        opts.tol.eps = tol;
        opts.int_tol = int_tol;
        opts.json = format == "json";
        opts.scope = scope;
        const cclab::ReportResult result = cclab::run_report(input, opts);
        std::fputs(result.body.c_str(), stdout);
        return result.exit_code;
    } catch (const cclab::StructuralError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const cclab::BuildError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const cclab::UnsupportedError& e) {
        std::cerr << "unsupported: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
}
