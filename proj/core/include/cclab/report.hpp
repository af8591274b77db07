#pragma once

#include <string>

#include "cclab/formats.hpp"
#include "cclab/tolerance.hpp"

namespace cclab {

inline constexpr const char* kToolName = "cclab";
inline constexpr const char* kToolVersion = "0.1.0";

enum class ReportScope {
    verify,    // verification and type sections only
    full,      // the whole pipeline
    classify,  // polynomial classification only
    params,    // eigenvalue tables
    krein,     // Krein tables and feasibility
    spectral,  // spectral basis and its conditions
};

struct ReportOptions {
    Tolerance tol;
    double int_tol = 1e-6;
    bool json = false;
    ReportScope scope = ReportScope::full;
};

struct ReportResult {
    std::string body;
    int exit_code = 0;  // 0 all pass, 1 mathematical violation
};

// Runs the pipeline on a parsed input as far as the scope requires:
// verify -> spectral basis -> eigenvalue tables -> structure constants ->
// polynomial certificates, stopping early (with exit code 1 and a partial
// report) when verification fails or a stage cannot be built. Output is
// byte-deterministic for identical input and options. Structural problems
// (unparseable or ill-shaped input) throw and are the caller's exit-code-2
// path.
ReportResult run_report(const ParsedInput& input, const ReportOptions& opts);

} // namespace cclab
