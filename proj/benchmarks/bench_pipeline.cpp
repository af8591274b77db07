#include <benchmark/benchmark.h>

#include "cclab/builders.hpp"
#include "cclab/formats.hpp"
#include "cclab/parameters.hpp"
#include "cclab/report.hpp"
#include "cclab/spectral.hpp"

#include "corpus.hpp"

namespace {

using namespace cclab;

void BM_VerifyBcc(benchmark::State& state) {
    const auto bc = from_design(corpus::rook_design());
    for (auto _ : state) {
        auto report = verify_bcc(bc);
        benchmark::DoNotOptimize(report);
    }
}
BENCHMARK(BM_VerifyBcc);

void BM_SpectralBasisFano(benchmark::State& state) {
    const auto bc = from_design(corpus::fano_design());
    for (auto _ : state) {
        auto sb = build_spectral_basis(bc);
        benchmark::DoNotOptimize(sb);
    }
}
BENCHMARK(BM_SpectralBasisFano);

void BM_FullReport(benchmark::State& state) {
    const char* names[] = {"k23", "heawood", "pair", "fano"};
    const std::string texts[] = {
        write_bgr(corpus::k23_graph()),
        write_bgr(corpus::heawood_graph()),
        write_design_json(corpus::pair_design()),
        write_design_json(corpus::fano_design()),
    };
    const InputKind kinds[] = {InputKind::bgr, InputKind::bgr, InputKind::design,
                               InputKind::design};
    const std::size_t pick = static_cast<std::size_t>(state.range(0));
    const ParsedInput input = parse_input(texts[pick], names[pick], kinds[pick]);
    ReportOptions opts;
    opts.json = true;
    for (auto _ : state) {
        auto result = run_report(input, opts);
        benchmark::DoNotOptimize(result);
    }
    state.SetLabel(names[pick]);
}
BENCHMARK(BM_FullReport)->DenseRange(0, 3);

} // namespace

BENCHMARK_MAIN();
