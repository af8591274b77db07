#include <benchmark/benchmark.h>

#include <cstdint>

#include "cclab/eigen.hpp"
#include "cclab/matrix.hpp"

#include "corpus.hpp"

namespace {

cclab::Matrix random_symmetric(std::size_t n, std::uint64_t seed) {
    std::uint64_t state = seed;
    auto next = [&]() {
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        return static_cast<int>((state >> 33) % 7) - 3;
    };
    cclab::Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            const double v = next();
            m(i, j) = v;
            m(j, i) = v;
        }
    return m;
}

void BM_SymEigen(benchmark::State& state) {
    const auto m = random_symmetric(static_cast<std::size_t>(state.range(0)), 42);
    for (auto _ : state) {
        auto dec = cclab::sym_eigen(m);
        benchmark::DoNotOptimize(dec);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SymEigen)->RangeMultiplier(2)->Range(8, 64)->Complexity();

void BM_CommonEigenHeawood(benchmark::State& state) {
    const auto a = cclab::corpus::heawood_adjacency();
    const std::vector<cclab::Matrix> family{a, cclab::Matrix::identity(14)};
    for (auto _ : state) {
        auto dec = cclab::common_eigen(family);
        benchmark::DoNotOptimize(dec);
    }
}
BENCHMARK(BM_CommonEigenHeawood);

void BM_ExactSpanGram(benchmark::State& state) {
    const auto n = cclab::corpus::fano_incidence();
    const auto j = cclab::Matrix::ones(7, 7);
    const std::vector<cclab::Matrix> family{n * n.transpose(), (j - n) * (j - n).transpose(),
                                            cclab::Matrix::identity(7), j};
    for (auto _ : state) {
        auto dim = cclab::span_dimension(family);
        benchmark::DoNotOptimize(dim);
    }
}
BENCHMARK(BM_ExactSpanGram);

} // namespace
