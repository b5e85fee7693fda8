#include <random>
#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "hialcs/lcs.hpp"
#include "hialcs/testing.hpp"

using namespace hialcs;
using namespace hialcs::testing;

namespace {

std::string bench_text(size_t len, uint32_t sigma) {
    std::mt19937_64 rng(len + sigma);
    return gen_text(rng, len, sigma);
}

std::vector<std::string> bench_patterns(const std::string& s, size_t m,
                                        size_t count) {
    std::mt19937_64 rng(m);
    std::vector<std::string> out;
    out.reserve(count);
    for (size_t i = 0; i < count; ++i) {
        size_t start = rng() % s.size();
        std::string p = s.substr(start, std::min(m, s.size() - start));
        while (p.size() < m) {
            p.push_back(static_cast<char>('a' + rng() % 5));
        }
        if (!p.empty()) {
            p[rng() % p.size()] = 'z';
        }
        out.push_back(std::move(p));
    }
    return out;
}

void bm_parse(benchmark::State& state) {
    std::string s = bench_text(static_cast<size_t>(state.range(0)), 4);
    for (auto _ : state) {
        auto p = parse(s);
        benchmark::DoNotOptimize(p);
    }
    state.SetBytesProcessed(static_cast<int64_t>(state.iterations()) *
                            static_cast<int64_t>(s.size()));
}
BENCHMARK(bm_parse)->RangeMultiplier(8)->Range(1 << 10, 1 << 19);

void bm_index_build(benchmark::State& state) {
    std::string s = bench_text(static_cast<size_t>(state.range(0)), 4);
    for (auto _ : state) {
        lz_text_index idx(s);
        benchmark::DoNotOptimize(idx.grid());
    }
    lz_text_index probe(s);
    state.counters["phrases"] =
        static_cast<double>(probe.parse().phrase_count());
}
BENCHMARK(bm_index_build)->RangeMultiplier(8)->Range(1 << 10, 1 << 17);

void bm_lcs_query(benchmark::State& state) {
    std::string s = bench_text(static_cast<size_t>(state.range(0)), 4);
    lz_text_index idx(s);
    auto pats =
        bench_patterns(s, static_cast<size_t>(state.range(1)), 64);
    auto eng = static_cast<engine_choice>(state.range(2));
    size_t i = 0;
    for (auto _ : state) {
        auto res = lcs(idx, pats[i++ % pats.size()], eng);
        benchmark::DoNotOptimize(res);
    }
}
BENCHMARK(bm_lcs_query)
    ->ArgsProduct({{1 << 12, 1 << 16}, {16, 64, 200}, {0, 1, 2}});

} // namespace

BENCHMARK_MAIN();
