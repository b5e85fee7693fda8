#include <memory>
#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "hialcs/hia_baseline.hpp"
#include "hialcs/sampled.hpp"
#include "hialcs/skyline.hpp"
#include "hialcs/testing.hpp"

using namespace hialcs;
using namespace hialcs::testing;

namespace {

struct fixture {
    tree_pair tp;
    std::vector<hia_query> queries;

    explicit fixture(uint32_t n, size_t n_queries = 1024)
        : tp([&] {
              std::mt19937_64 rng(n);
              return gen_tree_pair(rng, n);
          }()) {
        std::mt19937_64 rng(n + 1);
        queries.reserve(n_queries);
        for (size_t i = 0; i < n_queries; ++i) {
            queries.push_back(gen_query(rng, tp));
        }
    }
};

void bm_baseline_query(benchmark::State& state) {
    fixture f(static_cast<uint32_t>(state.range(0)));
    hia_baseline engine(f.tp.hpd1, f.tp.hpd2, f.tp.grid);
    size_t i = 0;
    for (auto _ : state) {
        auto ans = engine.query(f.queries[i++ % f.queries.size()]);
        benchmark::DoNotOptimize(ans);
    }
}
BENCHMARK(bm_baseline_query)->RangeMultiplier(4)->Range(4, 4096);

void bm_skyline_query(benchmark::State& state) {
    fixture f(static_cast<uint32_t>(state.range(0)));
    hia_skyline engine(f.tp.hpd1, f.tp.hpd2, f.tp.grid);
    size_t i = 0;
    for (auto _ : state) {
        auto ans = engine.query(f.queries[i++ % f.queries.size()]);
        benchmark::DoNotOptimize(ans);
    }
}
BENCHMARK(bm_skyline_query)->RangeMultiplier(4)->Range(4, 4096);

void bm_sampled_query(benchmark::State& state) {
    fixture f(static_cast<uint32_t>(state.range(0)));
    hia_sampled engine(f.tp.hpd1, f.tp.hpd2, f.tp.grid,
                       static_cast<uint32_t>(state.range(1)));
    size_t i = 0;
    for (auto _ : state) {
        auto ans = engine.query(f.queries[i++ % f.queries.size()]);
        benchmark::DoNotOptimize(ans);
    }
}
BENCHMARK(bm_sampled_query)
    ->ArgsProduct({{64, 512, 4096}, {1, 4, 16, 64}});

void bm_skyline_build(benchmark::State& state) {
    fixture f(static_cast<uint32_t>(state.range(0)), 1);
    for (auto _ : state) {
        hia_skyline engine(f.tp.hpd1, f.tp.hpd2, f.tp.grid);
        benchmark::DoNotOptimize(engine.table());
    }
    state.counters["total_list_len"] = static_cast<double>(total_list_length(
        hia_skyline(f.tp.hpd1, f.tp.hpd2, f.tp.grid).table()));
}
BENCHMARK(bm_skyline_build)->RangeMultiplier(4)->Range(4, 4096);

void bm_sampled_build(benchmark::State& state) {
    fixture f(static_cast<uint32_t>(state.range(0)), 1);
    uint32_t rate = static_cast<uint32_t>(state.range(1));
    for (auto _ : state) {
        hia_sampled engine(f.tp.hpd1, f.tp.hpd2, f.tp.grid, rate);
        benchmark::DoNotOptimize(engine.table());
    }
    state.counters["stored_bytes"] = static_cast<double>(
        hia_sampled(f.tp.hpd1, f.tp.hpd2, f.tp.grid, rate).stored_bytes());
}
BENCHMARK(bm_sampled_build)->ArgsProduct({{512, 4096}, {1, 16, 64}});

} // namespace

BENCHMARK_MAIN();
