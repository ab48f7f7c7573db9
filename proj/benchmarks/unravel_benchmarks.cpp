#include <benchmark/benchmark.h>

#include "unravel/certificates.hpp"
#include "unravel/dnf.hpp"
#include "unravel/generators.hpp"
#include "unravel/greedy.hpp"
#include "unravel/optimal.hpp"

using namespace unravel;

namespace {

void bm_greedy_unravel(benchmark::State& state) {
    auto kind = static_cast<update_kind>(state.range(0));
    auto p = random_profile(static_cast<int>(state.range(1)), language_tag::boolean, 3, 0.5,
                            42);
    for (auto _ : state) {
        benchmark::DoNotOptimize(unravel::unravel(p, kind, 7));
    }
}
BENCHMARK(bm_greedy_unravel)
    ->ArgsProduct({{0, 1, 2, 3}, {10, 50, 200}})
    ->ArgNames({"kind", "n"});

void bm_minsum_exact(benchmark::State& state) {
    auto p = random_profile(static_cast<int>(state.range(0)), language_tag::boolean, 3, 0.5,
                            42);
    for (auto _ : state) {
        benchmark::DoNotOptimize(minsum_exact(p));
    }
}
BENCHMARK(bm_minsum_exact)->Arg(6)->Arg(8)->Arg(10);

void bm_edmonds(benchmark::State& state) {
    auto p = random_profile(static_cast<int>(state.range(0)), language_tag::liquid, 3, 0.7,
                            42);
    auto g = build_delegation_graph(p);
    for (auto _ : state) {
        benchmark::DoNotOptimize(edmonds_arborescence(g));
    }
}
BENCHMARK(bm_edmonds)->Arg(20)->Arg(100)->Arg(400);

void bm_necessary_winner(benchmark::State& state) {
    auto f = dnf::complete_dnf::parse("a&b | a&c | b&d | c&~d | ~a&~b&e");
    dnf::partial_assignment x{{"a", true}, {"d", false}};
    for (auto _ : state) {
        benchmark::DoNotOptimize(necessary_winner(f, x));
    }
}
BENCHMARK(bm_necessary_winner);

void bm_enumerate_branches(benchmark::State& state) {
    auto p = random_profile(static_cast<int>(state.range(0)), language_tag::liquid, 3, 0.6,
                            42);
    for (auto _ : state) {
        benchmark::DoNotOptimize(enumerate_random_branches(p, update_kind::ru));
    }
}
BENCHMARK(bm_enumerate_branches)->Arg(6)->Arg(8);

}  // namespace

BENCHMARK_MAIN();
