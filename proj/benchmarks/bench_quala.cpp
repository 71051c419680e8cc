#include <benchmark/benchmark.h>

#include "quala/analysis.hpp"
#include "quala/closure.hpp"
#include "quala/omega.hpp"
#include "quala/prng.hpp"
#include "quala/valuation.hpp"

using namespace quala;

namespace {

WeightedAutomaton random_wa(std::uint64_t seed, int states, ValueFunctionTag tag,
                            bool deterministic) {
    SplitMix64 rng(seed);
    std::vector<State> names;
    for (int i = 0; i < states; ++i) names.push_back("q" + std::to_string(i));
    std::vector<Symbol> alphabet{"a", "b"};
    std::vector<const char*> weights{"0", "1/3", "1/2", "1"};
    std::vector<Transition> trans;
    for (const auto& q : names)
        for (const auto& s : alphabet)
            trans.push_back({q, s, names[rng.below(names.size())],
                             Rational::parse(weights[rng.below(4)])});
    if (!deterministic)
        trans.push_back({names[0], "a", names[rng.below(names.size())],
                         Rational::parse("1/2")});
    return {names, "q0", alphabet, std::move(trans), tag};
}

LassoWord bench_lasso() {
    return LassoWord{{"a", "b", "a"}, {"b", "a", "b", "b"}};
}

void BM_evaluate_limavg(benchmark::State& state) {
    auto a = random_wa(1, static_cast<int>(state.range(0)),
                       ValueFunctionTag::limavg(), false);
    auto w = bench_lasso();
    for (auto _ : state) benchmark::DoNotOptimize(evaluate_lasso(a, w));
}
BENCHMARK(BM_evaluate_limavg)->Arg(4)->Arg(16)->Arg(64);

void BM_evaluate_disc(benchmark::State& state) {
    auto a = random_wa(2, static_cast<int>(state.range(0)),
                       ValueFunctionTag::disc(Rational::parse("1/2")), false);
    auto w = bench_lasso();
    for (auto _ : state) benchmark::DoNotOptimize(evaluate_lasso(a, w));
}
BENCHMARK(BM_evaluate_disc)->Arg(4)->Arg(16)->Arg(64);

void BM_max_mean_cycle(benchmark::State& state) {
    auto a = random_wa(3, static_cast<int>(state.range(0)),
                       ValueFunctionTag::limavg(), false);
    Graph g = automaton_graph(a);
    for (auto _ : state) benchmark::DoNotOptimize(max_mean_cycle(g, 0));
}
BENCHMARK(BM_max_mean_cycle)->Arg(8)->Arg(32);

void BM_discounted_optimum(benchmark::State& state) {
    auto a = random_wa(4, static_cast<int>(state.range(0)),
                       ValueFunctionTag::disc(Rational::parse("1/2")), false);
    Graph g = automaton_graph(a);
    Rational half = Rational::parse("1/2");
    for (auto _ : state) benchmark::DoNotOptimize(discounted_optimum(g, half));
}
BENCHMARK(BM_discounted_optimum)->Arg(8)->Arg(32);

void BM_nbw_complement(benchmark::State& state) {
    SplitMix64 rng(5);
    std::vector<State> names{"s0", "s1", "s2"};
    std::vector<BooleanTransition> trans;
    for (const auto& q : names)
        for (const Symbol s : {"a", "b"})
            trans.push_back({q, s, names[rng.below(3)], rng.below(2) == 0});
    BooleanOmegaAutomaton b(names, "s0", {"a", "b"}, std::move(trans),
                            AcceptanceKind::Buchi);
    for (auto _ : state) benchmark::DoNotOptimize(nbw_complement(b));
}
BENCHMARK(BM_nbw_complement);

void BM_sum_dlsup(benchmark::State& state) {
    auto a = random_wa(6, 2, ValueFunctionTag::limsup(), true);
    auto b = random_wa(7, 2, ValueFunctionTag::limsup(), true);
    for (auto _ : state) benchmark::DoNotOptimize(sum_omega(a, b));
}
BENCHMARK(BM_sum_dlsup);

void BM_boolean_reduction(benchmark::State& state) {
    auto a = random_wa(8, static_cast<int>(state.range(0)),
                       ValueFunctionTag::limavg(), true);
    for (auto _ : state) benchmark::DoNotOptimize(boolean_weight_reduction(a));
}
BENCHMARK(BM_boolean_reduction)->Arg(4)->Arg(16);

void BM_lasso_membership(benchmark::State& state) {
    SplitMix64 rng(9);
    std::vector<State> names{"s0", "s1", "s2"};
    std::vector<BooleanTransition> trans;
    for (const auto& q : names)
        for (const Symbol s : {"a", "b"})
            trans.push_back({q, s, names[rng.below(3)], rng.below(2) == 0});
    BooleanOmegaAutomaton b(names, "s0", {"a", "b"}, std::move(trans),
                            AcceptanceKind::Buchi);
    auto comp = nbw_complement(b);
    auto w = bench_lasso();
    for (auto _ : state) benchmark::DoNotOptimize(lasso_membership(comp, w));
}
BENCHMARK(BM_lasso_membership);

}  // namespace

BENCHMARK_MAIN();
