#include <benchmark/benchmark.h>

#include <random>

#include "subtower/abvass.hpp"
#include "subtower/corpus.hpp"
#include "subtower/encoders.hpp"
#include "subtower/prover.hpp"
#include "subtower/translate.hpp"

using namespace subtower;

static void BM_ParseFormula(benchmark::State& st) {
  for (auto _ : st)
    benchmark::DoNotOptimize(parse_formula("!(p -o q) * (q & 1) -o !p -o (q + 0)", Polarity::Intuitionistic));
}
BENCHMARK(BM_ParseFormula);

static void BM_RandomFormula(benchmark::State& st) {
  Grammar g = Grammar::of(Polarity::Classical, lang::classical_full(), {"p", "q"});
  std::mt19937_64 rng(1);
  for (auto _ : st) benchmark::DoNotOptimize(random_formula_up_to(g, static_cast<std::size_t>(st.range(0)), rng));
}
BENCHMARK(BM_RandomFormula)->Arg(10)->Arg(30);

static void BM_ClosureEnumeration(benchmark::State& st) {
  Grammar g = Grammar::of(Polarity::Intuitionistic, lang::intuitionistic_full(), {"p"});
  for (auto _ : st)
    benchmark::DoNotOptimize(formulas_by_closure(g, static_cast<std::size_t>(st.range(0)), 1000000));
}
BENCHMARK(BM_ClosureEnumeration)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_ProveBck(benchmark::State& st) {
  Sequent s = parse_sequent("p -o q, q -o p -o q, p |- q", Side::Intuitionistic);
  for (auto _ : st) benchmark::DoNotOptimize(prove_bck(s));
}
BENCHMARK(BM_ProveBck);

static void BM_ProveLLW(benchmark::State& st) {
  System sys = system_by_name("LLW");
  Sequent s = parse_sequent("|- ?(p^ * p^), !p | !p, p^", Side::Classical);
  for (auto _ : st) benchmark::DoNotOptimize(prove(sys, s));
}
BENCHMARK(BM_ProveLLW)->Unit(benchmark::kMicrosecond);

static void BM_EncodeAndSearch(benchmark::State& st) {
  Formula f = parse_formula("!(p -o p) -o !p -o p * p", Polarity::Intuitionistic);
  Variant v = st.range(0) == 0 ? Variant::E : Variant::IPrime;
  for (auto _ : st) {
    EncodedMachine em = encode_formula(f, v);
    Config root = sequent_to_config(em, Sequent::intuitionistic({}, f));
    benchmark::DoNotOptimize(search_deduction(em.machine, em.leaves(), root, true));
  }
}
BENCHMARK(BM_EncodeAndSearch)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

static void BM_HandBuiltBvass(benchmark::State& st) {
  auto cases = hand_built_bvass();
  for (auto _ : st)
    for (const BvassCase& c : cases)
      benchmark::DoNotOptimize(search_deduction(c.machine, c.leaves, c.root, true));
}
BENCHMARK(BM_HandBuiltBvass)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
