#include <benchmark/benchmark.h>

#include <random>

#include "fragmc/engines.hpp"
#include "fragmc/oracle.hpp"
#include "fragmc/parser.hpp"
#include "fragmc/reductions.hpp"

using namespace fragmc;

namespace {

KripkeStructure random_structure(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  KripkeBuilder b;
  for (std::size_t i = 0; i < n; ++i) b.add_state("s" + std::to_string(i));
  for (const char* p : {"p", "q", "r"}) b.declare_prop(p);
  for (std::size_t i = 0; i < n; ++i) {
    b.add_transition(i, rng() % n);
    b.add_transition(i, rng() % n);
    for (const char* p : {"p", "q", "r"})
      if (rng() % 8 == 0) b.add_label(i, p);
  }
  return b.build(Totality::Require);
}

// Alternating EF/EX chain with `k` quantifiers.
StateFormula ef_chain(int k) {
  StateFormula f = atom("p");
  for (int i = 0; i < k; ++i) f = i % 2 ? EX(disj(f, atom("q"))) : EF(conj(f, atom("r")));
  return f;
}

void BM_TopDown(benchmark::State& st) {
  auto K = random_structure(st.range(0), 1);
  auto f = ef_chain(static_cast<int>(st.range(1)));
  for (auto _ : st) {
    TopDownChecker c(K, f);
    benchmark::DoNotOptimize(c.check(0));
  }
  st.SetComplexityN(st.range(0) * static_cast<std::int64_t>(f.size()));
}
BENCHMARK(BM_TopDown)->ArgsProduct({{1000, 10000, 100000}, {8, 32}})->Complexity();

void BM_Labelling(benchmark::State& st) {
  auto K = random_structure(st.range(0), 1);
  auto f = ef_chain(static_cast<int>(st.range(1)));
  for (auto _ : st) benchmark::DoNotOptimize(check_ctl(K, f).holds(0));
  st.SetComplexityN(st.range(0) * static_cast<std::int64_t>(f.size()));
}
BENCHMARK(BM_Labelling)->ArgsProduct({{1000, 10000, 100000}, {8, 32}})->Complexity();

void BM_LabellingFixpoints(benchmark::State& st) {
  auto K = random_structure(st.range(0), 2);
  auto f = parse_formula("AG (EG p | A[q U EF r]) & E[p R AF q]");
  for (auto _ : st) benchmark::DoNotOptimize(check_ctl(K, f).holds(0));
}
BENCHMARK(BM_LabellingFixpoints)->Arg(1000)->Arg(10000)->Arg(100000);

void BM_CtlplusAex(benchmark::State& st) {
  auto K = random_structure(st.range(0), 3);
  auto f = parse_formula("A(X p | X X q | ~X r) & E(X X X (p | q) & ~X p)");
  for (auto _ : st) benchmark::DoNotOptimize(check_ctlplus_aex(K, f).holds(0));
}
BENCHMARK(BM_CtlplusAex)->Arg(1000)->Arg(10000);

void BM_CtlplusGeneral(benchmark::State& st) {
  auto K = random_structure(st.range(0), 4);
  auto f = parse_formula("E(F p & F q & G ~r) | A(F p | G q)");
  for (auto _ : st) benchmark::DoNotOptimize(check_ctlplus_general(K, f).holds(0));
}
BENCHMARK(BM_CtlplusGeneral)->Arg(100)->Arg(1000);

void BM_Oracle(benchmark::State& st) {
  auto K = random_structure(st.range(0), 5);
  auto f = parse_formula("E(F p & G (q | r))");
  for (auto _ : st) benchmark::DoNotOptimize(eval_oracle(K, 0, f));
}
BENCHMARK(BM_Oracle)->Arg(4)->Arg(8)->Arg(16);

// 3CNF diamond with m variables and 2m clauses: E over a conjunction of G-disjunctions.
void BM_CnfDiamond(benchmark::State& st) {
  std::mt19937_64 rng(6);
  Cnf c;
  c.vars = static_cast<int>(st.range(0));
  for (int j = 0; j < 2 * c.vars; ++j) {
    std::vector<int> cl;
    for (int k = 0; k < 3; ++k) cl.push_back((1 + static_cast<int>(rng() % c.vars)) * (rng() % 2 ? 1 : -1));
    c.clauses.push_back(cl);
  }
  auto h = gen_3cnf_ctlplus_eg(c);
  for (auto _ : st) benchmark::DoNotOptimize(check_ctlplus_general(h.structure, h.formula).holds(h.start));
}
BENCHMARK(BM_CnfDiamond)->DenseRange(2, 6, 2);

void BM_GraphIndex(benchmark::State& st) {
  auto K = random_structure(st.range(0), 7);
  for (auto _ : st) {
    GraphIndex idx(K);
    benchmark::DoNotOptimize(idx.scc_count());
  }
}
BENCHMARK(BM_GraphIndex)->Arg(10000)->Arg(100000);

}  // namespace

BENCHMARK_MAIN();
