#include <benchmark/benchmark.h>

#include <memory>
#include <string>

#include "coxkl/bruhat_graph.hpp"
#include "coxkl/corpus.hpp"
#include "coxkl/coxeter.hpp"
#include "coxkl/diamond.hpp"
#include "coxkl/kl.hpp"
#include "coxkl/paths.hpp"
#include "coxkl/poset.hpp"

using namespace coxkl;

namespace {

std::unique_ptr<CoxeterSystem> system(const std::string& name)
{
  return load_system(std::string(COXKL_SYSTEMS_DIR) + "/" + name + ".json");
}

void BM_KLPolysColdCache(benchmark::State& state)
{
  auto sys = system("B3");
  const auto pairs = corpus_pairs(*sys);
  for (auto _ : state) {
    KLEngine kl(*sys);
    for (const auto& p : pairs)
      benchmark::DoNotOptimize(kl.kl_poly(p.u, p.v));
  }
  state.SetItemsProcessed(state.iterations() * pairs.size());
}
BENCHMARK(BM_KLPolysColdCache)->Unit(benchmark::kMillisecond);

void BM_IntervalAndGraph(benchmark::State& state)
{
  auto sys = system("B3");
  const Element w0 = sys->longest_element();
  for (auto _ : state)
    benchmark::DoNotOptimize(BruhatGraph::build(Interval::build(*sys, sys->identity(), w0)).edge_count());
}
BENCHMARK(BM_IntervalAndGraph)->Unit(benchmark::kMillisecond);

void BM_IncreasingPaths(benchmark::State& state)
{
  auto sys = system("B3");
  const Element w0 = sys->longest_element();
  const auto g = BruhatGraph::build(Interval::build(*sys, sys->identity(), w0));
  const auto order = ReflectionOrder::deodhar(*sys, w0);
  for (auto _ : state) {
    IncreasingPaths paths(g, order);
    benchmark::DoNotOptimize(paths.generating_polynomial(0, g.interval().top_index()));
  }
}
BENCHMARK(BM_IncreasingPaths)->Unit(benchmark::kMillisecond);

void BM_CanonicalForm(benchmark::State& state)
{
  auto sys = system("B3");
  const auto iv = Interval::build(*sys, sys->identity(), sys->longest_element());
  const auto poset = GradedPoset::from_interval(iv);
  for (auto _ : state)
    benchmark::DoNotOptimize(poset_canonical_form(poset).form);
}
BENCHMARK(BM_CanonicalForm)->Unit(benchmark::kMillisecond);

void BM_GMinLength(benchmark::State& state)
{
  // Every A3 interval of the given length: f_uv as the seed, no lower bound.
  auto sys = system("A3");
  KLEngine kl(*sys);
  std::vector<BruhatGraph> graphs;
  for (const auto& p : corpus_pairs(*sys))
    if (p.length() == state.range(0))
      graphs.push_back(BruhatGraph::build(Interval::build(*sys, p.u, p.v)));
  for (auto _ : state)
    for (const auto& g : graphs) {
      const DiamondIndex idx(g, ClosureMode::Strict);
      GMinOptions o;
      o.upper_seed = f_uv(g, kl, ReflectionOrder::deodhar(*sys, g.interval().top())).edges;
      benchmark::DoNotOptimize(g_min(idx, o).size);
    }
  state.SetItemsProcessed(state.iterations() * graphs.size());
}
BENCHMARK(BM_GMinLength)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);

void BM_Closure(benchmark::State& state)
{
  auto sys = system("B3");
  const auto g = BruhatGraph::build(Interval::build(*sys, sys->identity(), sys->longest_element()));
  const DiamondIndex idx(g, ClosureMode::Strict);
  const auto chain = maximal_chains(g.interval()).front();
  EdgeSet f(g.edge_count());
  for (std::size_t i = 0; i + 1 < chain.size(); ++i)
    f.set(*g.edge_between(chain[i], chain[i + 1]));
  for (auto _ : state)
    benchmark::DoNotOptimize(idx.closure(f).count());
}
BENCHMARK(BM_Closure)->Unit(benchmark::kMicrosecond);

} // namespace

BENCHMARK_MAIN();
