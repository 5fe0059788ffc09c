#include <gtest/gtest.h>

#include <random>

#include "coxkl/bruhat_graph.hpp"
#include "coxkl/corpus.hpp"
#include "coxkl/diamond.hpp"
#include "coxkl/error.hpp"
#include "coxkl/kl.hpp"
#include "coxkl/poset.hpp"
#include "coxkl/supporting_chain.hpp"
#include "oracles.hpp"

using namespace coxkl;

namespace {

BruhatGraph graph(const CoxeterSystem& sys, const Element& u, const Element& v)
{
  return BruhatGraph::build(Interval::build(sys, u, v));
}

EdgeSet chain_edges(const BruhatGraph& g, const std::vector<std::size_t>& chain)
{
  EdgeSet out(g.edge_count());
  for (std::size_t i = 0; i + 1 < chain.size(); ++i)
    out.set(*g.edge_between(chain[i], chain[i + 1]));
  return out;
}

EdgeSet random_subset(std::size_t universe, std::mt19937_64& rng, double p)
{
  std::bernoulli_distribution coin(p);
  EdgeSet out(universe);
  for (std::size_t i = 0; i < universe; ++i)
    if (coin(rng))
      out.set(i);
  return out;
}

} // namespace

TEST(EdgeSet, Algebra)
{
  EdgeSet a(70, {1, 65});
  EdgeSet b(70, {1, 2});
  EXPECT_EQ((a | b).count(), 3u);
  EXPECT_EQ((a & b).ids(), std::vector<std::size_t>{1});
  EXPECT_EQ((a - b).ids(), std::vector<std::size_t>{65});
  EXPECT_TRUE((a & b).subset_of(a));
  EXPECT_FALSE(a.subset_of(b));
  EXPECT_TRUE(EdgeSet::full(70).is_full());
  EXPECT_FALSE(a.set(1));
  EXPECT_TRUE(a.set(3));
  a.reset(3);
  EXPECT_FALSE(a.test(3));
  EXPECT_THROW(a |= EdgeSet(5), Error);
}

TEST(Closure, Examples)
{
  auto sys = oracle::system("A3");
  const Element v = sys->element({0, 1, 2, 1, 0});
  const auto g = graph(*sys, sys->identity(), v);
  const std::size_t m = g.edge_count();
  for (auto mode : {ClosureMode::Strict, ClosureMode::Weak}) {
    EXPECT_EQ(diamond_closure(g, EdgeSet::full(m), mode), EdgeSet::full(m));
    EXPECT_TRUE(diamond_closure(g, EdgeSet(m), mode).empty());
    EXPECT_FALSE(is_diamond_generating(g, EdgeSet(m), mode));
    EXPECT_TRUE(closure_trace(g, EdgeSet::full(m), mode).empty());
  }
  std::size_t chains = 0;
  for_each_maximal_chain(g.interval(), [&](const std::vector<std::size_t>& c) {
    EXPECT_EQ(diamond_closure(g, chain_edges(g, c), ClosureMode::Strict), EdgeSet::full(m));
    EXPECT_TRUE(is_diamond_generating(g, chain_edges(g, c), ClosureMode::Weak));
    ++chains;
  });
  EXPECT_GT(chains, 0u);
}

TEST(Closure, ChainOnDiamondTakesOneStep)
{
  auto sys = oracle::system("A2");
  const auto g = graph(*sys, sys->identity(), sys->element({0, 1}));
  const auto chain = maximal_chains(g.interval()).front();
  const auto steps = closure_trace(g, chain_edges(g, chain), ClosureMode::Strict);
  ASSERT_EQ(steps.size(), 1u);
  EXPECT_EQ(steps[0].added.size(), 2u);
}

TEST(Closure, MatchesNaiveFixedPointAndLaws)
{
  std::mt19937_64 rng(2024);
  for (const char* name : {"A3", "B3"}) {
    auto sys = oracle::system(name);
    for (const auto& p : corpus_pairs(*sys, {.max_interval_length = 4})) {
      const auto g = graph(*sys, p.u, p.v);
      const std::size_t m = g.edge_count();
      const DiamondIndex strict(g, ClosureMode::Strict);
      const DiamondIndex weak(g, ClosureMode::Weak);
      ASSERT_EQ(strict.diamonds().size(), oracle::quadruple_cycles(g).size());
      ASSERT_EQ(weak.diamonds().size(), oracle::weak_diamonds(g).size());
      for (int trial = 0; trial < 6; ++trial) {
        const EdgeSet f = random_subset(m, rng, 0.3);
        const EdgeSet h = f | random_subset(m, rng, 0.2);
        for (const DiamondIndex* idx : {&strict, &weak}) {
          const EdgeSet c = idx->closure(f);
          ASSERT_EQ(c, oracle::closure(g, f, idx->mode()));
          ASSERT_TRUE(f.subset_of(c));
          ASSERT_EQ(idx->closure(c), c);
          ASSERT_TRUE(c.subset_of(idx->closure(h)));
          EdgeSet replay = f;
          for (const auto& step : idx->trace(f))
            for (auto e : step.added) {
              ASSERT_FALSE(replay.test(e));
              replay.set(e);
            }
          ASSERT_EQ(replay, c);
        }
        ASSERT_TRUE(weak.closure(f).subset_of(strict.closure(f)));
      }
    }
  }
}

TEST(Closure, IncrementalExtendMatchesFullClosure)
{
  auto sys = oracle::system("B3");
  std::mt19937_64 rng(5);
  for (const auto& p : corpus_pairs(*sys, {.max_interval_length = 5})) {
    const auto g = graph(*sys, p.u, p.v);
    if (g.edge_count() == 0)
      continue;
    const DiamondIndex idx(g, ClosureMode::Strict);
    EdgeSet f = random_subset(g.edge_count(), rng, 0.2);
    EdgeSet closed = idx.closure(f);
    std::uniform_int_distribution<std::size_t> pick(0, g.edge_count() - 1);
    const std::size_t e = pick(rng);
    idx.extend(closed, e);
    f.set(e);
    ASSERT_EQ(closed, idx.closure(f));
  }
}

TEST(FSet, A3ReflectionInterval)
{
  auto sys = oracle::system("A3");
  KLEngine kl(*sys);
  const Element v = sys->element({0, 1, 2, 1, 0});
  const auto g = graph(*sys, sys->identity(), v);
  const FSet f = f_uv(g, kl, ReflectionOrder::deodhar(*sys, v));
  EXPECT_EQ(f.edges.count(), 3u);
  EXPECT_TRUE(is_diamond_generating(g, f.edges, ClosureMode::Strict));
  const auto steps = closure_trace(g, f.edges, ClosureMode::Strict);
  EdgeSet replay = f.edges;
  for (const auto& s : steps)
    for (auto e : s.added)
      replay.set(e);
  EXPECT_TRUE(replay.is_full());
  ASSERT_EQ(f.d_along.size(), 6u);
  EXPECT_EQ(f.d_along.front(), 3);
  EXPECT_EQ(f.d_along.back(), 0);
}

TEST(FSet, SingleEdge)
{
  auto sys = oracle::system("A2");
  KLEngine kl(*sys);
  const Element s = sys->generator_element(0);
  const auto g = graph(*sys, sys->identity(), s);
  const FSet f = f_uv(g, kl, ReflectionOrder::deodhar(*sys, s));
  EXPECT_EQ(f.edges.ids(), std::vector<std::size_t>{0});
}

TEST(FSet, RequiresDeodharOrder)
{
  auto sys = oracle::system("A3");
  KLEngine kl(*sys);
  const Element v = sys->element({0, 1, 2, 1, 0});
  const auto g = graph(*sys, sys->identity(), v);
  try {
    f_uv(g, kl, ReflectionOrder::deodhar(*sys, sys->generator_element(1)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotDeodhar);
  }
}

TEST(GMin, SmallCases)
{
  auto sys = oracle::system("A2");
  const auto edge = graph(*sys, sys->identity(), sys->generator_element(0));
  const auto r1 = g_min(DiamondIndex(edge, ClosureMode::Strict));
  EXPECT_EQ(r1.size, 1u);
  EXPECT_EQ(r1.certificate.ids(), std::vector<std::size_t>{0});

  const auto diamond = graph(*sys, sys->identity(), sys->element({0, 1}));
  // Brute force over all 16 subsets of the 4 edges.
  std::size_t best = 5;
  for (unsigned mask = 0; mask < 16; ++mask) {
    EdgeSet f(4);
    for (std::size_t i = 0; i < 4; ++i)
      if (mask >> i & 1u)
        f.set(i);
    if (oracle::closure(diamond, f, ClosureMode::Strict).is_full())
      best = std::min(best, f.count());
  }
  const auto r2 = g_min(DiamondIndex(diamond, ClosureMode::Strict));
  EXPECT_EQ(best, 2u);
  EXPECT_EQ(r2.size, best);
  EXPECT_TRUE(is_diamond_generating(diamond, r2.certificate, ClosureMode::Strict));
}

TEST(GMin, CrownInterval)
{
  auto sys = oracle::system("A3");
  KLEngine kl(*sys);
  const Element u = sys->generator_element(1);
  const Element v = sys->element({1, 0, 2, 1});
  const auto g = graph(*sys, u, v);
  // Ranks 1, 4, 4, 1 with a crown in the middle and no long edges.
  const auto& iv = g.interval();
  EXPECT_EQ(iv.size(), 10u);
  EXPECT_EQ(iv.covers_up(0).size(), 4u);
  EXPECT_EQ(g.edge_count(), iv.cover_count());
  EXPECT_EQ(kl.d_invariant(u, v), 3);

  const DiamondIndex idx(g, ClosureMode::Strict);
  const auto r = g_min(idx);
  EXPECT_EQ(r.size, 3u);
  EXPECT_TRUE(no_generating_set_below(idx, 3));
  // Any three of the four bottom edges generate.
  std::vector<std::size_t> bottom;
  for (auto a : iv.covers_up(0))
    bottom.push_back(*g.edge_between(0, a));
  for (std::size_t skip = 0; skip < 4; ++skip) {
    EdgeSet red(g.edge_count());
    for (std::size_t i = 0; i < 4; ++i)
      if (i != skip)
        red.set(bottom[i]);
    EXPECT_TRUE(idx.generates(red));
    EXPECT_TRUE(oracle::closure(g, red, ClosureMode::Strict).is_full());
  }
}

TEST(GMin, EqualsDOnA3)
{
  auto sys = oracle::system("A3");
  KLEngine kl(*sys);
  for (const auto& p : corpus_pairs(*sys)) {
    const auto g = graph(*sys, p.u, p.v);
    const auto d = static_cast<std::size_t>(kl.d_invariant(p.u, p.v));
    const FSet f = f_uv(g, kl, ReflectionOrder::deodhar(*sys, p.v));
    ASSERT_EQ(f.edges.count(), d);
    const DiamondIndex idx(g, ClosureMode::Strict);
    ASSERT_TRUE(idx.generates(f.edges));
    GMinOptions opts;
    opts.upper_seed = f.edges;
    const auto r = g_min(idx, opts);
    ASSERT_EQ(r.size, d);
    ASSERT_TRUE(idx.generates(r.certificate));
    ASSERT_EQ(r.certificate.count(), d);
    if (p.length() <= 4)
      ASSERT_TRUE(no_generating_set_below(idx, d));
  }
}

TEST(GMin, BudgetReportsBounds)
{
  auto sys = oracle::system("B3");
  const Element v = sys->longest_element();
  const auto g = graph(*sys, sys->identity(), v);
  GMinOptions opts;
  opts.node_limit = 1;
  try {
    g_min(DiamondIndex(g, ClosureMode::Strict), opts);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::Budget);
    EXPECT_NE(std::string(e.what()).find("bound"), std::string::npos) << e.what();
  }
}

TEST(SupportingChain, WrongBranchOnSingleEdge)
{
  auto sys = oracle::system("A2");
  KLEngine kl(*sys);
  const Element s = sys->generator_element(0);
  try {
    supporting_chain(kl, sys->identity(), s, ReflectionOrder::deodhar(*sys, s));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::WrongBranch);
  }
}

TEST(SupportingChain, EveryOtherBranchCaseInA3)
{
  auto sys = oracle::system("A3");
  KLEngine kl(*sys);
  std::size_t built = 0;
  for (const auto& p : corpus_pairs(*sys)) {
    if (p.length() < 2)
      continue;
    const auto order = ReflectionOrder::deodhar(*sys, p.v);
    const auto g = graph(*sys, p.u, p.v);
    const Path longest = IncreasingPaths(g, order).longest(0, g.vertex_count() - 1);
    const Element& x1 = g.interval().element(longest.vertices[1]);
    if (kl.d_invariant(p.u, p.v) == kl.d_invariant(x1, p.v) + 1)
      continue;
    const SupportingChain c = supporting_chain(kl, p.u, p.v, order);
    ASSERT_NO_THROW(check_supporting_chain(*sys, c));
    ASSERT_EQ(c.elements.front(), x1);
    const Element& top = c.elements.back();
    ASSERT_TRUE(sys->bruhat_leq(top, c.z));
    ASSERT_TRUE(sys->bruhat_leq(c.y, top));
    ASSERT_EQ(top.length(), c.y.length() + 1);
    for (std::size_t i = 0; i < c.elements.size(); ++i)
      ASSERT_EQ(c.elements[i].length(), c.witnesses[i].length() + 1);
    ++built;
  }
  EXPECT_GT(built, 0u);
}

TEST(GMin, MatchesBruteForceSubsets)
{
  for (const char* name : {"A3", "B3", "G2"}) {
    auto sys = oracle::system(name);
    for (const auto& p : corpus_pairs(*sys, {.max_interval_length = 4})) {
      const auto g = graph(*sys, p.u, p.v);
      const std::size_t m = g.edge_count();
      if (m == 0 || m > 14)
        continue;
      for (auto mode : {ClosureMode::Strict, ClosureMode::Weak}) {
        std::size_t best = m + 1;
        for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
          if (static_cast<std::size_t>(__builtin_popcount(mask)) >= best)
            continue;
          EdgeSet f(m);
          for (std::size_t i = 0; i < m; ++i)
            if (mask >> i & 1u)
              f.set(i);
          const EdgeSet c = oracle::closure(g, f, mode);
          bool covers = true;
          for (std::size_t i = 0; i < m; ++i)
            covers = covers && (c.test(i) || (mode == ClosureMode::Weak && g.edge(i).length > 1));
          if (covers)
            best = f.count();
        }
        ASSERT_EQ(g_min(DiamondIndex(g, mode)).size, best) << name << " " << format_word(p.u.word()) << " "
                                                            << format_word(p.v.word());
      }
    }
  }
}
