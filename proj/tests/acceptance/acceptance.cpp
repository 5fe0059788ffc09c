// Prints one PASS/FAIL line per acceptance criterion; exits 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <memory>
#include <mutex>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "coxkl/bruhat_graph.hpp"
#include "coxkl/corpus.hpp"
#include "coxkl/coxeter.hpp"
#include "coxkl/diamond.hpp"
#include "coxkl/error.hpp"
#include "coxkl/kl.hpp"
#include "coxkl/paths.hpp"
#include "coxkl/reflection_order.hpp"
#include "coxkl_cli/invariance.hpp"
#include "coxkl_cli/parallel.hpp"
#include "coxkl_cli/suites.hpp"

using namespace coxkl;
using namespace coxkl::cli;

namespace {

struct Loaded {
  std::unique_ptr<CoxeterSystem> sys;
  std::unique_ptr<KLEngine> kl;
  std::vector<CorpusPair> corpus;
};

Loaded load(const std::string& name, CorpusOptions opts = {})
{
  Loaded l;
  l.sys = load_system(std::string(COXKL_SYSTEMS_DIR) + "/" + name + ".json");
  l.kl = std::make_unique<KLEngine>(*l.sys);
  l.corpus = corpus_pairs(*l.sys, opts);
  return l;
}

std::string where(const CorpusPair& p)
{
  return "[" + format_word(p.u.word()) + ", " + format_word(p.v.word()) + "]";
}

/// Collects the first failure; counts checks.
struct Tally {
  std::size_t checked = 0;
  std::size_t failed = 0;
  std::string first;
  void fail(const std::string& what)
  {
    if (failed++ == 0)
      first = what;
  }
  void expect(bool ok, const std::string& what)
  {
    ++checked;
    if (!ok)
      fail(what);
  }
};

BruhatGraph graph_of(const CoxeterSystem& sys, const CorpusPair& p)
{
  return BruhatGraph::build(Interval::build(sys, p.u, p.v));
}

int failures = 0;

void report(int n, const std::string& title, const std::function<Tally()>& body)
{
  const auto t0 = std::chrono::steady_clock::now();
  Tally t;
  try {
    t = body();
  } catch (const std::exception& e) {
    t.fail(std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool ok = t.failed == 0 && t.checked > 0;
  if (!ok)
    ++failures;
  std::ostringstream line;
  line << (ok ? "PASS" : "FAIL") << " criterion " << n << ": " << title << " (" << t.checked << " checks";
  if (t.failed)
    line << ", " << t.failed << " failed; first: " << t.first;
  if (t.checked == 0)
    line << ", nothing checked";
  line << ", " << std::fixed;
  line.precision(2);
  line << secs << " s)";
  std::cout << line.str() << std::endl;
}

Tally criterion1()
{
  const auto t0 = std::chrono::steady_clock::now();
  Tally t;
  auto a3 = load("A3", {.max_interval_length = 0});
  const Element v = a3.sys->element({0, 1, 2, 1, 0});
  const Element e = a3.sys->identity();
  const Element s2 = a3.sys->generator_element(1);
  t.expect(a3.kl->d_invariant(e, v) == 3, "d_invariant(e, v) != 3");
  t.expect(a3.kl->d_via_recurrence(e, v) == 3, "d_via_recurrence(e, v) != 3");
  t.expect(a3.kl->d_invariant(s2, v) == 4, "d_invariant(s2, v) != 4");
  t.expect(a3.kl->d_via_recurrence(s2, v) == 4, "d_via_recurrence(s2, v) != 4");
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  t.expect(secs < 1.0, "took " + std::to_string(secs) + " s");
  return t;
}

Tally criterion2()
{
  Tally t;
  std::mutex m;
  auto run = [&](Loaded& l) {
    parallel_for(l.corpus.size(), default_threads(), [&](std::size_t i) {
      const auto& p = l.corpus[i];
      const auto g = graph_of(*l.sys, p);
      const auto d = static_cast<std::size_t>(l.kl->d_invariant(p.u, p.v));
      const FSet f = f_uv(g, *l.kl, ReflectionOrder::deodhar(*l.sys, p.v));
      const DiamondIndex idx(g, ClosureMode::Strict);
      GMinOptions o;
      o.upper_seed = f.edges;
      const auto gm = g_min(idx, o);
      const bool generates = idx.generates(f.edges) && idx.generates(gm.certificate);
      const bool exhaustive = p.length() > 4 || no_generating_set_below(idx, d);
      std::lock_guard lock(m);
      t.expect(f.edges.count() == d, l.sys->name() + " " + where(p) + ": |f| != d");
      t.expect(gm.size == d, l.sys->name() + " " + where(p) + ": g != d");
      t.expect(generates, l.sys->name() + " " + where(p) + ": set does not generate");
      if (p.length() <= 4)
        t.expect(exhaustive, l.sys->name() + " " + where(p) + ": generating set smaller than d");
    });
  };
  auto a3 = load("A3");
  auto b3 = load("B3", {.max_interval_length = 6});
  run(a3);
  run(b3);
  return t;
}

std::vector<ReflectionOrder> five_orders(const CoxeterSystem& sys, const Element& v)
{
  std::vector<ReflectionOrder> out{ReflectionOrder::deodhar(sys, v)};
  for (std::uint64_t seed = 101; seed <= 104; ++seed)
    out.push_back(ReflectionOrder::random(sys, seed));
  return out;
}

Tally criterion3()
{
  Tally t;
  auto a3 = load("A3");
  for (const auto& p : a3.corpus) {
    const auto g = graph_of(*a3.sys, p);
    const IntPoly rt = a3.kl->rtilde_poly(p.u, p.v);
    for (const auto& order : five_orders(*a3.sys, p.v)) {
      IncreasingPaths paths(g, order);
      t.expect(paths.generating_polynomial(0, g.interval().top_index()) == rt,
               where(p) + " seed " + std::to_string(order.seed()));
    }
  }
  return t;
}

Tally criterion4()
{
  Tally t;
  for (const char* name : {"A3", "B3"}) {
    auto l = load(name);
    for (const auto& p : l.corpus) {
      if (p.length() < 1)
        continue;
      const auto g = graph_of(*l.sys, p);
      const std::size_t top = g.interval().top_index();
      IncreasingPaths paths(g, ReflectionOrder::deodhar(*l.sys, p.v));
      const Path longest = paths.longest(0, top);
      std::vector<std::int64_t> d;
      for (auto x : longest.vertices)
        d.push_back(l.kl->d_invariant(g.interval().element(x), p.v));
      for (std::size_t i = 0; i + 1 < d.size(); ++i)
        t.expect(d[i] >= d[i + 1], std::string(name) + " " + where(p) + ": d increases along the longest path");
      std::int64_t at_u = 0;
      for (const auto& gamma : paths.second_length(0, top))
        if (divergence_vertex(gamma, longest) == std::optional<std::size_t>(0))
          ++at_u;
      t.expect(at_u == d[1] - d[0] + 1, std::string(name) + " " + where(p) + ": diverging count");
    }
  }
  // An order with alpha_2 minimal is not Deodhar for v, and the gap becomes -1.
  auto a3 = load("A3", {.max_interval_length = 0});
  const Element v = a3.sys->element({0, 1, 2, 1, 0});
  const auto order = ReflectionOrder::deodhar(*a3.sys, a3.sys->generator_element(1));
  t.expect(order.minimal_simple() == 1, "alpha_2 is not minimal");
  const auto g = BruhatGraph::build(Interval::build(*a3.sys, a3.sys->identity(), v));
  const Path longest = IncreasingPaths(g, order).longest(0, g.interval().top_index());
  const Element& x1 = g.interval().element(longest.vertices[1]);
  t.expect(a3.kl->d_invariant(a3.sys->identity(), v) - a3.kl->d_invariant(x1, v) == -1,
           "counterexample gap is not -1 (x1 = " + format_word(x1.word()) + ")");
  return t;
}

struct InvarianceRun {
  std::vector<Loaded> systems;
  InvarianceReport report;
};

InvarianceRun& invariance()
{
  static InvarianceRun run = [] {
    InvarianceRun r;
    r.systems.push_back(load("A3"));
    r.systems.push_back(load("B3"));
    r.systems.push_back(load("affine_A1", {.max_interval_length = -1, .max_element_length = 8}));
    std::vector<Corpus> corpora;
    for (const auto& l : r.systems)
      corpora.push_back({l.kl.get(), l.corpus});
    InvarianceOptions o;
    o.full_length = 6;
    o.threads = default_threads();
    r.report = classify_intervals(corpora, o);
    return r;
  }();
  return run;
}

std::string first_mismatch(const InvarianceReport& rep)
{
  for (const auto& c : rep.classes)
    if (c.mismatch)
      return c.detail;
  return {};
}

Tally criterion5()
{
  Tally t;
  const auto& rep = invariance().report;
  std::size_t compared = 0;
  for (const auto& c : rep.classes)
    if (c.length <= 6)
      compared += c.members.size() - 1;
  t.checked += compared;
  t.expect(rep.full_mismatches == 0, first_mismatch(rep));
  t.expect(rep.digraph_mismatches == 0, first_mismatch(rep));
  std::cout << "  " << rep.members.size() << " intervals in " << rep.classes.size() << " classes\n";
  return t;
}

Tally criterion6()
{
  Tally t;
  const auto& rep = invariance().report;
  for (const auto& c : rep.classes)
    t.checked += c.members.size() - 1;
  t.expect(rep.coefficient_mismatches == 0, first_mismatch(rep));
  std::size_t members = 0;
  for (const auto& c : rep.classes)
    members += c.members.size();
  t.expect(members == rep.members.size(), "classes do not partition the corpus");
  return t;
}

Tally criterion7()
{
  Tally t;
  for (const auto& l : invariance().systems)
    for (const auto& p : l.corpus) {
      const auto r = l.kl->d_incarnations(p.u, p.v);
      t.expect(r.all(), l.sys->name() + " " + where(p));
    }
  return t;
}

Tally criterion8()
{
  Tally t;
  std::mutex m;
  auto a3 = load("A3", {.max_interval_length = 5});
  parallel_for(a3.corpus.size(), default_threads(), [&](std::size_t i) {
    const auto& p = a3.corpus[i];
    const auto g = graph_of(*a3.sys, p);
    const auto d = static_cast<std::size_t>(a3.kl->d_invariant(p.u, p.v));
    const DiamondIndex strict(g, ClosureMode::Strict);
    const DiamondIndex weak(g, ClosureMode::Weak);
    GMinOptions len1;
    len1.restrict_len1 = true;
    const auto gs = g_min(strict).size;
    const auto g1 = g_min(strict, len1).size;
    const auto gw = g_min(weak).size;
    std::lock_guard lock(m);
    t.expect(gs == d && g1 == d && gw == d, where(p) + ": g, g', g'' = " + std::to_string(gs) + ", " +
                                                std::to_string(g1) + ", " + std::to_string(gw) + " but d = " +
                                                std::to_string(d));
  });
  return t;
}

Tally criterion9()
{
  Tally t;
  // Closure laws, 200 random sets per graph, both modes.
  for (const auto& l : invariance().systems)
    for (const auto& p : l.corpus) {
      const auto g = graph_of(*l.sys, p);
      const std::size_t m = g.edge_count();
      if (m == 0)
        continue;
      const DiamondIndex strict(g, ClosureMode::Strict);
      const DiamondIndex weak(g, ClosureMode::Weak);
      std::mt19937_64 rng(m * 7919 + p.v.length());
      std::bernoulli_distribution coin(0.25);
      bool ok = true;
      for (int seed = 0; seed < 200 && ok; ++seed) {
        EdgeSet f(m), h(m);
        for (std::size_t e = 0; e < m; ++e) {
          if (coin(rng))
            f.set(e);
          if (f.test(e) || coin(rng))
            h.set(e);
        }
        for (const DiamondIndex* idx : {&strict, &weak}) {
          const EdgeSet c = idx->closure(f);
          ok = ok && f.subset_of(c) && idx->closure(c) == c && c.subset_of(idx->closure(h));
        }
        ok = ok && weak.closure(f).subset_of(strict.closure(f));
      }
      t.expect(ok, "closure laws on " + l.sys->name() + " " + where(p));
    }
  // Order axiom on every rank-2 cone triple of positive roots.
  for (const char* name : {"A3", "B3"}) {
    auto l = load(name, {.max_interval_length = 0});
    const auto roots = l.sys->positive_roots();
    for (const auto& v : enumerate_elements(*l.sys, 6)) {
      const std::string bad = check_order_axiom(ReflectionOrder::deodhar(*l.sys, v), roots);
      t.expect(bad.empty(), std::string(name) + " Deodhar order for " + format_word(v.word()) + ": " + bad);
    }
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const std::string bad = check_order_axiom(ReflectionOrder::random(*l.sys, seed), roots);
      t.expect(bad.empty(), std::string(name) + " random order " + std::to_string(seed) + ": " + bad);
    }
  }
  // Unique longest increasing path for every interval and order.
  for (const auto& l : invariance().systems)
    for (const auto& p : l.corpus) {
      const auto g = graph_of(*l.sys, p);
      std::vector<ReflectionOrder> orders{ReflectionOrder::deodhar(*l.sys, p.v)};
      if (l.sys->is_finite())
        orders = five_orders(*l.sys, p.v);
      for (const auto& order : orders) {
        IncreasingPaths paths(g, order);
        const auto top = g.interval().top_index();
        bool ok = paths.of_length(0, top, p.length()).size() == 1;
        try {
          paths.longest(0, top);
        } catch (const Error&) {
          ok = false;
        }
        t.expect(ok, "longest path on " + l.sys->name() + " " + where(p) + " seed " + std::to_string(order.seed()));
      }
    }
  return t;
}

} // namespace

int main()
{
  report(1, "d of [e, s1s2s3s2s1] and [s2, s1s2s3s2s1] in A3", criterion1);
  report(2, "d = |f| = g on A3 and B3 (length <= 6)", criterion2);
  report(3, "increasing paths sum to R-tilde under 5 orders on A3", criterion3);
  report(4, "diverging counts and d along longest paths; non-Deodhar counterexample", criterion4);
  report(5, "isomorphic intervals of length <= 6 share P, R, R-tilde", criterion5);
  report(6, "isomorphic intervals share the four low/high coefficients", criterion6);
  report(7, "coefficient identities for d on every corpus interval", criterion7);
  report(8, "g = g' = g'' = d on A3 intervals of length <= 5", criterion8);
  report(9, "closure laws, order axiom, unique longest path", criterion9);
  return failures == 0 ? 0 : 1;
}
