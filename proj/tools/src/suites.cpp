#include "coxkl_cli/suites.hpp"

#include <chrono>
#include <functional>
#include <optional>
#include <random>
#include <unordered_set>

#include "coxkl/bruhat_graph.hpp"
#include "coxkl/diamond.hpp"
#include "coxkl/error.hpp"
#include "coxkl/paths.hpp"
#include "coxkl/supporting_chain.hpp"
#include "coxkl_cli/parallel.hpp"

namespace coxkl::cli {

namespace {

struct Verdict {
  enum State { Pass, Skip, Fail } state = Pass;
  std::string message;
};

Verdict pass() { return {}; }
Verdict skip() { return {Verdict::Skip, {}}; }
Verdict fail(std::string m) { return {Verdict::Fail, std::move(m)}; }

struct Ctx {
  const KLEngine& kl;
  const CoxeterSystem& sys;
  const CorpusPair& pair;
  const BruhatGraph& graph;
  const VerifyOptions& opt;
  std::vector<ReflectionOrder> orders; // Deodhar for v first, then random ones

  const Interval& iv() const { return graph.interval(); }
  int len() const { return iv().length(); }
};

std::string w(const Element& x)
{
  return format_word(x.word());
}

using Check = std::function<Verdict(Ctx&)>;

std::unordered_set<Element, ElementHash> subword_products(const CoxeterSystem& sys, const Word& word)
{
  std::unordered_set<Element, ElementHash> out{sys.identity()};
  for (int s : word) {
    std::vector<Element> next;
    for (const auto& x : out)
      next.push_back(sys.mul_gen(x, s, Side::Right));
    out.insert(next.begin(), next.end());
  }
  return out;
}

Verdict inversion_sets(Ctx& c)
{
  const Element& v = c.pair.v;
  const auto nv = c.sys.inversion_set(v);
  if (static_cast<int>(nv.size()) != v.length())
    return fail("|N(v)| != l(v) for v = " + w(v));
  for (int s = 0; s < c.sys.rank(); ++s) {
    const Element vs = c.sys.mul_gen(v, s, Side::Right);
    const auto nvs = c.sys.inversion_set(vs);
    bool subset = true;
    for (const auto& b : nv)
      subset = subset && std::find(nvs.begin(), nvs.end(), b) != nvs.end();
    if (subset != (vs.length() > v.length()))
      return fail("N(v) subset of N(vs) disagrees with lengths at v = " + w(v));
  }
  return pass();
}

Verdict subword_oracle(Ctx& c)
{
  if (c.pair.v.length() > c.opt.subword_length)
    return skip();
  // [u, v] = { x in subwords(v) : u in subwords(x) }
  std::size_t expected = 0;
  for (const auto& x : subword_products(c.sys, c.pair.v.word())) {
    const auto below = subword_products(c.sys, x.word());
    if (!below.count(c.pair.u))
      continue;
    ++expected;
    if (!c.iv().index_of(x))
      return fail("subword element " + w(x) + " missing from the interval");
  }
  if (expected != c.iv().size())
    return fail("interval has " + std::to_string(c.iv().size()) + " elements, oracle " + std::to_string(expected));
  return pass();
}

Verdict graph_edges(Ctx& c)
{
  const Interval& iv = c.iv();
  std::size_t found = 0;
  for (std::size_t i = 0; i < iv.size(); ++i)
    for (std::size_t j = 0; j < iv.size(); ++j) {
      if (!iv.leq(i, j) || i == j)
        continue;
      const Element& x = iv.element(i);
      const Element& y = iv.element(j);
      // A reflection t_beta has beta in N(t); search there instead of solving
      // (t + I) beta = 0.
      const Element t = c.sys.from_action(y.action() * x.inverse_action(), x.action() * y.inverse_action());
      std::optional<Root> beta;
      for (const auto& b : c.sys.inversion_set(t))
        if (c.sys.reflection_matrix(b) == t.action()) {
          beta = b;
          break;
        }
      const auto e = c.graph.edge_between(i, j);
      if (beta.has_value() != e.has_value())
        return fail("edge presence differs from reflection test at " + w(x) + " -> " + w(y));
      if (!beta)
        continue;
      ++found;
      if (c.sys.reflection_matrix(*beta) * x.action() != y.action())
        return fail("t_beta x != y for " + w(x) + " -> " + w(y));
      const auto& edge = c.graph.edge(*e);
      if (edge.label != *beta || edge.from != i || edge.to != j)
        return fail("edge data mismatch at " + w(x) + " -> " + w(y));
      if ((edge.length == 1) != iv.covers(i, j))
        return fail("length-1 edges differ from covers at " + w(x) + " -> " + w(y));
    }
  if (found != c.graph.edge_count())
    return fail("edge count mismatch");
  return pass();
}

Verdict graded(Ctx& c)
{
  std::string bad;
  const int len = c.len();
  for_each_maximal_chain(c.iv(), [&](const std::vector<std::size_t>& chain) {
    if (static_cast<int>(chain.size()) != len + 1 && bad.empty())
      bad = "maximal chain of length " + std::to_string(chain.size() - 1);
  });
  if (!bad.empty())
    return fail(bad);
  length2_quadruples(c.iv()); // throws unless every length-2 subinterval is a diamond
  return pass();
}

Verdict r_shape(Ctx& c)
{
  const IntPoly r = c.kl.r_poly(c.pair.u, c.pair.v);
  if (r.degree() != c.len() || r.coeff(c.len()) != 1)
    return fail("R is not monic of degree l(u,v): " + r.to_string());
  if (c.len() >= 1 && r.evaluate(1) != 0)
    return fail("R(1) != 0");
  return pass();
}

Verdict rtilde_shape(Ctx& c)
{
  const IntPoly rt = c.kl.rtilde_poly(c.pair.u, c.pair.v);
  if (rt.degree() != c.len() || rt.coeff(c.len()) != 1)
    return fail("R-tilde is not monic of degree l(u,v)");
  for (int i = 0; i <= rt.degree(); ++i) {
    if (rt.coeff(i) < 0)
      return fail("negative R-tilde coefficient");
    if (rt.coeff(i) != 0 && (c.len() - i) % 2 != 0)
      return fail("R-tilde exponent with the wrong parity");
  }
  if (r_from_rtilde(rt, c.len()) != c.kl.r_poly(c.pair.u, c.pair.v))
    return fail("substitution does not reproduce R");
  return pass();
}

Verdict kl_functional(Ctx& c)
{
  const Interval& iv = c.iv();
  const IntPoly p = c.kl.kl_poly(c.pair.u, c.pair.v);
  if (p.coeff(0) != 1)
    return fail("P has constant term " + p.coeff(0).get_str());
  if (c.len() > 0 && 2 * p.degree() >= c.len())
    return fail("deg P >= l/2: " + p.to_string());
  IntPoly rhs;
  for (std::size_t x = 1; x < iv.size(); ++x)
    rhs += c.kl.r_poly(c.pair.u, iv.element(x)) * c.kl.kl_poly(iv.element(x), c.pair.v);
  if (p.reversed(c.len()) - p != rhs)
    return fail("functional equation fails for P = " + p.to_string());
  return pass();
}

Verdict d_recurrence(Ctx& c)
{
  const auto d = c.kl.d_invariant(c.pair.u, c.pair.v);
  for (int s : c.sys.descents(c.pair.v, Side::Left)) {
    const auto r = c.kl.d_via_recurrence(c.pair.u, c.pair.v, s);
    if (r != d)
      return fail("recurrence through s" + std::to_string(s + 1) + " gives " + std::to_string(r) + ", d = " +
                  std::to_string(d));
  }
  if (c.pair.v.is_identity() && d != 0)
    return fail("d_{e,e} != 0");
  return pass();
}

Verdict d_incarnations(Ctx& c)
{
  const auto rep = c.kl.d_incarnations(c.pair.u, c.pair.v);
  if (!rep.all())
    return fail(std::string("identity fails:") + (rep.a ? "" : " a") + (rep.b ? "" : " b") + (rep.c ? "" : " c") +
                (rep.e ? "" : " d"));
  return pass();
}

Verdict increasing_paths(Ctx& c)
{
  const IntPoly rt = c.kl.rtilde_poly(c.pair.u, c.pair.v);
  for (const auto& order : c.orders) {
    IncreasingPaths paths(c.graph, order);
    const IntPoly sum = paths.generating_polynomial(0, c.iv().top_index());
    if (sum != rt)
      return fail("path sum " + sum.to_string() + " != R-tilde " + rt.to_string() + " (seed " +
                  std::to_string(order.seed()) + ")");
  }
  return pass();
}

Verdict longest_unique(Ctx& c)
{
  for (const auto& order : c.orders) {
    IncreasingPaths paths(c.graph, order);
    paths.longest(0, c.iv().top_index()); // throws MultipleLongest
  }
  return pass();
}

Verdict deodhar_section(Ctx& c)
{
  std::vector<Root> labels;
  for (const auto& e : c.graph.edges())
    labels.push_back(e.label);
  if (!is_deodhar_on(c.orders.front(), c.pair.v, labels))
    return fail("N(v) is not an initial section");
  return pass();
}

Verdict count_diverging(Ctx& c)
{
  if (c.len() < 1)
    return skip();
  IncreasingPaths paths(c.graph, c.orders.front());
  const Path g0 = paths.longest(0, c.iv().top_index());
  const Element& x1 = c.iv().element(g0.vertices[1]);
  std::int64_t count = 0;
  for (const auto& p : paths.second_length(0, c.iv().top_index()))
    if (divergence_vertex(p, g0) == std::size_t{0})
      ++count;
  const auto expected = c.kl.d_invariant(x1, c.pair.v) - c.kl.d_invariant(c.pair.u, c.pair.v) + 1;
  if (count != expected)
    return fail(std::to_string(count) + " paths diverge at u, expected " + std::to_string(expected));
  return pass();
}

Verdict d_decreasing(Ctx& c)
{
  IncreasingPaths paths(c.graph, c.orders.front());
  const Path g0 = paths.longest(0, c.iv().top_index());
  std::int64_t prev = c.kl.d_invariant(c.pair.u, c.pair.v);
  for (std::size_t i = 1; i < g0.vertices.size(); ++i) {
    const auto d = c.kl.d_invariant(c.iv().element(g0.vertices[i]), c.pair.v);
    if (d > prev)
      return fail("d increases along the longest path at step " + std::to_string(i));
    prev = d;
  }
  return pass();
}

Verdict f_generating(Ctx& c)
{
  const FSet f = f_uv(c.graph, c.kl, c.orders.front());
  const auto d = c.kl.d_invariant(c.pair.u, c.pair.v);
  if (static_cast<std::int64_t>(f.edges.count()) != d)
    return fail("|F| = " + std::to_string(f.edges.count()) + ", d = " + std::to_string(d));
  if (!is_diamond_generating(c.graph, f.edges, ClosureMode::Strict))
    return fail("F does not diamond-generate");
  return pass();
}

Verdict g_equals_d(Ctx& c)
{
  const auto d = static_cast<std::size_t>(c.kl.d_invariant(c.pair.u, c.pair.v));
  const FSet f = f_uv(c.graph, c.kl, c.orders.front());
  for (int variant = 0; variant < 3; ++variant) {
    const ClosureMode mode = variant == 2 ? ClosureMode::Weak : ClosureMode::Strict;
    DiamondIndex index(c.graph, mode);
    GMinOptions o;
    o.restrict_len1 = variant == 1;
    o.upper_seed = f.edges;
    o.lower_bound = d;
    const auto g = g_min(index, o);
    if (g.size != d || !index.generates(g.certificate))
      return fail(std::string(variant == 0 ? "g" : variant == 1 ? "g'" : "g''") + " = " + std::to_string(g.size) +
                  ", d = " + std::to_string(d));
  }
  return pass();
}

Verdict lower_bound(Ctx& c)
{
  if (c.len() > c.opt.exhaustive_length)
    return skip();
  const auto d = static_cast<std::size_t>(c.kl.d_invariant(c.pair.u, c.pair.v));
  DiamondIndex index(c.graph, ClosureMode::Strict);
  if (!no_generating_set_below(index, d))
    return fail("a generating set smaller than d exists");
  return pass();
}

Verdict closure_laws(Ctx& c)
{
  const std::size_t m = c.graph.edge_count();
  if (m == 0)
    return skip();
  DiamondIndex strict(c.graph, ClosureMode::Strict);
  DiamondIndex weak(c.graph, ClosureMode::Weak);
  std::mt19937_64 rng(c.opt.seed);
  for (int t = 0; t < c.opt.closure_seeds; ++t) {
    std::bernoulli_distribution coin(std::uniform_real_distribution<double>(0.05, 0.5)(rng));
    EdgeSet f(m);
    EdgeSet g(m);
    for (std::size_t e = 0; e < m; ++e) {
      if (coin(rng))
        f.set(e);
      if (coin(rng))
        g.set(e);
    }
    g |= f;
    for (const DiamondIndex* idx : {&strict, &weak}) {
      const EdgeSet cf = idx->closure(f);
      if (!f.subset_of(cf))
        return fail("closure is not extensive");
      if (idx->closure(cf) != cf)
        return fail("closure is not idempotent");
      if (!cf.subset_of(idx->closure(g)))
        return fail("closure is not monotone");
      EdgeSet replay = f;
      for (const auto& step : idx->trace(f))
        for (auto e : step.added)
          if (!replay.set(e))
            return fail("trace adds an edge twice");
      if (replay != cf)
        return fail("trace does not replay the closure");
    }
    if (!weak.closure(f).subset_of(strict.closure(f)))
      return fail("weak closure exceeds strict closure");
  }
  return pass();
}

Verdict chain_branch(Ctx& c)
{
  if (c.len() < 1)
    return skip();
  IncreasingPaths paths(c.graph, c.orders.front());
  const Path g0 = paths.longest(0, c.iv().top_index());
  const std::size_t x1 = g0.vertices[1];
  if (c.kl.d_invariant(c.pair.u, c.pair.v) != c.kl.d_invariant(c.iv().element(x1), c.pair.v))
    return skip();
  supporting_chain(c.kl, c.pair.u, c.pair.v, c.orders.front());
  DiamondIndex index(c.graph, ClosureMode::Strict);
  const EdgeSet upper(c.graph.edge_count(), c.graph.edges_within(x1, c.iv().top_index()));
  if (!index.closure(upper).test(g0.edges.front()))
    return fail("(u, x_1) is not in the closure of E_{x_1,v}");
  return pass();
}

struct Suite {
  std::string name;
  Check check;
};

const std::vector<Suite>& interval_suites()
{
  static const std::vector<Suite> suites{
      {"coxeter.inversion-sets", inversion_sets},
      {"bruhat.subword-oracle", subword_oracle},
      {"bruhat.graph-edges", graph_edges},
      {"bruhat.graded", graded},
      {"polynomials.r-shape", r_shape},
      {"polynomials.rtilde-substitution", rtilde_shape},
      {"polynomials.kl-functional-equation", kl_functional},
      {"polynomials.d-recurrence", d_recurrence},
      {"polynomials.d-incarnations", d_incarnations},
      {"orders.deodhar-initial-section", deodhar_section},
      {"orders.increasing-path-sum", increasing_paths},
      {"orders.longest-path-unique", longest_unique},
      {"orders.count-diverging", count_diverging},
      {"orders.d-decreasing", d_decreasing},
      {"diamond.closure-laws", closure_laws},
      {"diamond.f-generating", f_generating},
      {"diamond.g-equals-d", g_equals_d},
      {"diamond.no-smaller-generator", lower_bound},
      {"diamond.supporting-chain", chain_branch},
  };
  return suites;
}

void record(SuiteResult& r, const Verdict& v, const std::string& where)
{
  if (v.state == Verdict::Skip)
    return;
  ++r.checked;
  if (v.state == Verdict::Fail) {
    if (r.failed++ == 0)
      r.first_failure = where + ": " + v.message;
  }
}

} // namespace

bool in_open_cone(const Root& gamma, const Root& alpha, const Root& beta)
{
  const std::size_t n = gamma.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const std::int64_t det = alpha[i] * beta[j] - alpha[j] * beta[i];
      if (det == 0)
        continue;
      // Cramer on coordinates i, j, then confirm on the rest.
      const std::int64_t a = gamma[i] * beta[j] - gamma[j] * beta[i];
      const std::int64_t b = alpha[i] * gamma[j] - alpha[j] * gamma[i];
      for (std::size_t k = 0; k < n; ++k)
        if (a * alpha[k] + b * beta[k] != det * gamma[k])
          return false;
      return (a > 0) == (det > 0) && (b > 0) == (det > 0) && a != 0 && b != 0;
    }
  return false;
}

std::string check_order_axiom(const ReflectionOrder& order, const std::vector<Root>& roots)
{
  for (std::size_t i = 0; i < roots.size(); ++i)
    for (std::size_t j = i + 1; j < roots.size(); ++j)
      for (const auto& g : roots) {
        const Root& a = roots[i];
        const Root& b = roots[j];
        if (g == a || g == b || !in_open_cone(g, a, b))
          continue;
        const bool ag = order.less(a, g);
        const bool gb = order.less(g, b);
        if (ag != gb)
          return a.to_string() + " / " + g.to_string() + " / " + b.to_string();
      }
  return {};
}

const std::vector<std::string>& suite_names()
{
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out{"coxeter.representation", "orders.reflection-order-axiom"};
    for (const auto& s : interval_suites())
      out.push_back(s.name);
    return out;
  }();
  return names;
}

std::vector<SuiteResult> run_verify(const KLEngine& kl, const std::vector<CorpusPair>& corpus,
                                    const VerifyOptions& options)
{
  using Clock = std::chrono::steady_clock;
  const CoxeterSystem& sys = kl.system();
  std::vector<SuiteResult> results;

  {
    SuiteResult r;
    r.name = "coxeter.representation";
    const auto t0 = Clock::now();
    Verdict v;
    try {
      sys.check_representation();
    } catch (const Error& e) {
      v = fail(e.what());
    }
    record(r, v, sys.name());
    r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    results.push_back(r);
  }
  {
    SuiteResult r;
    r.name = "orders.reflection-order-axiom";
    const auto t0 = Clock::now();
    if (sys.is_finite()) {
      const auto roots = sys.positive_roots();
      std::vector<ReflectionOrder> orders;
      for (const auto& x : enumerate_elements(sys, 6))
        orders.push_back(ReflectionOrder::deodhar(sys, x, options.seed));
      for (int k = 0; k < 5; ++k)
        orders.push_back(ReflectionOrder::random(sys, options.seed + 100 + k));
      for (const auto& o : orders) {
        Verdict v;
        try {
          if (auto bad = check_order_axiom(o, roots); !bad.empty())
            v = fail("betweenness fails on " + bad);
        } catch (const Error& e) {
          v = fail(e.what());
        }
        record(r, v, "seed " + std::to_string(o.seed()));
      }
    }
    r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    results.push_back(r);
  }

  const auto& suites = interval_suites();
  std::vector<std::vector<Verdict>> verdicts(corpus.size(), std::vector<Verdict>(suites.size()));
  std::vector<std::vector<double>> seconds(corpus.size(), std::vector<double>(suites.size(), 0));
  parallel_for(corpus.size(), options.threads, [&](std::size_t i) {
    const CorpusPair& pair = corpus[i];
    const BruhatGraph graph = BruhatGraph::build(Interval::build(sys, pair.u, pair.v));
    Ctx ctx{kl, sys, pair, graph, options, {}};
    ctx.orders.push_back(ReflectionOrder::deodhar(sys, pair.v, options.seed));
    for (int k = 0; k < options.random_orders; ++k)
      ctx.orders.push_back(ReflectionOrder::random(sys, options.seed + 1000 + static_cast<std::uint64_t>(k)));
    for (std::size_t s = 0; s < suites.size(); ++s) {
      const auto t0 = Clock::now();
      try {
        verdicts[i][s] = suites[s].check(ctx);
      } catch (const std::exception& e) {
        verdicts[i][s] = fail(e.what());
      }
      seconds[i][s] = std::chrono::duration<double>(Clock::now() - t0).count();
    }
  });

  for (std::size_t s = 0; s < suites.size(); ++s) {
    SuiteResult r;
    r.name = suites[s].name;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      record(r, verdicts[i][s], "[" + w(corpus[i].u) + ", " + w(corpus[i].v) + "]");
      r.seconds += seconds[i][s];
    }
    results.push_back(r);
  }
  return results;
}

nlohmann::json verify_summary(const std::string& system, std::size_t intervals, const std::vector<SuiteResult>& results)
{
  nlohmann::json suites = nlohmann::json::array();
  bool ok = true;
  for (const auto& r : results) {
    nlohmann::json j{{"name", r.name}, {"checked", r.checked}, {"failed", r.failed}};
    if (r.failed)
      j["first_failure"] = r.first_failure;
    ok = ok && r.failed == 0;
    suites.push_back(std::move(j));
  }
  return {{"system", system}, {"intervals", intervals}, {"passed", ok}, {"suites", suites}};
}

} // namespace coxkl::cli
