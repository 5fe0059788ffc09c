#include "coxkl/supporting_chain.hpp"

#include <algorithm>

#include "coxkl/bruhat_graph.hpp"
#include "coxkl/error.hpp"

namespace coxkl {

namespace {

bool on_path(const ElementPath& p, const Element& x)
{
  return std::find(p.vertices.begin(), p.vertices.end(), x) != p.vertices.end();
}

bool is_cover(const CoxeterSystem& sys, const Element& lo, const Element& hi)
{
  return hi.length() == lo.length() + 1 && sys.bruhat_leq(lo, hi);
}

[[noreturn]] void fail(const std::string& what)
{
  throw Error(Errc::ConstructionFailed, what);
}

std::string w(const Element& x)
{
  return format_word(x.word());
}

} // namespace

void check_supporting_chain(const CoxeterSystem& sys, SupportingChain const& c)
{
  const auto& els = c.elements;
  if (els.empty())
    fail("empty chain");
  if (c.longest.vertices.size() < 2 || els.front() != c.longest.vertices[1])
    fail("chain does not start at x_1");
  const Element& u = c.longest.vertices.front();
  const Element& v = c.longest.vertices.back();
  for (std::size_t i = 0; i < els.size(); ++i) {
    if (!sys.bruhat_leq(u, els[i]) || !sys.bruhat_leq(els[i], v))
      fail("chain element " + w(els[i]) + " outside [u, v]");
    if (i > 0 && !is_cover(sys, els[i - 1], els[i]))
      fail("chain is not saturated at " + w(els[i]));
    if (on_path(c.gamma, els[i]))
      fail("chain meets the second-length path at " + w(els[i]));
    if (i >= c.witnesses.size() || !on_path(c.gamma, c.witnesses[i]) || !is_cover(sys, c.witnesses[i], els[i]))
      fail("chain element " + w(els[i]) + " covers no vertex of the second-length path");
  }
  const Element& top = els.back();
  if (!is_cover(sys, c.y, top) || !sys.bruhat_leq(top, c.z))
    fail("chain maximum " + w(top) + " is not an atom of [" + w(c.y) + ", " + w(c.z) + "]");
}

SupportingChain supporting_chain(const KLEngine& kl, const Element& u, const Element& v, const ReflectionOrder& order)
{
  const CoxeterSystem& sys = kl.system();
  BruhatGraph graph = BruhatGraph::build(Interval::build(sys, u, v));
  const Interval& iv = graph.interval();
  if (iv.length() < 1)
    throw Error(Errc::PreconditionViolated, "interval of length 0");
  IncreasingPaths paths(graph, order);
  std::vector<Root> labels;
  for (const auto& e : graph.edges())
    labels.push_back(e.label);
  if (!is_deodhar_on(paths.order(), v, labels))
    throw Error(Errc::NotDeodhar, "N(" + w(v) + ") is not an initial section");

  const Path g0 = paths.longest(0, iv.top_index());
  const Element& x1 = iv.element(g0.vertices[1]);
  const auto d_uv = kl.d_invariant(u, v);
  const auto d_x1v = kl.d_invariant(x1, v);
  if (d_uv == d_x1v + 1)
    throw Error(Errc::WrongBranch, "d drops along the first edge of the longest path");
  if (d_uv != d_x1v)
    fail("d_{u,v} - d_{x_1,v} = " + std::to_string(d_uv - d_x1v) + " under a Deodhar order");

  std::vector<Path> diverging;
  for (auto& p : paths.second_length(0, iv.top_index()))
    if (divergence_vertex(p, g0) == std::size_t{0})
      diverging.push_back(std::move(p));
  if (diverging.size() != 1)
    fail(std::to_string(diverging.size()) + " second-length paths diverge at u");
  const Path& gp = diverging.front();

  std::size_t long_step = gp.edges.size();
  for (std::size_t i = 0; i < gp.edges.size(); ++i) {
    const int len = graph.edge(gp.edges[i]).length;
    if (len == 1)
      continue;
    if (len != 3 || long_step != gp.edges.size())
      fail("second-length path " + format_path(graph, gp) + " does not have exactly one edge of length 3");
    long_step = i;
  }
  if (long_step == gp.edges.size())
    fail("second-length path has no edge of length 3");

  SupportingChain out;
  out.longest = to_element_path(graph, g0);
  out.gamma = to_element_path(graph, gp);
  out.y = out.gamma.vertices[long_step];
  out.z = out.gamma.vertices[long_step + 1];
  // y_0 .. y_r
  const std::vector<Element> ys(out.gamma.vertices.begin(), out.gamma.vertices.begin() + long_step + 1);

  const int s = paths.order().minimal_simple();
  if (!sys.is_descent(v, s, Side::Left))
    fail("minimal root alpha_" + std::to_string(s + 1) + " is not a left descent of v");
  auto left = [&](const Element& x) { return sys.mul_gen(x, s, Side::Left); };

  std::vector<Element> chain;
  if (!sys.is_descent(u, s, Side::Left)) {
    for (const auto& y : ys)
      chain.push_back(left(y));
  } else {
    const ReflectionOrder up = paths.order().upper_conjugate(s);
    SupportingChain sub;
    try {
      sub = supporting_chain(kl, left(u), left(v), up);
    } catch (const Error& e) {
      if (e.code() == Errc::WrongBranch || e.code() == Errc::NotDeodhar)
        fail("recursion on [su, sv] left the branch: " + std::string(e.what()));
      throw;
    }
    const ElementPath sg = s_gamma(sys, out.gamma, s, paths.order());
    if (sub.gamma.vertices != sg.vertices)
      fail("second-length path of [su, sv] is not s*gamma");
    for (const auto& c : sub.elements)
      chain.push_back(left(c));
    if (!sys.is_descent(out.y, s, Side::Left)) {
      std::size_t j = 0;
      while (j < ys.size() && sys.is_descent(ys[j], s, Side::Left))
        ++j;
      for (std::size_t i = j; i < ys.size(); ++i) {
        if (sys.is_descent(ys[i], s, Side::Left))
          fail("descent pattern along [u, y] is not a prefix");
        chain.push_back(left(ys[i]));
      }
    }
  }

  std::sort(chain.begin(), chain.end(), [](const Element& a, const Element& b) {
    return a.length() != b.length() ? a.length() < b.length() : shortlex_less(a, b);
  });
  out.elements = std::move(chain);
  for (const auto& c : out.elements) {
    auto it = std::find_if(out.gamma.vertices.begin(), out.gamma.vertices.end(),
                           [&](const Element& g) { return is_cover(sys, g, c); });
    if (it == out.gamma.vertices.end())
      fail("chain element " + w(c) + " covers no vertex of the second-length path");
    out.witnesses.push_back(*it);
  }
  check_supporting_chain(sys, out);
  return out;
}

} // namespace coxkl
