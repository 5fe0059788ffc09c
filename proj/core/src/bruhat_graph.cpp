#include "coxkl/bruhat_graph.hpp"

#include <algorithm>

#include "coxkl/error.hpp"

namespace coxkl {

BruhatGraph BruhatGraph::build(Interval interval)
{
  BruhatGraph g(std::move(interval));
  const Interval& iv = g.interval_;
  const CoxeterSystem& sys = iv.system();
  const std::size_t n = iv.size();
  g.out_.assign(n, {});
  g.in_.assign(n, {});
  g.adj_.assign(n, {});
  g.edge_index_.assign(n * n, -1);

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const Element& x = iv.element(i);
      const Element& y = iv.element(j);
      const int len = y.length() - x.length();
      if (len <= 0 || len % 2 == 0)
        continue;
      // y x^{-1} = t_beta
      auto beta = sys.reflection_root(y.action() * x.inverse_action());
      if (!beta)
        continue;
      const std::size_t id = g.edges_.size();
      g.edges_.push_back({i, j, std::move(*beta), len});
      g.out_[i].push_back(id);
      g.in_[j].push_back(id);
      g.adj_[i].emplace_back(j, id);
      g.adj_[j].emplace_back(i, id);
      g.edge_index_[i * n + j] = g.edge_index_[j * n + i] = static_cast<int>(id);
    }
  return g;
}

std::optional<std::size_t> BruhatGraph::edge_between(std::size_t a, std::size_t b) const
{
  const int id = edge_index_[a * vertex_count() + b];
  if (id < 0)
    return std::nullopt;
  return static_cast<std::size_t>(id);
}

std::vector<std::size_t> BruhatGraph::edges_within(std::size_t lo, std::size_t hi) const
{
  std::vector<std::size_t> out;
  for (std::size_t id = 0; id < edges_.size(); ++id) {
    const auto& e = edges_[id];
    if (interval_.leq(lo, e.from) && interval_.leq(e.to, hi))
      out.push_back(id);
  }
  return out;
}

std::vector<FourCycle> four_cycles(const BruhatGraph& graph)
{
  // Each cycle a-b-c-d is reported from its minimum vertex a, with c the
  // vertex opposite a and b < d.
  std::vector<FourCycle> out;
  const std::size_t n = graph.vertex_count();
  std::vector<std::size_t> common;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t c = a + 1; c < n; ++c) {
      common.clear();
      for (const auto& [b, eab] : graph.neighbours(a))
        if (b > a && b != c && graph.edge_between(b, c))
          common.push_back(b);
      std::sort(common.begin(), common.end());
      for (std::size_t p = 0; p < common.size(); ++p)
        for (std::size_t q = p + 1; q < common.size(); ++q) {
          const std::size_t b = common[p];
          const std::size_t d = common[q];
          FourCycle cyc;
          cyc.vertices = {a, b, c, d};
          cyc.edges = {*graph.edge_between(a, b), *graph.edge_between(b, c), *graph.edge_between(c, d),
                       *graph.edge_between(d, a)};
          out.push_back(cyc);
        }
    }
  return out;
}

} // namespace coxkl
