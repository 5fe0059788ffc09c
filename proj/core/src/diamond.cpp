#include "coxkl/diamond.hpp"

#include <algorithm>

#include "coxkl/error.hpp"
#include "coxkl/interval.hpp"

namespace coxkl {

const char* to_string(ClosureMode mode)
{
  return mode == ClosureMode::Strict ? "strict" : "weak";
}

std::optional<ClosureMode> parse_closure_mode(std::string_view text)
{
  if (text == "strict")
    return ClosureMode::Strict;
  if (text == "weak")
    return ClosureMode::Weak;
  return std::nullopt;
}

DiamondIndex::DiamondIndex(const BruhatGraph& graph, ClosureMode mode) : graph_(&graph), mode_(mode)
{
  if (mode == ClosureMode::Strict) {
    for (const auto& c : four_cycles(graph))
      diamonds_.push_back(c.edges);
  } else {
    for (const auto& q : length2_quadruples(graph.interval())) {
      std::array<std::size_t, 4> ids{};
      const auto covers = q.covers();
      for (std::size_t i = 0; i < 4; ++i) {
        auto e = graph.edge_between(covers[i].first, covers[i].second);
        if (!e)
          throw Error(Errc::ConstructionFailed, "cover relation missing from the Bruhat graph");
        ids[i] = *e;
      }
      diamonds_.push_back(ids);
    }
  }
  target_ = EdgeSet(graph.edge_count());
  for (std::size_t id = 0; id < graph.edge_count(); ++id)
    if (mode == ClosureMode::Strict || graph.edge(id).length == 1)
      target_.set(id);
  by_edge_.assign(graph.edge_count(), {});
  for (std::size_t d = 0; d < diamonds_.size(); ++d)
    for (auto e : diamonds_[d])
      by_edge_[e].push_back(d);
}

void DiamondIndex::run(EdgeSet& set, std::vector<std::size_t> queue, std::vector<ClosureStep>* steps) const
{
  std::size_t head = 0;
  while (head < queue.size()) {
    const std::size_t e = queue[head++];
    for (auto d : by_edge_[e]) {
      const auto& c = diamonds_[d];
      bool fire = false;
      for (std::size_t i = 0; i < 4 && !fire; ++i)
        fire = set.test(c[i]) && set.test(c[(i + 1) % 4]);
      if (!fire)
        continue;
      ClosureStep step{d, {}};
      for (auto x : c)
        if (set.set(x)) {
          queue.push_back(x);
          step.added.push_back(x);
        }
      if (steps && !step.added.empty())
        steps->push_back(std::move(step));
    }
  }
}

EdgeSet DiamondIndex::closure(const EdgeSet& f) const
{
  EdgeSet out = f;
  run(out, f.ids(), nullptr);
  return out;
}

void DiamondIndex::extend(EdgeSet& closed, std::size_t edge) const
{
  if (closed.set(edge))
    run(closed, {edge}, nullptr);
}

std::vector<ClosureStep> DiamondIndex::trace(const EdgeSet& f) const
{
  std::vector<ClosureStep> steps;
  EdgeSet work = f;
  run(work, f.ids(), &steps);
  return steps;
}

EdgeSet diamond_closure(const BruhatGraph& graph, const EdgeSet& f, ClosureMode mode)
{
  return DiamondIndex(graph, mode).closure(f);
}

bool is_diamond_generating(const BruhatGraph& graph, const EdgeSet& f, ClosureMode mode)
{
  return DiamondIndex(graph, mode).generates(f);
}

std::vector<ClosureStep> closure_trace(const BruhatGraph& graph, const EdgeSet& f, ClosureMode mode)
{
  return DiamondIndex(graph, mode).trace(f);
}

EdgeSet path_edges(const BruhatGraph& graph, const Path& path)
{
  return EdgeSet(graph.edge_count(), path.edges);
}

FSet f_uv(const BruhatGraph& graph, const KLEngine& kl, const ReflectionOrder& order)
{
  const Interval& iv = graph.interval();
  IncreasingPaths paths(graph, order);

  std::vector<Root> labels;
  for (const auto& e : graph.edges())
    labels.push_back(e.label);
  if (!is_deodhar_on(paths.order(), iv.top(), labels))
    throw Error(Errc::NotDeodhar, "N(" + format_word(iv.top().word()) + ") is not an initial section");

  FSet out{EdgeSet(graph.edge_count()), paths.longest(0, iv.top_index()), {}};
  for (auto x : out.longest.vertices)
    out.d_along.push_back(kl.d_invariant(iv.element(x), iv.top()));
  for (std::size_t i = 0; i < out.longest.edges.size(); ++i)
    if (out.d_along[i] == out.d_along[i + 1] + 1)
      out.edges.set(out.longest.edges[i]);
  return out;
}

namespace {

struct Search {
  const DiamondIndex& index;
  std::vector<std::size_t> candidates;
  std::uint64_t nodes = 0;
  std::uint64_t limit = 0;
  std::vector<std::size_t> chosen;

  // Picks `need` more candidates from position `start` on. A candidate that
  // already lies in the closure is never useful in a minimum set.
  bool choose(const EdgeSet& closed, std::size_t start, std::size_t need)
  {
    if (index.reaches_target(closed))
      return true;
    if (need == 0)
      return false;
    for (std::size_t i = start; i < candidates.size(); ++i) {
      const std::size_t e = candidates[i];
      if (closed.test(e))
        continue;
      if (++nodes > limit)
        throw Error(Errc::Budget, "node limit reached");
      EdgeSet next = closed;
      index.extend(next, e);
      chosen.push_back(e);
      if (choose(next, i + 1, need - 1))
        return true;
      chosen.pop_back();
    }
    return false;
  }
};

std::vector<std::size_t> candidate_edges(const DiamondIndex& index, bool restrict_len1)
{
  const BruhatGraph& g = index.graph();
  std::vector<std::size_t> out;
  for (std::size_t id = 0; id < g.edge_count(); ++id)
    if (index.target().test(id) && (!restrict_len1 || g.edge(id).length == 1))
      out.push_back(id);
  std::stable_sort(out.begin(), out.end(),
                   [&](std::size_t a, std::size_t b) { return g.edge(a).length > g.edge(b).length; });
  return out;
}

EdgeSet chain_seed(const BruhatGraph& g)
{
  const Interval& iv = g.interval();
  EdgeSet out(g.edge_count());
  std::size_t x = 0;
  while (x != iv.top_index()) {
    const std::size_t y = iv.covers_up(x).front();
    out.set(*g.edge_between(x, y));
    x = y;
  }
  return out;
}

} // namespace

GMinResult g_min(const DiamondIndex& index, const GMinOptions& options)
{
  const BruhatGraph& g = index.graph();
  GMinResult result;
  result.lower_bound = options.lower_bound;
  if (g.edge_count() == 0) {
    result.certificate = EdgeSet(0);
    return result;
  }

  auto usable = [&](const EdgeSet& s) {
    if (s.universe() != g.edge_count() || !index.generates(s))
      return false;
    if (options.restrict_len1)
      for (auto id : s.ids())
        if (g.edge(id).length != 1)
          return false;
    return true;
  };

  EdgeSet best;
  if (options.upper_seed && usable(*options.upper_seed))
    best = *options.upper_seed;
  else if (EdgeSet chain = chain_seed(g); usable(chain))
    best = chain;
  else {
    best = EdgeSet(g.edge_count(), candidate_edges(index, options.restrict_len1));
    if (!index.generates(best))
      throw Error(Errc::PreconditionViolated, "the candidate edges do not generate");
  }
  result.upper_seed = best.count();

  Search search{index, candidate_edges(index, options.restrict_len1), 0, options.node_limit, {}};
  const std::size_t lo = std::max<std::size_t>(options.lower_bound, 1);
  for (std::size_t k = lo; k < best.count(); ++k) {
    search.chosen.clear();
    bool found = false;
    try {
      found = search.choose(EdgeSet(g.edge_count()), 0, k);
    } catch (const Error& e) {
      if (e.code() != Errc::Budget)
        throw;
      throw Error(Errc::Budget, "node limit " + std::to_string(options.node_limit) + " reached; bounds " +
                                    std::to_string(k) + " <= g <= " + std::to_string(best.count()));
    }
    if (found) {
      best = EdgeSet(g.edge_count(), search.chosen);
      break;
    }
  }
  result.size = best.count();
  result.certificate = std::move(best);
  result.nodes = search.nodes;
  return result;
}

bool no_generating_set_below(const DiamondIndex& index, std::size_t k, bool restrict_len1)
{
  const BruhatGraph& g = index.graph();
  if (g.edge_count() == 0)
    return k == 0;
  if (k == 0)
    return true;
  // choose() succeeds as soon as the closure is full, so one call with
  // k - 1 picks also covers every smaller size.
  Search search{index, candidate_edges(index, restrict_len1), 0, UINT64_MAX, {}};
  if (search.choose(EdgeSet(g.edge_count()), 0, k - 1))
    return false;
  return true;
}

} // namespace coxkl
