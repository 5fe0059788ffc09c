#include "coxkl/paths.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <sstream>

#include "coxkl/error.hpp"

namespace coxkl {

namespace {
constexpr std::size_t kNoRank = std::numeric_limits<std::size_t>::max();
}

bool Path::contains(std::size_t vertex) const
{
  return std::find(vertices.begin(), vertices.end(), vertex) != vertices.end();
}

ElementPath to_element_path(const BruhatGraph& graph, const Path& path)
{
  ElementPath out;
  for (auto v : path.vertices)
    out.vertices.push_back(graph.interval().element(v));
  for (auto e : path.edges)
    out.labels.push_back(graph.edge(e).label);
  return out;
}

Path to_graph_path(const BruhatGraph& graph, const ElementPath& path)
{
  Path out;
  for (const auto& x : path.vertices) {
    auto idx = graph.interval().index_of(x);
    if (!idx)
      throw Error(Errc::PreconditionViolated, "vertex " + format_word(x.word()) + " is outside the interval");
    out.vertices.push_back(*idx);
  }
  for (std::size_t i = 0; i + 1 < out.vertices.size(); ++i) {
    auto e = graph.edge_between(out.vertices[i], out.vertices[i + 1]);
    if (!e || graph.edge(*e).from != out.vertices[i])
      throw Error(Errc::PreconditionViolated, "consecutive vertices are not joined by an upward edge");
    out.edges.push_back(*e);
  }
  return out;
}

IncreasingPaths::IncreasingPaths(const BruhatGraph& graph, const ReflectionOrder& order)
    : graph_(&graph), order_(order)
{
  std::vector<Root> labels;
  for (const auto& e : graph.edges())
    labels.push_back(e.label);
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());

  std::vector<Root> ranked;
  try {
    ranked = order_.sorted(labels);
  } catch (const Error& e) {
    if (e.code() != Errc::TieUnresolved)
      throw;
    order_ = order_.reseeded(order_.seed() + 1);
    ranked = order_.sorted(labels);
  }

  std::map<Root, std::size_t> position;
  for (std::size_t i = 0; i < ranked.size(); ++i)
    position.emplace(ranked[i], i);
  rank_.resize(graph.edge_count());
  for (std::size_t id = 0; id < graph.edge_count(); ++id)
    rank_[id] = position.at(graph.edge(id).label);

  sorted_out_.resize(graph.vertex_count());
  for (std::size_t v = 0; v < graph.vertex_count(); ++v) {
    sorted_out_[v] = graph.out_edges(v);
    std::sort(sorted_out_[v].begin(), sorted_out_[v].end(),
              [&](std::size_t a, std::size_t b) { return rank_[a] < rank_[b]; });
  }
}

bool IncreasingPaths::is_increasing(const Path& path) const
{
  for (std::size_t i = 0; i + 1 < path.edges.size(); ++i)
    if (rank_[path.edges[i]] >= rank_[path.edges[i + 1]])
      return false;
  return true;
}

template <class Visit>
void IncreasingPaths::dfs(std::size_t to, int budget, Path& cur, std::size_t last_rank, bool use_budget,
                          Visit& visit) const
{
  const std::size_t x = cur.vertices.back();
  if (x == to) {
    if (!use_budget || budget == 0)
      visit(cur);
    return;
  }
  const Interval& iv = graph_->interval();
  for (auto id : sorted_out_[x]) {
    if (last_rank != kNoRank && rank_[id] <= last_rank)
      continue;
    const auto& e = graph_->edge(id);
    if (!iv.leq(e.to, to))
      continue;
    if (use_budget) {
      // Each remaining edge has odd length >= 1.
      const int rest = iv.rank(to) - iv.rank(e.to);
      if (budget - 1 > rest || (budget - 1 - rest) % 2 != 0 || (budget - 1 == 0) != (rest == 0))
        continue;
    }
    cur.vertices.push_back(e.to);
    cur.edges.push_back(id);
    dfs(to, budget - 1, cur, rank_[id], use_budget, visit);
    cur.vertices.pop_back();
    cur.edges.pop_back();
    if constexpr (requires { visit.done; })
      if (visit.done)
        return;
  }
}

std::vector<Path> IncreasingPaths::all(std::size_t from, std::size_t to) const
{
  std::vector<Path> out;
  if (!graph_->interval().leq(from, to))
    return out;
  Path cur{{from}, {}};
  auto visit = [&](const Path& p) { out.push_back(p); };
  dfs(to, 0, cur, kNoRank, false, visit);
  return out;
}

std::vector<Path> IncreasingPaths::of_length(std::size_t from, std::size_t to, int k) const
{
  std::vector<Path> out;
  if (!graph_->interval().leq(from, to) || k < 0)
    return out;
  Path cur{{from}, {}};
  auto visit = [&](const Path& p) { out.push_back(p); };
  dfs(to, k, cur, kNoRank, true, visit);
  return out;
}

IntPoly IncreasingPaths::generating_polynomial(std::size_t from, std::size_t to) const
{
  std::vector<mpz_class> counts;
  for (const auto& p : all(from, to)) {
    const auto k = static_cast<std::size_t>(p.length());
    if (counts.size() <= k)
      counts.resize(k + 1, 0);
    counts[k] += 1;
  }
  return IntPoly(std::move(counts));
}

std::optional<Path> IncreasingPaths::lex_minimal(std::size_t from, std::size_t to) const
{
  if (!graph_->interval().leq(from, to))
    return std::nullopt;
  struct First {
    std::optional<Path> found;
    bool done = false;
    void operator()(const Path& p)
    {
      found = p;
      done = true;
    }
  } visit;
  Path cur{{from}, {}};
  dfs(to, 0, cur, kNoRank, false, visit);
  return visit.found;
}

Path IncreasingPaths::longest(std::size_t from, std::size_t to) const
{
  const Interval& iv = graph_->interval();
  const int len = iv.rank(to) - iv.rank(from);
  auto found = of_length(from, to, len);
  if (found.size() != 1)
    throw Error(Errc::MultipleLongest, std::to_string(found.size()) + " increasing paths of length " +
                                           std::to_string(len) + " from " + format_word(iv.element(from).word()) +
                                           " to " + format_word(iv.element(to).word()));
  auto lex = lex_minimal(from, to);
  if (!lex || *lex != found.front())
    throw Error(Errc::MultipleLongest, "longest increasing path is not the lexicographically first one");
  return found.front();
}

std::vector<Path> IncreasingPaths::second_length(std::size_t from, std::size_t to) const
{
  const Interval& iv = graph_->interval();
  return of_length(from, to, iv.rank(to) - iv.rank(from) - 2);
}

std::optional<std::size_t> divergence_vertex(const Path& path, const Path& longest)
{
  if (longest.vertices.empty() || path.vertices.empty() || path.vertices.front() != longest.vertices.front())
    return std::nullopt;
  for (std::size_t i = 0; i + 1 < longest.vertices.size(); ++i)
    if (!path.contains(longest.vertices[i + 1]))
      return i;
  return std::nullopt;
}

ElementPath s_gamma(const CoxeterSystem& sys, const ElementPath& gamma, int s, const ReflectionOrder& order)
{
  if (gamma.vertices.empty() || gamma.vertices.size() != gamma.labels.size() + 1)
    throw Error(Errc::PreconditionViolated, "malformed path");
  if (order.minimal_simple() != s)
    throw Error(Errc::PreconditionViolated, "alpha_" + std::to_string(s + 1) + " is not the minimal root");
  const Element su = sys.mul_gen(gamma.vertices.front(), s, Side::Left);
  for (const auto& x : gamma.vertices)
    if (x == su)
      throw Error(Errc::PreconditionViolated, "s*u is a vertex of the path");

  ElementPath out;
  for (const auto& x : gamma.vertices)
    out.vertices.push_back(sys.mul_gen(x, s, Side::Left));
  for (const auto& b : gamma.labels)
    out.labels.push_back(sys.reflect(s, b));

  const ReflectionOrder up = order.upper_conjugate(s);
  for (std::size_t i = 0; i < out.labels.size(); ++i) {
    const Element& a = out.vertices[i];
    const Element& b = out.vertices[i + 1];
    const auto root = sys.reflection_root(b.action() * a.inverse_action());
    if (b.length() <= a.length() || !root || *root != out.labels[i])
      throw Error(Errc::ConstructionFailed, "translated step " + std::to_string(i) + " is not an upward edge");
    if (i > 0 && !up.less(out.labels[i - 1], out.labels[i]))
      throw Error(Errc::ConstructionFailed, "translated labels are not increasing");
  }
  return out;
}

std::string format_path(const BruhatGraph& graph, const Path& path)
{
  std::ostringstream os;
  os << "len=" << path.length() << "; labels=";
  for (std::size_t i = 0; i < path.edges.size(); ++i)
    os << (i ? "|" : "") << graph.edge(path.edges[i]).label.to_string();
  os << "; vertices=";
  for (std::size_t i = 0; i < path.vertices.size(); ++i)
    os << (i ? "|" : "") << format_word(graph.interval().element(path.vertices[i]).word());
  return os.str();
}

} // namespace coxkl
