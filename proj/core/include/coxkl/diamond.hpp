#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "coxkl/bruhat_graph.hpp"
#include "coxkl/edge_set.hpp"
#include "coxkl/kl.hpp"
#include "coxkl/paths.hpp"
#include "coxkl/reflection_order.hpp"

namespace coxkl {

/// Strict: every 4-cycle of the undirected Bruhat graph is a diamond, and a
/// set generates when its closure is all of E_{u,v}.
/// Weak: only the four cover edges of length-2 subintervals are diamonds.
/// Those never reach a long edge, so a set generates when its closure holds
/// every cover edge.
enum class ClosureMode { Strict, Weak };

const char* to_string(ClosureMode mode);
std::optional<ClosureMode> parse_closure_mode(std::string_view text);

/// One firing of the closure rule: a diamond and the edges it contributed.
struct ClosureStep {
  std::size_t diamond;
  std::vector<std::size_t> added;
};

/// The diamonds of a graph, indexed by edge. Edge ids of each diamond are
/// stored in cyclic order, so consecutive entries share a vertex.
class DiamondIndex {
public:
  DiamondIndex(const BruhatGraph& graph, ClosureMode mode);

  const BruhatGraph& graph() const noexcept { return *graph_; }
  ClosureMode mode() const noexcept { return mode_; }
  std::size_t edge_count() const noexcept { return graph_->edge_count(); }
  const std::vector<std::array<std::size_t, 4>>& diamonds() const noexcept { return diamonds_; }
  const std::vector<std::size_t>& diamonds_of(std::size_t edge) const { return by_edge_[edge]; }

  EdgeSet closure(const EdgeSet& f) const;
  /// Adds `edge` to an already closed set and closes again.
  void extend(EdgeSet& closed, std::size_t edge) const;
  /// Edges a generating set must reach: all of them, or the covers in weak mode.
  const EdgeSet& target() const noexcept { return target_; }
  bool reaches_target(const EdgeSet& closed) const { return target_.subset_of(closed); }
  bool generates(const EdgeSet& f) const { return reaches_target(closure(f)); }
  std::vector<ClosureStep> trace(const EdgeSet& f) const;

private:
  void run(EdgeSet& set, std::vector<std::size_t> queue, std::vector<ClosureStep>* steps) const;

  const BruhatGraph* graph_;
  ClosureMode mode_;
  std::vector<std::array<std::size_t, 4>> diamonds_;
  std::vector<std::vector<std::size_t>> by_edge_;
  EdgeSet target_;
};

EdgeSet diamond_closure(const BruhatGraph& graph, const EdgeSet& f, ClosureMode mode);
bool is_diamond_generating(const BruhatGraph& graph, const EdgeSet& f, ClosureMode mode);
std::vector<ClosureStep> closure_trace(const BruhatGraph& graph, const EdgeSet& f, ClosureMode mode);

/// Edge set of a vertex path.
EdgeSet path_edges(const BruhatGraph& graph, const Path& path);

struct FSet {
  EdgeSet edges;
  Path longest;
  /// d_{x_i, v} along the longest path.
  std::vector<std::int64_t> d_along;
};

/// Cover edges (x_i, x_{i+1}) of the longest increasing path where
/// d_{x_i,v} = d_{x_{i+1},v} + 1. Throws NotDeodhar unless N(v) is an
/// initial section on the roots of the graph.
FSet f_uv(const BruhatGraph& graph, const KLEngine& kl, const ReflectionOrder& order);

struct GMinOptions {
  bool restrict_len1 = false;
  /// A generating set to start from; f_uv or a maximal chain otherwise.
  std::optional<EdgeSet> upper_seed;
  /// Sizes below this are not searched.
  std::size_t lower_bound = 0;
  std::uint64_t node_limit = 500'000'000;
};

struct GMinResult {
  std::size_t size = 0;
  EdgeSet certificate;
  std::size_t lower_bound = 0;
  std::size_t upper_seed = 0;
  std::uint64_t nodes = 0;
};

/// Smallest generating subset (of the cover edges when restrict_len1 is
/// set). Iterative deepening from the lower bound up to the seed size;
/// throws Budget with the current bounds once node_limit is exceeded.
GMinResult g_min(const DiamondIndex& index, const GMinOptions& options = {});

/// True if no subset of the candidate edges with fewer than k elements
/// generates.
bool no_generating_set_below(const DiamondIndex& index, std::size_t k, bool restrict_len1 = false);

} // namespace coxkl
