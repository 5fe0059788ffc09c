#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "coxkl/interval.hpp"
#include "coxkl/root.hpp"

namespace coxkl {

/// Directed edge x -> y of the Bruhat graph with t_beta x = y.
struct BruhatEdge {
  std::size_t from;
  std::size_t to;
  Root label;
  int length; // l(x, y)
};

/// The directed, root-labelled Bruhat graph on an interval. Edge ids double
/// as indices into the undirected edge set E_{u,v}.
class BruhatGraph {
public:
  static BruhatGraph build(Interval interval);

  const Interval& interval() const noexcept { return interval_; }
  const CoxeterSystem& system() const noexcept { return interval_.system(); }
  std::size_t vertex_count() const noexcept { return interval_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<BruhatEdge>& edges() const noexcept { return edges_; }
  const BruhatEdge& edge(std::size_t id) const { return edges_.at(id); }

  const std::vector<std::size_t>& out_edges(std::size_t v) const { return out_[v]; }
  const std::vector<std::size_t>& in_edges(std::size_t v) const { return in_[v]; }
  /// Undirected neighbours with the connecting edge id.
  const std::vector<std::pair<std::size_t, std::size_t>>& neighbours(std::size_t v) const { return adj_[v]; }
  std::optional<std::size_t> edge_between(std::size_t a, std::size_t b) const;
  /// Edge ids with both endpoints in [x_lo, x_hi].
  std::vector<std::size_t> edges_within(std::size_t lo, std::size_t hi) const;

private:
  explicit BruhatGraph(Interval interval) : interval_(std::move(interval)) {}

  Interval interval_;
  std::vector<BruhatEdge> edges_;
  std::vector<std::vector<std::size_t>> out_;
  std::vector<std::vector<std::size_t>> in_;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj_;
  std::vector<int> edge_index_; // dense vertex x vertex table, -1 = no edge
};

/// Simple 4-cycle of the undirected graph: vertices in cyclic order and the
/// edges (v0v1, v1v2, v2v3, v3v0).
struct FourCycle {
  std::array<std::size_t, 4> vertices;
  std::array<std::size_t, 4> edges;
};

/// Every simple 4-cycle of the undirected Bruhat graph, each listed once.
std::vector<FourCycle> four_cycles(const BruhatGraph& graph);

} // namespace coxkl
