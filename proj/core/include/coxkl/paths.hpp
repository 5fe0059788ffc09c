#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "coxkl/bruhat_graph.hpp"
#include "coxkl/intpoly.hpp"
#include "coxkl/reflection_order.hpp"

namespace coxkl {

/// A directed path in a BruhatGraph: vertex indices and the edge ids joining
/// consecutive vertices.
struct Path {
  std::vector<std::size_t> vertices;
  std::vector<std::size_t> edges;

  int length() const noexcept { return static_cast<int>(edges.size()); }
  bool contains(std::size_t vertex) const;
  bool operator==(const Path&) const = default;
};

/// A path given by group elements, independent of any interval.
struct ElementPath {
  std::vector<Element> vertices;
  std::vector<Root> labels;

  int length() const noexcept { return static_cast<int>(labels.size()); }
};

ElementPath to_element_path(const BruhatGraph& graph, const Path& path);
/// Throws PreconditionViolated when a vertex or step is not in the graph.
Path to_graph_path(const BruhatGraph& graph, const ElementPath& path);

/// Increasing paths of a Bruhat graph under one reflection order. Edge
/// labels are ranked once at construction; a tie triggers one reseed of the
/// order's tie-break keys before giving up.
class IncreasingPaths {
public:
  IncreasingPaths(const BruhatGraph& graph, const ReflectionOrder& order);

  const BruhatGraph& graph() const noexcept { return *graph_; }
  /// The order actually used (reseeded if the first attempt tied).
  const ReflectionOrder& order() const noexcept { return order_; }
  /// Position of an edge's label among the distinct labels of the graph.
  std::size_t label_rank(std::size_t edge) const { return rank_[edge]; }

  bool is_increasing(const Path& path) const;

  /// Every increasing path from vertex `from` to vertex `to`.
  std::vector<Path> all(std::size_t from, std::size_t to) const;
  /// Increasing paths with exactly k edges.
  std::vector<Path> of_length(std::size_t from, std::size_t to, int k) const;
  /// sum of q^{length} over all(from, to)
  IntPoly generating_polynomial(std::size_t from, std::size_t to) const;

  /// The unique increasing path of length l(from, to), checked against the
  /// lexicographically first increasing path. Throws MultipleLongest.
  Path longest(std::size_t from, std::size_t to) const;
  /// First increasing path in lexicographic order of label sequences.
  std::optional<Path> lex_minimal(std::size_t from, std::size_t to) const;
  std::vector<Path> second_length(std::size_t from, std::size_t to) const;

private:
  template <class Visit>
  void dfs(std::size_t to, int budget, Path& cur, std::size_t last_rank, bool use_budget, Visit& visit) const;

  const BruhatGraph* graph_;
  ReflectionOrder order_;
  std::vector<std::size_t> rank_;
  std::vector<std::vector<std::size_t>> sorted_out_;
};

/// The vertex x of `longest` at which `path` diverges: every vertex of
/// `longest` up to x lies on `path` and the next one does not. Returned as
/// an index into longest.vertices.
std::optional<std::size_t> divergence_vertex(const Path& path, const Path& longest);

/// The vertexwise translate s*gamma, checked to be a path whose labels
/// s*beta_i increase under the upper s-conjugate of `order`. Requires alpha_s
/// to be the order's minimum and s*x_0 not on gamma.
ElementPath s_gamma(const CoxeterSystem& sys, const ElementPath& gamma, int s, const ReflectionOrder& order);

/// len=<k>; labels=<b1|b2|...>; vertices=<w0|w1|...>
std::string format_path(const BruhatGraph& graph, const Path& path);

} // namespace coxkl
