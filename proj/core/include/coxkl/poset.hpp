#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "coxkl/interval.hpp"

namespace coxkl {

/// A finite graded poset given by its cover relation.
struct GradedPoset {
  std::vector<int> rank;
  std::vector<std::vector<std::size_t>> up;

  std::size_t size() const noexcept { return rank.size(); }
  static GradedPoset from_interval(const Interval& interval);
  /// Builds the poset from cover pairs (lower, upper); ranks are the
  /// distance from the minimal elements.
  static GradedPoset from_covers(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& covers);
};

/// Canonical form of a poset: equal forms iff isomorphic posets.
struct PosetCertificate {
  std::string form;
  /// labeling[v] = canonical position of vertex v.
  std::vector<std::size_t> labeling;
};

PosetCertificate poset_canonical_form(const GradedPoset& poset);
inline PosetCertificate poset_canonical_form(const Interval& interval)
{
  return poset_canonical_form(GradedPoset::from_interval(interval));
}

/// Order isomorphism a -> b (as a vertex map), verified against both cover
/// relations before it is returned.
std::optional<std::vector<std::size_t>> poset_isomorphic(const GradedPoset& a, const GradedPoset& b);
std::optional<std::vector<std::size_t>> poset_isomorphic(const Interval& a, const Interval& b);

/// True if `map` is a bijection carrying the covers of a exactly onto those of b.
bool is_poset_isomorphism(const GradedPoset& a, const GradedPoset& b, const std::vector<std::size_t>& map);

} // namespace coxkl
