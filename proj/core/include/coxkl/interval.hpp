#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <unordered_map>
#include <vector>

#include "coxkl/coxeter.hpp"

namespace coxkl {

/// A Bruhat interval [u, v] as a finite graded poset. Elements are indexed
/// in ShortLex order of their canonical words, so index 0 is u and the last
/// index is v. The system must outlive the interval.
class Interval {
public:
  /// Enumerates [u, v] as the distinct subword evaluations of the canonical
  /// reduced word of v that lie above u. Throws NotComparable if u is not <= v.
  static Interval build(const CoxeterSystem& sys, const Element& u, const Element& v);

  /// [x_lo, x_hi] cut out of this interval without re-enumeration.
  Interval subinterval(std::size_t lo, std::size_t hi) const;

  const CoxeterSystem& system() const noexcept { return *sys_; }
  std::size_t size() const noexcept { return elements_.size(); }
  const std::vector<Element>& elements() const noexcept { return elements_; }
  const Element& element(std::size_t i) const { return elements_.at(i); }
  const Element& bottom() const { return elements_.front(); }
  const Element& top() const { return elements_.back(); }
  std::size_t top_index() const noexcept { return elements_.size() - 1; }

  /// l(u, v)
  int length() const noexcept { return top().length() - bottom().length(); }
  /// l(u, x_i)
  int rank(std::size_t i) const { return elements_[i].length() - bottom().length(); }

  const std::vector<std::size_t>& covers_up(std::size_t i) const { return up_[i]; }
  const std::vector<std::size_t>& covers_down(std::size_t i) const { return down_[i]; }
  bool covers(std::size_t lower, std::size_t upper) const;
  std::size_t cover_count() const;

  bool leq(std::size_t i, std::size_t j) const
  {
    return (above_[i][j / 64] >> (j % 64)) & 1u;
  }

  std::optional<std::size_t> index_of(const Element& x) const;

private:
  Interval() = default;
  void finish();

  const CoxeterSystem* sys_ = nullptr;
  std::vector<Element> elements_;
  std::vector<std::vector<std::size_t>> up_;
  std::vector<std::vector<std::size_t>> down_;
  std::vector<std::vector<std::uint64_t>> above_;
  std::unordered_map<Element, std::size_t, ElementHash> index_;
};

/// Pairs x <= y with l(x, y) = 2 together with their four cover edges
/// (lower, upper) as interval indices: x -> m1, m1 -> y, y <- m2, m2 <- x.
struct LengthTwoDiamond {
  std::size_t bottom;
  std::size_t top;
  std::size_t left;
  std::size_t right;
  std::array<std::pair<std::size_t, std::size_t>, 4> covers() const
  {
    return {{{bottom, left}, {left, top}, {right, top}, {bottom, right}}};
  }
};

std::vector<LengthTwoDiamond> length2_quadruples(const Interval& interval);

/// Saturated chains from bottom to top, each as a list of interval indices.
void for_each_maximal_chain(const Interval& interval,
                            const std::function<void(const std::vector<std::size_t>&)>& visit);
std::vector<std::vector<std::size_t>> maximal_chains(const Interval& interval);

} // namespace coxkl
