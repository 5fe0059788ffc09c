#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "coxkl/coxeter.hpp"
#include "coxkl/root.hpp"

namespace coxkl {

/// key(beta) = <numer, beta> / <denom, beta>, with denom strictly positive so
/// the denominator is positive on every positive root.
struct RatioKey {
  std::vector<mpz_class> numer;
  std::vector<mpz_class> denom;
};

/// A reflection order on positive roots, realised by lexicographic
/// comparison of ratio keys and optionally transformed by a sequence of
/// upper s-conjugations. Ratio keys are mediants along any positive
/// combination, which is what makes the order satisfy the betweenness axiom.
/// The order is only ever evaluated on the finite root sets handed to it.
class ReflectionOrder {
public:
  static constexpr std::int64_t kGenericBase = 1000000;

  /// Order with N(v) as an initial section: primary key <d, v^{-1} beta> /
  /// <d, beta> for d = (1, M, M^2, ...), then two seeded tie-break keys.
  static ReflectionOrder deodhar(const CoxeterSystem& sys, const Element& v, std::uint64_t seed = 0);
  /// Fully seeded ratio-key order.
  static ReflectionOrder random(const CoxeterSystem& sys, std::uint64_t seed);
  static ReflectionOrder from_keys(const CoxeterSystem& sys, std::vector<RatioKey> keys);

  /// a < b. Requires distinct positive roots; throws TieUnresolved when
  /// every key agrees.
  bool less(const Root& a, const Root& b) const;

  /// The upper s-conjugate: alpha_s becomes maximal, roots on either side of
  /// alpha_s keep their relative order except that roots above alpha_s are
  /// compared through their s-images.
  ReflectionOrder upper_conjugate(int s) const;
  /// Same order with fresh tie-break keys drawn from `seed`.
  ReflectionOrder reseeded(std::uint64_t seed) const;

  /// Index of the simple root that is minimal in the order.
  int minimal_simple() const;

  /// `roots` (distinct, positive) in increasing order. Totality and
  /// antisymmetry are verified on every pair.
  std::vector<Root> sorted(std::vector<Root> roots) const;

  /// True if the roots satisfying `member` all precede the others.
  bool is_initial_section(std::span<const Root> roots, const std::function<bool(const Root&)>& member) const;

  const CoxeterSystem& system() const noexcept { return *sys_; }
  const std::vector<RatioKey>& keys() const noexcept { return keys_; }
  const std::vector<int>& conjugations() const noexcept { return conjugations_; }
  std::uint64_t seed() const noexcept { return seed_; }

private:
  ReflectionOrder(const CoxeterSystem& sys, std::vector<RatioKey> keys, std::uint64_t seed)
      : sys_(&sys), keys_(std::move(keys)), seed_(seed)
  {
  }

  bool base_less(const Root& a, const Root& b) const;
  bool less_at(std::size_t level, const Root& a, const Root& b) const;

  const CoxeterSystem* sys_;
  std::vector<RatioKey> keys_;
  std::vector<int> conjugations_;
  std::uint64_t seed_ = 0;
  std::size_t primary_keys_ = 1;
};

/// beta in N(v), i.e. v^{-1} beta is negative.
bool in_inversion_set(const CoxeterSystem& sys, const Element& v, const Root& beta);

/// N(v) is an initial section of `order` restricted to N(v) together with
/// `roots`.
bool is_deodhar_on(const ReflectionOrder& order, const Element& v, std::span<const Root> roots);

} // namespace coxkl
