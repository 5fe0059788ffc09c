#pragma once

#include <cstdint>
#include <memory>

#include "coxkl/coxeter.hpp"
#include "coxkl/intpoly.hpp"
#include "coxkl/poly_cache.hpp"

namespace coxkl {

/// The coefficient identities tying d_{u,v} to P, R and R-tilde.
struct DIncarnations {
  int length = 0;
  std::int64_t d = 0;
  std::size_t coatoms = 0;    // |{c in [u,v] : l(c,v) = 1}|
  mpz_class p_linear;         // [q]P
  mpz_class r_subleading;     // [q^{l-1}]R
  mpz_class r_linear;         // [q]R
  mpz_class rtilde_second;    // [q^{l-2}]R-tilde
  bool a = false;             // [q]P = coatoms - d
  bool b = false;             // [q^{l-1}]R = -d
  bool c = false;             // [q]R = (-1)^{l-1} d
  bool e = false;             // [q^{l-2}]R-tilde = l - d
  bool all() const { return a && b && c && e; }
};

/// Memoised R, R-tilde and Kazhdan-Lusztig polynomials of one system.
/// Methods are const and thread-safe; results go through the shared cache.
class KLEngine {
public:
  explicit KLEngine(const CoxeterSystem& sys, std::shared_ptr<PolyCache> cache = nullptr);

  const CoxeterSystem& system() const noexcept { return *sys_; }
  PolyCache& cache() const noexcept { return *cache_; }
  std::shared_ptr<PolyCache> shared_cache() const noexcept { return cache_; }

  /// Zero when u is not <= v.
  IntPoly r_poly(const Element& u, const Element& v) const;
  /// Recovered from R by back-substitution and re-checked by expansion.
  IntPoly rtilde_poly(const Element& u, const Element& v) const;
  IntPoly kl_poly(const Element& u, const Element& v) const;

  /// -[q^{l(u,v)-1}] R_{u,v}
  std::int64_t d_invariant(const Element& u, const Element& v) const;
  /// The three-case descent recurrence, taking the smallest left descent
  /// of v at every step.
  std::int64_t d_via_recurrence(const Element& u, const Element& v) const;
  /// Same, but with `s` (a left descent of v) at the first step.
  std::int64_t d_via_recurrence(const Element& u, const Element& v, int s) const;

  DIncarnations d_incarnations(const Element& u, const Element& v) const;
  std::size_t coatom_count(const Element& u, const Element& v) const;

private:
  const CoxeterSystem* sys_;
  std::shared_ptr<PolyCache> cache_;
};

/// R-tilde from R: solves R(q) = sum_k c_k q^{(l-k)/2} (q-1)^k downward in k.
/// Throws SubstitutionMismatch if no such N[q] solution exists.
IntPoly rtilde_from_r(const IntPoly& r, int length);
/// q^{l/2} R-tilde(q^{1/2} - q^{-1/2}), expanded in a Laurent ring in q^{1/2}.
IntPoly r_from_rtilde(const IntPoly& rtilde, int length);

} // namespace coxkl
