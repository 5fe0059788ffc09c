#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace coxkl {

/// Dense polynomial in q over arbitrary-precision integers. Index is the
/// exponent; there is never a trailing zero coefficient.
class IntPoly {
public:
  IntPoly() = default;
  explicit IntPoly(std::vector<mpz_class> coeffs);
  IntPoly(std::initializer_list<long> coeffs);

  static IntPoly constant(long c);
  static IntPoly monomial(const mpz_class& c, int exponent);
  /// q - 1
  static IntPoly q_minus_one() { return IntPoly{-1, 1}; }

  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  /// [q^i]; zero outside the support, including negative i.
  mpz_class coeff(int i) const;
  const std::vector<mpz_class>& coeffs() const noexcept { return coeffs_; }

  IntPoly& operator+=(const IntPoly& o);
  IntPoly& operator-=(const IntPoly& o);
  IntPoly& operator*=(const IntPoly& o);
  IntPoly& operator*=(const mpz_class& c);

  friend IntPoly operator+(IntPoly a, const IntPoly& b) { return a += b; }
  friend IntPoly operator-(IntPoly a, const IntPoly& b) { return a -= b; }
  friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator*(IntPoly a, const mpz_class& c) { return a *= c; }
  IntPoly operator-() const;

  /// q^k * this, k >= 0.
  IntPoly shifted(int k) const;
  /// q^d * this(q^{-1}); requires d >= degree().
  IntPoly reversed(int d) const;
  mpz_class evaluate(const mpz_class& q) const;

  /// "q^3 - 2*q^2 + 2*q - 1"
  std::string to_string() const;

  bool operator==(const IntPoly& o) const { return coeffs_ == o.coeffs_; }

private:
  void trim();
  std::vector<mpz_class> coeffs_;
};

} // namespace coxkl
