#include "coxkl/intpoly.hpp"

#include <algorithm>

#include "coxkl/error.hpp"

namespace coxkl {

IntPoly::IntPoly(std::vector<mpz_class> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

IntPoly::IntPoly(std::initializer_list<long> coeffs)
{
  for (long c : coeffs)
    coeffs_.emplace_back(c);
  trim();
}

IntPoly IntPoly::constant(long c) { return IntPoly{c}; }

IntPoly IntPoly::monomial(const mpz_class& c, int exponent)
{
  std::vector<mpz_class> v(static_cast<std::size_t>(exponent) + 1, 0);
  v.back() = c;
  return IntPoly(std::move(v));
}

void IntPoly::trim()
{
  while (!coeffs_.empty() && coeffs_.back() == 0)
    coeffs_.pop_back();
}

mpz_class IntPoly::coeff(int i) const
{
  if (i < 0 || i >= static_cast<int>(coeffs_.size()))
    return 0;
  return coeffs_[i];
}

IntPoly& IntPoly::operator+=(const IntPoly& o)
{
  if (o.coeffs_.size() > coeffs_.size())
    coeffs_.resize(o.coeffs_.size(), 0);
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i)
    coeffs_[i] += o.coeffs_[i];
  trim();
  return *this;
}

IntPoly& IntPoly::operator-=(const IntPoly& o)
{
  if (o.coeffs_.size() > coeffs_.size())
    coeffs_.resize(o.coeffs_.size(), 0);
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i)
    coeffs_[i] -= o.coeffs_[i];
  trim();
  return *this;
}

IntPoly operator*(const IntPoly& a, const IntPoly& b)
{
  if (a.is_zero() || b.is_zero())
    return {};
  std::vector<mpz_class> out(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
      out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return IntPoly(std::move(out));
}

IntPoly& IntPoly::operator*=(const IntPoly& o) { return *this = *this * o; }

IntPoly& IntPoly::operator*=(const mpz_class& c)
{
  for (auto& x : coeffs_)
    x *= c;
  trim();
  return *this;
}

IntPoly IntPoly::operator-() const
{
  IntPoly out(*this);
  for (auto& x : out.coeffs_)
    x = -x;
  return out;
}

IntPoly IntPoly::shifted(int k) const
{
  if (is_zero())
    return {};
  std::vector<mpz_class> out(static_cast<std::size_t>(k), 0);
  out.insert(out.end(), coeffs_.begin(), coeffs_.end());
  return IntPoly(std::move(out));
}

IntPoly IntPoly::reversed(int d) const
{
  if (d < degree())
    throw Error(Errc::PreconditionViolated, "reversal degree below polynomial degree");
  if (is_zero())
    return {};
  std::vector<mpz_class> out(static_cast<std::size_t>(d) + 1, 0);
  for (int i = 0; i <= degree(); ++i)
    out[d - i] = coeffs_[i];
  return IntPoly(std::move(out));
}

mpz_class IntPoly::evaluate(const mpz_class& q) const
{
  mpz_class acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
    acc = acc * q + *it;
  return acc;
}

std::string IntPoly::to_string() const
{
  if (is_zero())
    return "0";
  std::string out;
  for (int i = degree(); i >= 0; --i) {
    const mpz_class& c = coeffs_[i];
    if (c == 0)
      continue;
    const bool neg = c < 0;
    mpz_class mag = neg ? mpz_class(-c) : c;
    if (out.empty())
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    if (i == 0 || mag != 1) {
      out += mag.get_str();
      if (i > 0)
        out += "*";
    }
    if (i >= 1)
      out += "q";
    if (i >= 2)
      out += "^" + std::to_string(i);
  }
  return out;
}

} // namespace coxkl
