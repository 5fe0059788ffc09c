#include "coxkl/kl.hpp"

#include <map>
#include <unordered_set>

#include "coxkl/error.hpp"
#include "coxkl/interval.hpp"

namespace coxkl {

namespace {

// Laurent polynomial in t = q^{1/2}, exponent -> coefficient.
using Laurent = std::map<int, mpz_class>;

Laurent laurent_mul(const Laurent& a, const Laurent& b)
{
  Laurent out;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b)
      out[ea + eb] += ca * cb;
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

std::int64_t to_int64(const mpz_class& x, const char* what)
{
  if (!x.fits_slong_p())
    throw Error(Errc::Overflow, std::string(what) + " does not fit in 64 bits");
  return x.get_si();
}

} // namespace

IntPoly rtilde_from_r(const IntPoly& r, int length)
{
  if (r.is_zero())
    return {};
  IntPoly rest = r;
  std::vector<mpz_class> c(static_cast<std::size_t>(length) + 1, 0);
  for (int k = length; k >= 0; k -= 2) {
    const int shift = (length - k) / 2;
    const int top = shift + k;
    c[k] = rest.coeff(top);
    if (c[k] < 0)
      throw Error(Errc::SubstitutionMismatch, "negative R-tilde coefficient at q^" + std::to_string(k) +
                                                  " from R = " + r.to_string());
    IntPoly term = IntPoly::constant(1);
    for (int i = 0; i < k; ++i)
      term *= IntPoly::q_minus_one();
    rest -= term.shifted(shift) * c[k];
  }
  if (!rest.is_zero())
    throw Error(Errc::SubstitutionMismatch, "R = " + r.to_string() + " has no R-tilde form of length " +
                                                std::to_string(length));
  return IntPoly(std::move(c));
}

IntPoly r_from_rtilde(const IntPoly& rtilde, int length)
{
  const Laurent step{{1, 1}, {-1, -1}}; // t - t^{-1}
  Laurent total;
  Laurent power{{length, 1}};           // t^l (t - t^{-1})^k
  for (int k = 0; k <= rtilde.degree(); ++k) {
    if (rtilde.coeff(k) != 0)
      for (const auto& [e, c] : power)
        total[e] += c * rtilde.coeff(k);
    power = laurent_mul(power, step);
  }
  std::vector<mpz_class> q;
  for (const auto& [e, c] : total) {
    if (c == 0)
      continue;
    if (e < 0 || e % 2 != 0)
      throw Error(Errc::SubstitutionMismatch, "half-integral or negative power of q after substitution");
    const std::size_t idx = static_cast<std::size_t>(e / 2);
    if (q.size() <= idx)
      q.resize(idx + 1, 0);
    q[idx] += c;
  }
  return IntPoly(std::move(q));
}

KLEngine::KLEngine(const CoxeterSystem& sys, std::shared_ptr<PolyCache> cache)
    : sys_(&sys), cache_(cache ? std::move(cache) : std::make_shared<PolyCache>())
{
}

IntPoly KLEngine::r_poly(const Element& u, const Element& v) const
{
  if (!sys_->bruhat_leq(u, v))
    return {};
  if (u == v)
    return IntPoly::constant(1);
  if (auto hit = cache_->find(PolyKind::R, u.word(), v.word()))
    return *hit;

  const int s = v.word().front();
  const Element sv = sys_->mul_gen(v, s, Side::Left);
  const Element su = sys_->mul_gen(u, s, Side::Left);
  IntPoly r;
  if (sys_->is_descent(u, s, Side::Left))
    r = r_poly(su, sv);
  else
    r = IntPoly::q_minus_one() * r_poly(u, sv) + r_poly(su, sv).shifted(1);
  cache_->insert(PolyKind::R, u.word(), v.word(), r);
  return r;
}

IntPoly KLEngine::rtilde_poly(const Element& u, const Element& v) const
{
  if (auto hit = cache_->find(PolyKind::RTilde, u.word(), v.word()))
    return *hit;
  const IntPoly r = r_poly(u, v);
  if (r.is_zero())
    return {};
  const int len = v.length() - u.length();
  IntPoly rt = rtilde_from_r(r, len);
  if (r_from_rtilde(rt, len) != r)
    throw Error(Errc::SubstitutionMismatch, "R-tilde does not reproduce R for [" + format_word(u.word()) + ", " +
                                                format_word(v.word()) + "]");
  cache_->insert(PolyKind::RTilde, u.word(), v.word(), rt);
  return rt;
}

IntPoly KLEngine::kl_poly(const Element& u, const Element& v) const
{
  if (!sys_->bruhat_leq(u, v))
    return {};
  if (u == v)
    return IntPoly::constant(1);
  if (auto hit = cache_->find(PolyKind::P, u.word(), v.word()))
    return *hit;

  // q^l P(1/q) - P(q) = sum_{x in (u,v]} R_{u,x} P_{x,v}, solved for every
  // x in [u,v] from the top down so one enumeration serves them all.
  const Interval iv = Interval::build(*sys_, u, v);
  const std::size_t top = iv.top_index();
  std::vector<IntPoly> p(iv.size());
  p[top] = IntPoly::constant(1);
  for (std::size_t i = top; i-- > 0;) {
    const Element& x = iv.element(i);
    if (auto hit = cache_->find(PolyKind::P, x.word(), v.word())) {
      p[i] = *hit;
      continue;
    }
    IntPoly rhs;
    for (std::size_t j = i + 1; j < iv.size(); ++j)
      if (iv.leq(i, j))
        rhs += r_poly(x, iv.element(j)) * p[j];
    const int len = v.length() - x.length();
    std::vector<mpz_class> coeffs;
    for (int k = 0; 2 * k < len; ++k)
      coeffs.push_back(rhs.coeff(len - k));
    IntPoly pk(std::move(coeffs));
    if (pk.reversed(len) - pk != rhs)
      throw Error(Errc::DegreeViolation, "functional equation has no solution with deg P < l/2 for [" +
                                             format_word(x.word()) + ", " + format_word(v.word()) + "]");
    if (pk.coeff(0) != 1)
      throw Error(Errc::DegreeViolation, "P without constant term 1 for [" + format_word(x.word()) + ", " +
                                             format_word(v.word()) + "]");
    cache_->insert(PolyKind::P, x.word(), v.word(), pk);
    p[i] = std::move(pk);
  }
  return p[0];
}

std::int64_t KLEngine::d_invariant(const Element& u, const Element& v) const
{
  const int len = v.length() - u.length();
  return to_int64(-r_poly(u, v).coeff(len - 1), "d-invariant");
}

std::int64_t KLEngine::d_via_recurrence(const Element& u, const Element& v) const
{
  if (u == v)
    return 0;
  if (v.is_identity())
    throw Error(Errc::PreconditionViolated, "d_via_recurrence needs u <= v");
  return d_via_recurrence(u, v, v.word().front());
}

std::int64_t KLEngine::d_via_recurrence(const Element& u, const Element& v, int s) const
{
  if (!sys_->bruhat_leq(u, v))
    throw Error(Errc::PreconditionViolated, "d_via_recurrence needs u <= v");
  if (u == v)
    return 0;
  if (!sys_->is_descent(v, s, Side::Left))
    throw Error(Errc::PreconditionViolated, "s is not a left descent of v");
  const Element sv = sys_->mul_gen(v, s, Side::Left);
  const Element su = sys_->mul_gen(u, s, Side::Left);
  if (sys_->is_descent(u, s, Side::Left))
    return d_via_recurrence(su, sv);
  if (!sys_->bruhat_leq(su, sv))
    return d_via_recurrence(u, sv) + 1;
  return d_via_recurrence(u, sv);
}

std::size_t KLEngine::coatom_count(const Element& u, const Element& v) const
{
  // Coatoms of v are the length-(l(v)-1) deletions of one letter.
  std::unordered_set<Element, ElementHash> coatoms;
  const Word& w = v.word();
  for (std::size_t i = 0; i < w.size(); ++i) {
    Word del;
    for (std::size_t j = 0; j < w.size(); ++j)
      if (j != i)
        del.push_back(w[j]);
    Element c = sys_->element(del);
    if (c.length() + 1 == v.length() && sys_->bruhat_leq(u, c))
      coatoms.insert(std::move(c));
  }
  return coatoms.size();
}

DIncarnations KLEngine::d_incarnations(const Element& u, const Element& v) const
{
  if (!sys_->bruhat_leq(u, v))
    throw Error(Errc::PreconditionViolated, "d_incarnations needs u <= v");
  DIncarnations out;
  out.length = v.length() - u.length();
  out.d = d_invariant(u, v);
  out.coatoms = coatom_count(u, v);
  const IntPoly r = r_poly(u, v);
  out.p_linear = kl_poly(u, v).coeff(1);
  out.r_subleading = r.coeff(out.length - 1);
  out.r_linear = r.coeff(1);
  out.rtilde_second = rtilde_poly(u, v).coeff(out.length - 2);
  const mpz_class d = out.d;
  out.a = out.p_linear == mpz_class(static_cast<long>(out.coatoms)) - d;
  out.b = out.r_subleading == -d;
  out.c = out.r_linear == (((out.length - 1) % 2 == 0) ? d : mpz_class(-d));
  out.e = out.rtilde_second == mpz_class(out.length) - d;
  return out;
}

} // namespace coxkl
