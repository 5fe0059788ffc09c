#include "coxkl/reflection_order.hpp"

#include <algorithm>
#include <random>

#include "coxkl/error.hpp"

namespace coxkl {

namespace {

mpz_class pair(const std::vector<mpz_class>& f, const Root& r)
{
  mpz_class acc = 0;
  for (std::size_t i = 0; i < f.size(); ++i)
    acc += f[i] * r[i];
  return acc;
}

std::vector<mpz_class> random_vector(std::mt19937_64& rng, int n, std::int64_t lo, std::int64_t hi)
{
  std::uniform_int_distribution<std::int64_t> dist(lo, hi);
  std::vector<mpz_class> out;
  for (int i = 0; i < n; ++i)
    out.emplace_back(static_cast<long>(dist(rng)));
  return out;
}

std::vector<RatioKey> tie_break_keys(int n, std::uint64_t seed)
{
  std::mt19937_64 rng(seed ^ 0x5eed5eed5eedull);
  std::vector<RatioKey> out;
  for (int k = 0; k < 2; ++k) {
    RatioKey key;
    key.numer = random_vector(rng, n, 1, ReflectionOrder::kGenericBase);
    key.denom = random_vector(rng, n, 1, ReflectionOrder::kGenericBase);
    out.push_back(std::move(key));
  }
  return out;
}

} // namespace

bool in_inversion_set(const CoxeterSystem& sys, const Element& v, const Root& beta)
{
  return sys.apply_inverse(v, beta).is_negative();
}

bool is_deodhar_on(const ReflectionOrder& order, const Element& v, std::span<const Root> roots)
{
  const CoxeterSystem& sys = order.system();
  std::vector<Root> all = sys.inversion_set(v);
  all.insert(all.end(), roots.begin(), roots.end());
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return order.is_initial_section(all, [&](const Root& b) { return in_inversion_set(sys, v, b); });
}

ReflectionOrder ReflectionOrder::deodhar(const CoxeterSystem& sys, const Element& v, std::uint64_t seed)
{
  const int n = sys.rank();
  RatioKey primary;
  mpz_class m = 1;
  for (int i = 0; i < n; ++i) {
    primary.denom.push_back(m);
    m *= kGenericBase;
  }
  // <e, beta> = <d, v^{-1} beta>, i.e. e = d v^{-1} as a row vector.
  const IntMatrix& vinv = v.inverse_action();
  for (int c = 0; c < n; ++c) {
    mpz_class acc = 0;
    for (int r = 0; r < n; ++r)
      acc += primary.denom[r] * static_cast<long>(vinv(r, c));
    primary.numer.push_back(acc);
  }
  std::vector<RatioKey> keys{std::move(primary)};
  for (auto& k : tie_break_keys(n, seed))
    keys.push_back(std::move(k));
  return ReflectionOrder(sys, std::move(keys), seed);
}

ReflectionOrder ReflectionOrder::random(const CoxeterSystem& sys, std::uint64_t seed)
{
  std::mt19937_64 rng(seed);
  RatioKey primary;
  primary.denom = random_vector(rng, sys.rank(), 1, kGenericBase);
  primary.numer = random_vector(rng, sys.rank(), -kGenericBase, kGenericBase);
  std::vector<RatioKey> keys{std::move(primary)};
  for (auto& k : tie_break_keys(sys.rank(), seed))
    keys.push_back(std::move(k));
  return ReflectionOrder(sys, std::move(keys), seed);
}

ReflectionOrder ReflectionOrder::from_keys(const CoxeterSystem& sys, std::vector<RatioKey> keys)
{
  for (const auto& k : keys) {
    if (static_cast<int>(k.numer.size()) != sys.rank() || static_cast<int>(k.denom.size()) != sys.rank())
      throw Error(Errc::PreconditionViolated, "ratio key of the wrong dimension");
    for (const auto& x : k.denom)
      if (x <= 0)
        throw Error(Errc::PreconditionViolated, "ratio key denominators must be positive");
  }
  ReflectionOrder out(sys, std::move(keys), 0);
  out.primary_keys_ = out.keys_.size();
  return out;
}

bool ReflectionOrder::base_less(const Root& a, const Root& b) const
{
  for (const auto& key : keys_) {
    // Denominators are positive, so cross-multiplication keeps the sign.
    const mpz_class lhs = pair(key.numer, a) * pair(key.denom, b);
    const mpz_class rhs = pair(key.numer, b) * pair(key.denom, a);
    if (lhs != rhs)
      return lhs < rhs;
  }
  throw Error(Errc::TieUnresolved, "roots " + a.to_string() + " and " + b.to_string() +
                                       " agree on every key (seed " + std::to_string(seed_) + ")");
}

bool ReflectionOrder::less_at(std::size_t level, const Root& a, const Root& b) const
{
  if (level == 0)
    return base_less(a, b);
  const int s = conjugations_[level - 1];
  const Root as = sys_->simple_root(s);
  if (b == as)
    return true;
  if (a == as)
    return false;
  const bool a_below = less_at(level - 1, a, as);
  const bool b_below = less_at(level - 1, b, as);
  if (a_below && b_below)
    return less_at(level - 1, a, b);
  if (a_below != b_below)
    return a_below;
  return less_at(level - 1, sys_->reflect(s, a), sys_->reflect(s, b));
}

bool ReflectionOrder::less(const Root& a, const Root& b) const
{
  if (a == b || !a.is_positive() || !b.is_positive())
    throw Error(Errc::PreconditionViolated, "compare needs two distinct positive roots");
  return less_at(conjugations_.size(), a, b);
}

ReflectionOrder ReflectionOrder::upper_conjugate(int s) const
{
  if (s < 0 || s >= sys_->rank())
    throw Error(Errc::PreconditionViolated, "generator index out of range");
  ReflectionOrder out(*this);
  out.conjugations_.push_back(s);
  return out;
}

ReflectionOrder ReflectionOrder::reseeded(std::uint64_t seed) const
{
  ReflectionOrder out(*this);
  out.keys_.resize(primary_keys_);
  for (auto& k : tie_break_keys(sys_->rank(), seed))
    out.keys_.push_back(std::move(k));
  out.seed_ = seed;
  return out;
}

int ReflectionOrder::minimal_simple() const
{
  // Every non-simple positive root lies strictly between a lower root and a
  // simple root, so the minimum over all of Phi+ is a simple root.
  int best = 0;
  for (int s = 1; s < sys_->rank(); ++s)
    if (less(sys_->simple_root(s), sys_->simple_root(best)))
      best = s;
  return best;
}

std::vector<Root> ReflectionOrder::sorted(std::vector<Root> roots) const
{
  const std::size_t n = roots.size();
  std::vector<std::size_t> below(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool ij = less(roots[i], roots[j]);
      const bool ji = less(roots[j], roots[i]);
      if (ij == ji)
        throw Error(Errc::TieUnresolved, "comparison of " + roots[i].to_string() + " and " +
                                             roots[j].to_string() + " is not antisymmetric");
      ++below[ij ? j : i];
    }
  std::vector<Root> out(n);
  std::vector<bool> used(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (below[i] >= n || used[below[i]])
      throw Error(Errc::TieUnresolved, "order is not transitive on the compared roots");
    used[below[i]] = true;
    out[below[i]] = std::move(roots[i]);
  }
  return out;
}

bool ReflectionOrder::is_initial_section(std::span<const Root> roots,
                                         const std::function<bool(const Root&)>& member) const
{
  for (const auto& a : roots) {
    if (!member(a))
      continue;
    for (const auto& b : roots)
      if (!member(b) && !less(a, b))
        return false;
  }
  return true;
}

} // namespace coxkl
