#include "coxkl/edge_set.hpp"

#include <bit>

#include "coxkl/error.hpp"

namespace coxkl {

EdgeSet::EdgeSet(std::size_t universe, std::initializer_list<std::size_t> ids) : EdgeSet(universe)
{
  for (auto id : ids)
    set(id);
}

EdgeSet::EdgeSet(std::size_t universe, const std::vector<std::size_t>& ids) : EdgeSet(universe)
{
  for (auto id : ids)
    set(id);
}

EdgeSet EdgeSet::full(std::size_t universe)
{
  EdgeSet out(universe);
  for (std::size_t i = 0; i < universe; ++i)
    out.set(i);
  return out;
}

std::size_t EdgeSet::count() const
{
  std::size_t n = 0;
  for (auto w : words_)
    n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

bool EdgeSet::set(std::size_t id)
{
  if (id >= universe_)
    throw Error(Errc::PreconditionViolated, "edge id " + std::to_string(id) + " out of range");
  const std::uint64_t bit = std::uint64_t{1} << (id % 64);
  const bool fresh = !(words_[id / 64] & bit);
  words_[id / 64] |= bit;
  return fresh;
}

std::vector<std::size_t> EdgeSet::ids() const
{
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < universe_; ++i)
    if (test(i))
      out.push_back(i);
  return out;
}

void EdgeSet::check(const EdgeSet& o) const
{
  if (o.universe_ != universe_)
    throw Error(Errc::PreconditionViolated, "edge sets over different graphs");
}

EdgeSet& EdgeSet::operator|=(const EdgeSet& o)
{
  check(o);
  for (std::size_t i = 0; i < words_.size(); ++i)
    words_[i] |= o.words_[i];
  return *this;
}

EdgeSet& EdgeSet::operator&=(const EdgeSet& o)
{
  check(o);
  for (std::size_t i = 0; i < words_.size(); ++i)
    words_[i] &= o.words_[i];
  return *this;
}

EdgeSet& EdgeSet::operator-=(const EdgeSet& o)
{
  check(o);
  for (std::size_t i = 0; i < words_.size(); ++i)
    words_[i] &= ~o.words_[i];
  return *this;
}

bool EdgeSet::subset_of(const EdgeSet& o) const
{
  check(o);
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & ~o.words_[i])
      return false;
  return true;
}

} // namespace coxkl
