#include "coxkl/root.hpp"

#include <algorithm>

namespace coxkl {

Root Root::simple(int rank, int s)
{
  std::vector<std::int64_t> c(rank, 0);
  c[s] = 1;
  return Root(std::move(c));
}

bool Root::is_zero() const
{
  return std::all_of(coords_.begin(), coords_.end(), [](auto x) { return x == 0; });
}

bool Root::is_positive() const
{
  return !is_zero() && std::all_of(coords_.begin(), coords_.end(), [](auto x) { return x >= 0; });
}

bool Root::is_negative() const
{
  return !is_zero() && std::all_of(coords_.begin(), coords_.end(), [](auto x) { return x <= 0; });
}

Root Root::operator-() const
{
  std::vector<std::int64_t> c(coords_);
  for (auto& x : c)
    x = -x;
  return Root(std::move(c));
}

std::string Root::to_string() const
{
  std::string out;
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i)
      out += ',';
    out += std::to_string(coords_[i]);
  }
  return out;
}

std::size_t Root::hash() const noexcept
{
  std::size_t h = 0x9e3779b97f4a7c15ull;
  for (auto x : coords_)
    h ^= std::hash<std::int64_t>{}(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  return h;
}

} // namespace coxkl
