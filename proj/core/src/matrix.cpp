#include "coxkl/matrix.hpp"

#include <cassert>

#include "coxkl/error.hpp"

namespace coxkl {

namespace checked {

std::int64_t add(std::int64_t a, std::int64_t b)
{
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r))
    throw Error(Errc::Overflow, "int64 addition overflow");
  return r;
}

std::int64_t mul(std::int64_t a, std::int64_t b)
{
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r))
    throw Error(Errc::Overflow, "int64 multiplication overflow");
  return r;
}

} // namespace checked

IntMatrix IntMatrix::identity(int dim)
{
  IntMatrix m(dim);
  for (int i = 0; i < dim; ++i)
    m(i, i) = 1;
  return m;
}

std::vector<std::int64_t> IntMatrix::column(int col) const
{
  std::vector<std::int64_t> out(dim_);
  for (int r = 0; r < dim_; ++r)
    out[r] = (*this)(r, col);
  return out;
}

std::vector<std::int64_t> IntMatrix::apply(std::span<const std::int64_t> x) const
{
  assert(static_cast<int>(x.size()) == dim_);
  std::vector<std::int64_t> out(dim_, 0);
  for (int r = 0; r < dim_; ++r) {
    std::int64_t acc = 0;
    for (int c = 0; c < dim_; ++c)
      acc = checked::add(acc, checked::mul((*this)(r, c), x[c]));
    out[r] = acc;
  }
  return out;
}

std::vector<std::int64_t> IntMatrix::apply_row(std::span<const std::int64_t> x) const
{
  assert(static_cast<int>(x.size()) == dim_);
  std::vector<std::int64_t> out(dim_, 0);
  for (int c = 0; c < dim_; ++c) {
    std::int64_t acc = 0;
    for (int r = 0; r < dim_; ++r)
      acc = checked::add(acc, checked::mul(x[r], (*this)(r, c)));
    out[c] = acc;
  }
  return out;
}

bool IntMatrix::is_identity() const
{
  for (int r = 0; r < dim_; ++r)
    for (int c = 0; c < dim_; ++c)
      if ((*this)(r, c) != (r == c ? 1 : 0))
        return false;
  return true;
}

std::size_t IntMatrix::hash() const noexcept
{
  // FNV-1a over the entry bytes.
  std::uint64_t h = 1469598103934665603ull;
  for (std::int64_t v : data_) {
    auto u = static_cast<std::uint64_t>(v);
    for (int i = 0; i < 8; ++i) {
      h ^= (u >> (8 * i)) & 0xffu;
      h *= 1099511628211ull;
    }
  }
  return static_cast<std::size_t>(h);
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b)
{
  assert(a.dim_ == b.dim_);
  const int n = a.dim_;
  IntMatrix out(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const std::int64_t aik = a(i, k);
      if (aik == 0)
        continue;
      for (int j = 0; j < n; ++j)
        out(i, j) = checked::add(out(i, j), checked::mul(aik, b(k, j)));
    }
  return out;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b)
{
  assert(a.dim_ == b.dim_);
  IntMatrix out(a.dim_);
  for (std::size_t i = 0; i < a.data_.size(); ++i)
    out.data_[i] = checked::add(a.data_[i], b.data_[i]);
  return out;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b)
{
  assert(a.dim_ == b.dim_);
  IntMatrix out(a.dim_);
  for (std::size_t i = 0; i < a.data_.size(); ++i)
    out.data_[i] = checked::add(a.data_[i], -b.data_[i]);
  return out;
}

} // namespace coxkl
