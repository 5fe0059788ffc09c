#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace coxkl {

/// Small dense square matrix over int64, row-major. Arithmetic is overflow
/// checked and throws Errc::Overflow rather than wrapping.
class IntMatrix {
public:
  IntMatrix() = default;
  explicit IntMatrix(int dim) : dim_(dim), data_(static_cast<std::size_t>(dim) * dim, 0) {}

  static IntMatrix identity(int dim);

  int dim() const noexcept { return dim_; }

  std::int64_t& operator()(int row, int col) { return data_[index(row, col)]; }
  std::int64_t operator()(int row, int col) const { return data_[index(row, col)]; }

  std::span<const std::int64_t> data() const noexcept { return data_; }
  std::vector<std::int64_t> column(int col) const;

  /// M * x for a column vector x.
  std::vector<std::int64_t> apply(std::span<const std::int64_t> x) const;
  /// x^T * M for a row vector x.
  std::vector<std::int64_t> apply_row(std::span<const std::int64_t> x) const;

  bool is_identity() const;
  std::size_t hash() const noexcept;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
  bool operator==(const IntMatrix&) const = default;

private:
  std::size_t index(int row, int col) const noexcept
  {
    return static_cast<std::size_t>(row) * dim_ + col;
  }

  int dim_ = 0;
  std::vector<std::int64_t> data_;
};

namespace checked {
std::int64_t add(std::int64_t a, std::int64_t b);
std::int64_t mul(std::int64_t a, std::int64_t b);
} // namespace checked

} // namespace coxkl
