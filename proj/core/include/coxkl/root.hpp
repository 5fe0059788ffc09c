#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace coxkl {

/// A root written in the simple-root basis. Every root is either positive
/// (all coordinates >= 0) or negative (all <= 0).
class Root {
public:
  Root() = default;
  explicit Root(std::vector<std::int64_t> coords) : coords_(std::move(coords)) {}

  static Root simple(int rank, int s);

  const std::vector<std::int64_t>& coords() const noexcept { return coords_; }
  std::int64_t operator[](std::size_t i) const { return coords_[i]; }
  std::size_t size() const noexcept { return coords_.size(); }

  bool is_zero() const;
  bool is_positive() const;
  bool is_negative() const;
  /// True for an integer vector that is neither zero nor of mixed sign.
  bool has_uniform_sign() const { return is_positive() || is_negative(); }

  Root operator-() const;

  /// "1,1,0"
  std::string to_string() const;
  std::size_t hash() const noexcept;

  auto operator<=>(const Root&) const = default;

private:
  std::vector<std::int64_t> coords_;
};

struct RootHash {
  std::size_t operator()(const Root& r) const noexcept { return r.hash(); }
};

} // namespace coxkl
