#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace coxkl {

/// Subset of the edge ids of a fixed Bruhat graph.
class EdgeSet {
public:
  EdgeSet() = default;
  explicit EdgeSet(std::size_t universe) : universe_(universe), words_((universe + 63) / 64, 0) {}
  EdgeSet(std::size_t universe, std::initializer_list<std::size_t> ids);
  EdgeSet(std::size_t universe, const std::vector<std::size_t>& ids);

  static EdgeSet full(std::size_t universe);

  std::size_t universe() const noexcept { return universe_; }
  std::size_t count() const;
  bool empty() const { return count() == 0; }
  bool is_full() const { return count() == universe_; }

  bool test(std::size_t id) const { return (words_[id / 64] >> (id % 64)) & 1u; }
  /// Returns true if the bit was newly set.
  bool set(std::size_t id);
  void reset(std::size_t id) { words_[id / 64] &= ~(std::uint64_t{1} << (id % 64)); }

  std::vector<std::size_t> ids() const;

  EdgeSet& operator|=(const EdgeSet& o);
  EdgeSet& operator&=(const EdgeSet& o);
  EdgeSet& operator-=(const EdgeSet& o);
  friend EdgeSet operator|(EdgeSet a, const EdgeSet& b) { return a |= b; }
  friend EdgeSet operator&(EdgeSet a, const EdgeSet& b) { return a &= b; }
  friend EdgeSet operator-(EdgeSet a, const EdgeSet& b) { return a -= b; }

  bool subset_of(const EdgeSet& o) const;
  bool operator==(const EdgeSet&) const = default;

private:
  void check(const EdgeSet& o) const;

  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

} // namespace coxkl
