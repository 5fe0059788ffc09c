#pragma once

#include <cstdint>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "coxkl/coxeter.hpp"
#include "coxkl/intpoly.hpp"

namespace coxkl {

enum class PolyKind : std::uint8_t { R = 0, RTilde = 1, P = 2 };

/// "R", "Rt", "P"
const char* to_string(PolyKind kind);

/// Linearisable map (kind, canonical u word, canonical v word) -> polynomial.
///
/// The on-disk snapshot is a versioned little-endian binary: magic
/// "COXKLPC1", u32 version, u64 system fingerprint, u64 entry count, then per
/// entry u8 kind, u32-prefixed u-word bytes, u32-prefixed v-word bytes, u32
/// coefficient count and u32-prefixed decimal coefficients; a trailing CRC-32
/// covers every preceding byte.
class PolyCache {
public:
  static constexpr std::uint32_t kVersion = 1;

  struct Entry {
    PolyKind kind;
    Word u;
    Word v;
    IntPoly poly;
  };

  PolyCache() = default;
  PolyCache(const PolyCache&) = delete;
  PolyCache& operator=(const PolyCache&) = delete;

  std::optional<IntPoly> find(PolyKind kind, const Word& u, const Word& v) const;
  void insert(PolyKind kind, const Word& u, const Word& v, const IntPoly& poly);
  std::size_t size() const;
  void clear();
  /// Entries sorted by (kind, v ShortLex, u ShortLex).
  std::vector<Entry> entries() const;

  void save(const std::string& path, std::uint64_t fingerprint) const;
  /// Merges a snapshot. Throws Checksum on a corrupted file, Parse on a bad
  /// header or a fingerprint that does not match, Io if it cannot be read.
  void load(const std::string& path, std::uint64_t fingerprint);

private:
  mutable std::shared_mutex mutex_;
  std::unordered_map<std::string, IntPoly> map_;
};

} // namespace coxkl
