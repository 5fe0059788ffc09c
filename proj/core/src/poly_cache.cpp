#include "coxkl/poly_cache.hpp"

#include <zlib.h>

#include <algorithm>
#include <cstring>
#include <fstream>
#include <mutex>
#include <sstream>

#include "coxkl/error.hpp"

namespace coxkl {

namespace {

constexpr char kMagic[8] = {'C', 'O', 'X', 'K', 'L', 'P', 'C', '1'};

std::string make_key(PolyKind kind, const Word& u, const Word& v)
{
  std::string key;
  key.reserve(u.size() + v.size() + 2);
  key.push_back(static_cast<char>(kind));
  for (int s : u)
    key.push_back(static_cast<char>(s));
  key.push_back('\xff');
  for (int s : v)
    key.push_back(static_cast<char>(s));
  return key;
}

void split_key(const std::string& key, PolyKind& kind, Word& u, Word& v)
{
  kind = static_cast<PolyKind>(key[0]);
  u.clear();
  v.clear();
  Word* cur = &u;
  for (std::size_t i = 1; i < key.size(); ++i) {
    if (key[i] == '\xff') {
      cur = &v;
      continue;
    }
    cur->push_back(static_cast<unsigned char>(key[i]));
  }
}

class Writer {
public:
  void u8(std::uint8_t x) { buf_.push_back(static_cast<char>(x)); }
  void u32(std::uint32_t x)
  {
    for (int i = 0; i < 4; ++i)
      u8(static_cast<std::uint8_t>(x >> (8 * i)));
  }
  void u64(std::uint64_t x)
  {
    for (int i = 0; i < 8; ++i)
      u8(static_cast<std::uint8_t>(x >> (8 * i)));
  }
  void bytes(const std::string& s)
  {
    u32(static_cast<std::uint32_t>(s.size()));
    buf_ += s;
  }
  void word(const Word& w)
  {
    u32(static_cast<std::uint32_t>(w.size()));
    for (int s : w)
      u8(static_cast<std::uint8_t>(s));
  }
  std::string& buffer() { return buf_; }

private:
  std::string buf_;
};

class Reader {
public:
  Reader(const std::string& buf, std::size_t end) : buf_(buf), end_(end) {}
  std::uint8_t u8()
  {
    need(1);
    return static_cast<std::uint8_t>(buf_[pos_++]);
  }
  std::uint32_t u32()
  {
    std::uint32_t x = 0;
    for (int i = 0; i < 4; ++i)
      x |= static_cast<std::uint32_t>(u8()) << (8 * i);
    return x;
  }
  std::uint64_t u64()
  {
    std::uint64_t x = 0;
    for (int i = 0; i < 8; ++i)
      x |= static_cast<std::uint64_t>(u8()) << (8 * i);
    return x;
  }
  std::string bytes()
  {
    const std::uint32_t n = u32();
    need(n);
    std::string s = buf_.substr(pos_, n);
    pos_ += n;
    return s;
  }
  Word word()
  {
    const std::uint32_t n = u32();
    need(n);
    Word w;
    for (std::uint32_t i = 0; i < n; ++i)
      w.push_back(u8());
    return w;
  }
  bool done() const { return pos_ == end_; }

private:
  void need(std::size_t n) const
  {
    if (pos_ + n > end_)
      throw Error(Errc::Parse, "truncated polynomial cache");
  }
  const std::string& buf_;
  std::size_t end_;
  std::size_t pos_ = 0;
};

std::uint32_t crc_of(const std::string& s, std::size_t n)
{
  return static_cast<std::uint32_t>(
      crc32(0L, reinterpret_cast<const Bytef*>(s.data()), static_cast<uInt>(n)));
}

} // namespace

const char* to_string(PolyKind kind)
{
  switch (kind) {
  case PolyKind::R: return "R";
  case PolyKind::RTilde: return "Rt";
  case PolyKind::P: return "P";
  }
  return "?";
}

std::optional<IntPoly> PolyCache::find(PolyKind kind, const Word& u, const Word& v) const
{
  std::shared_lock lock(mutex_);
  if (auto it = map_.find(make_key(kind, u, v)); it != map_.end())
    return it->second;
  return std::nullopt;
}

void PolyCache::insert(PolyKind kind, const Word& u, const Word& v, const IntPoly& poly)
{
  std::unique_lock lock(mutex_);
  map_.emplace(make_key(kind, u, v), poly);
}

std::size_t PolyCache::size() const
{
  std::shared_lock lock(mutex_);
  return map_.size();
}

void PolyCache::clear()
{
  std::unique_lock lock(mutex_);
  map_.clear();
}

std::vector<PolyCache::Entry> PolyCache::entries() const
{
  std::vector<Entry> out;
  {
    std::shared_lock lock(mutex_);
    for (const auto& [key, poly] : map_) {
      Entry e{PolyKind::R, {}, {}, poly};
      split_key(key, e.kind, e.u, e.v);
      out.push_back(std::move(e));
    }
  }
  std::sort(out.begin(), out.end(), [](const Entry& a, const Entry& b) {
    if (a.kind != b.kind)
      return a.kind < b.kind;
    if (a.v != b.v)
      return shortlex_less(a.v, b.v);
    return shortlex_less(a.u, b.u);
  });
  return out;
}

void PolyCache::save(const std::string& path, std::uint64_t fingerprint) const
{
  const auto all = entries();
  Writer w;
  w.buffer().append(kMagic, sizeof kMagic);
  w.u32(kVersion);
  w.u64(fingerprint);
  w.u64(all.size());
  for (const auto& e : all) {
    w.u8(static_cast<std::uint8_t>(e.kind));
    w.word(e.u);
    w.word(e.v);
    w.u32(static_cast<std::uint32_t>(e.poly.coeffs().size()));
    for (const auto& c : e.poly.coeffs())
      w.bytes(c.get_str());
  }
  w.u32(crc_of(w.buffer(), w.buffer().size()));

  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out)
      throw Error(Errc::Io, "cannot write " + tmp);
    out.write(w.buffer().data(), static_cast<std::streamsize>(w.buffer().size()));
    if (!out)
      throw Error(Errc::Io, "short write to " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw Error(Errc::Io, "cannot rename " + tmp + " to " + path);
}

void PolyCache::load(const std::string& path, std::uint64_t fingerprint)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error(Errc::Io, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  const std::string buf = ss.str();
  if (buf.size() < sizeof kMagic + 4 + 8 + 8 + 4 || std::memcmp(buf.data(), kMagic, sizeof kMagic) != 0)
    throw Error(Errc::Parse, path + ": not a polynomial cache");
  const std::size_t body = buf.size() - 4;
  std::uint32_t stored = 0;
  for (int i = 0; i < 4; ++i)
    stored |= static_cast<std::uint32_t>(static_cast<unsigned char>(buf[body + i])) << (8 * i);
  if (stored != crc_of(buf, body))
    throw Error(Errc::Checksum, path + ": checksum mismatch");

  Reader r(buf, body);
  for (std::size_t i = 0; i < sizeof kMagic; ++i)
    r.u8();
  if (const auto version = r.u32(); version != kVersion)
    throw Error(Errc::Parse, path + ": unsupported cache version " + std::to_string(version));
  if (r.u64() != fingerprint)
    throw Error(Errc::Parse, path + ": cache belongs to a different Coxeter system");
  const std::uint64_t count = r.u64();
  std::vector<Entry> loaded;
  for (std::uint64_t i = 0; i < count; ++i) {
    Entry e{static_cast<PolyKind>(r.u8()), {}, {}, {}};
    if (static_cast<std::uint8_t>(e.kind) > 2)
      throw Error(Errc::Parse, path + ": bad polynomial kind");
    e.u = r.word();
    e.v = r.word();
    const std::uint32_t n = r.u32();
    std::vector<mpz_class> coeffs;
    for (std::uint32_t k = 0; k < n; ++k) {
      mpz_class c;
      if (c.set_str(r.bytes(), 10) != 0)
        throw Error(Errc::Parse, path + ": bad coefficient");
      coeffs.push_back(std::move(c));
    }
    e.poly = IntPoly(std::move(coeffs));
    loaded.push_back(std::move(e));
  }
  if (!r.done())
    throw Error(Errc::Parse, path + ": trailing bytes in cache");
  for (const auto& e : loaded)
    insert(e.kind, e.u, e.v, e.poly);
}

} // namespace coxkl
