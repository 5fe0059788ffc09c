#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <thread>

#include <unistd.h>

#include "coxkl/corpus.hpp"
#include "coxkl/error.hpp"
#include "coxkl/kl.hpp"
#include "coxkl/poly_cache.hpp"
#include "oracles.hpp"

using namespace coxkl;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name)
{
  const fs::path dir = fs::temp_directory_path() / ("coxkl-test-" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir / name;
}

Errc load_error(PolyCache& cache, const fs::path& path, std::uint64_t fp)
{
  try {
    cache.load(path.string(), fp);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "load succeeded";
  return Errc::Io;
}

} // namespace

TEST(PolyCache, InsertFind)
{
  PolyCache c;
  c.insert(PolyKind::R, {0}, {0, 1}, IntPoly{1, -2, 1});
  EXPECT_EQ(c.size(), 1u);
  EXPECT_EQ(c.find(PolyKind::R, {0}, {0, 1}), (IntPoly{1, -2, 1}));
  EXPECT_FALSE(c.find(PolyKind::P, {0}, {0, 1}));
  EXPECT_FALSE(c.find(PolyKind::R, {1}, {0, 1}));
  c.clear();
  EXPECT_EQ(c.size(), 0u);
}

TEST(PolyCache, SnapshotRoundTrip)
{
  auto sys = oracle::system("A3");
  KLEngine kl(*sys);
  for (const auto& p : corpus_pairs(*sys)) {
    kl.kl_poly(p.u, p.v);
    kl.rtilde_poly(p.u, p.v);
  }
  const auto path = scratch("roundtrip.klc");
  kl.cache().save(path.string(), sys->fingerprint());

  auto loaded = std::make_shared<PolyCache>();
  loaded->load(path.string(), sys->fingerprint());
  ASSERT_EQ(loaded->size(), kl.cache().size());
  const auto a = kl.cache().entries();
  const auto b = loaded->entries();
  for (std::size_t i = 0; i < a.size(); ++i) {
    ASSERT_EQ(a[i].kind, b[i].kind);
    ASSERT_EQ(a[i].u, b[i].u);
    ASSERT_EQ(a[i].v, b[i].v);
    ASSERT_EQ(a[i].poly, b[i].poly);
  }

  // Hits through a warm cache equal a cold recomputation.
  KLEngine warm(*sys, loaded);
  KLEngine cold(*sys);
  for (const auto& p : corpus_pairs(*sys)) {
    ASSERT_EQ(warm.kl_poly(p.u, p.v), cold.kl_poly(p.u, p.v));
    ASSERT_EQ(warm.r_poly(p.u, p.v), cold.r_poly(p.u, p.v));
    ASSERT_EQ(warm.rtilde_poly(p.u, p.v), cold.rtilde_poly(p.u, p.v));
  }
}

TEST(PolyCache, SnapshotIsByteStable)
{
  auto sys = oracle::system("A2");
  KLEngine kl(*sys);
  for (const auto& p : corpus_pairs(*sys))
    kl.kl_poly(p.u, p.v);
  const auto a = scratch("a.klc"), b = scratch("b.klc");
  kl.cache().save(a.string(), sys->fingerprint());
  kl.cache().save(b.string(), sys->fingerprint());
  std::ifstream fa(a, std::ios::binary), fb(b, std::ios::binary);
  EXPECT_EQ(std::string(std::istreambuf_iterator<char>(fa), {}), std::string(std::istreambuf_iterator<char>(fb), {}));
}

TEST(PolyCache, CorruptionIsDetected)
{
  auto sys = oracle::system("A2");
  KLEngine kl(*sys);
  kl.kl_poly(sys->identity(), sys->longest_element());
  const auto path = scratch("corrupt.klc");
  kl.cache().save(path.string(), sys->fingerprint());
  {
    std::fstream f(path, std::ios::in | std::ios::out | std::ios::binary);
    f.seekp(30);
    char c = 0;
    f.read(&c, 1);
    f.seekp(30);
    c ^= 0x5a;
    f.write(&c, 1);
  }
  PolyCache c;
  EXPECT_EQ(load_error(c, path, sys->fingerprint()), Errc::Checksum);
}

TEST(PolyCache, TruncationAndForeignFingerprint)
{
  auto sys = oracle::system("A2");
  KLEngine kl(*sys);
  kl.kl_poly(sys->identity(), sys->longest_element());
  const auto path = scratch("trunc.klc");
  kl.cache().save(path.string(), sys->fingerprint());
  PolyCache c;
  EXPECT_EQ(load_error(c, path, sys->fingerprint() ^ 1), Errc::Parse);
  fs::resize_file(path, fs::file_size(path) - 3);
  EXPECT_NE(load_error(c, path, sys->fingerprint()), Errc::Io);
  EXPECT_EQ(load_error(c, scratch("missing.klc"), sys->fingerprint()), Errc::Io);
}

TEST(PolyCache, ConcurrentEnginesAgree)
{
  auto sys = oracle::system("B3");
  auto shared = std::make_shared<PolyCache>();
  KLEngine kl(*sys, shared);
  const auto pairs = corpus_pairs(*sys, {.max_interval_length = 6});
  std::vector<IntPoly> results(pairs.size());
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < 4; ++t)
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < pairs.size(); i += 4)
        results[i] = kl.kl_poly(pairs[i].u, pairs[i].v);
    });
  for (auto& th : pool)
    th.join();
  KLEngine serial(*sys);
  for (std::size_t i = 0; i < pairs.size(); ++i)
    ASSERT_EQ(results[i], serial.kl_poly(pairs[i].u, pairs[i].v));
}
