#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>
#include <unistd.h>

#include "coxkl/coxeter.hpp"
#include "coxkl_cli/app.hpp"
#include "coxkl_cli/suites.hpp"

namespace fs = std::filesystem;
using coxkl::cli::run;

namespace {

std::string sys(const std::string& name)
{
  return std::string(COXKL_SYSTEMS_DIR) + "/" + name + ".json";
}

fs::path scratch(const std::string& name)
{
  const fs::path dir = fs::temp_directory_path() / ("coxkl-cli-" + std::to_string(::getpid())) / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args)
{
  args.insert(args.begin(), "coxkl");
  std::vector<const char*> argv;
  for (const auto& a : args)
    argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p)
{
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), {}};
}

std::size_t count(const std::string& hay, const std::string& needle)
{
  std::size_t n = 0;
  for (auto pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + 1))
    ++n;
  return n;
}

} // namespace

TEST(Cli, PolyA3ReflectionPair)
{
  const auto cache = scratch("poly").string();
  auto r = invoke({"poly", "--system", sys("A3"), "--v", "1 2 3 2 1", "--cache", cache});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("d 3\n"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("d_recurrence 3\n"), std::string::npos);
  EXPECT_NE(r.out.find("P q + 1\n"), std::string::npos) << r.out;
  r = invoke({"poly", "--system", sys("A3"), "--u", "2", "--v", "1 2 3 2 1", "--cache", cache});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("d 4\n"), std::string::npos) << r.out;
}

TEST(Cli, PolyEqualEnds)
{
  auto r = invoke({"poly", "--system", sys("A3"), "--u", "1 2", "--v", "1 2", "--cache", scratch("eq").string()});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("R 1\nRt 1\nP 1\n"), std::string::npos) << r.out;
}

TEST(Cli, PolyCsvAndTrace)
{
  const auto dir = scratch("csv");
  auto r = invoke({"poly", "--system", sys("A2"), "--v", "1 2 1", "--out", dir.string(), "--cache",
                   (dir / "c").string(), "--trace"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(slurp(dir / "polynomials.csv"), "A2,e,1 2 1,R,-1,2,-2,1\n"
                                            "A2,e,1 2 1,Rt,0,1,0,1\n"
                                            "A2,e,1 2 1,P,1\n");
  EXPECT_EQ(count(r.out, "len="), 2u);
  EXPECT_NE(r.out.find("len=1; labels=1,1; vertices=e|1 2 1\n"), std::string::npos) << r.out;
}

TEST(Cli, ExitCodes)
{
  const auto cache = scratch("codes").string();
  EXPECT_EQ(invoke({"poly", "--system", sys("A2"), "--u", "1", "--v", "2", "--cache", cache}).code, 3);
  EXPECT_EQ(invoke({"poly", "--system", sys("A2"), "--v", "7", "--cache", cache}).code, 2);
  EXPECT_EQ(invoke({"poly", "--system", "/nonexistent.json", "--v", "1", "--cache", cache}).code, 2);
  EXPECT_EQ(invoke({"poly", "--system", sys("A2"), "--bogus"}).code, 2);
  EXPECT_EQ(invoke({"frobnicate"}).code, 2);
  EXPECT_EQ(invoke({"graph", "--system", sys("A2"), "--v", "1", "--mode", "sideways"}).code, 2);
}

TEST(Cli, BadMatrixCitesCell)
{
  const auto dir = scratch("bad");
  std::ofstream(dir / "bad.json") << R"({"rank": 3, "coxeter_matrix": [[1,3,2],[3,1,2],[2,2,5]]})";
  auto r = invoke({"poly", "--system", (dir / "bad.json").string(), "--v", "1", "--cache", dir.string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("row 3, column 3"), std::string::npos) << r.err;
}

TEST(Cli, VerifyA2)
{
  const auto dir = scratch("verify");
  auto r = invoke({"verify", "--system", sys("A2"), "--out", dir.string(), "--cache", (dir / "c").string()});
  ASSERT_EQ(r.code, 0) << r.out << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j["passed"].get<bool>());
  EXPECT_EQ(j["suite_names"].size(), coxkl::cli::suite_names().size());
  EXPECT_EQ(j["systems"][0]["intervals"].get<std::size_t>(), 19u);
  EXPECT_EQ(slurp(dir / "verify.json"), r.out);
  // CSV rows come ShortLex on (v, u): the first rows are [e, e].
  const std::string csv = slurp(dir / "polynomials.csv");
  EXPECT_EQ(csv.rfind("A2,e,e,R,1\n", 0), 0u) << csv.substr(0, 80);
  EXPECT_NE(slurp(dir / "dg.csv").find("A2,e,1 2 1,3,2,2,2\n"), std::string::npos);
}

TEST(Cli, VerifyIsDeterministic)
{
  const auto cache = scratch("det").string();
  const auto a = invoke({"verify", "--system", sys("A2"), "--cache", cache});
  const auto b = invoke({"verify", "--system", sys("A2"), "--cache", cache, "--threads", "3"});
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, CorruptedCacheIsRejected)
{
  const auto dir = scratch("corrupt");
  ASSERT_EQ(invoke({"verify", "--system", sys("A2"), "--cache", dir.string()}).code, 0);
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    files.push_back(e.path());
  ASSERT_EQ(files.size(), 1u);
  {
    std::fstream f(files[0], std::ios::in | std::ios::out | std::ios::binary);
    f.seekp(40);
    f.put('\x7f');
  }
  auto r = invoke({"verify", "--system", sys("A2"), "--cache", dir.string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("Checksum"), std::string::npos) << r.err;
}

TEST(Cli, CacheDirectoryResolution)
{
  coxkl::cli::RunConfig c;
  c.cache = "/from/flag";
  EXPECT_EQ(coxkl::cli::resolve_cache_dir(c), "/from/flag");
  c.cache.clear();
  ::setenv("BRUHAT_CACHE_DIR", "/from/env", 1);
  EXPECT_EQ(coxkl::cli::resolve_cache_dir(c), "/from/env");
  ::unsetenv("BRUHAT_CACHE_DIR");
  EXPECT_EQ(coxkl::cli::resolve_cache_dir(c), ".coxkl-cache");
}

TEST(Cli, EnvironmentCacheIsUsed)
{
  const auto dir = scratch("env");
  ::setenv("BRUHAT_CACHE_DIR", dir.c_str(), 1);
  auto r = invoke({"poly", "--system", sys("A2"), "--v", "1 2"});
  ::unsetenv("BRUHAT_CACHE_DIR");
  ASSERT_EQ(r.code, 0);
  EXPECT_FALSE(fs::is_empty(dir));
  auto info = invoke({"cache", "info", "--cache", dir.string()});
  EXPECT_NE(info.out.find(".klc"), std::string::npos);
  auto clear = invoke({"cache", "clear", "--cache", dir.string()});
  EXPECT_EQ(clear.code, 0);
  EXPECT_TRUE(fs::is_empty(dir));
}

TEST(Cli, GraphSingleEdge)
{
  auto r = invoke({"graph", "--system", sys("A2"), "--v", "1", "--cache", scratch("g1").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(count(r.out, "[label=\"β="), 1u);
  EXPECT_EQ(count(r.out, "  n"), 3u); // two nodes, one edge
}

TEST(Cli, GraphHighlightsFAndIsDeterministic)
{
  const auto cache = scratch("g2").string();
  const std::vector<std::string> args{"graph", "--system", sys("A3"), "--v", "1 2 3 2 1", "--highlight-f",
                                      "--cache", cache};
  const auto a = invoke(args);
  const auto b = invoke(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(count(a.out, "color=red"), 3u);
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, GraphCertificate)
{
  const auto dir = scratch("cert");
  auto r = invoke({"graph", "--system", sys("A3"), "--u", "2", "--v", "2 1 3 2", "--out", dir.string(), "--cache",
                   (dir / "c").string(), "--trace"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(slurp(dir / "certificate.json"));
  for (const char* key : {"interval", "mode", "d", "g", "certificate_edges"})
    EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_EQ(j["d"].get<int>(), 3);
  EXPECT_EQ(j["g"].get<int>(), 3);
  EXPECT_EQ(j["mode"].get<std::string>(), "strict");
  EXPECT_EQ(j["certificate_edges"].size(), 3u);
  EXPECT_TRUE(fs::exists(dir / "bruhat.dot"));
  EXPECT_EQ(count(slurp(dir / "certificate.dot"), "color=red"), 3u);
  EXPECT_NE(r.err.find("step 0 diamond"), std::string::npos);

  auto weak = invoke({"graph", "--system", sys("A3"), "--u", "2", "--v", "2 1 3 2", "--out", dir.string(),
                      "--cache", (dir / "c").string(), "--mode", "weak", "--restrict-len1"});
  ASSERT_EQ(weak.code, 0) << weak.err;
  EXPECT_EQ(nlohmann::json::parse(slurp(dir / "certificate.json"))["g"].get<int>(), 3);
}

TEST(Cli, InvarianceLengthTwoClass)
{
  auto r = invoke({"invariance", "--system", sys("A3"), "--system", sys("B3"), "--max-length", "2", "--cache",
                   scratch("inv").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  // Length 0, 1 and 2 intervals: one poset each.
  EXPECT_NE(r.out.find("classes 3\n"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("full_mismatches 0\n"), std::string::npos);
}
