#include "coxkl_cli/app.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>

#include "coxkl/bruhat_graph.hpp"
#include "coxkl/corpus.hpp"
#include "coxkl/diamond.hpp"
#include "coxkl/dot.hpp"
#include "coxkl/error.hpp"
#include "coxkl/kl.hpp"
#include "coxkl/paths.hpp"
#include "coxkl/poly_cache.hpp"
#include "coxkl_cli/invariance.hpp"
#include "coxkl_cli/parallel.hpp"
#include "coxkl_cli/suites.hpp"

namespace fs = std::filesystem;

namespace coxkl::cli {

namespace {

int exit_code_for(Errc code)
{
  switch (code) {
  case Errc::MatrixShape:
  case Errc::BadEntry:
  case Errc::Parse:
  case Errc::Checksum:
  case Errc::Io:
    return kUsage;
  case Errc::NotComparable:
  case Errc::PreconditionViolated:
  case Errc::NotDeodhar:
  case Errc::WrongBranch:
  case Errc::Budget:
    return kPrecondition;
  default:
    return kInvariantFailure;
  }
}

/// A loaded system with its engine and on-disk cache file.
struct Loaded {
  std::unique_ptr<CoxeterSystem> sys;
  std::unique_ptr<KLEngine> kl;
  fs::path cache_file;
};

std::string hex64(std::uint64_t x)
{
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << x;
  return os.str();
}

Loaded load(const std::string& path, const RunConfig& config)
{
  Loaded l;
  l.sys = load_system(path);
  auto cache = std::make_shared<PolyCache>();
  const fs::path dir = resolve_cache_dir(config);
  l.cache_file = dir / (l.sys->name() + "-" + hex64(l.sys->fingerprint()) + ".klc");
  if (fs::exists(l.cache_file))
    cache->load(l.cache_file.string(), l.sys->fingerprint());
  l.kl = std::make_unique<KLEngine>(*l.sys, cache);
  return l;
}

void save_cache(const Loaded& l, std::ostream& err)
{
  try {
    fs::create_directories(l.cache_file.parent_path());
    l.kl->cache().save(l.cache_file.string(), l.sys->fingerprint());
  } catch (const std::exception& e) {
    err << "warning: cache not written: " << e.what() << "\n";
  }
}

unsigned thread_count(const RunConfig& c)
{
  return c.threads ? c.threads : default_threads();
}

std::ofstream open_out(const RunConfig& c, const std::string& name)
{
  fs::create_directories(c.out);
  std::ofstream f(fs::path(c.out) / name, std::ios::binary);
  if (!f)
    throw Error(Errc::Io, "cannot write " + (fs::path(c.out) / name).string());
  return f;
}

void csv_rows(std::ostream& os, const KLEngine& kl, const Element& u, const Element& v)
{
  const std::string prefix = kl.system().name() + "," + format_word(u.word()) + "," + format_word(v.word()) + ",";
  auto row = [&](PolyKind kind, const IntPoly& p) {
    os << prefix << to_string(kind);
    for (const auto& c : p.coeffs())
      os << "," << c.get_str();
    os << "\n";
  };
  row(PolyKind::R, kl.r_poly(u, v));
  row(PolyKind::RTilde, kl.rtilde_poly(u, v));
  row(PolyKind::P, kl.kl_poly(u, v));
}

std::pair<Element, Element> parse_pair(const Loaded& l, const RunConfig& c)
{
  if (c.v.empty())
    throw Error(Errc::Parse, "--v is required");
  const Element u = l.sys->element(parse_word(c.u, l.sys->rank()));
  const Element v = l.sys->element(parse_word(c.v, l.sys->rank()));
  if (!l.sys->bruhat_leq(u, v))
    throw Error(Errc::NotComparable, format_word(u.word()) + " is not below " + format_word(v.word()));
  return {u, v};
}

const std::string& single_system(const RunConfig& c)
{
  if (c.systems.size() != 1)
    throw Error(Errc::Parse, "exactly one --system is required");
  return c.systems.front();
}

int cmd_poly(const RunConfig& c, std::ostream& out, std::ostream& err)
{
  Loaded l = load(single_system(c), c);
  const auto [u, v] = parse_pair(l, c);
  const KLEngine& kl = *l.kl;
  out << "system " << l.sys->name() << "\n"
      << "u " << format_word(u.word()) << "\n"
      << "v " << format_word(v.word()) << "\n"
      << "length " << (v.length() - u.length()) << "\n"
      << "R " << kl.r_poly(u, v).to_string() << "\n"
      << "Rt " << kl.rtilde_poly(u, v).to_string() << "\n"
      << "P " << kl.kl_poly(u, v).to_string() << "\n";
  const auto d = kl.d_invariant(u, v);
  const auto d2 = kl.d_via_recurrence(u, v);
  out << "d " << d << "\n"
      << "d_recurrence " << d2 << "\n";
  if (c.trace) {
    const BruhatGraph g = BruhatGraph::build(Interval::build(*l.sys, u, v));
    IncreasingPaths paths(g, ReflectionOrder::deodhar(*l.sys, v, c.seed));
    for (const auto& p : paths.all(0, g.interval().top_index()))
      out << format_path(g, p) << "\n";
  }
  if (!c.out.empty()) {
    auto f = open_out(c, "polynomials.csv");
    csv_rows(f, kl, u, v);
  }
  save_cache(l, err);
  if (d != d2) {
    err << "d_invariant and d_via_recurrence disagree\n";
    return kInvariantFailure;
  }
  return kPass;
}

std::vector<CorpusPair> corpus_for(const CoxeterSystem& sys, const RunConfig& c, int default_elt_length)
{
  CorpusOptions o;
  o.max_interval_length = c.max_length;
  o.max_element_length = c.max_elt_length;
  if (!sys.is_finite() && o.max_element_length < 0)
    o.max_element_length = default_elt_length;
  return corpus_pairs(sys, o);
}

int cmd_verify(const RunConfig& c, std::ostream& out, std::ostream& err)
{
  if (c.systems.empty())
    throw Error(Errc::Parse, "--system is required");
  bool ok = true;
  nlohmann::json all = nlohmann::json::array();
  std::ofstream polys;
  std::ofstream dg;
  if (!c.out.empty()) {
    polys = open_out(c, "polynomials.csv");
    dg = open_out(c, "dg.csv");
    dg << "system,u_word,v_word,length,d,f_size,g\n";
  }
  for (const auto& path : c.systems) {
    Loaded l = load(path, c);
    const auto corpus = corpus_for(*l.sys, c, 8);
    VerifyOptions o;
    o.seed = c.seed;
    o.threads = thread_count(c);
    const auto results = run_verify(*l.kl, corpus, o);
    for (const auto& r : results) {
      err << std::left << std::setw(40) << r.name << std::right << std::setw(8) << r.checked << " checked "
          << std::setw(4) << r.failed << " failed " << std::fixed << std::setprecision(3) << r.seconds << " s\n";
      ok = ok && r.failed == 0;
    }
    all.push_back(verify_summary(l.sys->name(), corpus.size(), results));
    if (!c.out.empty()) {
      for (const auto& p : corpus)
        csv_rows(polys, *l.kl, p.u, p.v);
      std::vector<std::string> rows(corpus.size());
      parallel_for(corpus.size(), o.threads, [&](std::size_t i) {
        const auto& p = corpus[i];
        const BruhatGraph g = BruhatGraph::build(Interval::build(*l.sys, p.u, p.v));
        const auto d = l.kl->d_invariant(p.u, p.v);
        const FSet f = f_uv(g, *l.kl, ReflectionOrder::deodhar(*l.sys, p.v, c.seed));
        GMinOptions go;
        go.upper_seed = f.edges;
        go.lower_bound = static_cast<std::size_t>(d);
        const auto gm = g_min(DiamondIndex(g, ClosureMode::Strict), go);
        rows[i] = l.sys->name() + "," + format_word(p.u.word()) + "," + format_word(p.v.word()) + "," +
                  std::to_string(p.length()) + "," + std::to_string(d) + "," + std::to_string(f.edges.count()) +
                  "," + std::to_string(gm.size);
      });
      for (const auto& r : rows)
        dg << r << "\n";
    }
    save_cache(l, err);
  }
  nlohmann::json summary{{"passed", ok}, {"suite_names", suite_names()}, {"systems", all}};
  out << summary.dump(2) << "\n";
  if (!c.out.empty())
    open_out(c, "verify.json") << summary.dump(2) << "\n";
  return ok ? kPass : kInvariantFailure;
}

int cmd_invariance(const RunConfig& c, std::ostream& out, std::ostream& err)
{
  if (c.systems.empty())
    throw Error(Errc::Parse, "--system is required");
  std::vector<Loaded> loaded;
  std::vector<Corpus> corpora;
  for (const auto& path : c.systems)
    loaded.push_back(load(path, c));
  for (const auto& l : loaded)
    corpora.push_back({l.kl.get(), corpus_for(*l.sys, c, 8)});
  InvarianceOptions o;
  o.threads = thread_count(c);
  const auto rep = classify_intervals(corpora, o);
  const auto j = rep.to_json();
  out << "intervals " << rep.members.size() << "\n"
      << "classes " << rep.classes.size() << "\n"
      << "full_mismatches " << rep.full_mismatches << "\n"
      << "coefficient_mismatches " << rep.coefficient_mismatches << "\n"
      << "digraph_mismatches " << rep.digraph_mismatches << "\n";
  for (const auto& cls : rep.classes)
    if (cls.mismatch)
      out << "MISMATCH " << cls.detail << "\n";
  if (!c.out.empty())
    open_out(c, "invariance.json") << j.dump(2) << "\n";
  for (const auto& l : loaded)
    save_cache(l, err);
  return rep.ok() ? kPass : kInvariantFailure;
}

nlohmann::json edge_json(const BruhatGraph& g, std::size_t id)
{
  const auto& e = g.edge(id);
  return {{"from", format_word(g.interval().element(e.from).word())},
          {"to", format_word(g.interval().element(e.to).word())},
          {"label", e.label.to_string()},
          {"length", e.length}};
}

int cmd_graph(const RunConfig& c, std::ostream& out, std::ostream& err)
{
  Loaded l = load(single_system(c), c);
  const auto [u, v] = parse_pair(l, c);
  const auto mode = parse_closure_mode(c.mode);
  if (!mode)
    throw Error(Errc::Parse, "--mode must be strict or weak");
  const BruhatGraph g = BruhatGraph::build(Interval::build(*l.sys, u, v));
  const FSet f = f_uv(g, *l.kl, ReflectionOrder::deodhar(*l.sys, v, c.seed));
  std::vector<std::size_t> highlight;
  if (c.highlight_f)
    highlight = f.edges.ids();
  if (c.trace) {
    const DiamondIndex index(g, *mode);
    std::size_t k = 0;
    for (const auto& step : index.trace(f.edges)) {
      err << "step " << k++ << " diamond";
      for (auto e : index.diamonds()[step.diamond])
        err << " " << e;
      err << " added";
      for (auto e : step.added)
        err << " " << e;
      err << "\n";
    }
  }
  if (c.out.empty()) {
    write_dot(out, g, highlight);
  } else {
    {
      auto f_dot = open_out(c, "bruhat.dot");
      write_dot(f_dot, g, highlight);
    }
    const auto d = l.kl->d_invariant(u, v);
    GMinOptions go;
    go.restrict_len1 = c.restrict_len1;
    go.upper_seed = f.edges;
    go.lower_bound = static_cast<std::size_t>(d);
    const auto gm = g_min(DiamondIndex(g, *mode), go);
    nlohmann::json edges = nlohmann::json::array();
    for (auto id : gm.certificate.ids())
      edges.push_back(edge_json(g, id));
    nlohmann::json cert{{"interval",
                         {{"system", l.sys->name()},
                          {"u", format_word(u.word())},
                          {"v", format_word(v.word())},
                          {"length", v.length() - u.length()}}},
                        {"mode", to_string(*mode)},
                        {"restrict_len1", c.restrict_len1},
                        {"d", d},
                        {"g", gm.size},
                        {"certificate_edges", edges}};
    open_out(c, "certificate.json") << cert.dump(2) << "\n";
    auto c_dot = open_out(c, "certificate.dot");
    write_dot(c_dot, g, gm.certificate.ids(), "certificate");
    out << "wrote " << (fs::path(c.out) / "bruhat.dot").string() << "\n"
        << "d " << d << "\n"
        << "g " << gm.size << "\n";
  }
  save_cache(l, err);
  return kPass;
}

int cmd_cache(const RunConfig& c, std::ostream& out, std::ostream&)
{
  const fs::path dir = resolve_cache_dir(c);
  out << "cache " << dir.string() << "\n";
  if (!fs::exists(dir))
    return kPass;
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".klc")
      files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  if (c.cache_action == "clear") {
    for (const auto& f : files)
      fs::remove(f);
    out << "removed " << files.size() << "\n";
    return kPass;
  }
  for (const auto& f : files)
    out << f.filename().string() << " " << fs::file_size(f) << " bytes\n";
  return kPass;
}

} // namespace

std::string resolve_cache_dir(const RunConfig& config)
{
  if (!config.cache.empty())
    return config.cache;
  if (const char* env = std::getenv("BRUHAT_CACHE_DIR"); env && *env)
    return env;
  return ".coxkl-cache";
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err)
{
  try {
    if (config.command == "poly")
      return cmd_poly(config, out, err);
    if (config.command == "verify")
      return cmd_verify(config, out, err);
    if (config.command == "invariance")
      return cmd_invariance(config, out, err);
    if (config.command == "graph")
      return cmd_graph(config, out, err);
    if (config.command == "cache")
      return cmd_cache(config, out, err);
    err << "unknown command " << config.command << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInvariantFailure;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
  RunConfig c;
  CLI::App app{"Kazhdan-Lusztig polynomials, Bruhat graphs and diamond-generating sets"};
  app.require_subcommand(1);

  auto common = [&](CLI::App* sub) {
    sub->add_option("--system", c.systems, "Coxeter matrix file (repeatable where several systems make sense)");
    sub->add_option("--u", c.u, "lower element as 1-based generator indices, or e");
    sub->add_option("--v", c.v, "upper element as 1-based generator indices, or e");
    sub->add_option("--max-length", c.max_length, "bound on l(u,v) for corpus commands")->check(CLI::NonNegativeNumber);
    sub->add_option("--max-elt-length", c.max_elt_length, "bound on l(v) for corpus commands")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--seed", c.seed, "seed for reflection-order tie-breaks");
    sub->add_option("--mode", c.mode, "diamond closure: strict or weak")->check(CLI::IsMember({"strict", "weak"}));
    sub->add_flag("--restrict-len1", c.restrict_len1, "search only length-1 edges");
    sub->add_option("--out", c.out, "output directory");
    sub->add_option("--cache", c.cache, "polynomial cache directory");
    sub->add_flag("--highlight-f", c.highlight_f, "draw F_{u,v} in red");
    sub->add_flag("--trace", c.trace, "print increasing paths or closure steps");
    sub->add_option("--threads", c.threads, "worker threads (0 = all cores)");
  };
  for (const char* name : {"poly", "verify", "invariance", "graph"})
    common(app.add_subcommand(name));
  app.get_subcommand("poly")->description("R, R-tilde, P and d for one pair");
  app.get_subcommand("verify")->description("run every invariant suite over a corpus");
  app.get_subcommand("invariance")->description("classify intervals by poset isomorphism and compare polynomials");
  app.get_subcommand("graph")->description("Bruhat graph as DOT, with a minimum generating set certificate");
  auto* cache = app.add_subcommand("cache", "inspect or clear the polynomial cache");
  cache->add_option("--cache", c.cache, "polynomial cache directory");
  cache->add_subcommand("info", "list cache files")->fallthrough();
  cache->add_subcommand("clear", "remove cache files")->fallthrough();
  cache->require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  for (auto* sub : app.get_subcommands()) {
    c.command = sub->get_name();
    if (c.command == "cache")
      c.cache_action = sub->get_subcommands().front()->get_name();
  }
  return run(c, out, err);
}

} // namespace coxkl::cli
