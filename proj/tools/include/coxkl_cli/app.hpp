#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace coxkl::cli {

/// Process exit codes.
enum ExitCode : int {
  kPass = 0,
  kInvariantFailure = 1,
  kUsage = 2,
  kPrecondition = 3,
};

struct RunConfig {
  std::string command;
  std::string cache_action; // "info" or "clear"
  std::vector<std::string> systems;
  std::string u = "e";
  std::string v;
  int max_length = -1;
  int max_elt_length = -1;
  std::uint64_t seed = 1;
  std::string mode = "strict";
  bool restrict_len1 = false;
  std::string out;
  std::string cache;
  bool highlight_f = false;
  bool trace = false;
  unsigned threads = 0;
};

/// Flag, then BRUHAT_CACHE_DIR, then ./.coxkl-cache.
std::string resolve_cache_dir(const RunConfig& config);

/// Full command line entry point; returns the exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
/// Runs an already parsed configuration.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

} // namespace coxkl::cli
