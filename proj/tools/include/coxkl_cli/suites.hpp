#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "coxkl/corpus.hpp"
#include "coxkl/kl.hpp"
#include "coxkl/reflection_order.hpp"

namespace coxkl::cli {

struct SuiteResult {
  std::string name;
  std::size_t checked = 0;
  std::size_t failed = 0;
  double seconds = 0;
  std::string first_failure;
};

struct VerifyOptions {
  std::uint64_t seed = 1;
  int random_orders = 4;
  int closure_seeds = 20;
  /// Exhaustive subset search below d up to this interval length.
  int exhaustive_length = 4;
  /// Subword oracle up to this l(v).
  int subword_length = 6;
  unsigned threads = 1;
};

/// Names of every suite, in report order.
const std::vector<std::string>& suite_names();

/// Runs every suite over the corpus. Results are merged in corpus order, so
/// everything except the timings is independent of scheduling.
std::vector<SuiteResult> run_verify(const KLEngine& kl, const std::vector<CorpusPair>& corpus,
                                    const VerifyOptions& options);

/// Empty when every triple of `roots` with gamma in the open cone spanned by
/// alpha and beta has gamma strictly between them; otherwise the first
/// offending triple.
std::string check_order_axiom(const ReflectionOrder& order, const std::vector<Root>& roots);

/// gamma = a*alpha + b*beta with a, b > 0 rational.
bool in_open_cone(const Root& gamma, const Root& alpha, const Root& beta);

/// Counts and first failures only; timings are left out so the record is
/// reproducible byte for byte.
nlohmann::json verify_summary(const std::string& system, std::size_t intervals, const std::vector<SuiteResult>& results);

} // namespace coxkl::cli
