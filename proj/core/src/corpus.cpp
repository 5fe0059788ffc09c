#include "coxkl/corpus.hpp"

#include "coxkl/error.hpp"

namespace coxkl {

std::vector<CorpusPair> corpus_pairs(const CoxeterSystem& sys, const CorpusOptions& options)
{
  int max_len = options.max_element_length;
  if (sys.is_finite()) {
    const int top = sys.longest_element().length();
    max_len = max_len < 0 ? top : std::min(max_len, top);
  } else if (max_len < 0) {
    throw Error(Errc::PreconditionViolated, "an element length bound is required for an infinite group");
  }
  const std::vector<Element> els = enumerate_elements(sys, max_len);
  std::vector<CorpusPair> out;
  for (const auto& v : els)
    for (const auto& u : els) {
      if (u.length() > v.length())
        break;
      if (options.max_interval_length >= 0 && v.length() - u.length() > options.max_interval_length)
        continue;
      if (sys.bruhat_leq(u, v))
        out.push_back({u, v});
    }
  return out;
}

} // namespace coxkl
