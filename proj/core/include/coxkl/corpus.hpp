#pragma once

#include <vector>

#include "coxkl/coxeter.hpp"

namespace coxkl {

struct CorpusOptions {
  /// Keep pairs with l(u, v) <= this; negative means no bound.
  int max_interval_length = -1;
  /// Bound on l(v). Required for infinite systems.
  int max_element_length = -1;
};

struct CorpusPair {
  Element u;
  Element v;
  int length() const { return v.length() - u.length(); }
};

/// Every pair u <= v within the bounds, in ShortLex order on (v, u).
std::vector<CorpusPair> corpus_pairs(const CoxeterSystem& sys, const CorpusOptions& options = {});

} // namespace coxkl
