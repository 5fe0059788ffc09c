#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "coxkl/corpus.hpp"
#include "coxkl/kl.hpp"

namespace coxkl::cli {

struct InvarianceMember {
  const KLEngine* kl;
  CorpusPair pair;
  int length;
  IntPoly p;
  IntPoly r;
  IntPoly rt;
};

struct InvarianceClass {
  std::string form;
  int length = 0;
  std::vector<std::size_t> members; // indices into InvarianceReport::members
  bool mismatch = false;
  std::string detail;
};

struct InvarianceOptions {
  /// Whole polynomials are compared up to this interval length; the four
  /// low/high coefficients are compared at every length.
  int full_length = 6;
  /// Also require the poset isomorphism to carry Bruhat graph edges onto
  /// Bruhat graph edges (up to full_length).
  bool check_digraph = true;
  unsigned threads = 1;
};

struct InvarianceReport {
  std::vector<InvarianceMember> members;
  std::vector<InvarianceClass> classes;
  std::size_t full_mismatches = 0;
  std::size_t coefficient_mismatches = 0;
  std::size_t digraph_mismatches = 0;

  bool ok() const { return full_mismatches + coefficient_mismatches + digraph_mismatches == 0; }
  nlohmann::json to_json() const;
};

struct Corpus {
  const KLEngine* kl;
  std::vector<CorpusPair> pairs;
};

InvarianceReport classify_intervals(const std::vector<Corpus>& corpora, const InvarianceOptions& options);

} // namespace coxkl::cli
