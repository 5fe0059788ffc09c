#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "coxkl/matrix.hpp"
#include "coxkl/root.hpp"

namespace coxkl {

/// Generator indices, 0-based internally.
using Word = std::vector<int>;

/// Coxeter matrix with entries in {1, 2, 3, 4, 6, inf}; inf is stored as 0.
class CoxeterMatrix {
public:
  static constexpr int kInfinity = 0;

  /// Validates shape, symmetry, the unit diagonal and crystallographic
  /// off-diagonal labels. Throws MatrixShape or BadEntry citing row/column.
  static CoxeterMatrix from_rows(const std::vector<std::vector<int>>& rows);

  int rank() const noexcept { return rank_; }
  int operator()(int s, int t) const { return entries_[static_cast<std::size_t>(s) * rank_ + t]; }

  bool operator==(const CoxeterMatrix&) const = default;

private:
  int rank_ = 0;
  std::vector<int> entries_;
};

enum class Side { Left, Right };

/// A group element, stored as its (faithful) action on the root lattice
/// together with the inverse action, the ShortLex-least reduced word and
/// the length. Equality is matrix equality.
class Element {
public:
  /// Placeholder with no action; only assignment and destruction are valid.
  Element() = default;

  const IntMatrix& action() const noexcept { return action_; }
  const IntMatrix& inverse_action() const noexcept { return inverse_; }
  const Word& word() const noexcept { return word_; }
  int length() const noexcept { return static_cast<int>(word_.size()); }
  bool is_identity() const noexcept { return word_.empty(); }
  std::size_t hash() const noexcept { return hash_; }

  bool operator==(const Element& o) const { return hash_ == o.hash_ && action_ == o.action_; }

private:
  friend class CoxeterSystem;
  Element(IntMatrix action, IntMatrix inverse, Word word)
      : action_(std::move(action)), inverse_(std::move(inverse)), word_(std::move(word)),
        hash_(action_.hash())
  {
  }

  IntMatrix action_;
  IntMatrix inverse_;
  Word word_;
  std::size_t hash_ = 0;
};

struct ElementHash {
  std::size_t operator()(const Element& e) const noexcept { return e.hash(); }
};

/// ShortLex on canonical words: shorter first, then lexicographic.
bool shortlex_less(const Word& a, const Word& b);
inline bool shortlex_less(const Element& a, const Element& b)
{
  return shortlex_less(a.word(), b.word());
}

/// "e" for the empty word, else 1-based indices separated by spaces.
std::string format_word(const Word& w);
/// Inverse of format_word; also accepts the empty string for the identity.
/// Throws Errc::Parse on tokens that are not generator indices in [1, rank].
Word parse_word(std::string_view text, int rank);

/// A crystallographic Coxeter system realised through the integer
/// reflection representation on the root lattice. Immutable apart from the
/// internally synchronised Bruhat-order memo, so it may be shared across
/// threads.
class CoxeterSystem {
public:
  explicit CoxeterSystem(CoxeterMatrix matrix, std::string name = {});

  CoxeterSystem(const CoxeterSystem&) = delete;
  CoxeterSystem& operator=(const CoxeterSystem&) = delete;

  const std::string& name() const noexcept { return name_; }
  int rank() const noexcept { return matrix_.rank(); }
  const CoxeterMatrix& coxeter_matrix() const noexcept { return matrix_; }
  const IntMatrix& cartan() const noexcept { return cartan_; }
  const IntMatrix& generator(int s) const { return generators_.at(s); }
  bool is_finite() const noexcept { return finite_; }
  /// Stable 64-bit fingerprint of the Coxeter matrix.
  std::uint64_t fingerprint() const noexcept;

  Element identity() const;
  Element generator_element(int s) const;
  /// Evaluates an arbitrary (not necessarily reduced) word.
  Element element(const Word& word) const;
  Element mul_gen(const Element& w, int s, Side side) const;
  Element multiply(const Element& a, const Element& b) const;
  Element inverse(const Element& w) const;
  /// Builds an element from a matrix pair known to lie in the group.
  Element from_action(IntMatrix action, IntMatrix inverse) const;

  bool is_descent(const Element& w, int s, Side side) const;
  std::vector<int> descents(const Element& w, Side side) const;

  /// Memoised Bruhat comparison via the descent recursion.
  bool bruhat_leq(const Element& u, const Element& v) const;
  std::size_t bruhat_memo_size() const;

  /// N(w) = { beta > 0 : w^{-1} beta < 0 }, listed in reduced-word order.
  std::vector<Root> inversion_set(const Element& w) const;
  /// beta with w = t_beta, if w is a reflection.
  std::optional<Root> reflection_data(const Element& w) const;
  std::optional<Root> reflection_root(const IntMatrix& m) const;
  /// Matrix of the reflection t_beta = x s x^{-1}, where beta = x(alpha_s).
  IntMatrix reflection_matrix(const Root& beta) const;

  Root simple_root(int s) const { return Root::simple(rank(), s); }
  Root apply(const Element& w, const Root& r) const;
  Root apply_inverse(const Element& w, const Root& r) const;
  Root reflect(int s, const Root& r) const;

  /// All positive roots; only valid for finite systems (throws otherwise).
  std::vector<Root> positive_roots() const;
  /// Longest element; finite systems only.
  Element longest_element() const;

  /// Involution and braid relations of the generator matrices; throws
  /// ConstructionFailed on the first violation.
  void check_representation() const;

private:

  CoxeterMatrix matrix_;
  std::string name_;
  IntMatrix cartan_;
  std::vector<IntMatrix> generators_;
  bool finite_ = false;

  mutable std::shared_mutex memo_mutex_;
  mutable std::unordered_map<std::string, bool> leq_memo_;
};

/// Loads a Coxeter matrix from the structured-text object
/// {"rank": n, "coxeter_matrix": [[...]]}, with inf encoded as 0.
CoxeterMatrix parse_coxeter_matrix(std::string_view text);
CoxeterMatrix load_coxeter_matrix(const std::string& path);
/// Builds a system named after the file stem.
std::unique_ptr<CoxeterSystem> load_system(const std::string& path);

/// Every element of length <= max_length, sorted ShortLex. For infinite
/// systems the bound is what keeps the enumeration finite.
std::vector<Element> enumerate_elements(const CoxeterSystem& sys, int max_length);

} // namespace coxkl
