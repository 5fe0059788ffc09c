#include "coxkl/interval.hpp"

#include <algorithm>
#include <array>
#include <unordered_set>

#include "coxkl/error.hpp"

namespace coxkl {

namespace {

struct MatrixPair {
  IntMatrix action;
  IntMatrix inverse;
};

struct MatrixPairHash {
  std::size_t operator()(const IntMatrix& m) const noexcept { return m.hash(); }
};

} // namespace

Interval Interval::build(const CoxeterSystem& sys, const Element& u, const Element& v)
{
  if (!sys.bruhat_leq(u, v))
    throw Error(Errc::NotComparable, "[" + format_word(u.word()) + ", " + format_word(v.word()) +
                                         "] is not an interval: u is not <= v");
  const Word& word = v.word();
  std::unordered_map<IntMatrix, IntMatrix, MatrixPairHash> found;

  // Depth-first over subwords, carrying prefix products.
  std::vector<MatrixPair> stack;
  stack.push_back({IntMatrix::identity(sys.rank()), IntMatrix::identity(sys.rank())});
  std::function<void(std::size_t)> walk = [&](std::size_t pos) {
    if (pos == word.size()) {
      found.emplace(stack.back().action, stack.back().inverse);
      return;
    }
    walk(pos + 1);
    const IntMatrix& g = sys.generator(word[pos]);
    stack.push_back({stack.back().action * g, g * stack.back().inverse});
    walk(pos + 1);
    stack.pop_back();
  };
  walk(0);

  Interval out;
  out.sys_ = &sys;
  for (auto& [action, inverse] : found) {
    Element x = sys.from_action(action, inverse);
    if (x.length() >= u.length() && sys.bruhat_leq(u, x))
      out.elements_.push_back(std::move(x));
  }
  std::sort(out.elements_.begin(), out.elements_.end(),
            [](const Element& a, const Element& b) { return shortlex_less(a, b); });

  const std::size_t n = out.elements_.size();
  out.up_.assign(n, {});
  out.down_.assign(n, {});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const Element& x = out.elements_[i];
      const Element& y = out.elements_[j];
      if (y.length() == x.length() + 1 && sys.bruhat_leq(x, y)) {
        out.up_[i].push_back(j);
        out.down_[j].push_back(i);
      }
    }
  out.finish();
  return out;
}

Interval Interval::subinterval(std::size_t lo, std::size_t hi) const
{
  if (!leq(lo, hi))
    throw Error(Errc::NotComparable, "subinterval endpoints are not comparable");
  Interval out;
  out.sys_ = sys_;
  std::vector<std::size_t> keep;
  std::vector<std::size_t> remap(size(), SIZE_MAX);
  for (std::size_t k = 0; k < size(); ++k)
    if (leq(lo, k) && leq(k, hi)) {
      remap[k] = keep.size();
      keep.push_back(k);
      out.elements_.push_back(elements_[k]);
    }
  out.up_.assign(keep.size(), {});
  out.down_.assign(keep.size(), {});
  for (std::size_t a = 0; a < keep.size(); ++a)
    for (std::size_t j : up_[keep[a]])
      if (remap[j] != SIZE_MAX) {
        out.up_[a].push_back(remap[j]);
        out.down_[remap[j]].push_back(a);
      }
  out.finish();
  return out;
}

void Interval::finish()
{
  const std::size_t n = elements_.size();
  const std::size_t words = (n + 63) / 64;
  above_.assign(n, std::vector<std::uint64_t>(words, 0));
  // Indices are a linear extension, so a reverse sweep closes upward sets.
  for (std::size_t i = n; i-- > 0;) {
    above_[i][i / 64] |= std::uint64_t{1} << (i % 64);
    for (std::size_t j : up_[i])
      for (std::size_t w = 0; w < words; ++w)
        above_[i][w] |= above_[j][w];
  }
  index_.clear();
  for (std::size_t i = 0; i < n; ++i)
    index_.emplace(elements_[i], i);
}

bool Interval::covers(std::size_t lower, std::size_t upper) const
{
  const auto& up = up_[lower];
  return std::find(up.begin(), up.end(), upper) != up.end();
}

std::size_t Interval::cover_count() const
{
  std::size_t c = 0;
  for (const auto& u : up_)
    c += u.size();
  return c;
}

std::optional<std::size_t> Interval::index_of(const Element& x) const
{
  if (auto it = index_.find(x); it != index_.end())
    return it->second;
  return std::nullopt;
}

std::vector<LengthTwoDiamond> length2_quadruples(const Interval& interval)
{
  std::vector<LengthTwoDiamond> out;
  for (std::size_t x = 0; x < interval.size(); ++x) {
    std::unordered_map<std::size_t, std::vector<std::size_t>> middles;
    for (std::size_t m : interval.covers_up(x))
      for (std::size_t y : interval.covers_up(m))
        middles[y].push_back(m);
    std::vector<std::size_t> tops;
    for (const auto& [y, ms] : middles)
      tops.push_back(y);
    std::sort(tops.begin(), tops.end());
    for (std::size_t y : tops) {
      const auto& ms = middles[y];
      if (ms.size() != 2)
        throw Error(Errc::ConstructionFailed, "length-2 subinterval with " + std::to_string(ms.size()) +
                                                  " middle elements");
      out.push_back({x, y, std::min(ms[0], ms[1]), std::max(ms[0], ms[1])});
    }
  }
  return out;
}

void for_each_maximal_chain(const Interval& interval,
                            const std::function<void(const std::vector<std::size_t>&)>& visit)
{
  std::vector<std::size_t> chain{0};
  std::function<void()> walk = [&]() {
    const std::size_t cur = chain.back();
    if (cur == interval.top_index()) {
      visit(chain);
      return;
    }
    for (std::size_t next : interval.covers_up(cur)) {
      chain.push_back(next);
      walk();
      chain.pop_back();
    }
  };
  walk();
}

std::vector<std::vector<std::size_t>> maximal_chains(const Interval& interval)
{
  std::vector<std::vector<std::size_t>> out;
  for_each_maximal_chain(interval, [&](const std::vector<std::size_t>& c) { out.push_back(c); });
  return out;
}

} // namespace coxkl
