#include "coxkl/poset.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

namespace coxkl {

namespace {

using Colors = std::vector<std::size_t>;

struct Canonizer {
  const GradedPoset& p;
  std::vector<std::vector<std::size_t>> down;
  std::string best;
  std::vector<std::size_t> best_labeling;
  bool have_best = false;

  explicit Canonizer(const GradedPoset& poset) : p(poset), down(poset.size())
  {
    for (std::size_t v = 0; v < p.size(); ++v)
      for (std::size_t w : p.up[v])
        down[w].push_back(v);
  }

  // Colour refinement to a fixed point. New colours are the ranks of the
  // sorted signatures, so the result depends only on the isomorphism type.
  Colors refine(Colors colors) const
  {
    const std::size_t n = p.size();
    std::size_t classes = std::set<std::size_t>(colors.begin(), colors.end()).size();
    for (;;) {
      using Sig = std::tuple<std::size_t, std::vector<std::size_t>, std::vector<std::size_t>>;
      std::vector<Sig> sigs(n);
      for (std::size_t v = 0; v < n; ++v) {
        std::vector<std::size_t> ups, downs;
        for (std::size_t w : p.up[v])
          ups.push_back(colors[w]);
        for (std::size_t w : down[v])
          downs.push_back(colors[w]);
        std::sort(ups.begin(), ups.end());
        std::sort(downs.begin(), downs.end());
        sigs[v] = Sig{colors[v], std::move(ups), std::move(downs)};
      }
      std::vector<Sig> distinct(sigs);
      std::sort(distinct.begin(), distinct.end());
      distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
      Colors next(n);
      for (std::size_t v = 0; v < n; ++v)
        next[v] = static_cast<std::size_t>(std::lower_bound(distinct.begin(), distinct.end(), sigs[v]) -
                                           distinct.begin());
      colors = std::move(next);
      if (distinct.size() == classes)
        return colors;
      classes = distinct.size();
    }
  }

  std::string encode(const Colors& colors) const
  {
    const std::size_t n = p.size();
    std::vector<std::size_t> at(n);
    for (std::size_t v = 0; v < n; ++v)
      at[colors[v]] = v;
    std::string out;
    out.reserve(n + n * n / 8 + 8);
    for (std::size_t pos = 0; pos < n; ++pos)
      out.push_back(static_cast<char>('0' + p.rank[at[pos]]));
    out.push_back('|');
    // Cover matrix in canonical order, packed 6 bits per character.
    int bits = 0, acc = 0;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        const auto& ups = p.up[at[a]];
        const bool cov = std::find(ups.begin(), ups.end(), at[b]) != ups.end();
        acc = (acc << 1) | (cov ? 1 : 0);
        if (++bits == 6) {
          out.push_back(static_cast<char>('0' + acc));
          bits = acc = 0;
        }
      }
    if (bits)
      out.push_back(static_cast<char>('0' + (acc << (6 - bits))));
    return out;
  }

  void search(Colors colors)
  {
    colors = refine(std::move(colors));
    const std::size_t n = p.size();
    std::vector<std::size_t> count(n, 0);
    for (auto c : colors)
      ++count[c];
    std::size_t target = n;
    for (std::size_t c = 0; c < n; ++c)
      if (count[c] > 1) {
        target = c;
        break;
      }
    if (target == n) {
      std::string form = encode(colors);
      if (!have_best || form < best) {
        best = std::move(form);
        best_labeling = colors;
        have_best = true;
      }
      return;
    }
    for (std::size_t v = 0; v < n; ++v) {
      if (colors[v] != target)
        continue;
      Colors next(n);
      for (std::size_t w = 0; w < n; ++w)
        next[w] = 2 * colors[w] + (w == v ? 0 : 1);
      search(std::move(next));
    }
  }
};

} // namespace

GradedPoset GradedPoset::from_interval(const Interval& interval)
{
  GradedPoset p;
  for (std::size_t i = 0; i < interval.size(); ++i) {
    p.rank.push_back(interval.rank(i));
    p.up.push_back(interval.covers_up(i));
  }
  return p;
}

GradedPoset GradedPoset::from_covers(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& covers)
{
  GradedPoset p;
  p.up.assign(n, {});
  std::vector<std::size_t> indeg(n, 0);
  for (auto [lo, hi] : covers) {
    p.up[lo].push_back(hi);
    ++indeg[hi];
  }
  p.rank.assign(n, 0);
  std::vector<std::size_t> order;
  for (std::size_t v = 0; v < n; ++v)
    if (indeg[v] == 0)
      order.push_back(v);
  for (std::size_t k = 0; k < order.size(); ++k)
    for (std::size_t w : p.up[order[k]]) {
      p.rank[w] = std::max(p.rank[w], p.rank[order[k]] + 1);
      if (--indeg[w] == 0)
        order.push_back(w);
    }
  return p;
}

PosetCertificate poset_canonical_form(const GradedPoset& poset)
{
  Canonizer c(poset);
  Colors initial(poset.size());
  for (std::size_t v = 0; v < poset.size(); ++v)
    initial[v] = static_cast<std::size_t>(poset.rank[v]);
  c.search(std::move(initial));
  return {std::to_string(poset.size()) + ":" + c.best, c.best_labeling};
}

bool is_poset_isomorphism(const GradedPoset& a, const GradedPoset& b, const std::vector<std::size_t>& map)
{
  const std::size_t n = a.size();
  if (b.size() != n || map.size() != n)
    return false;
  std::vector<bool> hit(n, false);
  for (std::size_t v = 0; v < n; ++v) {
    if (map[v] >= n || hit[map[v]])
      return false;
    hit[map[v]] = true;
  }
  std::set<std::pair<std::size_t, std::size_t>> image, target;
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t w : a.up[v])
      image.emplace(map[v], map[w]);
    for (std::size_t w : b.up[v])
      target.emplace(v, w);
  }
  return image == target;
}

std::optional<std::vector<std::size_t>> poset_isomorphic(const GradedPoset& a, const GradedPoset& b)
{
  if (a.size() != b.size())
    return std::nullopt;
  const auto ca = poset_canonical_form(a);
  const auto cb = poset_canonical_form(b);
  if (ca.form != cb.form)
    return std::nullopt;
  std::vector<std::size_t> at_b(b.size());
  for (std::size_t v = 0; v < b.size(); ++v)
    at_b[cb.labeling[v]] = v;
  std::vector<std::size_t> map(a.size());
  for (std::size_t v = 0; v < a.size(); ++v)
    map[v] = at_b[ca.labeling[v]];
  if (!is_poset_isomorphism(a, b, map))
    return std::nullopt;
  return map;
}

std::optional<std::vector<std::size_t>> poset_isomorphic(const Interval& a, const Interval& b)
{
  return poset_isomorphic(GradedPoset::from_interval(a), GradedPoset::from_interval(b));
}

} // namespace coxkl
