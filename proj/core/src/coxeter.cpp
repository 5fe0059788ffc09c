#include "coxkl/coxeter.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <deque>
#include <mutex>
#include <numeric>
#include <unordered_set>

#include "coxkl/error.hpp"

namespace coxkl {

namespace {

std::string cell(int r, int c)
{
  return "row " + std::to_string(r + 1) + ", column " + std::to_string(c + 1);
}

// Cartan pair (A(s,t), A(t,s)) realising a given bond label.
std::pair<std::int64_t, std::int64_t> cartan_pair(int m)
{
  switch (m) {
  case 2: return {0, 0};
  case 3: return {-1, -1};
  case 4: return {-1, -2};
  case 6: return {-1, -3};
  case CoxeterMatrix::kInfinity: return {-2, -2};
  default: throw Error(Errc::BadEntry, "unsupported bond label " + std::to_string(m));
  }
}

// Bareiss determinant of a principal submatrix.
std::int64_t principal_minor(const IntMatrix& a, const std::vector<int>& idx)
{
  const int n = static_cast<int>(idx.size());
  if (n == 0)
    return 1;
  std::vector<std::vector<std::int64_t>> m(n, std::vector<std::int64_t>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m[i][j] = a(idx[i], idx[j]);
  std::int64_t prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m[k][k] == 0) {
      int swap_row = -1;
      for (int i = k + 1; i < n; ++i)
        if (m[i][k] != 0) {
          swap_row = i;
          break;
        }
      if (swap_row < 0)
        return 0;
      std::swap(m[k], m[swap_row]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        m[i][j] = (checked::add(checked::mul(m[i][j], m[k][k]), -checked::mul(m[i][k], m[k][j]))) / prev;
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

bool column_is_negative(const IntMatrix& m, int col)
{
  bool nonzero = false;
  for (int r = 0; r < m.dim(); ++r) {
    if (m(r, col) > 0)
      return false;
    if (m(r, col) != 0)
      nonzero = true;
  }
  return nonzero;
}

std::string memo_key(const Element& u, const Element& v)
{
  std::string key;
  key.reserve(u.word().size() + v.word().size() + 1);
  for (int s : u.word())
    key.push_back(static_cast<char>(s));
  key.push_back('\xff');
  for (int s : v.word())
    key.push_back(static_cast<char>(s));
  return key;
}

} // namespace

CoxeterMatrix CoxeterMatrix::from_rows(const std::vector<std::vector<int>>& rows)
{
  const int n = static_cast<int>(rows.size());
  if (n == 0)
    throw Error(Errc::MatrixShape, "empty Coxeter matrix");
  for (int r = 0; r < n; ++r)
    if (static_cast<int>(rows[r].size()) != n)
      throw Error(Errc::MatrixShape, "row " + std::to_string(r + 1) + " has " +
                                         std::to_string(rows[r].size()) + " entries, expected " +
                                         std::to_string(n));
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      const int m = rows[r][c];
      if (r == c) {
        if (m != 1)
          throw Error(Errc::BadEntry, cell(r, c) + ": diagonal entry must be 1, got " + std::to_string(m));
        continue;
      }
      if (m != 2 && m != 3 && m != 4 && m != 6 && m != kInfinity)
        throw Error(Errc::BadEntry, cell(r, c) + ": entry " + std::to_string(m) +
                                        " not in {2,3,4,6,0=inf} (only crystallographic labels)");
      if (rows[c][r] != m)
        throw Error(Errc::MatrixShape, cell(r, c) + ": matrix is not symmetric (" +
                                           std::to_string(m) + " vs " + std::to_string(rows[c][r]) + ")");
    }
  CoxeterMatrix out;
  out.rank_ = n;
  out.entries_.reserve(static_cast<std::size_t>(n) * n);
  for (const auto& row : rows)
    out.entries_.insert(out.entries_.end(), row.begin(), row.end());
  return out;
}

bool shortlex_less(const Word& a, const Word& b)
{
  if (a.size() != b.size())
    return a.size() < b.size();
  return a < b;
}

std::string format_word(const Word& w)
{
  if (w.empty())
    return "e";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i)
      out += ' ';
    out += std::to_string(w[i] + 1);
  }
  return out;
}

Word parse_word(std::string_view text, int rank)
{
  Word out;
  std::size_t i = 0;
  while (i < text.size()) {
    const char ch = text[i];
    if (std::isspace(static_cast<unsigned char>(ch)) || ch == ',') {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j])) && text[j] != ',')
      ++j;
    const std::string_view tok = text.substr(i, j - i);
    if (tok == "e") {
      i = j;
      continue;
    }
    int value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size() || value < 1 || value > rank)
      throw Error(Errc::Parse, "bad generator index '" + std::string(tok) + "' (expected 1.." +
                                   std::to_string(rank) + ")");
    out.push_back(value - 1);
    i = j;
  }
  return out;
}

CoxeterSystem::CoxeterSystem(CoxeterMatrix matrix, std::string name)
    : matrix_(std::move(matrix)), name_(std::move(name))
{
  const int n = matrix_.rank();
  cartan_ = IntMatrix(n);
  for (int s = 0; s < n; ++s) {
    cartan_(s, s) = 2;
    for (int t = s + 1; t < n; ++t) {
      auto [ast, ats] = cartan_pair(matrix_(s, t));
      cartan_(s, t) = ast;
      cartan_(t, s) = ats;
    }
  }
  // sigma_s(alpha_t) = alpha_t - A(s,t) alpha_s, as a matrix on column vectors.
  for (int s = 0; s < n; ++s) {
    IntMatrix g = IntMatrix::identity(n);
    for (int t = 0; t < n; ++t)
      g(s, t) -= cartan_(s, t);
    generators_.push_back(std::move(g));
  }
  check_representation();

  finite_ = true;
  for (unsigned mask = 1; mask < (1u << n) && finite_; ++mask) {
    std::vector<int> idx;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i))
        idx.push_back(i);
    if (principal_minor(cartan_, idx) <= 0)
      finite_ = false;
  }
}

void CoxeterSystem::check_representation() const
{
  const int n = rank();
  for (int s = 0; s < n; ++s) {
    if (!(generators_[s] * generators_[s]).is_identity())
      throw Error(Errc::ConstructionFailed, "generator " + std::to_string(s + 1) + " is not an involution");
    for (int t = s + 1; t < n; ++t) {
      const int m = matrix_(s, t);
      if (m == CoxeterMatrix::kInfinity)
        continue;
      IntMatrix st = generators_[s] * generators_[t];
      IntMatrix p = IntMatrix::identity(n);
      for (int k = 0; k < m; ++k)
        p = p * st;
      if (!p.is_identity())
        throw Error(Errc::ConstructionFailed, "braid relation fails for " + cell(s, t));
    }
  }
}

std::uint64_t CoxeterSystem::fingerprint() const noexcept
{
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&](std::uint64_t x) {
    h ^= x;
    h *= 1099511628211ull;
  };
  mix(static_cast<std::uint64_t>(rank()));
  for (int s = 0; s < rank(); ++s)
    for (int t = 0; t < rank(); ++t)
      mix(static_cast<std::uint64_t>(matrix_(s, t)));
  return h;
}

Element CoxeterSystem::identity() const
{
  return Element(IntMatrix::identity(rank()), IntMatrix::identity(rank()), {});
}

Element CoxeterSystem::generator_element(int s) const
{
  return Element(generators_.at(s), generators_.at(s), {s});
}

Element CoxeterSystem::from_action(IntMatrix action, IntMatrix inverse) const
{
  // Peel off the smallest left descent until the identity is reached; this
  // yields the lexicographically least reduced word.
  Word word;
  IntMatrix a = action;
  IntMatrix inv = inverse;
  const std::size_t guard = 1u << 16;
  while (!a.is_identity()) {
    int found = -1;
    for (int s = 0; s < rank(); ++s)
      if (column_is_negative(inv, s)) {
        found = s;
        break;
      }
    if (found < 0 || word.size() > guard)
      throw Error(Errc::ConstructionFailed, "matrix is not in the image of the group");
    word.push_back(found);
    a = generators_[found] * a;
    inv = inv * generators_[found];
  }
  return Element(std::move(action), std::move(inverse), std::move(word));
}

Element CoxeterSystem::element(const Word& word) const
{
  IntMatrix a = IntMatrix::identity(rank());
  IntMatrix inv = IntMatrix::identity(rank());
  for (int s : word) {
    if (s < 0 || s >= rank())
      throw Error(Errc::PreconditionViolated, "generator index out of range");
    a = a * generators_[s];
    inv = generators_[s] * inv;
  }
  return from_action(std::move(a), std::move(inv));
}

Element CoxeterSystem::mul_gen(const Element& w, int s, Side side) const
{
  const IntMatrix& g = generators_.at(s);
  if (side == Side::Right)
    return from_action(w.action() * g, g * w.inverse_action());
  return from_action(g * w.action(), w.inverse_action() * g);
}

Element CoxeterSystem::multiply(const Element& a, const Element& b) const
{
  return from_action(a.action() * b.action(), b.inverse_action() * a.inverse_action());
}

Element CoxeterSystem::inverse(const Element& w) const
{
  return from_action(w.inverse_action(), w.action());
}

bool CoxeterSystem::is_descent(const Element& w, int s, Side side) const
{
  // Right descent: w(alpha_s) < 0. Left descent: w^{-1}(alpha_s) < 0.
  return column_is_negative(side == Side::Right ? w.action() : w.inverse_action(), s);
}

std::vector<int> CoxeterSystem::descents(const Element& w, Side side) const
{
  std::vector<int> out;
  for (int s = 0; s < rank(); ++s)
    if (is_descent(w, s, side))
      out.push_back(s);
  return out;
}

bool CoxeterSystem::bruhat_leq(const Element& u, const Element& v) const
{
  if (u.length() > v.length())
    return false;
  if (u.length() == v.length())
    return u == v;
  if (u.is_identity())
    return true;

  const std::string key = memo_key(u, v);
  {
    std::shared_lock lock(memo_mutex_);
    if (auto it = leq_memo_.find(key); it != leq_memo_.end())
      return it->second;
  }
  // The first letter of the canonical word is a left descent of v.
  const int s = v.word().front();
  const Element sv = mul_gen(v, s, Side::Left);
  bool result;
  if (is_descent(u, s, Side::Left))
    result = bruhat_leq(mul_gen(u, s, Side::Left), sv);
  else
    result = bruhat_leq(u, sv);
  std::unique_lock lock(memo_mutex_);
  leq_memo_.emplace(key, result);
  return result;
}

std::size_t CoxeterSystem::bruhat_memo_size() const
{
  std::shared_lock lock(memo_mutex_);
  return leq_memo_.size();
}

std::vector<Root> CoxeterSystem::inversion_set(const Element& w) const
{
  // N(xs) = N(x) + { x alpha_s } along the reduced word.
  std::vector<Root> out;
  IntMatrix prefix = IntMatrix::identity(rank());
  for (int s : w.word()) {
    out.emplace_back(prefix.column(s));
    prefix = prefix * generators_[s];
  }
  return out;
}

std::optional<Root> CoxeterSystem::reflection_root(const IntMatrix& m) const
{
  const int n = rank();
  if (m.is_identity() || !(m * m).is_identity())
    return std::nullopt;
  const IntMatrix d = m - IntMatrix::identity(n);
  int pivot_col = -1;
  for (int c = 0; c < n && pivot_col < 0; ++c)
    for (int r = 0; r < n; ++r)
      if (d(r, c) != 0) {
        pivot_col = c;
        break;
      }
  std::vector<std::int64_t> beta = d.column(pivot_col);
  std::int64_t g = 0;
  for (auto x : beta)
    g = std::gcd(g, x < 0 ? -x : x);
  for (auto& x : beta)
    x /= g;
  Root root(beta);
  if (root.is_negative())
    root = -root;
  else if (!root.is_positive())
    return std::nullopt;
  beta = root.coords();

  int p = 0;
  while (beta[p] == 0)
    ++p;
  // Rank one: every column is an integer multiple of beta.
  for (int c = 0; c < n; ++c) {
    const std::int64_t k = d(p, c) / beta[p];
    if (k * beta[p] != d(p, c))
      return std::nullopt;
    for (int r = 0; r < n; ++r)
      if (d(r, c) != k * beta[r])
        return std::nullopt;
  }
  const auto image = m.apply(beta);
  for (int r = 0; r < n; ++r)
    if (image[r] != -beta[r])
      return std::nullopt;
  return root;
}

std::optional<Root> CoxeterSystem::reflection_data(const Element& w) const
{
  if (w.length() % 2 == 0)
    return std::nullopt;
  return reflection_root(w.action());
}

IntMatrix CoxeterSystem::reflection_matrix(const Root& beta) const
{
  if (!beta.is_positive())
    throw Error(Errc::PreconditionViolated, "reflection_matrix needs a positive root");
  // Walk beta down to a simple root: t_beta = s t_{s beta} s.
  std::vector<int> path;
  Root cur = beta;
  for (std::size_t guard = 0;; ++guard) {
    int simple = -1;
    std::int64_t height = 0;
    for (int i = 0; i < rank(); ++i)
      height += cur[i];
    if (height == 1) {
      for (int i = 0; i < rank(); ++i)
        if (cur[i] == 1)
          simple = i;
      IntMatrix m = generators_[simple];
      for (auto it = path.rbegin(); it != path.rend(); ++it)
        m = generators_[*it] * m * generators_[*it];
      return m;
    }
    int step = -1;
    for (int s = 0; s < rank() && step < 0; ++s) {
      std::int64_t pairing = 0;
      for (int t = 0; t < rank(); ++t)
        pairing += cartan_(s, t) * cur[t];
      if (pairing > 0)
        step = s;
    }
    if (step < 0 || guard > (1u << 16))
      throw Error(Errc::PreconditionViolated, "vector " + beta.to_string() + " is not a root");
    cur = reflect(step, cur);
    if (!cur.is_positive())
      throw Error(Errc::PreconditionViolated, "vector " + beta.to_string() + " is not a root");
    path.push_back(step);
  }
}

Root CoxeterSystem::apply(const Element& w, const Root& r) const
{
  return Root(w.action().apply(r.coords()));
}

Root CoxeterSystem::apply_inverse(const Element& w, const Root& r) const
{
  return Root(w.inverse_action().apply(r.coords()));
}

Root CoxeterSystem::reflect(int s, const Root& r) const
{
  return Root(generators_.at(s).apply(r.coords()));
}

std::vector<Root> CoxeterSystem::positive_roots() const
{
  if (!finite_)
    throw Error(Errc::PreconditionViolated, "positive_roots on an infinite system");
  std::unordered_set<Root, RootHash> seen;
  std::deque<Root> queue;
  for (int s = 0; s < rank(); ++s) {
    seen.insert(simple_root(s));
    queue.push_back(simple_root(s));
  }
  while (!queue.empty()) {
    Root r = queue.front();
    queue.pop_front();
    for (int s = 0; s < rank(); ++s) {
      Root x = reflect(s, r);
      if (x.is_positive() && seen.insert(x).second)
        queue.push_back(x);
    }
  }
  std::vector<Root> out(seen.begin(), seen.end());
  auto height = [](const Root& r) {
    std::int64_t h = 0;
    for (auto c : r.coords())
      h += c;
    return h;
  };
  std::sort(out.begin(), out.end(), [&](const Root& a, const Root& b) {
    const auto ha = height(a), hb = height(b);
    return ha != hb ? ha < hb : a > b;
  });
  return out;
}

Element CoxeterSystem::longest_element() const
{
  if (!finite_)
    throw Error(Errc::PreconditionViolated, "longest_element on an infinite system");
  Element w = identity();
  for (;;) {
    int up = -1;
    for (int s = 0; s < rank() && up < 0; ++s)
      if (!is_descent(w, s, Side::Right))
        up = s;
    if (up < 0)
      return w;
    w = mul_gen(w, up, Side::Right);
  }
}

std::vector<Element> enumerate_elements(const CoxeterSystem& sys, int max_length)
{
  std::vector<Element> all{sys.identity()};
  std::vector<Element> level{sys.identity()};
  for (int len = 1; len <= max_length && !level.empty(); ++len) {
    std::unordered_set<Element, ElementHash> next;
    for (const auto& w : level)
      for (int s = 0; s < sys.rank(); ++s)
        if (!sys.is_descent(w, s, Side::Right))
          next.insert(sys.mul_gen(w, s, Side::Right));
    level.assign(next.begin(), next.end());
    all.insert(all.end(), level.begin(), level.end());
  }
  std::sort(all.begin(), all.end(), [](const Element& a, const Element& b) { return shortlex_less(a, b); });
  return all;
}

} // namespace coxkl
