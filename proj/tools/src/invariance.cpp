#include "coxkl_cli/invariance.hpp"

#include <map>
#include <mutex>

#include "coxkl/bruhat_graph.hpp"
#include "coxkl/poset.hpp"
#include "coxkl_cli/parallel.hpp"

namespace coxkl::cli {

namespace {

std::string label(const InvarianceMember& m)
{
  return m.kl->system().name() + ":[" + format_word(m.pair.u.word()) + ", " + format_word(m.pair.v.word()) + "]";
}

// The four coefficients tied to d: [q]P, [q]R, [q^{l-1}]R, [q^{l-2}]R-tilde.
std::vector<mpz_class> d_coefficients(const InvarianceMember& m)
{
  return {m.p.coeff(1), m.r.coeff(1), m.r.coeff(m.length - 1), m.rt.coeff(m.length - 2)};
}

bool digraph_iso(const InvarianceMember& a, const InvarianceMember& b)
{
  const BruhatGraph ga = BruhatGraph::build(Interval::build(a.kl->system(), a.pair.u, a.pair.v));
  const BruhatGraph gb = BruhatGraph::build(Interval::build(b.kl->system(), b.pair.u, b.pair.v));
  const auto map = poset_isomorphic(ga.interval(), gb.interval());
  if (!map || ga.edge_count() != gb.edge_count())
    return false;
  for (const auto& e : ga.edges()) {
    auto img = gb.edge_between((*map)[e.from], (*map)[e.to]);
    if (!img || gb.edge(*img).from != (*map)[e.from])
      return false;
  }
  return true;
}

} // namespace

InvarianceReport classify_intervals(const std::vector<Corpus>& corpora, const InvarianceOptions& options)
{
  InvarianceReport rep;
  for (const auto& c : corpora)
    for (const auto& pair : c.pairs)
      rep.members.push_back({c.kl, pair, pair.length(), {}, {}, {}});

  std::vector<std::string> forms(rep.members.size());
  parallel_for(rep.members.size(), options.threads, [&](std::size_t i) {
    auto& m = rep.members[i];
    const Interval iv = Interval::build(m.kl->system(), m.pair.u, m.pair.v);
    forms[i] = poset_canonical_form(iv).form;
    m.p = m.kl->kl_poly(m.pair.u, m.pair.v);
    m.r = m.kl->r_poly(m.pair.u, m.pair.v);
    m.rt = m.kl->rtilde_poly(m.pair.u, m.pair.v);
  });

  std::map<std::pair<int, std::string>, std::size_t> by_form;
  for (std::size_t i = 0; i < rep.members.size(); ++i) {
    const auto key = std::make_pair(rep.members[i].length, forms[i]);
    auto [it, fresh] = by_form.emplace(key, 0);
    if (fresh)
      it->second = by_form.size() - 1;
  }
  rep.classes.resize(by_form.size());
  std::vector<std::size_t> slot(by_form.size());
  {
    std::size_t k = 0;
    for (auto& [key, idx] : by_form) {
      slot[idx] = k;
      rep.classes[k].length = key.first;
      rep.classes[k].form = key.second;
      ++k;
    }
  }
  for (std::size_t i = 0; i < rep.members.size(); ++i)
    rep.classes[slot[by_form.at({rep.members[i].length, forms[i]})]].members.push_back(i);

  std::mutex mutex;
  parallel_for(rep.classes.size(), options.threads, [&](std::size_t k) {
    auto& cls = rep.classes[k];
    const auto& first = rep.members[cls.members.front()];
    std::size_t full = 0, coeff = 0, digraph = 0;
    for (std::size_t j = 1; j < cls.members.size(); ++j) {
      const auto& m = rep.members[cls.members[j]];
      std::string why;
      if (cls.length <= options.full_length) {
        if (m.p != first.p || m.r != first.r || m.rt != first.rt) {
          ++full;
          why = "polynomials differ";
        } else if (options.check_digraph && !digraph_iso(first, m)) {
          ++digraph;
          why = "Bruhat graphs differ";
        }
      }
      if (d_coefficients(m) != d_coefficients(first)) {
        ++coeff;
        why = why.empty() ? "d-coefficients differ" : why + ", d-coefficients differ";
      }
      if (!why.empty() && !cls.mismatch) {
        cls.mismatch = true;
        cls.detail = why + ": " + label(first) + " vs " + label(m);
      }
    }
    std::lock_guard lock(mutex);
    rep.full_mismatches += full;
    rep.coefficient_mismatches += coeff;
    rep.digraph_mismatches += digraph;
  });
  return rep;
}

nlohmann::json InvarianceReport::to_json() const
{
  nlohmann::json classes_json = nlohmann::json::array();
  for (const auto& c : classes) {
    const auto& first = members[c.members.front()];
    nlohmann::json names = nlohmann::json::array();
    for (auto i : c.members)
      names.push_back(label(members[i]));
    nlohmann::json j{{"length", c.length}, {"size", c.members.size()}, {"form", c.form}, {"members", names}};
    if (c.mismatch) {
      j["status"] = "MISMATCH";
      j["detail"] = c.detail;
    } else {
      j["status"] = "ok";
      j["P"] = first.p.to_string();
      j["R"] = first.r.to_string();
      j["Rt"] = first.rt.to_string();
    }
    classes_json.push_back(std::move(j));
  }
  return {{"intervals", members.size()},
          {"classes", classes.size()},
          {"full_mismatches", full_mismatches},
          {"coefficient_mismatches", coefficient_mismatches},
          {"digraph_mismatches", digraph_mismatches},
          {"isomorphism_classes", classes_json}};
}

} // namespace coxkl::cli
