#include "sfw/oracle.hpp"

#include <algorithm>
#include <set>

#include "sfw/error.hpp"

namespace sfw::oracle {

using groups::Elem;
using groups::has;

std::vector<Mask> subgroups_by_subsets(const FiniteGroup& G) {
  if (G.order() > 16) throw Error(ErrorCode::GroupTooLarge, "subset enumeration is limited to order 16");
  std::vector<Mask> out;
  const Mask limit = Mask{1} << G.order();
  for (Mask m = 1; m < limit; m += 2) {
    bool closed = true;
    for (Elem a = 0; a < G.order() && closed; ++a)
      for (Elem b = 0; b < G.order() && closed; ++b)
        if (has(m, a) && has(m, b) && !has(m, G.mul(a, b))) closed = false;
    if (closed) out.push_back(m);
  }
  return out;
}

namespace {

Mask conj(const FiniteGroup& G, Elem g, Mask m) {
  Mask out = 0;
  for (Elem x = 0; x < G.order(); ++x)
    if (has(m, x)) out |= Mask{1} << G.mul(G.mul(g, x), G.inv(g));
  return out;
}

Mask everything(const FiniteGroup& G) { return G.order() == 64 ? ~Mask{0} : (Mask{1} << G.order()) - 1; }

Verdict judge(const FiniteGroup& G, const std::vector<Mask>& subs, const std::set<Mask>& fam) {
  Verdict v;
  for (Mask m : fam)
    if (!std::binary_search(subs.begin(), subs.end(), m)) return v;
  bool ok = fam.count(everything(G)) > 0;
  for (Mask a : fam)
    for (Mask b : subs)
      if ((a & b) == a && !fam.count(b)) ok = false;
  std::set<Mask> closure = fam;
  for (bool grew = true; grew;) {
    grew = false;
    std::vector<Mask> cur(closure.begin(), closure.end());
    for (Mask a : cur)
      for (Mask b : cur)
        if (closure.insert(a & b).second) grew = true;
  }
  v.omega1_complete = !fam.empty() && closure == fam;
  v.filter = ok && v.omega1_complete;
  v.normal = true;
  for (Mask a : fam)
    for (Elem g = 0; g < G.order(); ++g)
      if (!fam.count(conj(G, g, a))) v.normal = false;
  return v;
}

}  // namespace

Verdict judge_family(const FiniteGroup& G, const std::vector<Mask>& family) {
  auto subs = subgroups_by_subsets(G);
  return judge(G, subs, std::set<Mask>(family.begin(), family.end()));
}

std::vector<std::vector<Mask>> all_normal_filters(const FiniteGroup& G) {
  const auto subs = subgroups_by_subsets(G);
  if (subs.size() > 20) throw Error(ErrorCode::GroupTooLarge, "subgroup lattice too large for subset scanning");
  std::vector<std::vector<Mask>> out;
  for (std::uint64_t s = 1; s < (std::uint64_t{1} << subs.size()); ++s) {
    std::set<Mask> fam;
    for (std::size_t i = 0; i < subs.size(); ++i)
      if ((s >> i) & 1U) fam.insert(subs[i]);
    auto v = judge(G, subs, fam);
    if (v.filter && v.normal) out.emplace_back(fam.begin(), fam.end());
  }
  return out;
}

std::vector<Mask> least_containing(const std::vector<std::vector<Mask>>& filters, const std::vector<Mask>& gens) {
  std::vector<Mask> meet;
  bool first = true;
  for (const auto& f : filters) {
    if (!std::all_of(gens.begin(), gens.end(), [&](Mask g) { return std::binary_search(f.begin(), f.end(), g); }))
      continue;
    if (first) {
      meet = f;
      first = false;
    } else {
      std::vector<Mask> next;
      std::set_intersection(meet.begin(), meet.end(), f.begin(), f.end(), std::back_inserter(next));
      meet = std::move(next);
    }
  }
  return meet;
}

}  // namespace sfw::oracle
