#include "sfw/two_step.hpp"

#include <algorithm>
#include <map>

#include "sfw/constructors.hpp"
#include "sfw/error.hpp"
#include "sfw/forcing.hpp"

namespace sfw::forcing {

HSet encode_poset(const Poset& P) {
  std::vector<HSet> pairs;
  for (CondId p = 0; p < P.size(); ++p)
    for (CondId q = 0; q < P.size(); ++q)
      if (P.le(p, q)) pairs.push_back(HSet::kuratowski(HSet::natural(p), HSet::natural(q)));
  return HSet::make(std::move(pairs));
}

std::optional<DecodedPoset> decode_poset(HSet relation) {
  std::vector<std::pair<HSet, HSet>> pairs;
  std::vector<HSet> field;
  for (HSet e : relation.elements()) {
    HSet a, b;
    if (!decode_kuratowski(e, a, b)) return std::nullopt;
    pairs.emplace_back(a, b);
    field.push_back(a);
    field.push_back(b);
  }
  if (field.empty()) return std::nullopt;
  std::sort(field.begin(), field.end(), canonical_less);
  field.erase(std::unique(field.begin(), field.end()), field.end());
  auto index = [&](HSet x) {
    return static_cast<CondId>(std::lower_bound(field.begin(), field.end(), x, canonical_less) - field.begin());
  };
  std::vector<std::pair<CondId, CondId>> le;
  for (auto [a, b] : pairs) le.emplace_back(index(a), index(b));
  std::vector<std::string> labels;
  for (HSet x : field) labels.push_back(x.str());
  std::optional<CondId> top;
  for (CondId t = 0; t < field.size() && !top; ++t) {
    bool above_all = true;
    for (CondId p = 0; p < field.size() && above_all; ++p)
      above_all = std::find(le.begin(), le.end(), std::make_pair(p, t)) != le.end();
    if (above_all) top = t;
  }
  if (!top) return std::nullopt;
  Poset P(std::move(labels), le, *top);
  if (!validate_poset(P).valid) return std::nullopt;
  return DecodedPoset{std::move(field), std::move(P)};
}

TwoStepPoset two_step_compose(const Poset& P, Name Q) {
  check_conditions(Q, P.size());
  const auto& mins = P.minimal_elements();
  std::vector<DecodedPoset> fibers;
  std::vector<HSet> values = valuation_profile(P, Q);
  for (std::size_t i = 0; i < mins.size(); ++i) {
    auto d = decode_poset(values[i]);
    if (!d)
      throw Error(ErrorCode::NotAPosetName,
                  "valuation under the filter of " + P.label(mins[i]) + " is not a poset: " + values[i].str());
    fibers.push_back(std::move(*d));
  }
  const bool constant = std::all_of(values.begin(), values.end(), [&](HSet v) { return v == values[0]; });

  TwoStepPoset out;
  std::vector<std::string> pool_labels;
  if (constant) {
    for (HSet z : fibers[0].field) {
      out.pool.push_back(check_name(z, P.top()));
      pool_labels.push_back(z.str());
    }
  } else {
    std::vector<std::size_t> choice(mins.size(), 0);
    while (true) {
      std::vector<NameEntry> entries;
      std::string label = "<";
      for (std::size_t i = 0; i < mins.size(); ++i) {
        HSet z = fibers[i].field[choice[i]];
        for (HSet y : z.elements()) entries.push_back(NameEntry{check_name(y, P.top()), mins[i]});
        label += (i ? "|" : "") + z.str();
      }
      out.pool.push_back(Name::make(std::move(entries)));
      pool_labels.push_back(label + ">");
      std::size_t i = 0;
      while (i < mins.size() && ++choice[i] == fibers[i].field.size()) choice[i++] = 0;
      if (i == mins.size()) break;
      if (out.pool.size() > 4096) throw Error(ErrorCode::OutOfBudget, "too many mixed second coordinates");
    }
  }

  // val[k][i]: index of the valuation of pool name k in fiber i, or -1 if outside the field.
  std::vector<std::vector<long>> val(out.pool.size(), std::vector<long>(mins.size(), -1));
  for (std::size_t k = 0; k < out.pool.size(); ++k) {
    auto prof = valuation_profile(P, out.pool[k]);
    for (std::size_t i = 0; i < mins.size(); ++i) {
      const auto& f = fibers[i].field;
      auto it = std::lower_bound(f.begin(), f.end(), prof[i], canonical_less);
      if (it != f.end() && *it == prof[i]) val[k][i] = it - f.begin();
    }
  }
  std::vector<std::size_t> min_index(P.size(), 0);
  for (std::size_t i = 0; i < mins.size(); ++i) min_index[mins[i]] = i;

  auto below_idx = [&](CondId p) {
    std::vector<std::size_t> idx;
    for (CondId m : P.minimal_below(p)) idx.push_back(min_index[m]);
    return idx;
  };

  std::vector<std::pair<CondId, std::size_t>> reps;
  for (CondId p = 0; p < P.size(); ++p) {
    auto idx = below_idx(p);
    std::map<std::vector<long>, std::size_t> classes;
    for (std::size_t k = 0; k < out.pool.size(); ++k) {
      std::vector<long> key;
      bool in_field = true;
      for (auto i : idx) {
        key.push_back(val[k][i]);
        in_field = in_field && val[k][i] >= 0;
      }
      if (in_field && classes.emplace(key, k).second) reps.emplace_back(p, k);
    }
  }
  auto le = [&](const std::pair<CondId, std::size_t>& x, const std::pair<CondId, std::size_t>& y) {
    if (!P.le(x.first, y.first)) return false;
    for (auto i : below_idx(x.first))
      if (!fibers[i].poset.le(static_cast<CondId>(val[x.second][i]), static_cast<CondId>(val[y.second][i])))
        return false;
    return true;
  };
  auto top_it = std::find_if(reps.begin(), reps.end(), [&](const auto& r) {
    if (r.first != P.top()) return false;
    for (std::size_t i = 0; i < mins.size(); ++i)
      if (static_cast<CondId>(val[r.second][i]) != fibers[i].poset.top()) return false;
    return true;
  });
  std::rotate(reps.begin(), top_it, top_it + 1);

  std::vector<std::string> labels;
  for (auto [p, k] : reps) {
    labels.push_back("(" + P.label(p) + "," + pool_labels[k] + ")");
    out.components.emplace_back(p, out.pool[k]);
  }
  out.poset = Poset::from_predicate(
      std::move(labels), [&](CondId a, CondId b) { return le(reps[a], reps[b]); }, 0);
  return out;
}

CondId project_head(const TwoStepPoset& c, CondId x) {
  if (x >= c.components.size()) throw Error(ErrorCode::ForeignCondition, "condition outside the composite poset");
  return c.components[x].first;
}

}  // namespace sfw::forcing
