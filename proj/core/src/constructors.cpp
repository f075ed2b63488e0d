#include "sfw/constructors.hpp"

#include <unordered_map>

#include "sfw/error.hpp"
#include "sfw/forcing.hpp"

namespace sfw::forcing {

namespace {

Name check_name_memo(HSet h, CondId top, std::unordered_map<std::uint32_t, Name>& memo) {
  if (auto it = memo.find(h.id()); it != memo.end()) return it->second;
  std::vector<NameEntry> entries;
  for (HSet y : h.elements()) entries.push_back(NameEntry{check_name_memo(y, top, memo), top});
  Name out = Name::make(std::move(entries));
  memo.emplace(h.id(), out);
  return out;
}

}  // namespace

Name check_name(HSet h, CondId top) {
  std::unordered_map<std::uint32_t, Name> memo;
  return check_name_memo(h, top, memo);
}

Name pair_name(Name x, Name y, CondId top) { return Name::make({NameEntry{x, top}, NameEntry{y, top}}); }

Name ordered_pair_name(Name x, Name y, CondId top) {
  return pair_name(pair_name(x, x, top), pair_name(x, y, top), top);
}

Name tuple_name(const std::vector<Name>& xs, CondId top) {
  std::vector<NameEntry> entries;
  for (std::size_t j = 0; j < xs.size(); ++j)
    entries.push_back(NameEntry{ordered_pair_name(check_name(HSet::natural(j), top), xs[j], top), top});
  return Name::make(std::move(entries));
}

std::optional<std::pair<Name, Name>> decode_ordered_pair_name(Name x, CondId top) {
  auto members = [&](Name n) -> std::optional<std::vector<Name>> {
    std::vector<Name> out;
    for (const auto& e : n.entries()) {
      if (e.cond != top) return std::nullopt;
      out.push_back(e.child);
    }
    return out;
  };
  auto outer = members(x);
  if (!outer || outer->empty() || outer->size() > 2) return std::nullopt;
  // op(a, b) = {{a}, {a, b}}; with a = b it collapses to {{a}}.
  std::optional<Name> a, b;
  for (Name m : *outer) {
    auto inner = members(m);
    if (!inner || inner->empty() || inner->size() > 2) return std::nullopt;
    if (inner->size() == 1) {
      if (a && *a != (*inner)[0]) return std::nullopt;
      a = (*inner)[0];
    }
  }
  if (!a) return std::nullopt;
  for (Name m : *outer) {
    auto inner = members(m);
    if (inner->size() == 2) {
      if ((*inner)[0] != *a && (*inner)[1] != *a) return std::nullopt;
      b = (*inner)[0] == *a ? (*inner)[1] : (*inner)[0];
    }
  }
  if (!b) {
    if (outer->size() != 1) return std::nullopt;
    b = a;
  }
  if (ordered_pair_name(*a, *b, top) != x) return std::nullopt;
  return std::make_pair(*a, *b);
}

std::vector<CondId> maximal_lower_bounds(const Poset& P, CondId p, CondId q) {
  std::vector<CondId> lower;
  for (CondId r = 0; r < P.size(); ++r)
    if (P.le(r, p) && P.le(r, q)) lower.push_back(r);
  std::vector<CondId> out;
  for (CondId r : lower) {
    bool maximal = true;
    for (CondId s : lower)
      if (s != r && P.le(r, s)) maximal = false;
    if (maximal) out.push_back(r);
  }
  return out;
}

Name union_name(const Poset& P, Name A) {
  check_conditions(A, P.size());
  std::vector<NameEntry> out;
  for (const auto& [sigma, p] : A.entries())
    for (const auto& [tau, q] : sigma.entries())
      for (CondId r : maximal_lower_bounds(P, p, q)) out.push_back(NameEntry{tau, r});
  return Name::make(std::move(out));
}

Name separation_name(const Poset& P, Name A, const Formula& phi, const std::vector<Name>& params) {
  phi.check_bound(1 + params.size());
  check_conditions(A, P.size());
  std::vector<Name> env{Name()};
  env.insert(env.end(), params.begin(), params.end());
  std::vector<NameEntry> out;
  for (const auto& [sigma, p] : A.entries()) {
    env[0] = sigma;
    std::vector<CondId> forcing_below;
    for (CondId r = 0; r < P.size(); ++r)
      if (P.le(r, p) && forces(P, r, phi, env)) forcing_below.push_back(r);
    for (CondId r : forcing_below) {
      bool maximal = true;
      for (CondId s : forcing_below)
        if (s != r && P.le(r, s)) maximal = false;
      if (maximal) out.push_back(NameEntry{sigma, r});
    }
  }
  return Name::make(std::move(out));
}

Name range_name(const Poset& P, Name A, Name f) {
  check_conditions(A, P.size());
  check_conditions(f, P.size());
  std::vector<NameEntry> out;
  for (const auto& [rho, p] : f.entries()) {
    auto pr = decode_ordered_pair_name(rho, P.top());
    if (!pr) throw Error(ErrorCode::ArityMismatch, "range needs a relation made of ordered-pair names");
    for (const auto& [sigma, q] : A.entries()) {
      if (sigma != pr->first) continue;
      for (CondId r : maximal_lower_bounds(P, p, q)) out.push_back(NameEntry{pr->second, r});
    }
  }
  return Name::make(std::move(out));
}

Name power_name(Name A, CondId top, std::size_t budget) {
  std::vector<Name> dom;
  for (const auto& e : A.entries())
    if (dom.empty() || !(dom.back() == e.child)) dom.push_back(e.child);
  if (dom.size() >= 63 || (std::size_t{1} << dom.size()) > budget)
    throw Error(ErrorCode::OutOfBudget, "power name over " + std::to_string(dom.size()) + " candidates");
  std::vector<NameEntry> out;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << dom.size()); ++s) {
    std::vector<NameEntry> sub;
    for (std::size_t i = 0; i < dom.size(); ++i)
      if ((s >> i) & 1U) sub.push_back(NameEntry{dom[i], top});
    out.push_back(NameEntry{Name::make(std::move(sub)), top});
  }
  return Name::make(std::move(out));
}

NameKind parse_name_kind(std::string_view s) {
  static const std::unordered_map<std::string_view, NameKind> kinds{
      {"check", NameKind::check}, {"pair", NameKind::pair},           {"tuple", NameKind::tuple},
      {"union", NameKind::union_of}, {"separation", NameKind::separation}, {"range", NameKind::range}, {"power", NameKind::power}};
  auto it = kinds.find(s);
  if (it == kinds.end()) throw Error(ErrorCode::ParseError, "unknown name constructor '" + std::string(s) + "'");
  return it->second;
}

Name make_name(NameKind kind, const Poset& P, const NameArgs& args) {
  auto arity = [&](std::size_t names, bool set, bool formula) {
    bool ok = set ? args.set.has_value() : !args.set.has_value();
    ok = ok && (formula ? args.formula.has_value() : !args.formula.has_value());
    if (names != SIZE_MAX) ok = ok && args.names.size() == names;
    if (!ok) throw Error(ErrorCode::ArityMismatch, "wrong arguments for this name constructor");
  };
  switch (kind) {
    case NameKind::check: arity(0, true, false); return check_name(*args.set, P.top());
    case NameKind::pair: arity(2, false, false); return pair_name(args.names[0], args.names[1], P.top());
    case NameKind::tuple: arity(SIZE_MAX, false, false); return tuple_name(args.names, P.top());
    case NameKind::union_of: arity(1, false, false); return union_name(P, args.names[0]);
    case NameKind::separation: {
      arity(SIZE_MAX, false, true);
      if (args.names.empty()) throw Error(ErrorCode::ArityMismatch, "separation needs the set name");
      std::vector<Name> params(args.names.begin() + 1, args.names.end());
      return separation_name(P, args.names[0], *args.formula, params);
    }
    case NameKind::range: arity(2, false, false); return range_name(P, args.names[0], args.names[1]);
    case NameKind::power: arity(1, false, false); return power_name(args.names[0], P.top());
  }
  throw Error(ErrorCode::ArityMismatch, "unknown constructor");
}

}  // namespace sfw::forcing
