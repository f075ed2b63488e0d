#include "sfw/forcing.hpp"

#include <unordered_set>

#include "sfw/error.hpp"

namespace sfw::forcing {

void check_conditions(Name x, std::size_t poset_size) {
  std::unordered_set<Name> seen;
  std::vector<Name> stack{x};
  while (!stack.empty()) {
    Name cur = stack.back();
    stack.pop_back();
    if (!seen.insert(cur).second) continue;
    for (const auto& e : cur.entries()) {
      if (e.cond >= poset_size)
        throw Error(ErrorCode::ForeignCondition,
                    "condition " + std::to_string(e.cond) + " outside a poset of size " + std::to_string(poset_size));
      stack.push_back(e.child);
    }
  }
}

namespace {

Name apply_memo(const CondMap& pi, Name x, std::unordered_map<Name, Name>& memo) {
  if (auto it = memo.find(x); it != memo.end()) return it->second;
  std::vector<NameEntry> out;
  out.reserve(x.entries().size());
  for (const auto& e : x.entries()) out.push_back(NameEntry{apply_memo(pi, e.child, memo), pi(e.cond)});
  Name r = Name::make(std::move(out));
  memo.emplace(x, r);
  return r;
}

}  // namespace

Name apply_automorphism(const CondMap& pi, Name x) {
  std::unordered_map<Name, Name> memo;
  return apply_memo(pi, x, memo);
}

Name apply_automorphism(const PosetAutomorphism& pi, Name x) {
  check_conditions(x, pi.forward.size());
  return apply_automorphism([&](CondId c) { return pi.forward[c]; }, x);
}

HSet Evaluator::operator()(Name x) {
  if (auto it = memo_.find(x); it != memo_.end()) return it->second;
  std::vector<HSet> elems;
  for (const auto& e : x.entries())
    if (in_filter_(e.cond)) elems.push_back((*this)(e.child));
  HSet r = HSet::make(std::move(elems));
  memo_.emplace(x, r);
  return r;
}

HSet evaluate_name(const Poset& P, Name x, const PosetFilter& F) {
  if (!is_filter(P, F)) throw Error(ErrorCode::InvalidFilter, "evaluation needs an upward closed, directed filter");
  check_conditions(x, P.size());
  return Evaluator([&](CondId c) { return F.contains(c); })(x);
}

std::vector<HSet> valuation_profile(const Poset& P, Name x) {
  check_conditions(x, P.size());
  std::vector<HSet> out;
  for (CondId m : P.minimal_elements()) out.push_back(Evaluator([&](CondId c) { return P.le(m, c); })(x));
  return out;
}

bool forces(const Poset& P, CondId p, const Formula& phi, const std::vector<Name>& env) {
  if (!P.contains(p)) throw Error(ErrorCode::ForeignCondition, "condition " + std::to_string(p) + " outside the poset");
  phi.check_bound(env.size());
  for (Name x : env) check_conditions(x, P.size());
  std::vector<HSet> values(env.size());
  for (CondId m : P.minimal_below(p)) {
    Evaluator ev([&](CondId c) { return P.le(m, c); });
    for (std::size_t i = 0; i < env.size(); ++i) values[i] = ev(env[i]);
    if (!phi.eval(values)) return false;
  }
  return true;
}

ord::CountableSetDescriptor support_of(CondId p, const SupportContext& ctx) {
  if (!ctx.condition_support) throw Error(ErrorCode::NotAnIterationObject, "no iteration context for supports");
  return ctx.condition_support(p);
}

ord::CountableSetDescriptor support_of(Name x, const SupportContext& ctx) {
  if (!ctx.condition_support) throw Error(ErrorCode::NotAnIterationObject, "no iteration context for supports");
  std::unordered_map<Name, ord::CountableSetDescriptor> memo;
  auto go = [&](auto&& self, Name n) -> ord::CountableSetDescriptor {
    if (auto it = memo.find(n); it != memo.end()) return it->second;
    ord::CountableSetDescriptor acc;
    for (const auto& e : n.entries()) acc = acc.unite(ctx.condition_support(e.cond)).unite(self(self, e.child));
    memo.emplace(n, acc);
    return acc;
  };
  return go(go, x);
}

}  // namespace sfw::forcing
