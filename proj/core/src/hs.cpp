#include "sfw/hs.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "sfw/constructors.hpp"
#include "sfw/error.hpp"
#include "sfw/formula.hpp"

namespace sfw::hs {

using groups::Elem;
using groups::Mask;
using ord::CountableSetDescriptor;

namespace {

// Every subname of x, children before parents.
std::vector<Name> subnames(Name x) {
  std::vector<Name> order;
  std::unordered_set<Name> seen;
  std::vector<std::pair<Name, bool>> stack{{x, false}};
  while (!stack.empty()) {
    auto [y, expanded] = stack.back();
    stack.pop_back();
    if (expanded) {
      order.push_back(y);
      continue;
    }
    if (!seen.insert(y).second) continue;
    stack.push_back({y, true});
    for (const auto& e : y.entries())
      if (!seen.count(e.child)) stack.push_back({e.child, false});
  }
  return order;
}

std::size_t poset_size_of(const SymmetricSystem& sys) {
  return std::visit([](const auto& s) { return static_cast<std::size_t>(s.poset_size); }, sys);
}

std::unordered_map<Name, Mask> explicit_stabilizers(const std::vector<Name>& names, const ExplicitSystem& sys) {
  std::unordered_map<Name, Mask> fixed;
  for (Name y : names) fixed[y] = 0;
  for (Elem g = 0; g < sys.group->order(); ++g) {
    std::unordered_map<Name, Name> image;
    for (Name y : names) {  // children first
      std::vector<forcing::NameEntry> es;
      for (const auto& e : y.entries()) es.push_back({image.at(e.child), sys.act(g, e.cond)});
      Name img = Name::make(std::move(es));
      image.emplace(y, img);
      if (img == y) fixed[y] |= Mask{1} << g;
    }
  }
  return fixed;
}

std::unordered_map<Name, CountableSetDescriptor> symbolic_supports(const std::vector<Name>& names,
                                                                   const SymbolicSystem& sys) {
  std::unordered_map<Name, CountableSetDescriptor> supp;
  for (Name y : names) {
    CountableSetDescriptor s;
    for (const auto& e : y.entries()) s = s.unite(supp.at(e.child)).unite(sys.supports.condition_support(e.cond));
    supp.emplace(y, std::move(s));
  }
  return supp;
}

std::string name_brief(Name x) { return "name#" + std::to_string(x.id()) + " (rank " + std::to_string(x.rank()) + ")"; }

}  // namespace

ExplicitSystem ExplicitSystem::from_step(const iteration::StepTemplate& step) {
  ExplicitSystem s;
  s.poset_size = step.poset->size();
  s.group = step.group;
  s.act = [action = step.action](Elem g, CondId p) { return action[g](p); };
  s.filter = step.filter;
  s.poset = step.poset;
  return s;
}

ExplicitSystem ExplicitSystem::from_stage(const iteration::IterationState& state, std::size_t n) {
  if (n >= state.stages.size()) throw Error(ErrorCode::StageMissing, "stage " + std::to_string(n) + " not built");
  ExplicitSystem s;
  const auto& st = state.stages[n];
  s.poset_size = st.space.size();
  s.group = st.group;
  auto shared = std::make_shared<const iteration::IterationState>(state);
  s.act = [shared, n](Elem g, CondId p) { return iteration::coordinatewise_act(*shared, shared->stages[n], g, p); };
  s.filter = std::get<filters::ExplicitFilter>(st.filter);
  if (st.space.size() <= 4096) s.poset = std::make_shared<const forcing::Poset>(st.space.materialize());
  return s;
}

SymbolicSystem SymbolicSystem::from_limit(const iteration::StageRecord& limit) {
  if (!limit.symbolic) throw Error(ErrorCode::StageMismatch, "not a limit stage");
  SymbolicSystem s;
  s.poset_size = limit.space.size();
  s.supports = limit.space.support_context();
  s.filter = std::get<filters::SupportIdeal>(limit.filter);
  if (limit.space.size() <= 4096) s.poset = std::make_shared<const forcing::Poset>(limit.space.materialize());
  return s;
}

HSReport is_hs(Name x, const SymmetricSystem& sys) {
  forcing::check_conditions(x, poset_size_of(sys));
  auto names = subnames(x);
  std::unordered_map<Name, std::shared_ptr<const HSReport>> built;
  auto finish = [&](Name y, groups::Subgroup stab, bool in_filter) {
    auto r = std::make_shared<HSReport>();
    r->name = y;
    r->stabilizer = std::move(stab);
    r->in_filter = in_filter;
    r->verdict = in_filter;
    std::unordered_set<Name> seen;
    for (const auto& e : y.entries())
      if (seen.insert(e.child).second) {
        r->children.push_back(built.at(e.child));
        r->verdict = r->verdict && r->children.back()->verdict;
      }
    built.emplace(y, std::move(r));
  };
  if (const auto* ex = std::get_if<ExplicitSystem>(&sys)) {
    auto fixed = explicit_stabilizers(names, *ex);
    for (Name y : names) finish(y, groups::ExplicitSubgroup{fixed.at(y)}, ex->filter.contains(fixed.at(y)));
  } else {
    const auto& sy = std::get<SymbolicSystem>(sys);
    auto supp = symbolic_supports(names, sy);
    for (Name y : names) {
      groups::SupportKernel k{supp.at(y)};
      bool in = filters::filter_contains(sy.filter, k);
      finish(y, k, in);
    }
  }
  return *built.at(x);
}

groups::Subgroup stabilizer(Name x, const SymmetricSystem& sys) {
  forcing::check_conditions(x, poset_size_of(sys));
  auto names = subnames(x);
  if (const auto* ex = std::get_if<ExplicitSystem>(&sys))
    return groups::ExplicitSubgroup{explicit_stabilizers(names, *ex).at(x)};
  return groups::SupportKernel{symbolic_supports(names, std::get<SymbolicSystem>(sys)).at(x)};
}

std::vector<const HSReport*> why_not(const HSReport& r) {
  std::vector<const HSReport*> path;
  const HSReport* cur = &r;
  while (cur && !cur->verdict) {
    path.push_back(cur);
    const HSReport* next = nullptr;
    for (const auto& c : cur->children)
      if (!c->verdict) {
        next = c.get();
        break;
      }
    if (!next) break;
    cur = next;
  }
  // The last node is non-symmetric itself unless a child carries the failure.
  return path;
}

TupleCheck tuple_sym_check(const std::vector<Name>& names, const SymmetricSystem& sys) {
  TupleCheck t;
  t.tuple_stabilizer = stabilizer(forcing::tuple_name(names), sys);
  if (const auto* ex = std::get_if<ExplicitSystem>(&sys))
    t.intersection = groups::ExplicitSubgroup{groups::full_mask(*ex->group)};
  else
    t.intersection = groups::SupportKernel{};
  for (Name x : names) t.intersection = groups::subgroup_intersect(t.intersection, stabilizer(x, sys));
  t.equal = t.tuple_stabilizer == t.intersection;
  return t;
}

OmegaTupleCheck omega_tuple_check(const std::function<CountableSetDescriptor(std::uint64_t)>& component,
                                  const CountableSetDescriptor& union_support, const filters::SupportIdeal& filter,
                                  std::size_t prefix) {
  OmegaTupleCheck c;
  c.union_support = union_support;
  c.components_in_filter = true;
  for (std::uint64_t n = 0; n < prefix; ++n) {
    auto s = component(n);
    if (!s.subset_of(union_support))
      throw Error(ErrorCode::AmbientMismatch, "component " + std::to_string(n) + " is not inside the declared union");
    c.components_in_filter = c.components_in_filter && filters::filter_contains(filter, groups::SupportKernel{s});
    c.prefix_supports.push_back(std::move(s));
  }
  c.stabilizer_bound = groups::SupportKernel{union_support};
  c.member = filters::filter_contains(filter, c.stabilizer_bound);
  return c;
}

bool ClosureReport::ok() const {
  return std::all_of(entries.begin(), entries.end(), [](const ClosureEntry& e) { return !e.precondition || e.verdict; });
}

ClosureReport hs_closure_suite(const SymmetricSystem& sys, const std::vector<Name>& corpus,
                               const std::vector<Name>& params) {
  for (Name x : corpus)
    if (!is_hs(x, sys).verdict) throw Error(ErrorCode::CorpusNotHS, name_brief(x) + " is not hereditarily symmetric");
  auto poset = std::visit([](const auto& s) { return s.poset; }, sys);
  if (!poset) throw Error(ErrorCode::OutOfBudget, "closure suite needs a materialized poset");
  ClosureReport rep;
  auto add = [&](std::string ctor, std::string inputs, Name out, bool pre) {
    auto r = is_hs(out, sys);
    const groups::FiniteGroup* G = nullptr;
    if (const auto* ex = std::get_if<ExplicitSystem>(&sys)) G = ex->group.get();
    rep.entries.push_back(
        ClosureEntry{std::move(ctor), std::move(inputs), out, pre, r.verdict, groups::subgroup_str(r.stabilizer, G)});
  };
  auto idx = [](std::size_t i) { return "x" + std::to_string(i); };
  for (std::uint64_t k = 0; k < 3; ++k) add("check", std::to_string(k), forcing::check_name(forcing::HSet::natural(k)), true);
  for (std::size_t i = 0; i < corpus.size(); ++i)
    for (std::size_t j = i; j < corpus.size(); ++j)
      add("pair", idx(i) + ", " + idx(j), forcing::pair_name(corpus[i], corpus[j]), true);
  Name tuple = forcing::tuple_name(corpus);
  add("tuple", "all", tuple, true);
  add("range", "tuple over " + std::to_string(corpus.size()),
      forcing::range_name(*poset, forcing::check_name(forcing::HSet::natural(corpus.size())), tuple), true);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    add("union", idx(i), forcing::union_name(*poset, corpus[i]), true);
    try {
      add("power", idx(i), forcing::power_name(corpus[i], 0, 1024), true);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::OutOfBudget) throw;
    }
  }
  auto phi = forcing::Formula::member(0, 1);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    for (std::size_t j = 0; j < corpus.size(); ++j)
      add("separation", idx(i) + " with parameter " + idx(j), forcing::separation_name(*poset, corpus[i], phi, {corpus[j]}),
          true);
    for (std::size_t j = 0; j < params.size(); ++j) {
      bool pre = is_hs(params[j], sys).verdict;
      add("separation", idx(i) + " with parameter p" + std::to_string(j),
          forcing::separation_name(*poset, corpus[i], phi, {params[j]}), pre);
    }
  }
  return rep;
}

std::string report_str(const HSReport& r, const SymmetricSystem& sys) {
  const groups::FiniteGroup* G = nullptr;
  if (const auto* ex = std::get_if<ExplicitSystem>(&sys)) G = ex->group.get();
  return name_brief(r.name) + ": sym = " + groups::subgroup_str(r.stabilizer, G) +
         (r.in_filter ? " in filter" : " not in filter") + ", " + (r.verdict ? "HS" : "not HS");
}

}  // namespace sfw::hs
