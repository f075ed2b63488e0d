#pragma once

#include <functional>
#include <unordered_map>
#include <vector>

#include "sfw/descriptor.hpp"
#include "sfw/formula.hpp"
#include "sfw/hfset.hpp"
#include "sfw/name.hpp"
#include "sfw/poset.hpp"

namespace sfw::forcing {

using CondMap = std::function<CondId(CondId)>;
using CondPredicate = std::function<bool(CondId)>;

/// Throws ForeignCondition if some condition occurring in x is >= poset_size.
void check_conditions(Name x, std::size_t poset_size);

/// Recursive image of x: every (y, p) becomes (pi y, pi p).
Name apply_automorphism(const CondMap& pi, Name x);
/// Same, with every condition checked against the automorphism's domain.
Name apply_automorphism(const PosetAutomorphism& pi, Name x);

/// Valuation under a filter; throws InvalidFilter if F is not a filter on P.
HSet evaluate_name(const Poset& P, Name x, const PosetFilter& F);

/// Memoizing valuation under a filter given only by its membership test.
/// The caller guarantees that the predicate describes a filter.
class Evaluator {
 public:
  explicit Evaluator(CondPredicate in_filter) : in_filter_(std::move(in_filter)) {}
  HSet operator()(Name x);

 private:
  CondPredicate in_filter_;
  std::unordered_map<Name, HSet> memo_;
};

/// Valuations of x under the maximal filters of P, indexed like
/// P.minimal_elements().
std::vector<HSet> valuation_profile(const Poset& P, Name x);

/// p forces phi(env) iff phi holds of the valuations under every maximal
/// filter containing p.
bool forces(const Poset& P, CondId p, const Formula& phi, const std::vector<Name>& env);

/// Iteration context: which coordinates (stages) each condition touches.
struct SupportContext {
  std::function<ord::CountableSetDescriptor(CondId)> condition_support;
};

ord::CountableSetDescriptor support_of(CondId p, const SupportContext& ctx);
ord::CountableSetDescriptor support_of(Name x, const SupportContext& ctx);

}  // namespace sfw::forcing
