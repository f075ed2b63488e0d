#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "sfw/filters.hpp"
#include "sfw/forcing.hpp"
#include "sfw/iteration.hpp"

namespace sfw::hs {

using forcing::CondId;
using forcing::Name;

/// Finite group acting on the conditions of a poset, with a filter on it.
struct ExplicitSystem {
  std::uint64_t poset_size = 1;
  groups::GroupPtr group;
  std::function<CondId(groups::Elem, CondId)> act;
  filters::ExplicitFilter filter;
  /// Needed only by constructors that search for lower bounds.
  std::shared_ptr<const forcing::Poset> poset;

  /// The step poset with its own group and filter.
  static ExplicitSystem from_step(const iteration::StepTemplate& step);
  /// Explicit stage n of an iteration, acting coordinatewise.
  static ExplicitSystem from_stage(const iteration::IterationState& state, std::size_t n);
};

/// Limit-stage system: the stabilizer of a name contains the kernel of its
/// support, and membership is decided on that kernel.
struct SymbolicSystem {
  std::uint64_t poset_size = 1;
  forcing::SupportContext supports;
  filters::SupportIdeal filter;
  std::shared_ptr<const forcing::Poset> poset;

  static SymbolicSystem from_limit(const iteration::StageRecord& limit);
};

using SymmetricSystem = std::variant<ExplicitSystem, SymbolicSystem>;

struct HSReport {
  Name name;
  /// Exact stabilizer (explicit) or its support-kernel lower bound (symbolic).
  groups::Subgroup stabilizer;
  bool in_filter = false;
  std::vector<std::shared_ptr<const HSReport>> children;
  bool verdict = false;
};

/// Throws ForeignCondition.
HSReport is_hs(Name x, const SymmetricSystem& sys);
groups::Subgroup stabilizer(Name x, const SymmetricSystem& sys);

/// Names from the root down to the first one whose stabilizer is outside the
/// filter and whose children are all hereditarily symmetric. Empty when HS.
std::vector<const HSReport*> why_not(const HSReport& r);

struct TupleCheck {
  groups::Subgroup tuple_stabilizer;
  groups::Subgroup intersection;
  bool equal = false;
};

/// sym of the tuple name against the intersection of component stabilizers.
TupleCheck tuple_sym_check(const std::vector<Name>& names, const SymmetricSystem& sys);

struct OmegaTupleCheck {
  std::vector<ord::CountableSetDescriptor> prefix_supports;
  ord::CountableSetDescriptor union_support;
  groups::SupportKernel stabilizer_bound;
  bool components_in_filter = false;
  bool member = false;
};

/// Symbolic omega-tuple whose n-th component has support component(n) and
/// whose supports unite to `union_support`: sym contains K[union], the
/// intersection of the component kernels. Checks `prefix` components.
OmegaTupleCheck omega_tuple_check(const std::function<ord::CountableSetDescriptor(std::uint64_t)>& component,
                                  const ord::CountableSetDescriptor& union_support, const filters::SupportIdeal& filter,
                                  std::size_t prefix = 8);

struct ClosureEntry {
  std::string constructor;
  std::string inputs;
  Name output;
  bool precondition = true;  // every input and parameter is HS
  bool verdict = false;
  std::string stabilizer;
};

struct ClosureReport {
  std::vector<ClosureEntry> entries;
  /// No entry with its precondition met fails.
  bool ok() const;
};

/// Applies check, pair, tuple, union, range, power and separation over the
/// corpus and audits the outputs. Separation also runs with each of `params`,
/// which need not be HS; such entries are reported with precondition false.
/// Throws CorpusNotHS when a corpus name is not HS.
ClosureReport hs_closure_suite(const SymmetricSystem& sys, const std::vector<Name>& corpus,
                               const std::vector<Name>& params = {});

std::string report_str(const HSReport& r, const SymmetricSystem& sys);

}  // namespace sfw::hs
