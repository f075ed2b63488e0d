#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sfw/filters.hpp"
#include "sfw/forcing.hpp"
#include "sfw/symbolic_group.hpp"

namespace sfw::iteration {

using forcing::CondId;
using forcing::Poset;
using PosetPtr = std::shared_ptr<const Poset>;

/// Finite product of posets with top 0, never materialized unless asked.
/// Condition ids are mixed radix with coordinate 0 least significant, so the
/// top of the product is 0 and a condition of a shorter product keeps its id.
class ProductSpace {
 public:
  ProductSpace() = default;
  explicit ProductSpace(std::vector<PosetPtr> factors);

  std::size_t factors() const { return factors_.size(); }
  const Poset& factor(std::size_t i) const { return *factors_[i]; }
  const std::vector<PosetPtr>& factor_ptrs() const { return factors_; }
  std::uint64_t size() const { return size_; }
  CondId top() const { return 0; }
  bool contains(CondId c) const { return c < size_; }

  std::vector<CondId> decode(CondId c) const;
  CondId encode(const std::vector<CondId>& coords) const;
  CondId coordinate(CondId c, std::size_t i) const;
  /// The condition that is `local` at coordinate i and top elsewhere.
  CondId embed(std::size_t i, CondId local) const;
  bool le(CondId a, CondId b) const;
  /// Coordinates where c is not top.
  ord::CountableSetDescriptor support(CondId c) const;
  forcing::SupportContext support_context() const;
  std::string label(CondId c) const;
  ProductSpace extended(PosetPtr factor) const;

  /// Throws OutOfBudget above `cap` conditions.
  Poset materialize(std::size_t cap = 4096) const;

 private:
  std::vector<PosetPtr> factors_;
  std::vector<std::uint64_t> radix_;  // place value of each coordinate
  std::uint64_t size_ = 1;
};

/// One step S_a = (Q, H, K): a check name coding the step poset, a declared
/// group acting on it by automorphisms, and a filter on that group.
struct StepTemplate {
  std::string label;
  forcing::Name poset_name;
  PosetPtr poset;
  groups::GroupPtr group;
  std::vector<forcing::PosetAutomorphism> action;  // indexed by group element
  filters::ExplicitFilter filter;
};

/// Strings of length <= d indexed by length, then lexicographically.
std::size_t binary_string_index(const std::string& s);
std::string binary_string(std::size_t index);

/// 2^{<=d} x 2^{<=d} ordered by coordinatewise extension; (s, t) has id
/// index(s) * S + index(t) with S = 2^{d+1} - 1.
PosetPtr cohen_pair_poset(std::size_t depth);
forcing::PosetAutomorphism cohen_pair_swap(std::size_t depth);

/// The pair-of-Cohen-reals step with the Z/2 swap and the principal filter.
StepTemplate cohen_pair_step(std::size_t depth);
/// One condition, trivial group.
StepTemplate trivial_step();
/// Throws InvalidTemplate unless the name decodes to the step poset, the
/// action is a homomorphism into its automorphisms and the filter is normal
/// and omega1-complete.
void validate_step(const StepTemplate& step);

struct StageRecord {
  ord::Ord index;
  bool symbolic = false;
  /// Finite stages: the whole poset. A limit: its materialized truncation.
  ProductSpace space;
  /// Explicit stages; element coordinates via element_coords.
  groups::GroupPtr group;
  std::optional<groups::SymbolicGroup> symbolic_group;
  filters::FilterOfSubgroups filter;
  std::string poset_tag;
};

struct IterationState {
  /// steps[a] builds stage a+1 from stage a.
  std::vector<StepTemplate> steps;
  /// Uniform template for every stage below the limit.
  std::optional<StepTemplate> schema;
  std::vector<StageRecord> stages;
  std::optional<StageRecord> limit;

  /// Throws StageMissing.
  const StageRecord& stage(const ord::Ord& a) const;
};

StageRecord stage_zero();
IterationState start_iteration(std::optional<StepTemplate> schema = std::nullopt);

/// Appends stage a+1. Throws StageMissing unless a is the last built stage.
const StageRecord& successor_stage(IterationState& state, const ord::Ord& a, const StepTemplate& step);

enum class LimitMode { automatic, finite_intersections, countable_intersections };

/// Builds the limit stage at lambda from the uniform schema. Throws NotALimit
/// and StageSchemaMissing. `automatic` picks countable intersections at
/// cofinality omega and finite ones above.
const StageRecord& limit_stage(IterationState& state, const ord::Ord& lambda, LimitMode mode = LimitMode::automatic);

/// Per-stage coordinates of an element of the explicit group at stage n.
std::vector<groups::Elem> element_coords(const IterationState& state, std::size_t n, groups::Elem g);
groups::Elem element_from_coords(const IterationState& state, std::size_t n, const std::vector<groups::Elem>& coords);

/// (g p)(b) = g_b p(b) at an explicit stage. Throws StageMismatch / ForeignCondition.
CondId coordinatewise_act(const IterationState& state, const StageRecord& stage, groups::Elem g, CondId p);
/// Symbolic element acting on the materialized truncation of a limit stage.
CondId coordinatewise_act(const IterationState& state, const StageRecord& limit, const groups::SymbolicElement& g,
                          CondId p);
forcing::CondMap action_map(const IterationState& state, const StageRecord& stage, groups::Elem g);
forcing::CondMap action_map(const IterationState& state, const StageRecord& limit, const groups::SymbolicElement& g);

/// The head pullback rho_{b,lambda}^{-1}(H) is bounded below by ker rho_{b,lambda}.
groups::SupportKernel head_pullback_kernel(const ord::Ord& beta);

struct Identification {
  ord::CountableSetDescriptor support;
  ord::Ord beta;
};

struct IdentificationReport {
  ord::Ord lambda;
  std::vector<Identification> items;
  std::string poset_identification;
  std::string group_identification;
};

/// Throws WrongCofinality unless cf(lambda) >= omega1.
IdentificationReport direct_limit_identify(const IterationState& state, const ord::Ord& lambda,
                                           const std::vector<ord::CountableSetDescriptor>& supports);

struct SummaryRow {
  std::string stage;
  std::string poset;
  std::string group;
  std::string filter;
};
std::vector<SummaryRow> summary(const IterationState& state);

struct IterationSpec {
  ord::Ord length;
  std::string step = "cohen_pair";
  std::size_t depth = 1;
  std::size_t truncate_stages = 3;
  LimitMode mode = LimitMode::automatic;
};

StepTemplate step_by_name(const std::string& name, std::size_t depth);
/// Finite lengths build every stage; a limit builds the truncation and the limit.
IterationState build_iteration(const IterationSpec& spec);

}  // namespace sfw::iteration
