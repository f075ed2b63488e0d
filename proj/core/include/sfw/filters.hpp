#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "sfw/descriptor.hpp"
#include "sfw/groups.hpp"

namespace sfw::filters {

using groups::Mask;
using groups::Subgroup;

enum class ClosureMode { finite_unions, countable_unions };
enum class GenerationMode { finite_intersections, countable_intersections };

/// Upward closure of an antichain of subgroups of a finite group.
struct ExplicitFilter {
  groups::GroupPtr group;
  std::vector<Mask> generators;  // pairwise incomparable, sorted

  static ExplicitFilter make(groups::GroupPtr group, std::vector<Mask> members);
  static ExplicitFilter principal(groups::GroupPtr group);
  /// Every subgroup above some generator, in subgroup_lattice order.
  std::vector<Mask> members() const;
  bool contains(Mask k) const;
};

/// A family of supports whose kernels generate a symbolic filter.
struct BasisFamily {
  enum class Kind {
    singletons,     // {x} for every stage x below `bound`
    head_segments,  // [0, g) for every g below `bound` (or up to it when inclusive)
    sets            // the explicit supports in `sets`
  };
  Kind kind = Kind::sets;
  ord::Ord bound;
  bool inclusive = false;
  std::vector<ord::CountableSetDescriptor> sets;

  static BasisFamily singletons(ord::Ord bound);
  static BasisFamily head_segments(ord::Ord bound, bool inclusive = false);
  static BasisFamily explicit_sets(std::vector<ord::CountableSetDescriptor> sets);

  std::string str() const;
  friend bool operator==(const BasisFamily&, const BasisFamily&) = default;
};

/// Filter of support kernels on the iteration group of length `universe`:
/// K[E] is a member iff E is covered by finitely (resp. countably) many sets
/// from the basis families. An empty basis is the principal filter.
struct SupportIdeal {
  ord::Ord universe;
  std::vector<BasisFamily> basis;
  ClosureMode mode = ClosureMode::finite_unions;

  static SupportIdeal make(ord::Ord universe, std::vector<BasisFamily> basis, ClosureMode mode);
  static SupportIdeal principal(ord::Ord universe) { return make(std::move(universe), {}, ClosureMode::finite_unions); }
  /// True when every supported set is covered: K[E] in F iff E is covered.
  bool covers(const ord::CountableSetDescriptor& e) const;
  std::string str() const;
  friend bool operator==(const SupportIdeal&, const SupportIdeal&) = default;
};

using FilterOfSubgroups = std::variant<ExplicitFilter, SupportIdeal>;

std::string filter_str(const FilterOfSubgroups& f);
bool filters_equal(const FilterOfSubgroups& a, const FilterOfSubgroups& b);

/// Throws AmbientMismatch when K does not live in F's group.
bool filter_contains(const FilterOfSubgroups& F, const Subgroup& K);

struct NormalityWitness {
  Subgroup member;
  groups::Elem conjugator = 0;
  Subgroup conjugate;
};

struct CompletenessWitness {
  std::vector<Subgroup> sequence;  // a prefix; symbolic witnesses continue the pattern
  Subgroup intersection;
  std::string pattern;
};

struct FilterAuditReport {
  bool is_filter = true;
  std::vector<std::string> violations;
  bool is_normal = true;
  std::optional<NormalityWitness> normality_witness;
  bool is_omega1_complete = true;
  std::optional<CompletenessWitness> completeness_witness;

  bool all() const { return is_filter && is_normal && is_omega1_complete; }
};

/// Audits an arbitrary family of subgroups (taken as given, not closed).
FilterAuditReport audit_family(const groups::FiniteGroup& G, const std::vector<Mask>& family);
/// Throws GroupTooLarge above order 24 in the explicit regime.
FilterAuditReport audit_filter(const FilterOfSubgroups& F);

FilterOfSubgroups omega1_completion(const FilterOfSubgroups& F);
/// Filter generated by the preimages of F's generators.
FilterOfSubgroups pullback_filter(const groups::GroupHom& h, const FilterOfSubgroups& F);
/// Filter on the smaller group generated by the traces of F's members.
FilterOfSubgroups restrict_filter(const groups::GroupHom& iota, const FilterOfSubgroups& F);

/// Least normal filter on an explicit group containing gens (both modes agree
/// on a finite group).
ExplicitFilter generate_normal_filter(groups::GroupPtr G, const std::vector<Mask>& gens, GenerationMode mode);
/// Symbolic counterpart over an abelian iteration group of length `universe`.
SupportIdeal generate_normal_filter(const ord::Ord& universe, std::vector<BasisFamily> gens, GenerationMode mode);
/// Symbolic counterpart from explicit kernels.
SupportIdeal generate_normal_filter(const ord::Ord& universe, const std::vector<groups::SupportKernel>& gens,
                                    GenerationMode mode);

}  // namespace sfw::filters
