#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "sfw/descriptor.hpp"
#include "sfw/name.hpp"

namespace sfw::groups {

using Elem = std::uint32_t;
/// Subset of a group of order <= 64, bit g set iff element g belongs.
using Mask = std::uint64_t;

inline constexpr std::size_t kMaxOrder = 64;
/// Largest order admitted by exhaustive filter audits.
inline constexpr std::size_t kAuditOrder = 24;

/// Finite group by multiplication table; element 0 is the identity.
class FiniteGroup {
 public:
  /// Validates closure, associativity, identity 0 and inverses.
  FiniteGroup(std::string label, std::vector<std::string> names, std::vector<std::vector<Elem>> table);

  /// Closure of the generating permutations (all of one degree); elements are
  /// listed in breadth-first order from the identity.
  static FiniteGroup from_permutations(std::string label, const std::vector<std::vector<std::uint32_t>>& gens);
  static FiniteGroup cyclic(std::size_t n);
  static FiniteGroup klein();
  static FiniteGroup symmetric3();
  static FiniteGroup dihedral(std::size_t n);  // order 2n
  static FiniteGroup quaternion();
  /// (Z/2)^k; element bits are the coordinates that are swapped.
  static FiniteGroup elementary_abelian(std::size_t k);
  static FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);

  const std::string& label() const { return label_; }
  std::size_t order() const { return table_.size(); }
  Elem identity() const { return 0; }
  Elem mul(Elem a, Elem b) const { return table_[a][b]; }
  Elem inv(Elem a) const { return inverse_[a]; }
  const std::string& name(Elem a) const { return names_[a]; }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<std::vector<Elem>>& table() const { return table_; }
  /// Permutations this group was built from, if any (indexed by element).
  const std::vector<std::vector<std::uint32_t>>& permutations() const { return perms_; }
  bool abelian() const;

  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) { return a.table_ == b.table_; }

 private:
  std::string label_;
  std::vector<std::string> names_;
  std::vector<std::vector<Elem>> table_;
  std::vector<Elem> inverse_;
  std::vector<std::vector<std::uint32_t>> perms_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// Every group of order <= 8 up to isomorphism, in a fixed order.
std::vector<GroupPtr> small_group_corpus();

Mask full_mask(const FiniteGroup& G);
inline Mask trivial_mask() { return 1; }
inline bool has(Mask m, Elem g) { return (m >> g) & 1U; }
bool is_subgroup(const FiniteGroup& G, Mask m);
Mask generated_subgroup(const FiniteGroup& G, Mask gens);
/// All subgroups, sorted by (size, mask).
std::vector<Mask> subgroup_lattice(const FiniteGroup& G);
Mask conjugate(const FiniteGroup& G, Elem g, Mask m);
/// Largest normal subgroup inside m: the intersection of its conjugates.
Mask normal_core(const FiniteGroup& G, Mask m);
std::string mask_str(const FiniteGroup& G, Mask m);

/// A finite group acting on the conditions of a poset by automorphisms.
struct GroupAction {
  GroupPtr group;
  std::size_t poset_size = 0;
  std::function<forcing::CondId(Elem, forcing::CondId)> act;

  /// Action through the permutation representation of the group.
  static GroupAction by_permutations(GroupPtr g);
};

struct ExplicitSubgroup {
  Mask mask = 1;
  friend bool operator==(const ExplicitSubgroup&, const ExplicitSubgroup&) = default;
};

/// {g : g is trivial at every stage of E} in an abelian iteration group.
struct SupportKernel {
  ord::CountableSetDescriptor support;
  friend bool operator==(const SupportKernel&, const SupportKernel&) = default;
};

using Subgroup = std::variant<ExplicitSubgroup, SupportKernel>;

std::string subgroup_str(const Subgroup& s, const FiniteGroup* G = nullptr);

/// {g : g x = x}, by literal equality of names.
ExplicitSubgroup stabilizer(const GroupAction& A, forcing::Name x);

/// Throws MixedRepresentation when the representations differ.
Subgroup subgroup_intersect(const Subgroup& a, const Subgroup& b);
/// g K g^-1; symbolic kernels are returned unchanged (abelian ambient).
Subgroup conjugate_subgroup(const FiniteGroup* G, Elem g, const Subgroup& K);

/// Homomorphism given by its table between explicit groups; validated.
struct ExplicitHom {
  GroupPtr domain;
  GroupPtr codomain;
  std::vector<Elem> map;

  static ExplicitHom make(GroupPtr domain, GroupPtr codomain, std::vector<Elem> map);
  bool injective() const;
};

/// rho from the stage-`from` group onto the stage-`to` group (to <= from).
struct Restriction {
  ord::Ord from;
  ord::Ord to;
};

/// The stage-`from` group included in the stage-`to` group (from <= to).
struct SymbolicInclusion {
  ord::Ord from;
  ord::Ord to;
};

using GroupHom = std::variant<ExplicitHom, Restriction, SymbolicInclusion>;

Restriction make_restriction(const ord::Ord& from, const ord::Ord& to);
/// rho_{gamma,beta} after rho_{beta,lambda}.
Restriction compose(const Restriction& outer, const Restriction& inner);

/// Exact preimage; throws CodomainMismatch if H does not live in the codomain.
Subgroup preimage_subgroup(const GroupHom& h, const Subgroup& H);
Subgroup kernel_of(const GroupHom& h);

}  // namespace sfw::groups
