#pragma once

#include <vector>

#include "sfw/groups.hpp"

namespace sfw::oracle {

using groups::FiniteGroup;
using groups::Mask;

/// Subgroups found by testing every subset of the group for closure.
/// Practical up to order 16.
std::vector<Mask> subgroups_by_subsets(const FiniteGroup& G);

struct Verdict {
  bool filter = false;
  bool normal = false;
  bool omega1_complete = false;
  friend bool operator==(const Verdict&, const Verdict&) = default;
};

/// Each clause checked literally and separately on the given family; any
/// non-subgroup member makes every verdict false. A countable intersection
/// of members is a finite one, so completeness is closure of the family
/// under all finite meets (computed as a fixpoint).
Verdict judge_family(const FiniteGroup& G, const std::vector<Mask>& family);

/// Every normal filter on G, as sorted member lists, found by scanning all
/// subsets of the subgroup lattice.
std::vector<std::vector<Mask>> all_normal_filters(const FiniteGroup& G);

/// Intersection of the filters in `filters` containing gens (sorted).
std::vector<Mask> least_containing(const std::vector<std::vector<Mask>>& filters, const std::vector<Mask>& gens);

}  // namespace sfw::oracle
