#pragma once

#include <optional>
#include <string>

#include "sfw/descriptor.hpp"
#include "sfw/groups.hpp"

namespace sfw::groups {

enum class SupportPolicy { finite, countable };

/// Element of the iteration group with Z/2 at every stage: the set of stages
/// where it applies the nontrivial swap.
struct SymbolicElement {
  ord::CountableSetDescriptor support;
  friend bool operator==(const SymbolicElement&, const SymbolicElement&) = default;
};

/// Z/2-valued functions on the stages below `length`.
class SymbolicGroup {
 public:
  explicit SymbolicGroup(ord::Ord length, SupportPolicy policy = SupportPolicy::countable);

  const ord::Ord& length() const { return length_; }
  SupportPolicy policy() const { return policy_; }

  /// Throws StageOutOfRange for stages >= length and WrongMode for an infinite
  /// support under the finite policy.
  SymbolicElement element(ord::CountableSetDescriptor support) const;
  /// The swap at exactly one stage.
  SymbolicElement at(const ord::Ord& stage) const;
  SymbolicElement identity() const { return SymbolicElement{}; }

  /// Pointwise product (symmetric difference of supports). Defined when at most
  /// one factor has an infinite support and the other is disjoint from it or empty.
  SymbolicElement compose(const SymbolicElement& a, const SymbolicElement& b) const;
  SymbolicElement inverse(const SymbolicElement& a) const { return a; }
  /// rho to stage beta: the part of the support below beta.
  SymbolicElement restrict(const SymbolicElement& a, const ord::Ord& beta) const;

  /// g belongs to K[E] iff its support misses E; nullopt when undecidable.
  std::optional<bool> in_kernel(const SymbolicElement& g, const SupportKernel& K) const;

 private:
  ord::Ord length_;
  SupportPolicy policy_;
};

/// Sound disjointness test for descriptors; nullopt when undecidable.
std::optional<bool> disjoint(const ord::CountableSetDescriptor& a, const ord::CountableSetDescriptor& b);

std::string element_str(const SymbolicElement& g);

}  // namespace sfw::groups
