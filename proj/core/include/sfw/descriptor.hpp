#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "sfw/ordinal.hpp"

namespace sfw::ord {

/// {start + omega^k * n : n < omega}; its supremum start + omega^(k+1) is never attained.
struct OmegaSequence {
  Ord start;
  std::uint32_t unit_exp = 0;

  Ord bound() const;
  Ord at(std::uint64_t n) const;
  friend bool operator==(const OmegaSequence&, const OmegaSequence&) = default;
};

/// Every ordinal in [from, to). `to` must be countable so the block is countable.
struct Interval {
  Ord from;
  Ord to;
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// An opaque omega-sequence cofinal in `bound` (e.g. the alephs below aleph_omega).
/// Points are not materialized; `bound` must have cofinality omega.
struct EnumeratedSequence {
  std::string label;
  Ord bound;
  friend bool operator==(const EnumeratedSequence&, const EnumeratedSequence&) = default;
};

using Tail = std::variant<OmegaSequence, Interval, EnumeratedSequence>;

struct Supremum {
  Ord value;
  bool attained = false;
  /// Least ordinal strictly above every point.
  Ord strict_bound() const { return attained ? value.successor() : value; }
};

/// A countable set of ordinals: finitely many explicit points plus symbolic
/// tails with known bounds. Kept in a normal form (points sorted and not
/// covered by a tail, intervals merged, tails sorted) so equality of
/// descriptors is equality of representations.
class CountableSetDescriptor {
 public:
  CountableSetDescriptor() = default;
  explicit CountableSetDescriptor(std::vector<Ord> points, std::vector<Tail> tails = {});

  static CountableSetDescriptor singleton(const Ord& x) { return CountableSetDescriptor({x}); }
  /// [0, n) as explicit points.
  static CountableSetDescriptor range(std::uint64_t n);
  /// [0, beta): explicit when beta is finite, an interval otherwise.
  static CountableSetDescriptor segment(const Ord& beta);
  /// The natural numbers, as the omega-sequence 0, 1, 2, ...
  static CountableSetDescriptor naturals();

  const std::vector<Ord>& points() const { return points_; }
  const std::vector<Tail>& tails() const { return tails_; }
  bool empty() const { return points_.empty() && tails_.empty(); }
  bool is_finite() const { return tails_.empty(); }

  /// nullopt when membership is undecidable (points of an enumerated sequence).
  std::optional<bool> contains(const Ord& x) const;
  /// Sound but incomplete: true only when every component is covered by a single
  /// component of `other` (or by `other`'s explicit points).
  bool subset_of(const CountableSetDescriptor& other) const;

  Supremum supremum() const;

  CountableSetDescriptor unite(const CountableSetDescriptor& other) const;
  /// Points strictly below beta (tails clipped; enumerated tails kept only if below beta).
  CountableSetDescriptor below(const Ord& beta) const;
  /// Symmetric difference of two finite descriptors.
  CountableSetDescriptor symmetric_difference_finite(const CountableSetDescriptor& other) const;

  /// First `count` elements of the canonical enumeration: explicit points in
  /// order, each tail enumerated increasingly, components dovetailed.
  std::vector<Ord> enumerate(std::size_t count) const;

  std::string str() const;
  friend bool operator==(const CountableSetDescriptor&, const CountableSetDescriptor&);

 private:
  void normalize();

  std::vector<Ord> points_;
  std::vector<Tail> tails_;
};

CountableSetDescriptor unite_all(const std::vector<CountableSetDescriptor>& family);

struct Bounded {
  Ord beta;
};
struct CofinalFailure {
  Ord sup;
};
using StageBoundResult = std::variant<Bounded, CofinalFailure>;

/// Decides whether a countable set below lambda is bounded below lambda.
/// Throws PointNotBelowLambda when some described point is >= lambda.
StageBoundResult stage_bound(const CountableSetDescriptor& s, const Ord& lambda);

std::string tail_str(const Tail& t);

}  // namespace sfw::ord
