#include "sfw/symbolic_group.hpp"

#include "sfw/error.hpp"

namespace sfw::groups {

using ord::CountableSetDescriptor;
using ord::Ord;

namespace {

// [low, bound) contains every point of the tail.
std::pair<Ord, Ord> tail_range(const ord::Tail& t) {
  if (const auto* s = std::get_if<ord::OmegaSequence>(&t)) return {s->start, s->bound()};
  if (const auto* i = std::get_if<ord::Interval>(&t)) return {i->from, i->to};
  const auto& e = std::get<ord::EnumeratedSequence>(t);
  return {Ord(0, e.bound.table()), e.bound};
}

}  // namespace

std::optional<bool> disjoint(const CountableSetDescriptor& a, const CountableSetDescriptor& b) {
  bool unknown = false;
  for (const auto& p : a.points()) {
    auto c = b.contains(p);
    if (!c) unknown = true;
    else if (*c) return false;
  }
  for (const auto& p : b.points()) {
    auto c = a.contains(p);
    if (!c) unknown = true;
    else if (*c) return false;
  }
  for (const auto& ta : a.tails())
    for (const auto& tb : b.tails()) {
      if (ta == tb) return false;
      auto [la, ua] = tail_range(ta);
      auto [lb, ub] = tail_range(tb);
      if (ua <= lb || ub <= la) continue;
      if (std::holds_alternative<ord::Interval>(ta) && std::holds_alternative<ord::Interval>(tb)) return false;
      unknown = true;
    }
  if (unknown) return std::nullopt;
  return true;
}

SymbolicGroup::SymbolicGroup(Ord length, SupportPolicy policy) : length_(std::move(length)), policy_(policy) {}

SymbolicElement SymbolicGroup::element(CountableSetDescriptor support) const {
  if (!support.empty()) {
    // Every described stage must lie below the length.
    if (support.supremum().strict_bound() > length_)
      throw Error(ErrorCode::StageOutOfRange, "support " + support.str() + " reaches beyond stage " + length_.str());
  }
  if (policy_ == SupportPolicy::finite && !support.is_finite())
    throw Error(ErrorCode::WrongMode, "finite-support group cannot hold " + support.str());
  return SymbolicElement{std::move(support)};
}

SymbolicElement SymbolicGroup::at(const Ord& stage) const {
  if (!(stage < length_)) throw Error(ErrorCode::StageOutOfRange, "stage " + stage.str() + " is not below " + length_.str());
  return SymbolicElement{CountableSetDescriptor::singleton(stage)};
}

SymbolicElement SymbolicGroup::compose(const SymbolicElement& a, const SymbolicElement& b) const {
  if (a.support.is_finite() && b.support.is_finite())
    return SymbolicElement{a.support.symmetric_difference_finite(b.support)};
  if (a.support.empty()) return b;
  if (b.support.empty()) return a;
  auto d = disjoint(a.support, b.support);
  if (d && *d) return element(a.support.unite(b.support));
  throw Error(ErrorCode::OutOfBudget, "product of overlapping infinite supports is not represented");
}

SymbolicElement SymbolicGroup::restrict(const SymbolicElement& a, const Ord& beta) const {
  if (beta > length_) throw Error(ErrorCode::StageMismatch, "cannot restrict to a stage above the length");
  return SymbolicElement{a.support.below(beta)};
}

std::optional<bool> SymbolicGroup::in_kernel(const SymbolicElement& g, const SupportKernel& K) const {
  return disjoint(g.support, K.support);
}

std::string element_str(const SymbolicElement& g) { return g.support.empty() ? "id" : "swap" + g.support.str(); }

}  // namespace sfw::groups
