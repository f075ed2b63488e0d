#include "sfw/descriptor.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "sfw/error.hpp"

namespace sfw::ord {

namespace {

constexpr std::uint64_t kMaxExplicitExpansion = 4096;

Ord omega_times(std::uint32_t k, std::uint64_t n, const AtomTablePtr& table) {
  if (n == 0) return Ord(0, table);
  if (k == 0) return Ord(n, table);
  return Ord(table, {Term{0, k, n}}, 0);
}

// Countable ordinals d < type, level by level (exponents and coefficients <= level),
// each level sorted. Every ordinal below omega^omega shows up at some level.
std::vector<Ord> countable_levels(const Ord& type, std::size_t needed) {
  const auto& table = type.table();
  std::vector<Ord> out;
  std::set<std::vector<std::uint64_t>> seen;
  // Exponents above the degree of `type` never give anything below it.
  std::uint32_t degree = UINT32_MAX;
  if (!type.terms().empty() && type.terms()[0].atom == 0) degree = type.terms()[0].exponent;
  if (type.terms().empty()) degree = 0;
  const std::uint32_t max_level = static_cast<std::uint32_t>(std::max<std::size_t>(10, needed + 1));
  for (std::uint32_t level = 1; level <= max_level && out.size() < needed; ++level) {
    std::vector<Ord> fresh;
    const std::uint32_t width = std::min(level, degree);
    // coefficient vector for exponents width..1, then finite part
    std::vector<std::uint64_t> coef(width + 1, 0);
    while (true) {
      if (!seen.count(coef)) {
        std::vector<Term> terms;
        for (std::uint32_t i = 0; i < width; ++i)
          if (coef[i] > 0) terms.push_back(Term{0, width - i, coef[i]});
        Ord d(table, terms, coef[width]);
        if (d < type) {
          seen.insert(coef);
          fresh.push_back(d);
        }
      }
      std::size_t j = 0;
      while (j < coef.size() && coef[j] == level) coef[j++] = 0;
      if (j == coef.size()) break;
      ++coef[j];
    }
    // Vectors of a shorter level are recorded with a different length, so remap
    // duplicates by value.
    std::sort(fresh.begin(), fresh.end());
    for (auto& d : fresh) {
      bool dup = std::any_of(out.begin(), out.end(), [&](const Ord& o) { return o == d; });
      if (!dup) out.push_back(std::move(d));
    }
  }
  return out;
}

std::vector<Ord> interval_elements(const Interval& iv, std::size_t needed) {
  Ord type = subtract_left(iv.to, iv.from);
  std::vector<Ord> out;
  for (const auto& d : countable_levels(type, needed)) out.push_back(add(iv.from, d));
  return out;
}

bool omega_contains(const OmegaSequence& s, const Ord& x) {
  if (x < s.start || !(x < s.bound())) return false;
  Ord d = subtract_left(x, s.start);
  if (d.is_zero()) return true;
  if (s.unit_exp == 0) return d.is_finite();
  return d.finite_part() == 0 && d.terms().size() == 1 && d.terms()[0].atom == 0 &&
         d.terms()[0].exponent == s.unit_exp;
}

}  // namespace

Ord OmegaSequence::bound() const { return add(start, Ord::omega_power(unit_exp + 1, start.table())); }

Ord OmegaSequence::at(std::uint64_t n) const { return add(start, omega_times(unit_exp, n, start.table())); }

std::string tail_str(const Tail& t) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, OmegaSequence>)
          return "seq(" + v.start.str() + "; " + std::to_string(v.unit_exp) + ")";
        else if constexpr (std::is_same_v<T, Interval>)
          return "[" + v.from.str() + ", " + v.to.str() + ")";
        else
          return "enum(" + v.label + "; " + v.bound.str() + ")";
      },
      t);
}

CountableSetDescriptor::CountableSetDescriptor(std::vector<Ord> points, std::vector<Tail> tails)
    : points_(std::move(points)), tails_(std::move(tails)) {
  normalize();
}

CountableSetDescriptor CountableSetDescriptor::range(std::uint64_t n) {
  std::vector<Ord> pts;
  for (std::uint64_t i = 0; i < n; ++i) pts.emplace_back(i);
  return CountableSetDescriptor(std::move(pts));
}

CountableSetDescriptor CountableSetDescriptor::segment(const Ord& beta) {
  if (beta.is_finite()) {
    std::vector<Ord> pts;
    for (std::uint64_t i = 0; i < beta.finite_part(); ++i) pts.emplace_back(i, beta.table());
    return CountableSetDescriptor(std::move(pts));
  }
  return CountableSetDescriptor({}, {Interval{Ord(0, beta.table()), beta}});
}

CountableSetDescriptor CountableSetDescriptor::naturals() {
  return CountableSetDescriptor({}, {OmegaSequence{Ord(0), 0}});
}

void CountableSetDescriptor::normalize() {
  std::vector<Tail> tails;
  std::vector<Interval> intervals;
  for (auto& t : tails_) {
    if (auto* iv = std::get_if<Interval>(&t)) {
      if (!(iv->from < iv->to)) continue;
      Ord type = subtract_left(iv->to, iv->from);
      if (!type.is_countable())
        throw Error(ErrorCode::ParseError, "interval " + tail_str(t) + " is uncountable");
      if (type.is_finite() && type.finite_part() <= kMaxExplicitExpansion) {
        Ord x = iv->from;
        for (std::uint64_t i = 0; i < type.finite_part(); ++i, x = x.successor()) points_.push_back(x);
        continue;
      }
      intervals.push_back(*iv);
    } else if (auto* en = std::get_if<EnumeratedSequence>(&t)) {
      if (cofinality_class(en->bound) != OrdClass::cof_omega)
        throw Error(ErrorCode::ParseError, "enumerated sequence bound " + en->bound.str() +
                                               " must have cofinality omega");
      tails.push_back(t);
    } else {
      tails.push_back(t);
    }
  }
  std::sort(intervals.begin(), intervals.end(), [](const Interval& a, const Interval& b) { return a.from < b.from; });
  std::vector<Interval> merged;
  for (auto& iv : intervals) {
    if (!merged.empty() && !(merged.back().to < iv.from)) {
      if (merged.back().to < iv.to) merged.back().to = iv.to;
    } else {
      merged.push_back(iv);
    }
  }
  // omega-sequences swallowed by an interval
  std::vector<Tail> kept;
  for (auto& t : tails) {
    if (auto* s = std::get_if<OmegaSequence>(&t)) {
      bool covered = std::any_of(merged.begin(), merged.end(), [&](const Interval& iv) {
        return !(s->start < iv.from) && !(iv.to < s->bound());
      });
      if (covered) continue;
    }
    kept.push_back(t);
  }
  for (auto& iv : merged) kept.emplace_back(iv);
  std::sort(kept.begin(), kept.end(), [](const Tail& a, const Tail& b) { return tail_str(a) < tail_str(b); });
  kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
  tails_ = std::move(kept);

  std::sort(points_.begin(), points_.end());
  points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
  std::vector<Ord> pts;
  for (auto& p : points_) {
    bool in_tail = std::any_of(tails_.begin(), tails_.end(), [&](const Tail& t) {
      if (auto* s = std::get_if<OmegaSequence>(&t)) return omega_contains(*s, p);
      if (auto* iv = std::get_if<Interval>(&t)) return !(p < iv->from) && p < iv->to;
      return false;
    });
    if (!in_tail) pts.push_back(p);
  }
  points_ = std::move(pts);
}

std::optional<bool> CountableSetDescriptor::contains(const Ord& x) const {
  if (std::binary_search(points_.begin(), points_.end(), x)) return true;
  bool unknown = false;
  for (const auto& t : tails_) {
    if (auto* s = std::get_if<OmegaSequence>(&t)) {
      if (omega_contains(*s, x)) return true;
    } else if (auto* iv = std::get_if<Interval>(&t)) {
      if (!(x < iv->from) && x < iv->to) return true;
    } else if (auto* en = std::get_if<EnumeratedSequence>(&t)) {
      if (x < en->bound) unknown = true;
    }
  }
  if (unknown) return std::nullopt;
  return false;
}

bool CountableSetDescriptor::subset_of(const CountableSetDescriptor& other) const {
  for (const auto& p : points_)
    if (other.contains(p) != std::optional<bool>(true)) return false;
  for (const auto& t : tails_) {
    bool covered = false;
    for (const auto& u : other.tails_) {
      if (t == u) {
        covered = true;
      } else if (auto* s = std::get_if<OmegaSequence>(&t)) {
        if (auto* s2 = std::get_if<OmegaSequence>(&u))
          covered = s2->unit_exp == s->unit_exp && s2->bound() == s->bound() && omega_contains(*s2, s->start);
        else if (auto* iv = std::get_if<Interval>(&u))
          covered = !(s->start < iv->from) && !(iv->to < s->bound());
      } else if (auto* iv = std::get_if<Interval>(&t)) {
        if (auto* iv2 = std::get_if<Interval>(&u))
          covered = !(iv->from < iv2->from) && !(iv2->to < iv->to);
        else if (auto* s2 = std::get_if<OmegaSequence>(&u))
          covered = s2->unit_exp == 0 && omega_contains(*s2, iv->from) && !(s2->bound() < iv->to);
      } else if (auto* en = std::get_if<EnumeratedSequence>(&t)) {
        if (auto* iv2 = std::get_if<Interval>(&u))
          covered = iv2->from.is_zero() && !(iv2->to < en->bound);
      }
      if (covered) break;
    }
    if (!covered) return false;
  }
  return true;
}

Supremum CountableSetDescriptor::supremum() const {
  std::optional<Supremum> best;
  auto consider = [&](const Ord& v, bool attained) {
    if (!best || best->value < v) {
      best = Supremum{v, attained};
    } else if (best->value == v) {
      best->attained = best->attained || attained;
    }
  };
  if (!points_.empty()) consider(points_.back(), true);
  for (const auto& t : tails_) {
    if (auto* s = std::get_if<OmegaSequence>(&t)) {
      consider(s->bound(), false);
    } else if (auto* iv = std::get_if<Interval>(&t)) {
      if (iv->to.is_successor())
        consider(iv->to.predecessor(), true);
      else
        consider(iv->to, false);
    } else if (auto* en = std::get_if<EnumeratedSequence>(&t)) {
      consider(en->bound, false);
    }
  }
  if (!best) return Supremum{Ord(0), false};
  return *best;
}

CountableSetDescriptor CountableSetDescriptor::unite(const CountableSetDescriptor& other) const {
  auto pts = points_;
  pts.insert(pts.end(), other.points_.begin(), other.points_.end());
  auto tails = tails_;
  tails.insert(tails.end(), other.tails_.begin(), other.tails_.end());
  return CountableSetDescriptor(std::move(pts), std::move(tails));
}

CountableSetDescriptor CountableSetDescriptor::below(const Ord& beta) const {
  std::vector<Ord> pts;
  for (const auto& p : points_)
    if (p < beta) pts.push_back(p);
  std::vector<Tail> tails;
  for (const auto& t : tails_) {
    if (auto* s = std::get_if<OmegaSequence>(&t)) {
      if (!(beta < s->bound())) {
        tails.push_back(t);
      } else {
        // only finitely many points of a cofinal sequence lie below beta < bound
        for (std::uint64_t n = 0;; ++n) {
          Ord x = s->at(n);
          if (!(x < beta)) break;
          pts.push_back(x);
        }
      }
    } else if (auto* iv = std::get_if<Interval>(&t)) {
      if (iv->from < beta) tails.emplace_back(Interval{iv->from, beta < iv->to ? beta : iv->to});
    } else if (auto* en = std::get_if<EnumeratedSequence>(&t)) {
      if (!(beta < en->bound))
        tails.push_back(t);
      else
        throw Error(ErrorCode::OutOfBudget, "cannot clip opaque sequence " + tail_str(t) + " below " + beta.str());
    }
  }
  return CountableSetDescriptor(std::move(pts), std::move(tails));
}

CountableSetDescriptor CountableSetDescriptor::symmetric_difference_finite(const CountableSetDescriptor& other) const {
  if (!is_finite() || !other.is_finite())
    throw Error(ErrorCode::OutOfBudget, "symmetric difference needs finite descriptors");
  std::vector<Ord> out;
  std::set_symmetric_difference(points_.begin(), points_.end(), other.points_.begin(), other.points_.end(),
                                std::back_inserter(out));
  return CountableSetDescriptor(std::move(out));
}

std::vector<Ord> CountableSetDescriptor::enumerate(std::size_t count) const {
  std::vector<std::vector<Ord>> comps;
  std::vector<const OmegaSequence*> seqs;
  comps.push_back(points_);
  for (const auto& t : tails_) {
    if (auto* s = std::get_if<OmegaSequence>(&t)) {
      seqs.push_back(s);
      comps.emplace_back();
    } else if (auto* iv = std::get_if<Interval>(&t)) {
      seqs.push_back(nullptr);
      comps.push_back(interval_elements(*iv, count));
    }
  }
  std::vector<Ord> out;
  std::set<std::string> seen;
  bool progress = true;
  for (std::uint64_t round = 0; out.size() < count && progress; ++round) {
    progress = false;
    for (std::size_t c = 0; c < comps.size() && out.size() < count; ++c) {
      std::optional<Ord> x;
      if (c > 0 && seqs[c - 1]) {
        x = seqs[c - 1]->at(round);
      } else if (round < comps[c].size()) {
        x = comps[c][round];
      }
      if (!x) continue;
      progress = true;
      if (seen.insert(x->str()).second) out.push_back(*x);
    }
  }
  return out;
}

std::string CountableSetDescriptor::str() const {
  std::string out = "{";
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (i) out += ", ";
    out += points_[i].str();
  }
  for (const auto& t : tails_) out += " | " + tail_str(t);
  return out + "}";
}

bool operator==(const CountableSetDescriptor& a, const CountableSetDescriptor& b) {
  return a.points_ == b.points_ && a.tails_ == b.tails_;
}

CountableSetDescriptor unite_all(const std::vector<CountableSetDescriptor>& family) {
  CountableSetDescriptor out;
  for (const auto& d : family) out = out.unite(d);
  return out;
}

StageBoundResult stage_bound(const CountableSetDescriptor& s, const Ord& lambda) {
  for (const auto& p : s.points())
    if (!(p < lambda))
      throw Error(ErrorCode::PointNotBelowLambda, p.str() + " >= " + lambda.str());
  for (const auto& t : s.tails()) {
    Ord bound = std::visit(
        [](const auto& v) -> Ord {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, OmegaSequence>)
            return v.bound();
          else if constexpr (std::is_same_v<T, Interval>)
            return v.to;
          else
            return v.bound;
        },
        t);
    if (lambda < bound)
      throw Error(ErrorCode::PointNotBelowLambda, tail_str(t) + " reaches beyond " + lambda.str());
  }
  Supremum sup = s.supremum();
  if (sup.value < lambda) return Bounded{sup.value};
  return CofinalFailure{lambda};
}

}  // namespace sfw::ord
