#include "sfw/filters.hpp"

#include <algorithm>
#include <set>

#include "sfw/error.hpp"

namespace sfw::filters {

using groups::ExplicitSubgroup;
using groups::FiniteGroup;
using groups::has;
using groups::SupportKernel;
using ord::CountableSetDescriptor;
using ord::Ord;

namespace {

bool subset(Mask a, Mask b) { return (a & ~b) == 0; }

std::vector<Mask> minimal_antichain(std::vector<Mask> ms) {
  std::sort(ms.begin(), ms.end());
  ms.erase(std::unique(ms.begin(), ms.end()), ms.end());
  std::vector<Mask> out;
  for (Mask m : ms) {
    bool minimal = true;
    for (Mask o : ms)
      if (o != m && subset(o, m)) minimal = false;
    if (minimal) out.push_back(m);
  }
  return out;
}

const ExplicitFilter& as_explicit(const FilterOfSubgroups& F) { return std::get<ExplicitFilter>(F); }

Ord tail_bound(const ord::Tail& t) {
  if (const auto* s = std::get_if<ord::OmegaSequence>(&t)) return s->bound();
  if (const auto* i = std::get_if<ord::Interval>(&t)) return i->to;
  return std::get<ord::EnumeratedSequence>(t).bound;
}

bool point_covered(const BasisFamily& f, const Ord& p) {
  switch (f.kind) {
    case BasisFamily::Kind::singletons: return p < f.bound;
    case BasisFamily::Kind::head_segments: return f.inclusive ? p < f.bound : p.successor() < f.bound;
    case BasisFamily::Kind::sets:
      return std::any_of(f.sets.begin(), f.sets.end(),
                         [&](const CountableSetDescriptor& s) { return s.contains(p) == std::optional<bool>(true); });
  }
  return false;
}

bool tail_covered(const BasisFamily& f, const ord::Tail& t, ClosureMode mode) {
  const Ord tb = tail_bound(t);
  switch (f.kind) {
    case BasisFamily::Kind::singletons: return mode == ClosureMode::countable_unions && tb <= f.bound;
    case BasisFamily::Kind::head_segments: {
      if (mode == ClosureMode::finite_unions) return f.inclusive ? tb <= f.bound : tb < f.bound;
      Ord reach = (f.inclusive || !f.bound.is_successor()) ? f.bound : f.bound.predecessor();
      return tb <= reach;
    }
    case BasisFamily::Kind::sets: {
      CountableSetDescriptor single({}, {t});
      return std::any_of(f.sets.begin(), f.sets.end(),
                         [&](const CountableSetDescriptor& s) { return single.subset_of(s); });
    }
  }
  return false;
}

void require_in_universe(const SupportIdeal& F, const CountableSetDescriptor& e) {
  if (e.empty()) return;
  if (e.supremum().strict_bound() > F.universe)
    throw Error(ErrorCode::AmbientMismatch,
                "K[" + e.str() + "] does not live in the group of length " + F.universe.str());
}

// A cofinal omega-sequence below a limit of countable cofinality.
std::optional<ord::Tail> cofinal_sequence(const Ord& b) {
  if (ord::cofinality_class(b) != ord::OrdClass::cof_omega) return std::nullopt;
  const auto& last = b.terms().back();
  if (last.atom != 0) return ord::EnumeratedSequence{"cofinal", b};
  std::vector<ord::Term> head(b.terms().begin(), b.terms().end() - 1);
  if (last.coefficient > 1) head.push_back(ord::Term{0, last.exponent, last.coefficient - 1});
  return ord::OmegaSequence{Ord(b.table(), head, 0), last.exponent - 1};
}

}  // namespace

ExplicitFilter ExplicitFilter::make(groups::GroupPtr group, std::vector<Mask> members) {
  for (Mask m : members)
    if (!groups::is_subgroup(*group, m))
      throw Error(ErrorCode::AmbientMismatch, groups::mask_str(*group, m) + " is not a subgroup of " + group->label());
  return ExplicitFilter{std::move(group), minimal_antichain(std::move(members))};
}

ExplicitFilter ExplicitFilter::principal(groups::GroupPtr group) {
  Mask full = groups::full_mask(*group);
  return ExplicitFilter{std::move(group), {full}};
}

std::vector<Mask> ExplicitFilter::members() const {
  std::vector<Mask> out;
  for (Mask k : groups::subgroup_lattice(*group))
    if (contains(k)) out.push_back(k);
  return out;
}

bool ExplicitFilter::contains(Mask k) const {
  return std::any_of(generators.begin(), generators.end(), [&](Mask g) { return subset(g, k); });
}

BasisFamily BasisFamily::singletons(Ord bound) {
  BasisFamily f;
  f.kind = Kind::singletons;
  f.bound = std::move(bound);
  return f;
}

BasisFamily BasisFamily::head_segments(Ord bound, bool inclusive) {
  BasisFamily f;
  f.kind = Kind::head_segments;
  f.bound = std::move(bound);
  f.inclusive = inclusive;
  return f;
}

BasisFamily BasisFamily::explicit_sets(std::vector<CountableSetDescriptor> sets) {
  BasisFamily f;
  f.kind = Kind::sets;
  std::sort(sets.begin(), sets.end(),
            [](const CountableSetDescriptor& a, const CountableSetDescriptor& b) { return a.str() < b.str(); });
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  f.sets = std::move(sets);
  return f;
}

std::string BasisFamily::str() const {
  switch (kind) {
    case Kind::singletons: return "singletons < " + bound.str();
    case Kind::head_segments: return std::string("heads ") + (inclusive ? "<= " : "< ") + bound.str();
    case Kind::sets: {
      std::string out = "sets [";
      for (std::size_t i = 0; i < sets.size(); ++i) out += (i ? ", " : "") + sets[i].str();
      return out + "]";
    }
  }
  return "?";
}

SupportIdeal SupportIdeal::make(Ord universe, std::vector<BasisFamily> basis, ClosureMode mode) {
  std::vector<BasisFamily> kept;
  for (auto& f : basis) {
    if (f.kind == BasisFamily::Kind::sets) {
      f = BasisFamily::explicit_sets(std::move(f.sets));
      f.sets.erase(std::remove_if(f.sets.begin(), f.sets.end(), [](const auto& s) { return s.empty(); }), f.sets.end());
      if (f.sets.empty()) continue;
      for (const auto& s : f.sets)
        if (s.supremum().strict_bound() > universe)
          throw Error(ErrorCode::AmbientMismatch, "support " + s.str() + " is not below " + universe.str());
    } else {
      if (f.bound > universe)
        throw Error(ErrorCode::AmbientMismatch, "basis bound " + f.bound.str() + " exceeds " + universe.str());
      if (f.bound.is_zero() || (f.kind == BasisFamily::Kind::head_segments && !f.inclusive && f.bound == Ord(1, f.bound.table())))
        continue;  // only the empty support
    }
    kept.push_back(std::move(f));
  }
  std::sort(kept.begin(), kept.end(), [](const BasisFamily& a, const BasisFamily& b) { return a.str() < b.str(); });
  kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
  return SupportIdeal{std::move(universe), std::move(kept), mode};
}

bool SupportIdeal::covers(const CountableSetDescriptor& e) const {
  for (const auto& p : e.points())
    if (!std::any_of(basis.begin(), basis.end(), [&](const BasisFamily& f) { return point_covered(f, p); }))
      return false;
  for (const auto& t : e.tails())
    if (!std::any_of(basis.begin(), basis.end(), [&](const BasisFamily& f) { return tail_covered(f, t, mode); }))
      return false;
  return true;
}

std::string SupportIdeal::str() const {
  std::string out = "ideal on " + universe.str() + " (" +
                    (mode == ClosureMode::finite_unions ? "finite_unions" : "countable_unions") + ") {";
  for (std::size_t i = 0; i < basis.size(); ++i) out += (i ? "; " : "") + basis[i].str();
  return out + "}";
}

std::string filter_str(const FilterOfSubgroups& f) {
  if (const auto* s = std::get_if<SupportIdeal>(&f)) return s->str();
  const auto& e = as_explicit(f);
  std::string out = "filter on " + e.group->label() + " above {";
  for (std::size_t i = 0; i < e.generators.size(); ++i)
    out += (i ? "; " : "") + groups::mask_str(*e.group, e.generators[i]);
  return out + "}";
}

bool filters_equal(const FilterOfSubgroups& a, const FilterOfSubgroups& b) {
  if (a.index() != b.index()) return false;
  if (const auto* s = std::get_if<SupportIdeal>(&a)) return *s == std::get<SupportIdeal>(b);
  const auto& x = as_explicit(a);
  const auto& y = as_explicit(b);
  return *x.group == *y.group && x.generators == y.generators;
}

bool filter_contains(const FilterOfSubgroups& F, const Subgroup& K) {
  if (const auto* e = std::get_if<ExplicitFilter>(&F)) {
    const auto* k = std::get_if<ExplicitSubgroup>(&K);
    if (!k || !groups::is_subgroup(*e->group, k->mask))
      throw Error(ErrorCode::AmbientMismatch, "subgroup does not live in " + e->group->label());
    return e->contains(k->mask);
  }
  const auto& s = std::get<SupportIdeal>(F);
  const auto* k = std::get_if<SupportKernel>(&K);
  if (!k) throw Error(ErrorCode::AmbientMismatch, "symbolic filters contain support kernels only");
  require_in_universe(s, k->support);
  return s.covers(k->support);
}

FilterAuditReport audit_family(const FiniteGroup& G, const std::vector<Mask>& family) {
  FilterAuditReport r;
  std::set<Mask> fam(family.begin(), family.end());
  auto violate = [&](std::string msg) {
    r.is_filter = false;
    r.violations.push_back(std::move(msg));
  };
  for (Mask m : fam)
    if (!groups::is_subgroup(G, m)) violate("not a subgroup: " + groups::mask_str(G, m));
  if (!r.is_filter) {
    r.is_normal = r.is_omega1_complete = false;
    return r;
  }
  const Mask full = groups::full_mask(G);
  if (!fam.count(full)) violate("the whole group is missing");
  auto lattice = groups::subgroup_lattice(G);
  for (Mask a : fam)
    for (Mask b : lattice)
      if (subset(a, b) && !fam.count(b)) {
        violate("not upward closed: " + groups::mask_str(G, b) + " is above " + groups::mask_str(G, a));
        break;
      }
  std::optional<std::pair<Mask, Mask>> meet_failure;
  for (Mask a : fam)
    for (Mask b : fam)
      if (!fam.count(a & b) && !meet_failure) meet_failure = std::make_pair(a, b);
  if (meet_failure)
    violate("not closed under intersection: " + groups::mask_str(G, meet_failure->first) + " and " +
            groups::mask_str(G, meet_failure->second));
  for (Mask a : fam) {
    if (r.normality_witness) break;
    for (groups::Elem g = 0; g < G.order(); ++g) {
      Mask c = groups::conjugate(G, g, a);
      if (!fam.count(c)) {
        r.is_normal = false;
        r.normality_witness = NormalityWitness{ExplicitSubgroup{a}, g, ExplicitSubgroup{c}};
        break;
      }
    }
  }
  // In a finite lattice a countable intersection equals a finite one, so the
  // only failures are finite meets; the witness repeats the last member.
  if (meet_failure || fam.empty()) {
    r.is_omega1_complete = false;
    if (meet_failure) {
      Mask a = meet_failure->first, b = meet_failure->second;
      r.completeness_witness = CompletenessWitness{
          {ExplicitSubgroup{a}, ExplicitSubgroup{b}, ExplicitSubgroup{b}}, ExplicitSubgroup{a & b}, "H_n = H_1 for n >= 1"};
    }
  }
  return r;
}

FilterAuditReport audit_filter(const FilterOfSubgroups& F) {
  if (const auto* e = std::get_if<ExplicitFilter>(&F)) {
    if (e->group->order() > groups::kAuditOrder)
      throw Error(ErrorCode::GroupTooLarge, "explicit audits are limited to order " +
                                                std::to_string(groups::kAuditOrder));
    if (e->generators.empty()) {
      FilterAuditReport r;
      r.is_filter = r.is_normal = r.is_omega1_complete = false;
      r.violations.push_back("the family is empty");
      return r;
    }
    return audit_family(*e->group, e->members());
  }
  const auto& s = std::get<SupportIdeal>(F);
  FilterAuditReport r;  // upward closed and meet closed by construction; abelian ambient
  if (s.mode == ClosureMode::countable_unions) return r;
  for (const auto& f : s.basis) {
    std::optional<ord::Tail> seq;
    if (f.kind == BasisFamily::Kind::singletons && !f.bound.is_finite()) {
      seq = ord::OmegaSequence{Ord(0, f.bound.table()), 0};
    } else if (f.kind == BasisFamily::Kind::head_segments && !f.inclusive && f.bound.is_limit()) {
      seq = cofinal_sequence(f.bound);
    }
    if (!seq) continue;
    CountableSetDescriptor uni({}, {*seq});
    if (s.covers(uni)) continue;
    CompletenessWitness w;
    if (const auto* os = std::get_if<ord::OmegaSequence>(&*seq)) {
      for (std::uint64_t n = 0; n < 3; ++n)
        w.sequence.push_back(SupportKernel{CountableSetDescriptor::singleton(os->at(n))});
      w.pattern = "E_n = {" + ord::tail_str(*seq) + " at n}";
    } else {
      w.pattern = "E_n = {n-th point of " + ord::tail_str(*seq) + "}";
    }
    w.intersection = SupportKernel{uni};
    r.is_omega1_complete = false;
    r.completeness_witness = std::move(w);
    break;
  }
  return r;
}

FilterOfSubgroups omega1_completion(const FilterOfSubgroups& F) {
  if (const auto* e = std::get_if<ExplicitFilter>(&F)) {
    auto audit = audit_filter(F);
    if (!audit.is_filter) throw Error(ErrorCode::NotAFilter, filter_str(F) + " is not a filter");
    return *e;
  }
  auto s = std::get<SupportIdeal>(F);
  return SupportIdeal::make(s.universe, s.basis, ClosureMode::countable_unions);
}

FilterOfSubgroups pullback_filter(const groups::GroupHom& h, const FilterOfSubgroups& F) {
  if (const auto* eh = std::get_if<groups::ExplicitHom>(&h)) {
    const auto* e = std::get_if<ExplicitFilter>(&F);
    if (!e || !(*e->group == *eh->codomain))
      throw Error(ErrorCode::CodomainMismatch, "filter does not live on the codomain");
    std::vector<Mask> gens;
    for (Mask g : e->generators)
      gens.push_back(std::get<ExplicitSubgroup>(groups::preimage_subgroup(h, ExplicitSubgroup{g})).mask);
    return ExplicitFilter::make(eh->domain, gens);
  }
  const auto* r = std::get_if<groups::Restriction>(&h);
  const auto* s = std::get_if<SupportIdeal>(&F);
  if (!r || !s) throw Error(ErrorCode::CodomainMismatch, "symbolic pullbacks go along restrictions");
  if (!(s->universe == r->to))
    throw Error(ErrorCode::CodomainMismatch, "filter lives at stage " + s->universe.str() + ", not " + r->to.str());
  return SupportIdeal::make(r->from, s->basis, s->mode);
}

FilterOfSubgroups restrict_filter(const groups::GroupHom& iota, const FilterOfSubgroups& F) {
  if (const auto* eh = std::get_if<groups::ExplicitHom>(&iota)) {
    if (!eh->injective()) throw Error(ErrorCode::NotAnInclusion, "restriction needs an injective homomorphism");
    return pullback_filter(iota, F);
  }
  const auto* inc = std::get_if<groups::SymbolicInclusion>(&iota);
  if (!inc) throw Error(ErrorCode::NotAnInclusion, "a restriction map is not an inclusion");
  const auto* s = std::get_if<SupportIdeal>(&F);
  if (!s || !(s->universe == inc->to))
    throw Error(ErrorCode::CodomainMismatch, "filter does not live on the larger group");
  const Ord& beta = inc->from;
  std::vector<BasisFamily> basis;
  for (const auto& f : s->basis) {
    switch (f.kind) {
      case BasisFamily::Kind::singletons:
        basis.push_back(BasisFamily::singletons(f.bound < beta ? f.bound : beta));
        break;
      case BasisFamily::Kind::head_segments:
        if (f.bound < beta || (f.bound == beta && !f.inclusive))
          basis.push_back(f);
        else
          basis.push_back(BasisFamily::head_segments(beta, true));
        break;
      case BasisFamily::Kind::sets: {
        std::vector<CountableSetDescriptor> sets;
        for (const auto& e : f.sets) sets.push_back(e.below(beta));
        basis.push_back(BasisFamily::explicit_sets(std::move(sets)));
        break;
      }
    }
  }
  return SupportIdeal::make(beta, std::move(basis), s->mode);
}

ExplicitFilter generate_normal_filter(groups::GroupPtr G, const std::vector<Mask>& gens, GenerationMode) {
  Mask meet = groups::full_mask(*G);
  for (Mask g : gens) {
    if (!groups::is_subgroup(*G, g))
      throw Error(ErrorCode::AmbientMismatch, groups::mask_str(*G, g) + " is not a subgroup of " + G->label());
    meet &= g;
  }
  // Intersection of all conjugates of all generators.
  return ExplicitFilter::make(G, {groups::normal_core(*G, meet)});
}

SupportIdeal generate_normal_filter(const Ord& universe, std::vector<BasisFamily> gens, GenerationMode mode) {
  return SupportIdeal::make(universe, std::move(gens),
                            mode == GenerationMode::finite_intersections ? ClosureMode::finite_unions
                                                                         : ClosureMode::countable_unions);
}

SupportIdeal generate_normal_filter(const Ord& universe, const std::vector<SupportKernel>& gens,
                                    GenerationMode mode) {
  std::vector<CountableSetDescriptor> sets;
  for (const auto& k : gens) sets.push_back(k.support);
  return generate_normal_filter(universe, {BasisFamily::explicit_sets(std::move(sets))}, mode);
}

}  // namespace sfw::filters
