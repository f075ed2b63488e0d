#include "sfw/iteration.hpp"

#include <algorithm>

#include "sfw/constructors.hpp"
#include "sfw/error.hpp"
#include "sfw/two_step.hpp"

namespace sfw::iteration {

using groups::Elem;
using groups::FiniteGroup;
using groups::GroupPtr;
using groups::Mask;
using ord::CountableSetDescriptor;
using ord::Ord;

ProductSpace::ProductSpace(std::vector<PosetPtr> factors) : factors_(std::move(factors)) {
  for (const auto& f : factors_) {
    if (f->top() != 0) throw Error(ErrorCode::InvalidTemplate, "product factors need top 0");
    radix_.push_back(size_);
    if (size_ > (std::uint64_t{1} << 62) / f->size()) throw Error(ErrorCode::OutOfBudget, "product space too large");
    size_ *= f->size();
  }
}

std::vector<CondId> ProductSpace::decode(CondId c) const {
  std::vector<CondId> out(factors_.size());
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    out[i] = c % factors_[i]->size();
    c /= factors_[i]->size();
  }
  return out;
}

CondId ProductSpace::encode(const std::vector<CondId>& coords) const {
  if (coords.size() != factors_.size()) throw Error(ErrorCode::StageMismatch, "wrong number of coordinates");
  CondId c = 0;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (coords[i] >= factors_[i]->size()) throw Error(ErrorCode::ForeignCondition, "coordinate out of range");
    c += coords[i] * radix_[i];
  }
  return c;
}

CondId ProductSpace::coordinate(CondId c, std::size_t i) const { return (c / radix_[i]) % factors_[i]->size(); }

CondId ProductSpace::embed(std::size_t i, CondId local) const {
  if (i >= factors_.size() || local >= factors_[i]->size())
    throw Error(ErrorCode::ForeignCondition, "no such coordinate or condition");
  return local * radix_[i];
}

bool ProductSpace::le(CondId a, CondId b) const {
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (!factors_[i]->le(a % factors_[i]->size(), b % factors_[i]->size())) return false;
    a /= factors_[i]->size();
    b /= factors_[i]->size();
  }
  return true;
}

CountableSetDescriptor ProductSpace::support(CondId c) const {
  std::vector<Ord> pts;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (c % factors_[i]->size() != 0) pts.emplace_back(i);
    c /= factors_[i]->size();
  }
  return CountableSetDescriptor(pts);
}

forcing::SupportContext ProductSpace::support_context() const {
  return forcing::SupportContext{[self = *this](CondId c) {
    if (!self.contains(c)) throw Error(ErrorCode::ForeignCondition, "condition outside the product");
    return self.support(c);
  }};
}

std::string ProductSpace::label(CondId c) const {
  if (factors_.empty()) return "1";
  std::string out = "<";
  auto cs = decode(c);
  for (std::size_t i = 0; i < cs.size(); ++i) out += (i ? ", " : "") + factors_[i]->label(cs[i]);
  return out + ">";
}

ProductSpace ProductSpace::extended(PosetPtr factor) const {
  auto fs = factors_;
  fs.push_back(std::move(factor));
  return ProductSpace(std::move(fs));
}

Poset ProductSpace::materialize(std::size_t cap) const {
  if (size_ > cap) throw Error(ErrorCode::OutOfBudget, "product has " + std::to_string(size_) + " conditions");
  std::vector<std::string> labels;
  for (CondId c = 0; c < size_; ++c) labels.push_back(label(c));
  return Poset::from_predicate(std::move(labels), [this](CondId a, CondId b) { return le(a, b); }, 0);
}

std::size_t binary_string_index(const std::string& s) {
  std::size_t v = 0;
  for (char ch : s) v = 2 * v + (ch == '1');
  return (std::size_t{1} << s.size()) - 1 + v;
}

std::string binary_string(std::size_t index) {
  std::size_t len = 0;
  while ((std::size_t{1} << (len + 1)) - 1 <= index) ++len;
  std::size_t v = index - ((std::size_t{1} << len) - 1);
  std::string s(len, '0');
  for (std::size_t i = 0; i < len; ++i)
    if ((v >> (len - 1 - i)) & 1U) s[i] = '1';
  return s;
}

namespace {

bool extends(const std::string& s, const std::string& t) { return s.size() >= t.size() && s.compare(0, t.size(), t) == 0; }

std::size_t strings_up_to(std::size_t depth) { return (std::size_t{1} << (depth + 1)) - 1; }

GroupPtr share(FiniteGroup g) { return std::make_shared<const FiniteGroup>(std::move(g)); }

}  // namespace

PosetPtr cohen_pair_poset(std::size_t depth) {
  if (depth > 4) throw Error(ErrorCode::OutOfBudget, "Cohen pair truncation depth is limited to 4");
  const std::size_t S = strings_up_to(depth);
  std::vector<std::string> strs(S), labels;
  for (std::size_t i = 0; i < S; ++i) strs[i] = binary_string(i);
  for (std::size_t i = 0; i < S; ++i)
    for (std::size_t j = 0; j < S; ++j) labels.push_back("(" + strs[i] + "," + strs[j] + ")");
  return std::make_shared<const Poset>(Poset::from_predicate(
      std::move(labels),
      [&](CondId a, CondId b) { return extends(strs[a / S], strs[b / S]) && extends(strs[a % S], strs[b % S]); }, 0));
}

forcing::PosetAutomorphism cohen_pair_swap(std::size_t depth) {
  const std::size_t S = strings_up_to(depth);
  std::vector<CondId> fwd(S * S);
  for (CondId c = 0; c < S * S; ++c) fwd[c] = (c % S) * S + c / S;
  return forcing::PosetAutomorphism{fwd, fwd};
}

StepTemplate cohen_pair_step(std::size_t depth) {
  StepTemplate s;
  s.label = "cohen_pair(d=" + std::to_string(depth) + ")";
  s.poset = cohen_pair_poset(depth);
  s.poset_name = forcing::check_name(forcing::encode_poset(*s.poset));
  s.group = share(FiniteGroup::cyclic(2));
  s.action = {forcing::PosetAutomorphism::identity(s.poset->size()), cohen_pair_swap(depth)};
  s.filter = filters::ExplicitFilter::principal(s.group);
  return s;
}

StepTemplate trivial_step() {
  StepTemplate s;
  s.label = "trivial";
  s.poset = std::make_shared<const Poset>(Poset::trivial());
  s.poset_name = forcing::check_name(forcing::encode_poset(*s.poset));
  s.group = share(FiniteGroup::cyclic(1));
  s.action = {forcing::PosetAutomorphism::identity(1)};
  s.filter = filters::ExplicitFilter::principal(s.group);
  return s;
}

void validate_step(const StepTemplate& step) {
  auto bad = [&](const std::string& why) { throw Error(ErrorCode::InvalidTemplate, step.label + ": " + why); };
  if (!step.poset || !step.group) bad("missing poset or group");
  // The name is read under every maximal filter of the head; a check name has
  // one value, so the one-point head suffices.
  Poset head = Poset::trivial();
  for (const auto& F : forcing::maximal_filters(head)) {
    auto decoded = forcing::decode_poset(forcing::evaluate_name(head, step.poset_name, F));
    if (!decoded || decoded->poset.size() != step.poset->size()) bad("poset name does not code the step poset");
    for (CondId p = 0; p < step.poset->size(); ++p)
      for (CondId q = 0; q < step.poset->size(); ++q)
        if (decoded->poset.le(p, q) != step.poset->le(p, q)) bad("poset name does not code the step poset");
  }
  const auto& G = *step.group;
  if (step.action.size() != G.order()) bad("action must list one automorphism per group element");
  for (Elem g = 0; g < G.order(); ++g) {
    const auto& a = step.action[g];
    if (a.forward.size() != step.poset->size()) bad("automorphism has the wrong domain");
    for (CondId p = 0; p < step.poset->size(); ++p)
      for (CondId q = 0; q < step.poset->size(); ++q)
        if (step.poset->le(p, q) != step.poset->le(a(p), a(q))) bad("action does not preserve the order");
  }
  if (step.action[0] != forcing::PosetAutomorphism::identity(step.poset->size())) bad("identity must act trivially");
  for (Elem g = 0; g < G.order(); ++g)
    for (Elem h = 0; h < G.order(); ++h)
      if (step.action[G.mul(g, h)] != step.action[g].compose(step.action[h])) bad("action is not a homomorphism");
  if (!step.filter.group || !(*step.filter.group == G)) bad("step filter lives on another group");
  if (!filters::audit_filter(step.filter).all()) bad("step filter is not a normal omega1-complete filter");
}

const StageRecord& IterationState::stage(const Ord& a) const {
  if (limit && limit->index == a) return *limit;
  if (a.is_finite() && a.finite_part() < stages.size()) return stages[a.finite_part()];
  throw Error(ErrorCode::StageMissing, "stage " + a.str() + " has not been built");
}

StageRecord stage_zero() {
  StageRecord r;
  r.index = Ord(0);
  r.group = share(FiniteGroup::cyclic(1));
  r.filter = filters::ExplicitFilter::principal(r.group);
  r.poset_tag = "1 condition";
  return r;
}

IterationState start_iteration(std::optional<StepTemplate> schema) {
  if (schema) validate_step(*schema);
  IterationState s;
  s.schema = std::move(schema);
  s.stages.push_back(stage_zero());
  return s;
}

const StageRecord& successor_stage(IterationState& state, const Ord& a, const StepTemplate& step) {
  if (state.limit || !a.is_finite() || a.finite_part() + 1 != state.stages.size())
    throw Error(ErrorCode::StageMissing, "stage " + a.str() + " is not the last built stage");
  validate_step(step);
  const StageRecord& head = state.stages.back();
  StageRecord r;
  r.index = a.successor();
  r.space = head.space.extended(step.poset);
  auto G = share(FiniteGroup::direct_product(*head.group, *step.group));
  r.group = G;
  const std::size_t m = step.group->order();
  const auto& hf = std::get<filters::ExplicitFilter>(head.filter);
  std::vector<Mask> gens;
  // Head pullbacks H x Q and tail lifts G_a x K.
  for (Mask h : hf.generators) {
    Mask lifted = 0;
    for (Elem x = 0; x < head.group->order(); ++x)
      if (groups::has(h, x))
        for (Elem y = 0; y < m; ++y) lifted |= Mask{1} << (x * m + y);
    gens.push_back(lifted);
  }
  for (Mask k : step.filter.generators) {
    Mask lifted = 0;
    for (Elem x = 0; x < head.group->order(); ++x)
      for (Elem y = 0; y < m; ++y)
        if (groups::has(k, y)) lifted |= Mask{1} << (x * m + y);
    gens.push_back(lifted);
  }
  filters::FilterOfSubgroups kar = filters::generate_normal_filter(G, gens, filters::GenerationMode::finite_intersections);
  r.filter = G->order() <= groups::kAuditOrder ? filters::omega1_completion(kar) : kar;
  r.poset_tag = std::to_string(r.space.size()) + (r.space.size() == 1 ? " condition" : " conditions");
  state.steps.push_back(step);
  state.stages.push_back(std::move(r));
  return state.stages.back();
}

const StageRecord& limit_stage(IterationState& state, const Ord& lambda, LimitMode mode) {
  if (!lambda.is_limit()) throw Error(ErrorCode::NotALimit, lambda.str() + " is not a limit ordinal");
  if (Ord(state.stages.size() - 1) >= lambda)
    throw Error(ErrorCode::StageMismatch, "more stages were built than lie below " + lambda.str());
  StageRecord r;
  r.index = lambda;
  r.symbolic = true;
  r.space = state.stages.back().space;
  r.symbolic_group = groups::SymbolicGroup(lambda, groups::SupportPolicy::countable);
  const bool cf_omega = ord::cofinality_class(lambda) == ord::OrdClass::cof_omega;
  if (mode == LimitMode::automatic)
    mode = cf_omega ? LimitMode::countable_intersections : LimitMode::finite_intersections;
  const auto gmode = mode == LimitMode::countable_intersections ? filters::GenerationMode::countable_intersections
                                                                 : filters::GenerationMode::finite_intersections;
  if (!state.schema) {
    if (!state.steps.empty())
      throw Error(ErrorCode::StageSchemaMissing, "no uniform schema describes the stages below " + lambda.str());
    r.filter = filters::SupportIdeal::principal(lambda);
    r.poset_tag = "trivial limit";
  } else if (state.schema->group->order() == 1) {
    r.filter = filters::SupportIdeal::principal(lambda);
    r.poset_tag = "trivial limit";
  } else {
    if (state.schema->group->order() != 2)
      throw Error(ErrorCode::InvalidTemplate, "symbolic limits need a step group of order 2");
    // Every head pullback contains ker rho_{b,lambda} = K[[0,b)], and these
    // kernels generate the filter.
    r.filter = filters::generate_normal_filter(lambda, {filters::BasisFamily::head_segments(lambda)}, gmode);
    r.poset_tag = std::string(cf_omega ? "countable-support limit" : "direct limit") + ", truncated to " +
                  std::to_string(r.space.factors()) + " stages";
  }
  state.limit = std::move(r);
  return *state.limit;
}

std::vector<Elem> element_coords(const IterationState& state, std::size_t n, Elem g) {
  if (n >= state.stages.size()) throw Error(ErrorCode::StageMissing, "stage " + std::to_string(n) + " not built");
  if (g >= state.stages[n].group->order()) throw Error(ErrorCode::StageMismatch, "element outside the stage group");
  std::vector<Elem> out(n);
  for (std::size_t i = n; i-- > 0;) {
    const std::size_t m = state.steps[i].group->order();
    out[i] = g % m;
    g /= m;
  }
  return out;
}

Elem element_from_coords(const IterationState& state, std::size_t n, const std::vector<Elem>& coords) {
  if (n >= state.stages.size() || coords.size() != n) throw Error(ErrorCode::StageMismatch, "wrong coordinates");
  Elem g = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (coords[i] >= state.steps[i].group->order()) throw Error(ErrorCode::StageMismatch, "coordinate out of range");
    g = g * state.steps[i].group->order() + coords[i];
  }
  return g;
}

CondId coordinatewise_act(const IterationState& state, const StageRecord& stage, Elem g, CondId p) {
  if (stage.symbolic || !stage.index.is_finite() || stage.index.finite_part() >= state.stages.size() ||
      stage.space.factors() != stage.index.finite_part())
    throw Error(ErrorCode::StageMismatch, "not an explicit stage of this iteration");
  if (!stage.space.contains(p)) throw Error(ErrorCode::ForeignCondition, "condition outside the stage");
  const std::size_t n = stage.space.factors();
  auto gs = element_coords(state, n, g);
  auto ps = stage.space.decode(p);
  for (std::size_t i = 0; i < n; ++i) ps[i] = state.steps[i].action[gs[i]](ps[i]);
  return stage.space.encode(ps);
}

CondId coordinatewise_act(const IterationState& state, const StageRecord& limit, const groups::SymbolicElement& g,
                          CondId p) {
  if (!limit.symbolic) throw Error(ErrorCode::StageMismatch, "symbolic elements act on limit stages");
  if (!g.support.empty() && g.support.supremum().strict_bound() > limit.index)
    throw Error(ErrorCode::StageMismatch, "element lives beyond stage " + limit.index.str());
  if (!limit.space.contains(p)) throw Error(ErrorCode::ForeignCondition, "condition outside the truncation");
  auto ps = limit.space.decode(p);
  for (std::size_t i = 0; i < ps.size(); ++i) {
    auto in = g.support.contains(Ord(i));
    if (!in) throw Error(ErrorCode::OutOfBudget, "cannot decide whether the element moves stage " + std::to_string(i));
    if (*in) ps[i] = state.steps[i].action[1](ps[i]);
  }
  return limit.space.encode(ps);
}

forcing::CondMap action_map(const IterationState& state, const StageRecord& stage, Elem g) {
  return [&state, &stage, g](CondId p) { return coordinatewise_act(state, stage, g, p); };
}

forcing::CondMap action_map(const IterationState& state, const StageRecord& limit, const groups::SymbolicElement& g) {
  return [&state, &limit, g](CondId p) { return coordinatewise_act(state, limit, g, p); };
}

groups::SupportKernel head_pullback_kernel(const Ord& beta) { return groups::SupportKernel{CountableSetDescriptor::segment(beta)}; }

IdentificationReport direct_limit_identify(const IterationState& state, const Ord& lambda,
                                           const std::vector<CountableSetDescriptor>& supports) {
  if (ord::cofinality_class(lambda) != ord::OrdClass::cof_ge_omega1)
    throw Error(ErrorCode::WrongCofinality, "stage bounding needs cofinality at least omega1, not " + lambda.str());
  IdentificationReport rep;
  rep.lambda = lambda;
  auto items = supports;
  if (state.limit && state.limit->index == lambda)
    for (CondId c = 0; c < std::min<std::uint64_t>(state.limit->space.size(), 16); ++c)
      items.push_back(state.limit->space.support(c));
  for (const auto& s : items) {
    auto res = ord::stage_bound(s, lambda);
    if (!std::holds_alternative<ord::Bounded>(res))
      throw Error(ErrorCode::WrongCofinality, "support " + s.str() + " is cofinal in " + lambda.str());
    // Least b with supp(p) contained in b.
    rep.items.push_back(Identification{s, s.supremum().strict_bound()});
  }
  rep.poset_identification = "P_" + lambda.str() + " = union of P_b for b < " + lambda.str();
  rep.group_identification = "G_" + lambda.str() + " = union of G_b for b < " + lambda.str();
  return rep;
}

std::vector<SummaryRow> summary(const IterationState& state) {
  std::vector<SummaryRow> rows;
  for (const auto& s : state.stages)
    rows.push_back({s.index.str(), s.poset_tag, s.group->label() + " (order " + std::to_string(s.group->order()) + ")",
                    filters::filter_str(s.filter)});
  if (state.limit)
    rows.push_back({state.limit->index.str(), state.limit->poset_tag,
                    "Z/2 at each stage below " + state.limit->index.str(), filters::filter_str(state.limit->filter)});
  return rows;
}

StepTemplate step_by_name(const std::string& name, std::size_t depth) {
  if (name == "cohen_pair") return cohen_pair_step(depth);
  if (name == "trivial") return trivial_step();
  throw Error(ErrorCode::InvalidTemplate, "unknown step '" + name + "'");
}

IterationState build_iteration(const IterationSpec& spec) {
  auto step = step_by_name(spec.step, spec.depth);
  auto state = start_iteration(step);
  if (spec.length.is_finite()) {
    for (std::uint64_t a = 0; a < spec.length.finite_part(); ++a) successor_stage(state, Ord(a), step);
    return state;
  }
  if (!spec.length.is_limit()) throw Error(ErrorCode::NotALimit, "infinite successor lengths are not supported");
  for (std::size_t a = 0; a < spec.truncate_stages; ++a) successor_stage(state, Ord(a), step);
  limit_stage(state, spec.length, spec.mode);
  return state;
}

}  // namespace sfw::iteration
