#include "sfw/pairs.hpp"

#include <algorithm>

#include "sfw/constructors.hpp"
#include "sfw/error.hpp"

namespace sfw::pairs {

using groups::SupportKernel;
using ord::CountableSetDescriptor;

namespace {

std::size_t strings_up_to(std::size_t depth) { return (std::size_t{1} << (depth + 1)) - 1; }

std::size_t depth_of(const forcing::Poset& P) {
  for (std::size_t d = 0; d <= 4; ++d)
    if (strings_up_to(d) * strings_up_to(d) == P.size()) return d;
  throw Error(ErrorCode::InvalidTemplate, "not a Cohen pair stage");
}

// g_stage has support {stage}; ker rho_{beta} is K[[0, beta)], which may be
// uncountable, so both tests below stay on ordinals.
bool in_kernel(const Ord& stage, const Ord& beta) { return !(stage < beta); }

bool head_in_filter(const filters::SupportIdeal& F, const Ord& beta) {
  for (const auto& f : F.basis)
    if (f.kind == filters::BasisFamily::Kind::head_segments && (beta < f.bound || (f.inclusive && beta == f.bound)))
      return true;
  if (beta < Ord::parse("w1", beta.table())) return filters::filter_contains(F, iteration::head_pullback_kernel(beta));
  return false;
}

filters::SupportIdeal finite_heads(const Ord& length) {
  return filters::generate_normal_filter(length, {filters::BasisFamily::head_segments(length)},
                                         filters::GenerationMode::finite_intersections);
}

filters::SupportIdeal countable_heads(const Ord& length) {
  return filters::generate_normal_filter(length, {filters::BasisFamily::head_segments(length)},
                                         filters::GenerationMode::countable_intersections);
}

EvaluationClaim evaluate_at(const Ord& stage_index, const CohenPairStage& stage, const PairNames& local, CondId m) {
  auto F = forcing::principal_filter(*stage.poset, m);
  EvaluationClaim e;
  e.stage = stage_index;
  e.depth = stage.depth;
  e.filter = stage.poset->label(m);
  e.a_value = forcing::evaluate_name(*stage.poset, local.a, F).str();
  e.b_value = forcing::evaluate_name(*stage.poset, local.b, F).str();
  e.swapped_a_value = forcing::evaluate_name(*stage.poset, forcing::apply_automorphism(stage.swap, local.a), F).str();
  return e;
}

PairNames local_names(const CohenPairStage& stage) {
  return stage_names(iteration::ProductSpace({stage.poset}), 0, stage.depth);
}

// g exchanges the two reals under every maximal filter.
bool exchanges_everywhere(const CohenPairStage& stage, const PairNames& local) {
  Name ga = forcing::apply_automorphism(stage.swap, local.a);
  Name gb = forcing::apply_automorphism(stage.swap, local.b);
  for (const auto& F : forcing::maximal_filters(*stage.poset)) {
    if (!(forcing::evaluate_name(*stage.poset, ga, F) == forcing::evaluate_name(*stage.poset, local.b, F))) return false;
    if (!(forcing::evaluate_name(*stage.poset, gb, F) == forcing::evaluate_name(*stage.poset, local.a, F))) return false;
  }
  return true;
}

Ord max_beta(const std::vector<WitnessItem>& w) {
  Ord m(0);
  for (const auto& it : w)
    if (m < it.beta) m = it.beta;
  return m;
}

}  // namespace

CohenPairStage CohenPairStage::make(std::size_t depth) {
  return CohenPairStage{depth, iteration::cohen_pair_poset(depth), iteration::cohen_pair_swap(depth)};
}

Name generic_real_name(const iteration::ProductSpace& space, std::size_t coord, std::size_t depth, int which) {
  if (coord >= space.factors()) throw Error(ErrorCode::StageOutOfRange, "no coordinate " + std::to_string(coord));
  const std::size_t S = strings_up_to(depth);
  if (space.factor(coord).size() != S * S) throw Error(ErrorCode::InvalidTemplate, "coordinate is not a depth-" + std::to_string(depth) + " stage");
  std::vector<forcing::NameEntry> entries;
  for (std::size_t i = 0; i < depth; ++i) {
    Name ci = forcing::check_name(forcing::HSet::natural(i));
    for (std::size_t v = 0; v < (std::size_t{1} << (i + 1)); ++v) {
      std::size_t idx = (std::size_t{1} << (i + 1)) - 1 + v;
      std::uint64_t bit = v & 1U;  // the last letter of s
      CondId local = which == 0 ? idx * S : idx;
      entries.push_back({forcing::ordered_pair_name(ci, forcing::check_name(forcing::HSet::natural(bit))),
                         space.embed(coord, local)});
    }
  }
  return Name::make(std::move(entries));
}

PairNames stage_names(const iteration::ProductSpace& space, std::size_t coord, std::size_t depth) {
  PairNames n;
  n.a = generic_real_name(space, coord, depth, 0);
  n.b = generic_real_name(space, coord, depth, 1);
  n.pair = forcing::pair_name(n.a, n.b);
  return n;
}

PairsState build_pairs_model(const Ord& kappa, std::size_t depth, std::size_t prefix) {
  if (ord::cofinality_class(kappa) != ord::OrdClass::cof_ge_omega1)
    throw Error(ErrorCode::WrongCofinality, "the pairs model needs cofinality at least omega1, not " + kappa.str());
  PairsState s;
  s.kappa = kappa;
  s.depth = depth;
  s.prefix = prefix;
  auto step = iteration::cohen_pair_step(depth);
  s.iteration = iteration::start_iteration(step);
  for (std::size_t a = 0; a < prefix; ++a) iteration::successor_stage(s.iteration, Ord(a), step);
  iteration::limit_stage(s.iteration, kappa);
  s.stage = CohenPairStage::make(depth);
  std::vector<Name> pairs;
  for (std::size_t a = 0; a < prefix; ++a) {
    s.names.push_back(stage_names(s.top_stage().space, a, depth));
    pairs.push_back(s.names.back().pair);
  }
  s.family_prefix = forcing::tuple_name(pairs);
  s.local = local_names(s.stage);
  return s;
}

groups::SymbolicElement swap_automorphism(const PairsState& s, const Ord& alpha) {
  return s.limit().symbolic_group->at(alpha);
}

forcing::CondMap swap_action(const PairsState& s, std::size_t alpha) {
  if (alpha >= s.prefix) throw Error(ErrorCode::StageOutOfRange, "stage " + std::to_string(alpha) + " is not materialized");
  std::vector<groups::Elem> coords(s.prefix, 0);
  coords[alpha] = 1;
  return iteration::action_map(s.iteration, s.top_stage(), iteration::element_from_coords(s.iteration, s.prefix, coords));
}

GroupLemmaReport verify_group_lemma(const PairsState& s) {
  GroupLemmaReport r;
  const auto& G = *s.top_stage().group;
  r.abelian = true;
  for (groups::Elem g = 0; g < G.order(); ++g)
    for (groups::Elem h = 0; h < G.order(); ++h) {
      ++r.products_checked;
      if (G.mul(g, h) != G.mul(h, g)) r.abelian = false;
    }
  const auto& SG = *s.limit().symbolic_group;
  std::vector<Ord> sample;
  for (std::size_t a = 0; a < std::max<std::size_t>(s.prefix, 3); ++a) sample.emplace_back(a);
  for (const char* t : {"w", "w+1", "w*2", "w^2", "w^2+w*3+2"}) sample.push_back(Ord::parse(t));
  sample.erase(std::remove_if(sample.begin(), sample.end(), [&](const Ord& a) { return !(a < s.kappa); }), sample.end());
  for (const auto& a : sample)
    for (const auto& b : sample)
      if (!(SG.compose(SG.at(a), SG.at(b)) == SG.compose(SG.at(b), SG.at(a)))) {
        r.abelian = false;
        r.failures.push_back("g_" + a.str() + " and g_" + b.str() + " do not commute");
      }
  if (!r.abelian && r.failures.empty()) r.failures.push_back("the prefix group is not abelian");

  r.supports = true;
  for (const auto& a : sample)
    if (!(swap_automorphism(s, a).support == CountableSetDescriptor::singleton(a))) {
      r.supports = false;
      r.failures.push_back("supp(g_" + a.str() + ") is not {" + a.str() + "}");
    }
  // On the materialized prefix g_a moves exactly coordinate a.
  const auto& X = s.top_stage().space;
  for (std::size_t a = 0; a < s.prefix; ++a) {
    auto g = swap_action(s, a);
    for (CondId c = 0; c < X.size(); c += std::max<std::uint64_t>(1, X.size() / 97)) {
      auto before = X.decode(c);
      auto after = X.decode(g(c));
      for (std::size_t i = 0; i < before.size(); ++i) {
        CondId expect = i == a ? s.stage.swap(before[i]) : before[i];
        if (after[i] != expect) {
          r.supports = false;
          r.failures.push_back("g_" + std::to_string(a) + " acts wrongly on " + X.label(c));
          break;
        }
      }
    }
  }

  r.kernels = true;
  for (const auto& a : sample)
    for (const auto& b : sample) {
      bool expected = b <= a;
      auto g = swap_automorphism(s, a);
      bool in = SG.in_kernel(g, SupportKernel{CountableSetDescriptor::segment(b)}).value_or(false);
      bool trivial = SG.restrict(g, b).support.empty();
      if (in != expected || trivial != expected) {
        r.kernels = false;
        r.failures.push_back("kernel membership of g_" + a.str() + " at " + b.str() + " is wrong");
      }
    }
  return r;
}

std::optional<CondId> least_separating_filter(const CohenPairStage& stage) {
  auto local = local_names(stage);
  for (CondId m : stage.poset->minimal_elements()) {
    auto F = forcing::principal_filter(*stage.poset, m);
    if (!(forcing::evaluate_name(*stage.poset, local.a, F) == forcing::evaluate_name(*stage.poset, local.b, F)))
      return m;
  }
  return std::nullopt;
}

std::vector<WitnessItem> witness_from_stages(const CountableSetDescriptor& stages) {
  if (!stages.is_finite()) throw Error(ErrorCode::WitnessNotFinite, "witness stages " + stages.str() + " are infinite");
  std::vector<WitnessItem> out;
  for (const auto& b : stages.points()) out.push_back(WitnessItem{b, SupportKernel{}});
  return out;
}

Certificate refute_choice_function(const PairsState& s, const std::vector<WitnessItem>& witness) {
  if (s.depth == 0) throw Error(ErrorCode::OutOfBudget, "a depth-0 truncation cannot separate the two reals");
  for (const auto& it : witness) {
    if (!(it.beta < s.kappa)) throw Error(ErrorCode::StageOutOfRange, "witness stage " + it.beta.str() + " is not below kappa");
    if (!it.H.support.empty() && it.H.support.supremum().strict_bound() > it.beta)
      throw Error(ErrorCode::StageOutOfRange, "kernel " + it.H.support.str() + " does not live at stage " + it.beta.str());
  }
  Certificate c;
  c.kind = CertificateKind::no_choice_function;
  c.length = s.kappa;
  c.depth = s.depth;
  c.witness = witness;
  c.beta_star = max_beta(witness);
  c.chosen_alpha = c.beta_star;
  for (const auto& it : witness) c.memberships.push_back({c.chosen_alpha, it.beta, in_kernel(c.chosen_alpha, it.beta)});
  for (std::size_t d = 1; d <= s.depth; ++d) {
    auto stage = CohenPairStage::make(d);
    auto m = least_separating_filter(stage);
    c.contradiction.push_back(evaluate_at(c.chosen_alpha, stage, local_names(stage), *m));
  }
  return c;
}

Certificate fs_dc_counterexample(const iteration::IterationState& state, const std::vector<std::uint64_t>& witness_stages,
                                 std::size_t samples) {
  if (!state.limit || !(state.limit->index == Ord::parse("w")))
    throw Error(ErrorCode::StageMismatch, "the finite-support certificate lives at the omega limit");
  const auto* ideal = std::get_if<filters::SupportIdeal>(&state.limit->filter);
  if (!ideal || ideal->mode == filters::ClosureMode::countable_unions)
    throw Error(ErrorCode::WrongMode, "the omega limit filter is countably closed; the omega-tuple stabilizer is a member");
  if (!state.schema) throw Error(ErrorCode::StageSchemaMissing, "no uniform schema");
  const std::size_t depth = depth_of(*state.schema->poset);
  if (depth == 0) throw Error(ErrorCode::OutOfBudget, "a depth-0 truncation cannot separate the two reals");
  Certificate c;
  c.kind = CertificateKind::fs_dc_failure;
  c.length = state.limit->index;
  c.depth = depth;
  for (auto b : witness_stages) c.witness.push_back(WitnessItem{Ord(b), SupportKernel{}});
  std::uint64_t n0 = 0;
  for (auto b : witness_stages) n0 = std::max(n0, b + 1);
  c.threshold = Ord(n0);
  c.beta_star = max_beta(c.witness);
  c.chosen_alpha = c.threshold;
  c.relation = "x R y iff x in P_n and y in P_{n+1} for some n < w";
  c.bounded_swaps = CountableSetDescriptor({}, {ord::OmegaSequence{Ord(n0), 0}});
  for (std::uint64_t n = 0; n < n0 + samples; ++n) c.memberships.push_back({Ord(n), Ord(n0), in_kernel(Ord(n), Ord(n0))});
  auto stage = CohenPairStage::make(depth);
  auto local = local_names(stage);
  auto m = least_separating_filter(stage);
  for (std::uint64_t n = n0; n < n0 + samples; ++n) c.contradiction.push_back(evaluate_at(Ord(n), stage, local, *m));
  auto naturals = CountableSetDescriptor::naturals();
  auto component = [](std::uint64_t n) { return CountableSetDescriptor::singleton(Ord(n)); };
  c.finite_mode_member = hs::omega_tuple_check(component, naturals, *ideal).member;
  c.countable_mode_member = hs::omega_tuple_check(component, naturals, countable_heads(c.length)).member;
  return c;
}

VerifyResult verify_certificate(const Certificate& c) {
  VerifyResult r;
  auto fail = [&](std::string why) { r.failures.push_back(std::move(why)); };
  if (c.schema != "sfw.certificate/1") fail("unknown schema " + c.schema);
  if (c.depth == 0 || c.depth > 4) fail("depth must be between 1 and 4");
  if (!r.failures.empty()) return r;
  if (!(c.beta_star == max_beta(c.witness))) fail("beta* is not the largest witness stage");
  for (const auto& it : c.witness) {
    if (!(it.beta < c.length)) fail("witness stage " + it.beta.str() + " is not below " + c.length.str());
    if (!it.H.support.empty() && it.H.support.supremum().strict_bound() > it.beta)
      fail("kernel " + it.H.support.str() + " does not live at stage " + it.beta.str());
  }
  for (const auto& m : c.memberships) {
    bool in = in_kernel(m.stage, m.beta);
    if (in != m.member) fail("claim about g_" + m.stage.str() + " and ker rho_" + m.beta.str() + " does not replay");
  }
  std::vector<std::size_t> depths;
  auto check_evaluation = [&](const EvaluationClaim& e) {
    auto stage = CohenPairStage::make(e.depth);
    auto local = local_names(stage);
    auto m = least_separating_filter(stage);
    if (!m) {
      fail("no separating filter at depth " + std::to_string(e.depth));
      return;
    }
    auto again = evaluate_at(e.stage, stage, local, *m);
    if (again.filter != e.filter || again.a_value != e.a_value || again.b_value != e.b_value ||
        again.swapped_a_value != e.swapped_a_value)
      fail("evaluation at stage " + e.stage.str() + " does not replay");
    if (again.a_value == again.b_value) fail("the filter does not separate the reals at stage " + e.stage.str());
    if (again.swapped_a_value != again.b_value) fail("the swap does not exchange the reals at stage " + e.stage.str());
    if (!exchanges_everywhere(stage, local)) fail("the swap fails to exchange the reals under some maximal filter");
  };

  if (c.kind == CertificateKind::no_choice_function) {
    if (ord::cofinality_class(c.length) != ord::OrdClass::cof_ge_omega1)
      fail("length " + c.length.str() + " does not have cofinality at least omega1");
    if (!(c.chosen_alpha < c.length)) fail("chosen stage is not below the length");
    if (c.memberships.size() != c.witness.size()) fail("one membership claim per witness item is required");
    auto F = finite_heads(c.length);
    for (std::size_t i = 0; i < std::min(c.memberships.size(), c.witness.size()); ++i) {
      const auto& m = c.memberships[i];
      if (!(m.stage == c.chosen_alpha) || !(m.beta == c.witness[i].beta)) fail("membership claim " + std::to_string(i) + " is about the wrong element");
      if (!in_kernel(c.chosen_alpha, c.witness[i].beta))
        fail("g_" + c.chosen_alpha.str() + " is not in ker rho_" + c.witness[i].beta.str());
      if (!head_in_filter(F, c.witness[i].beta))
        fail("ker rho_" + c.witness[i].beta.str() + " is not in the limit filter");
    }
    for (std::size_t d = 1; d <= c.depth; ++d)
      if (std::none_of(c.contradiction.begin(), c.contradiction.end(), [&](const auto& e) { return e.depth == d; }))
        fail("missing contradiction at depth " + std::to_string(d));
    for (const auto& e : c.contradiction) {
      if (!(e.stage == c.chosen_alpha)) fail("contradiction is not at the chosen stage");
      check_evaluation(e);
    }
  } else {
    if (!(c.length == Ord::parse("w"))) fail("finite-support certificates live at w");
    std::uint64_t n0 = 0;
    for (const auto& it : c.witness) {
      if (!it.beta.is_finite()) continue;
      n0 = std::max<std::uint64_t>(n0, it.beta.finite_part() + 1);
    }
    if (!(c.threshold == Ord(n0))) fail("threshold is not one past the largest witness stage");
    if (!(c.bounded_swaps == CountableSetDescriptor({}, {ord::OmegaSequence{Ord(n0), 0}})))
      fail("the bounded swaps are not the stages from the threshold on");
    for (const auto& m : c.memberships) {
      if (!(m.beta == c.threshold)) fail("membership claims must test the witnessed kernel");
      bool above = !(m.stage < c.threshold);
      if (in_kernel(m.stage, m.beta) != above) fail("g_" + m.stage.str() + " membership disagrees with the threshold");
    }
    if (c.contradiction.empty()) fail("no per-stage contradiction");
    for (const auto& e : c.contradiction) {
      if (e.stage < c.threshold) fail("contradiction at a stage below the threshold");
      if (!in_kernel(e.stage, c.threshold)) fail("g_" + e.stage.str() + " is not in the witnessed kernel");
      check_evaluation(e);
    }
    auto naturals = CountableSetDescriptor::naturals();
    bool fin = filters::filter_contains(finite_heads(c.length), SupportKernel{naturals});
    bool cnt = filters::filter_contains(countable_heads(c.length), SupportKernel{naturals});
    if (fin != c.finite_mode_member || fin) fail("the omega-tuple kernel must be outside the finite-support filter");
    if (cnt != c.countable_mode_member || !cnt) fail("the omega-tuple kernel must be inside the countable-support filter");
  }
  r.accepted = r.failures.empty();
  return r;
}

std::string kind_str(CertificateKind k) {
  return k == CertificateKind::no_choice_function ? "no_choice_function" : "fs_dc_failure";
}

}  // namespace sfw::pairs
