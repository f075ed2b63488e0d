#include <random>

#include "doctest.h"
#include "sfw/constructors.hpp"
#include "sfw/error.hpp"
#include "sfw/pairs.hpp"

using namespace sfw;
using namespace sfw::pairs;
using groups::Mask;
using ord::CountableSetDescriptor;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::ParseError;
}

Mask mask_of(const groups::Subgroup& s) { return std::get<groups::ExplicitSubgroup>(s).mask; }

// A random ordinal below w1 in the normal form w^2*a + w*b + c.
Ord random_countable(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> small(0, 3), fin(0, 20);
  std::string s;
  int a = small(rng), b = small(rng), c = fin(rng);
  if (a) s += "w^2*" + std::to_string(a);
  if (b) s += std::string(s.empty() ? "" : " + ") + "w*" + std::to_string(b);
  if (c || s.empty()) s += std::string(s.empty() ? "" : " + ") + std::to_string(c);
  return Ord::parse(s);
}

}  // namespace

TEST_CASE("building the pairs model") {
  auto s = build_pairs_model(Ord::parse("w1"), 1, 3);
  CHECK(s.iteration.stages.size() == 4);
  CHECK(s.limit().symbolic);
  CHECK(s.limit().index == Ord::parse("w1"));
  CHECK(s.top_stage().group->order() == 8);
  CHECK(s.names.size() == 3);
  CHECK(code_of([] { build_pairs_model(Ord::parse("w"), 1, 3); }) == ErrorCode::WrongCofinality);
  CHECK(code_of([] { build_pairs_model(Ord::parse("w1*2 + w"), 1, 1); }) == ErrorCode::WrongCofinality);
  auto z = build_pairs_model(Ord::parse("w1"), 0, 0);
  CHECK(z.iteration.stages.size() == 1);
  CHECK(z.names.empty());
  CHECK(z.limit().symbolic);
}

TEST_CASE("the stage swap is an involutive automorphism that exchanges the reals") {
  for (std::size_t d = 0; d <= 3; ++d) {
    auto st = CohenPairStage::make(d);
    CHECK(forcing::validate_poset(*st.poset).valid);
    CHECK(st.swap.compose(st.swap) == forcing::PosetAutomorphism::identity(st.poset->size()));
    CHECK(st.swap(0) == 0);
    auto n = stage_names(iteration::ProductSpace({st.poset}), 0, d);
    CHECK(forcing::apply_automorphism(st.swap, n.a) == n.b);
    CHECK(forcing::apply_automorphism(st.swap, n.b) == n.a);
    CHECK(forcing::apply_automorphism(st.swap, n.pair) == n.pair);
  }
}

TEST_CASE("the reals evaluate to their initial segments") {
  auto st = CohenPairStage::make(2);
  auto n = stage_names(iteration::ProductSpace({st.poset}), 0, 2);
  const std::size_t S = 7;
  for (CondId m : st.poset->minimal_elements()) {
    auto F = forcing::principal_filter(*st.poset, m);
    std::string s = iteration::binary_string(m / S), t = iteration::binary_string(m % S);
    auto graph = [](const std::string& w) {
      std::vector<forcing::HSet> out;
      for (std::size_t i = 0; i < w.size(); ++i)
        out.push_back(forcing::HSet::kuratowski(forcing::HSet::natural(i), forcing::HSet::natural(w[i] - '0')));
      return forcing::HSet::make(out);
    };
    CHECK(forcing::evaluate_name(*st.poset, n.a, F) == graph(s));
    CHECK(forcing::evaluate_name(*st.poset, n.b, F) == graph(t));
  }
}

TEST_CASE("stabilizers of the reals, the pairs and the family prefix") {
  for (std::size_t d = 1; d <= 3; ++d) {
    for (std::size_t prefix = 1; prefix <= 4; ++prefix) {
      auto s = build_pairs_model(Ord::parse("w1"), d, prefix);
      hs::ExplicitSystem step = hs::ExplicitSystem::from_step(iteration::cohen_pair_step(d));
      CHECK(mask_of(hs::stabilizer(s.local.a, step)) == 1);
      CHECK(mask_of(hs::stabilizer(s.local.b, step)) == 1);
      CHECK(mask_of(hs::stabilizer(s.local.pair, step)) == 3);
      // Over the prefix product, by direct action of each group element.
      const auto& top = s.top_stage();
      const auto order = top.group->order();
      const Mask full = groups::full_mask(*top.group);
      for (std::size_t a = 0; a < prefix; ++a) {
        Mask fixa = 0, fixp = 0;
        for (groups::Elem g = 0; g < order; ++g) {
          auto act = iteration::action_map(s.iteration, top, g);
          if (forcing::apply_automorphism(act, s.names[a].a) == s.names[a].a) fixa |= Mask{1} << g;
          if (forcing::apply_automorphism(act, s.names[a].pair) == s.names[a].pair) fixp |= Mask{1} << g;
        }
        CHECK(fixp == full);
        Mask expect = 0;  // elements trivial at stage a
        for (groups::Elem g = 0; g < order; ++g)
          if (iteration::element_coords(s.iteration, prefix, g)[a] == 0) expect |= Mask{1} << g;
        CHECK(fixa == expect);
      }
      Mask fixf = 0;
      for (groups::Elem g = 0; g < order; ++g)
        if (forcing::apply_automorphism(iteration::action_map(s.iteration, top, g), s.family_prefix) == s.family_prefix)
          fixf |= Mask{1} << g;
      CHECK(fixf == full);
    }
  }
  // Symbolically the family is fixed by the whole group.
  auto s = build_pairs_model(Ord::parse("w1"), 1, 2);
  hs::SymbolicSystem sy = hs::SymbolicSystem::from_limit(s.limit());
  CHECK(hs::is_hs(s.names[1].pair, sy).verdict);
}

TEST_CASE("swap automorphisms") {
  auto s = build_pairs_model(Ord::parse("w1"), 1, 3);
  const auto& X = s.top_stage().space;
  CondId st = iteration::binary_string_index("0") * 3 + iteration::binary_string_index("1");
  CondId ts = iteration::binary_string_index("1") * 3 + iteration::binary_string_index("0");
  auto g0 = swap_action(s, 0);
  CHECK(g0(X.embed(0, st)) == X.embed(0, ts));
  CondId p = X.encode({st, ts, 0});
  CHECK(g0(p) == X.encode({ts, ts, 0}));
  CHECK(swap_action(s, 2)(p) == p);
  auto g5 = swap_automorphism(s, Ord(5));
  CHECK(g5.support == CountableSetDescriptor::singleton(Ord(5)));
  CHECK(s.limit().symbolic_group->restrict(g5, Ord(3)).support.empty());
  CHECK(iteration::coordinatewise_act(s.iteration, s.limit(), g5, s.limit().space.embed(0, st)) ==
        s.limit().space.embed(0, st));
  CHECK(code_of([&] { swap_action(s, 3); }) == ErrorCode::StageOutOfRange);
  CHECK(code_of([&] { swap_automorphism(s, Ord::parse("w1")); }) == ErrorCode::StageOutOfRange);
}

TEST_CASE("group lemma") {
  auto s = build_pairs_model(Ord::parse("w1"), 1, 2);
  auto r = verify_group_lemma(s);
  CHECK(r.ok());
  CHECK(r.products_checked == 16);
  CHECK(r.failures.empty());
  auto s3 = build_pairs_model(Ord::parse("w1*2"), 2, 3);
  CHECK(verify_group_lemma(s3).ok());
}

TEST_CASE("least separating filter") {
  CHECK_FALSE(least_separating_filter(CohenPairStage::make(0)).has_value());
  for (std::size_t d = 1; d <= 3; ++d) {
    auto st = CohenPairStage::make(d);
    auto m = least_separating_filter(st);
    REQUIRE(m.has_value());
    // Oracle: the first minimal condition whose two strings differ.
    const std::size_t S = (std::size_t{1} << (d + 1)) - 1;
    std::optional<CondId> expect;
    for (CondId c : st.poset->minimal_elements())
      if (iteration::binary_string(c / S) != iteration::binary_string(c % S)) {
        expect = c;
        break;
      }
    CHECK(m == expect);
  }
}

TEST_CASE("choice function refutation examples") {
  auto s = build_pairs_model(Ord::parse("w1"), 1, 3);
  std::vector<WitnessItem> w{{Ord(0), {}}, {Ord(2), {}}};
  auto c = refute_choice_function(s, w);
  CHECK(c.beta_star == Ord(2));
  CHECK(c.chosen_alpha == Ord(2));
  REQUIRE(c.memberships.size() == 2);
  CHECK(c.memberships[0].member);
  CHECK(c.memberships[1].member);
  REQUIRE(c.contradiction.size() == 1);
  CHECK(c.contradiction[0].a_value != c.contradiction[0].b_value);
  CHECK(c.contradiction[0].swapped_a_value == c.contradiction[0].b_value);
  auto v = verify_certificate(c);
  CHECK(v.accepted);
  CHECK(v.failures.empty());

  auto e = refute_choice_function(s, {});
  CHECK(e.beta_star == Ord(0));
  CHECK(e.chosen_alpha == Ord(0));
  CHECK(verify_certificate(e).accepted);

  auto tampered = c;
  tampered.chosen_alpha = Ord(1);
  for (auto& m : tampered.memberships) m.stage = Ord(1);
  for (auto& x : tampered.contradiction) x.stage = Ord(1);
  CHECK_FALSE(verify_certificate(tampered).accepted);
  auto lied = c;
  lied.memberships[0].member = false;
  CHECK_FALSE(verify_certificate(lied).accepted);
  auto bad_eval = c;
  bad_eval.contradiction[0].b_value = bad_eval.contradiction[0].a_value;
  CHECK_FALSE(verify_certificate(bad_eval).accepted);
  auto no_depth = c;
  no_depth.contradiction.clear();
  CHECK_FALSE(verify_certificate(no_depth).accepted);
  auto schema = c;
  schema.schema = "sfw.certificate/0";
  CHECK_FALSE(verify_certificate(schema).accepted);

  CHECK(code_of([&] { refute_choice_function(s, {{Ord::parse("w1"), {}}}); }) == ErrorCode::StageOutOfRange);
  CHECK(code_of([&] {
          refute_choice_function(s, {{Ord(1), groups::SupportKernel{CountableSetDescriptor::range(5)}}});
        }) == ErrorCode::StageOutOfRange);
  CHECK(code_of([&] { witness_from_stages(CountableSetDescriptor::naturals()); }) == ErrorCode::WitnessNotFinite);
  CHECK(code_of([] { refute_choice_function(build_pairs_model(Ord::parse("w1"), 0, 0), {}); }) == ErrorCode::OutOfBudget);
}

TEST_CASE("sampled witnesses below w1 yield accepted certificates") {
  std::mt19937_64 rng(20261016);
  auto s = build_pairs_model(Ord::parse("w1"), 2, 2);
  std::uniform_int_distribution<int> len(0, 4);
  for (int i = 0; i < 50; ++i) {
    std::vector<Ord> pts;
    for (int k = len(rng); k > 0; --k) pts.push_back(random_countable(rng));
    auto w = witness_from_stages(CountableSetDescriptor(pts));
    // Kernels living below their stage.
    for (auto& it : w) it.H = iteration::head_pullback_kernel(it.beta);
    auto c = refute_choice_function(s, w);
    Ord mx(0);
    for (const auto& p : pts)
      if (mx < p) mx = p;
    CHECK(c.beta_star == mx);
    CHECK(c.contradiction.size() == 2);
    auto v = verify_certificate(c);
    CHECK(v.accepted);
    if (!w.empty() && !(c.beta_star == Ord(0))) {
      // Moving alpha below the largest stage breaks kernel membership.
      auto t = c;
      t.chosen_alpha = Ord(0);
      for (auto& m : t.memberships) m.stage = Ord(0);
      for (auto& x : t.contradiction) x.stage = Ord(0);
      CHECK_FALSE(verify_certificate(t).accepted);
    }
  }
}

TEST_CASE("refutation is independent of the length") {
  for (const char* k : {"w1", "w1*2", "w1*3", "w1^2", "w1^2 + w1*4"}) {
    Ord kappa = Ord::parse(k);
    if (ord::cofinality_class(kappa) != ord::OrdClass::cof_ge_omega1) continue;
    auto s = build_pairs_model(kappa, 1, 1);
    std::vector<WitnessItem> w{{Ord(3), {}}, {Ord::parse("w*5"), {}}};
    auto c = refute_choice_function(s, w);
    CHECK(c.length == kappa);
    CHECK(c.chosen_alpha == Ord::parse("w*5"));
    CHECK(verify_certificate(c).accepted);
  }
}

TEST_CASE("witness stages past w1 have uncountable head segments") {
  auto s = build_pairs_model(Ord::parse("w1^2"), 1, 1);
  std::vector<WitnessItem> w{{Ord::parse("w1*3 + 2"), {}}, {Ord::parse("w1 + w"), {}}, {Ord(4), {}}};
  auto c = refute_choice_function(s, w);
  CHECK(c.chosen_alpha == Ord::parse("w1*3 + 2"));
  for (const auto& m : c.memberships) CHECK(m.member);
  CHECK(verify_certificate(c).accepted);

  auto t = c;  // the chosen stage falls inside the last head segment
  t.chosen_alpha = Ord::parse("w1*2");
  for (auto& m : t.memberships) m.stage = t.chosen_alpha;
  for (auto& e : t.contradiction) e.stage = t.chosen_alpha;
  CHECK_FALSE(verify_certificate(t).accepted);

  auto u = c;  // a witness stage at the length has no head segment in the filter
  u.length = Ord::parse("w1*3");
  CHECK_FALSE(verify_certificate(u).accepted);
}

TEST_CASE("finite support fails dependent choice") {
  auto fs = iteration::build_iteration(
      iteration::IterationSpec{Ord::parse("w"), "cohen_pair", 1, 3, iteration::LimitMode::finite_intersections});
  auto c = fs_dc_counterexample(fs, {0, 1});
  CHECK(c.kind == CertificateKind::fs_dc_failure);
  CHECK(c.threshold == Ord(2));
  CHECK(c.bounded_swaps.str() == CountableSetDescriptor({}, {ord::OmegaSequence{Ord(2), 0}}).str());
  for (const auto& m : c.memberships) CHECK(m.member == !(m.stage < Ord(2)));
  CHECK_FALSE(c.finite_mode_member);
  CHECK(c.countable_mode_member);
  bool saw_two = false;
  for (const auto& e : c.contradiction)
    if (e.stage == Ord(2)) {
      saw_two = true;
      CHECK(e.a_value != e.b_value);
      CHECK(e.swapped_a_value == e.b_value);
    }
  CHECK(saw_two);
  auto v = verify_certificate(c);
  CHECK(v.accepted);

  auto bad = c;
  bad.threshold = Ord(1);
  CHECK_FALSE(verify_certificate(bad).accepted);
  auto flipped = c;
  flipped.finite_mode_member = true;
  CHECK_FALSE(verify_certificate(flipped).accepted);

  auto empty = fs_dc_counterexample(fs, {});
  CHECK(empty.threshold == Ord(0));
  CHECK(verify_certificate(empty).accepted);

  auto cs = iteration::build_iteration(iteration::IterationSpec{Ord::parse("w"), "cohen_pair", 1, 3});
  CHECK(code_of([&] { fs_dc_counterexample(cs, {0}); }) == ErrorCode::WrongMode);
  // The countable-mode counterpart: the omega-tuple stabilizer is a member.
  auto naturals = CountableSetDescriptor::naturals();
  CHECK(filters::filter_contains(std::get<filters::SupportIdeal>(cs.limit->filter), groups::SupportKernel{naturals}));
}

TEST_CASE("kind names") {
  CHECK(kind_str(CertificateKind::no_choice_function) == "no_choice_function");
  CHECK(kind_str(CertificateKind::fs_dc_failure) == "fs_dc_failure");
}
