#include <random>

#include "doctest.h"
#include "sfw/error.hpp"
#include "sfw/iteration.hpp"
#include "sfw/constructors.hpp"
#include "sfw/two_step.hpp"

using namespace sfw;
using namespace sfw::iteration;
using groups::SupportKernel;
using ord::CountableSetDescriptor;
using ord::Ord;

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

// Order-isomorphism test by brute force over bijections is too slow; the
// posets compared here are given with matching ids.
bool same_order(const Poset& a, const Poset& b) {
  if (a.size() != b.size()) return false;
  for (CondId p = 0; p < a.size(); ++p)
    for (CondId q = 0; q < a.size(); ++q)
      if (a.le(p, q) != b.le(p, q)) return false;
  return true;
}

// Invariant fingerprint: sorted (down-set size, up-set size) pairs.
std::vector<std::pair<int, int>> fingerprint(const Poset& P) {
  std::vector<std::pair<int, int>> out;
  for (CondId p = 0; p < P.size(); ++p) {
    int down = 0, up = 0;
    for (CondId q = 0; q < P.size(); ++q) {
      down += P.le(q, p);
      up += P.le(p, q);
    }
    out.emplace_back(down, up);
  }
  std::sort(out.begin(), out.end());
  return out;
}

IterationState omega_state(std::size_t truncate, LimitMode mode = LimitMode::automatic, std::size_t depth = 1) {
  return build_iteration(IterationSpec{Ord::parse("w"), "cohen_pair", depth, truncate, mode});
}

}  // namespace

TEST_CASE("binary strings are indexed by length then lexicographically") {
  CHECK(binary_string_index("") == 0);
  CHECK(binary_string_index("0") == 1);
  CHECK(binary_string_index("1") == 2);
  CHECK(binary_string_index("00") == 3);
  CHECK(binary_string_index("11") == 6);
  for (std::size_t i = 0; i < 63; ++i) CHECK(binary_string_index(binary_string(i)) == i);
}

TEST_CASE("Cohen pair posets") {
  for (std::size_t d = 0; d <= 3; ++d) {
    auto P = cohen_pair_poset(d);
    const std::size_t S = (std::size_t{1} << (d + 1)) - 1;
    CHECK(P->size() == S * S);
    CHECK(forcing::validate_poset(*P).valid);
    CHECK(P->minimal_elements().size() == (std::size_t{1} << (2 * d)));
    auto swap = cohen_pair_swap(d);
    CHECK(swap.compose(swap) == forcing::PosetAutomorphism::identity(P->size()));
    CHECK(swap(0) == 0);
    CHECK_NOTHROW(forcing::PosetAutomorphism::from_forward(*P, swap.forward));
    CHECK_NOTHROW(validate_step(cohen_pair_step(d)));
  }
  auto P = cohen_pair_poset(2);
  // (01, 1) extends (0, empty) and not (1, empty).
  CondId a = binary_string_index("01") * 7 + binary_string_index("1");
  CHECK(P->le(a, binary_string_index("0") * 7));
  CHECK_FALSE(P->le(a, binary_string_index("1") * 7));
  CHECK(P->label(a) == "(01,1)");
}

TEST_CASE("step validation") {
  auto s = cohen_pair_step(1);
  s.action[1] = forcing::PosetAutomorphism::identity(s.poset->size());
  CHECK_NOTHROW(validate_step(s));  // the trivial action is a homomorphism
  auto bad = cohen_pair_step(1);
  bad.poset_name = forcing::check_name(forcing::encode_poset(*cohen_pair_poset(0)));
  CHECK(code_of([&] { validate_step(bad); }) == ErrorCode::InvalidTemplate);
  auto bad2 = cohen_pair_step(1);
  bad2.filter = filters::ExplicitFilter::make(bad2.group, {1, 3});
  bad2.filter.generators = {};
  CHECK(code_of([&] { validate_step(bad2); }) == ErrorCode::InvalidTemplate);
  CHECK(code_of([&] { step_by_name("nope", 1); }) == ErrorCode::InvalidTemplate);
}

TEST_CASE("product spaces") {
  auto P = cohen_pair_poset(1);
  auto Q = std::make_shared<const Poset>(Poset::antichain_with_top(2));
  ProductSpace X({P, Q});
  CHECK(X.size() == 27);
  auto M = X.materialize();
  // product() puts the first factor in the high digits.
  auto R = forcing::product(*Q, *P);
  CHECK(same_order(M, R));
  for (CondId c = 0; c < X.size(); ++c) {
    CHECK(X.encode(X.decode(c)) == c);
    CHECK(X.support(c).points().size() == static_cast<std::size_t>((X.coordinate(c, 0) != 0) + (X.coordinate(c, 1) != 0)));
  }
  CHECK(X.embed(1, 2) == 18);
  CHECK(code_of([&] { X.materialize(10); }) == ErrorCode::OutOfBudget);
  CHECK(code_of([&] { forcing::support_of(CondId{99}, X.support_context()); }) == ErrorCode::ForeignCondition);
}

TEST_CASE("stage zero and successors") {
  auto z = stage_zero();
  CHECK(z.space.size() == 1);
  CHECK(z.group->order() == 1);
  CHECK(filters::audit_filter(z.filter).all());
  CHECK(z.space.support(0).empty());

  auto state = start_iteration();
  auto step = cohen_pair_step(1);
  const auto s1 = successor_stage(state, Ord(0), step);
  CHECK(same_order(s1.space.materialize(), *step.poset));
  CHECK(s1.group->order() == 2);
  CHECK(filters::filters_equal(s1.filter, filters::ExplicitFilter::principal(s1.group)));

  // The two-step composition with a check name has the same shape.
  auto two = forcing::two_step_compose(Poset::trivial(), step.poset_name);
  CHECK(fingerprint(two.poset) == fingerprint(*step.poset));

  const auto& s2 = successor_stage(state, Ord(1), step);
  CHECK(s2.group->order() == 4);
  CHECK(s2.group->abelian());
  CHECK(filters::filters_equal(s2.filter, filters::ExplicitFilter::principal(s2.group)));
  CHECK(s2.space.size() == 81);
  auto two2 = forcing::two_step_compose(s1.space.materialize(), step.poset_name);
  CHECK(fingerprint(two2.poset) == fingerprint(s2.space.materialize()));

  const auto& s3 = successor_stage(state, Ord(2), trivial_step());
  CHECK(same_order(s3.space.materialize(), s2.space.materialize()));
  CHECK(s3.group->order() == 4);
  CHECK(code_of([&] { successor_stage(state, Ord(1), step); }) == ErrorCode::StageMissing);
  CHECK(code_of([&] { state.stage(Ord(9)); }) == ErrorCode::StageMissing);
}

TEST_CASE("successor filters combine pullbacks and tail lifts") {
  auto step = cohen_pair_step(1);
  step.filter = filters::ExplicitFilter::make(step.group, {1});  // everything
  auto state = start_iteration();
  successor_stage(state, Ord(0), step);
  const auto& s2 = successor_stage(state, Ord(1), step);
  auto r = filters::audit_filter(s2.filter);
  CHECK(r.all());
  // Both lifts of the trivial subgroup meet in the trivial subgroup.
  CHECK(filters::filter_contains(s2.filter, groups::ExplicitSubgroup{1}));
  // Literal head pullbacks of stage-1 members are members.
  const auto& s1 = state.stages[1];
  for (groups::Mask h : std::get<filters::ExplicitFilter>(s1.filter).members()) {
    groups::Mask pulled = 0;
    for (groups::Elem g = 0; g < s2.group->order(); ++g)
      if (groups::has(h, element_coords(state, 2, g)[0])) pulled |= groups::Mask{1} << g;
    CHECK(filters::filter_contains(s2.filter, groups::ExplicitSubgroup{pulled}));
  }
}

TEST_CASE("element coordinates") {
  auto state = build_iteration(IterationSpec{Ord(3), "cohen_pair", 1, 3});
  for (groups::Elem g = 0; g < 8; ++g) CHECK(element_from_coords(state, 3, element_coords(state, 3, g)) == g);
  CHECK(code_of([&] { element_coords(state, 3, 8); }) == ErrorCode::StageMismatch);
}

TEST_CASE("coordinatewise action") {
  auto state = build_iteration(IterationSpec{Ord(3), "cohen_pair", 1, 3});
  const auto& st = state.stages[3];
  const auto& X = st.space;
  CondId s_t = binary_string_index("0") * 3 + binary_string_index("1");  // (0,1)
  CondId t_s = binary_string_index("1") * 3 + binary_string_index("0");
  CondId p = X.embed(0, s_t);
  CHECK(coordinatewise_act(state, st, 0, p) == p);
  groups::Elem g1 = element_from_coords(state, 3, {0, 1, 0});
  CHECK(coordinatewise_act(state, st, g1, p) == p);
  groups::Elem g0 = element_from_coords(state, 3, {1, 0, 0});
  CHECK(coordinatewise_act(state, st, g0, p) == X.embed(0, t_s));
  // Automorphism of the 729-condition truncation, for every element.
  for (groups::Elem g = 0; g < st.group->order(); ++g) {
    CHECK(coordinatewise_act(state, st, g, 0) == 0);
    std::vector<CondId> img(X.size());
    for (CondId c = 0; c < X.size(); ++c) img[c] = coordinatewise_act(state, st, g, c);
    bool preserved = true;
    for (CondId a = 0; a < X.size() && preserved; ++a)
      for (CondId b = 0; b < X.size(); ++b)
        if (X.le(a, b) != X.le(img[a], img[b])) {
          preserved = false;
          break;
        }
    CHECK(preserved);
    std::sort(img.begin(), img.end());
    CHECK(std::adjacent_find(img.begin(), img.end()) == img.end());
  }
  CHECK(code_of([&] { coordinatewise_act(state, st, 0, X.size()); }) == ErrorCode::ForeignCondition);
}

TEST_CASE("symbolic action on a limit truncation") {
  auto state = omega_state(3);
  const auto& L = *state.limit;
  const auto& G = *L.symbolic_group;
  const auto& X = L.space;
  CondId p = X.encode({1, 5, 0});
  CHECK(coordinatewise_act(state, L, G.identity(), p) == p);
  CHECK(coordinatewise_act(state, L, G.at(Ord(7)), p) == p);
  auto swapped = X.decode(coordinatewise_act(state, L, G.at(Ord(0)), p));
  CHECK(swapped[0] == cohen_pair_swap(1)(1));
  CHECK(swapped[1] == 5);
  auto all = G.element(CountableSetDescriptor::naturals());
  for (CondId a = 0; a < X.size(); a += 7)
    for (CondId b = 0; b < X.size(); b += 5)
      CHECK(X.le(a, b) == X.le(coordinatewise_act(state, L, all, a), coordinatewise_act(state, L, all, b)));
  groups::SymbolicGroup big(Ord::parse("w1"), groups::SupportPolicy::countable);
  CHECK(code_of([&] { coordinatewise_act(state, L, big.at(Ord::parse("w+1")), p); }) == ErrorCode::StageMismatch);
}

TEST_CASE("limit at omega") {
  for (auto mode : {LimitMode::automatic, LimitMode::finite_intersections}) {
    auto state = omega_state(2, mode);
    const auto& L = *state.limit;
    CHECK(L.index == Ord::parse("w"));
    auto audit = filters::audit_filter(L.filter);
    CHECK(audit.is_filter);
    CHECK(audit.is_normal);
    CHECK(audit.is_omega1_complete == (mode == LimitMode::automatic));
    for (std::uint64_t b = 0; b < 12; ++b) CHECK(filters::filter_contains(L.filter, head_pullback_kernel(Ord(b))));
    // Countable supports inside omega.
    std::mt19937_64 rng(3);
    for (int i = 0; i < 50; ++i) {
      std::vector<Ord> pts;
      for (int k = 0; k < 4; ++k) pts.emplace_back(rng() % 40);
      std::vector<ord::Tail> tails;
      if (i % 2) tails.push_back(ord::OmegaSequence{Ord(rng() % 9), 0});
      CountableSetDescriptor e(pts, tails);
      bool member = filters::filter_contains(L.filter, SupportKernel{e});
      CHECK(member == (mode == LimitMode::automatic || e.is_finite()));
    }
  }
}

TEST_CASE("limit at omega1 is stage bounded") {
  auto state = build_iteration(IterationSpec{Ord::parse("w1"), "cohen_pair", 1, 2});
  const auto& L = *state.limit;
  CHECK(filters::audit_filter(L.filter).all());
  auto countable = filters::generate_normal_filter(Ord::parse("w1"), {filters::BasisFamily::head_segments(Ord::parse("w1"))},
                                                   filters::GenerationMode::countable_intersections);
  std::mt19937_64 rng(9);
  for (int i = 0; i < 100; ++i) {
    std::vector<Ord> pts;
    for (int k = 0; k < 3; ++k) {
      std::uint32_t e = rng() % 4;
      std::uint64_t c = 1 + rng() % 3;
      pts.push_back(e ? Ord(ord::AtomTable::standard(), {{0, e, c}}, rng() % 2) : Ord(c));
    }
    std::vector<ord::Tail> tails{ord::OmegaSequence{pts[0], static_cast<std::uint32_t>(rng() % 3)}};
    CountableSetDescriptor e(pts, tails);
    SupportKernel k{e};
    CHECK(filters::filter_contains(L.filter, k));
    CHECK(filters::filter_contains(L.filter, k) == filters::filter_contains(countable, k));
    auto b = std::get<ord::Bounded>(ord::stage_bound(e, Ord::parse("w1"))).beta;
    CHECK(filters::filter_contains(L.filter, head_pullback_kernel(b)));
  }
}

TEST_CASE("degenerate and invalid limits") {
  auto state = start_iteration();
  const auto& L = limit_stage(state, Ord::parse("w"));
  CHECK(filters::filters_equal(L.filter, filters::SupportIdeal::principal(Ord::parse("w"))));
  auto trivial = build_iteration(IterationSpec{Ord::parse("w"), "trivial", 0, 2});
  CHECK(filters::filters_equal(trivial.limit->filter, filters::SupportIdeal::principal(Ord::parse("w"))));
  auto s = start_iteration();
  successor_stage(s, Ord(0), cohen_pair_step(1));
  CHECK(code_of([&] { limit_stage(s, Ord::parse("w")); }) == ErrorCode::StageSchemaMissing);
  CHECK(code_of([&] { limit_stage(s, Ord::parse("w+1")); }) == ErrorCode::NotALimit);
  CHECK(code_of([&] { build_iteration(IterationSpec{Ord::parse("w+1"), "cohen_pair", 1, 1}); }) == ErrorCode::NotALimit);
}

TEST_CASE("direct limit identification") {
  auto state = build_iteration(IterationSpec{Ord::parse("w1"), "cohen_pair", 1, 2});
  auto w1 = Ord::parse("w1");
  std::vector<CountableSetDescriptor> sups{
      CountableSetDescriptor({Ord(0), Ord::parse("w"), Ord::parse("w*2")}),
      CountableSetDescriptor({}, {ord::OmegaSequence{Ord(0), 1}}),
  };
  auto rep = direct_limit_identify(state, w1, sups);
  REQUIRE(rep.items.size() >= 2);
  CHECK(rep.items[0].beta.str() == "w*2 + 1");
  CHECK(rep.items[1].beta.str() == "w^2*1");
  CHECK(rep.items[1].beta == Ord::parse("w^2"));
  for (const auto& it : rep.items) CHECK(it.beta < w1);
  CHECK(code_of([&] { direct_limit_identify(state, Ord::parse("w"), {}); }) == ErrorCode::WrongCofinality);
}

TEST_CASE("summary table") {
  auto state = omega_state(2);
  auto rows = summary(state);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].stage == "0");
  CHECK(rows[2].poset == "81 conditions");
  CHECK(rows[3].stage == "w*1");
  CHECK(rows[3].filter.find("countable_unions") != std::string::npos);
}
