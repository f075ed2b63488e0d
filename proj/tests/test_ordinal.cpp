#include <array>
#include <random>

#include "doctest.h"
#include "sfw/descriptor.hpp"
#include "sfw/error.hpp"
#include "sfw/ordinal.hpp"

using namespace sfw;
using namespace sfw::ord;

namespace {

// Countable ordinals below w^4 as coefficient vectors (c3, c2, c1, c0).
using Coeffs = std::array<std::uint64_t, 4>;

Ord from_coeffs(const Coeffs& c) {
  std::vector<Term> terms;
  for (std::uint32_t e = 3; e >= 1; --e)
    if (c[3 - e] > 0) terms.push_back(Term{0, e, c[3 - e]});
  return Ord(AtomTable::standard(), terms, c[3]);
}

std::vector<Coeffs> small_corpus() {
  std::vector<Coeffs> out;
  for (std::uint64_t a = 0; a <= 3; ++a)
    for (std::uint64_t b = 0; b <= 3; ++b)
      for (std::uint64_t c = 0; c <= 3; ++c)
        for (std::uint64_t d = 0; d <= 3; ++d) out.push_back({a, b, c, d});
  return out;
}

Ord w(std::uint32_t exp = 1, std::uint64_t coef = 1) { return Ord::power(AtomTable::standard(), "w", exp, coef); }
Ord w1() { return Ord::power(AtomTable::standard(), "w1"); }

}  // namespace

TEST_CASE("ord_compare examples") {
  CHECK(ord_compare(w(), w()) == Comparison::equal);
  CHECK(ord_compare(add(w(1, 2), Ord(1)), w(1, 3)) == Comparison::less);
  for (std::uint64_t k = 1; k <= 50; ++k) CHECK(ord_compare(w1(), w(1, k)) == Comparison::greater);
}

TEST_CASE("omega_1 dominates every countable CNF ordinal in the corpus") {
  for (const auto& c : small_corpus()) CHECK(from_coeffs(c) < w1());
}

TEST_CASE("ord_compare agrees with the coefficient-vector order") {
  auto corpus = small_corpus();
  for (const auto& a : corpus)
    for (const auto& b : corpus) {
      Comparison expect = a < b ? Comparison::less : (a == b ? Comparison::equal : Comparison::greater);
      REQUIRE(ord_compare(from_coeffs(a), from_coeffs(b)) == expect);
    }
}

TEST_CASE("ord_compare is transitive on the corpus") {
  auto corpus = small_corpus();
  std::vector<Ord> ords;
  for (const auto& c : corpus) ords.push_back(from_coeffs(c));
  std::mt19937 rng(7);
  std::uniform_int_distribution<std::size_t> pick(0, ords.size() - 1);
  for (int i = 0; i < 20000; ++i) {
    const Ord& a = ords[pick(rng)];
    const Ord& b = ords[pick(rng)];
    const Ord& c = ords[pick(rng)];
    if (a <= b && b <= c) REQUIRE(a <= c);
  }
}

TEST_CASE("mismatched atom tables are rejected") {
  auto other = AtomTable::make({{"k", AtomCofinality::ge_omega1}});
  Ord a = Ord::power(other, "k");
  CHECK_THROWS_AS(ord_compare(a, w1()), Error);
  try {
    ord_compare(a, w1());
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MismatchedAtomTable);
  }
}

TEST_CASE("cofinality classes") {
  CHECK(cofinality_class(Ord()) == OrdClass::zero);
  CHECK(cofinality_class(Ord(4)) == OrdClass::successor);
  CHECK(cofinality_class(w()) == OrdClass::cof_omega);
  CHECK(cofinality_class(w1()) == OrdClass::cof_ge_omega1);
  CHECK(cofinality_class(Ord::parse("aw")) == OrdClass::cof_omega);
  CHECK(cofinality_class(Ord::parse("w1*1 + w*1")) == OrdClass::cof_omega);
  CHECK(cofinality_class(Ord::parse("w1*1 + w*1 + 1")) == OrdClass::successor);
  CHECK(cofinality_class(Ord::parse("w1*2")) == OrdClass::cof_ge_omega1);
}

TEST_CASE("canonical text round trips") {
  for (const char* text : {"0", "7", "w*1", "w^2*1 + w*2 + 3", "w1*1 + w*2 + 3", "aw*1 + w1^3*2"}) {
    CHECK(Ord::parse(text).str() == text);
  }
  CHECK(Ord::parse("w").str() == "w*1");
  CHECK(Ord::parse("w^2 + 1").str() == "w^2*1 + 1");
  for (const auto& c : small_corpus()) {
    Ord a = from_coeffs(c);
    CHECK(Ord::parse(a.str()) == a);
  }
  CHECK_THROWS_AS(Ord::parse("w + w^2"), Error);
  CHECK_THROWS_AS(Ord::parse("3 + w"), Error);
  CHECK_THROWS_AS(Ord::parse("v*1"), Error);
  CHECK_THROWS_AS(Ord::parse(""), Error);
  CHECK_THROWS_AS(Ord::parse("w +"), Error);
  CHECK_THROWS_AS(Ord::parse("+ 1"), Error);
}

TEST_CASE("ordinal addition absorbs smaller terms") {
  CHECK(add(Ord(3), w()) == w());
  CHECK(add(w(), Ord(3)).str() == "w*1 + 3");
  CHECK(add(w(1, 2), w(2)) == w(2));
  CHECK(add(w(2), w(1, 2)).str() == "w^2*1 + w*2");
  CHECK(add(Ord::parse("w*1 + 5"), w()) == w(1, 2));
  CHECK(subtract_left(Ord::parse("w^2*1 + w*2"), w(2)) == w(1, 2));
  CHECK(subtract_left(Ord::parse("w*3 + 1"), Ord::parse("w*1 + 7")) == Ord::parse("w*2 + 1"));
}

TEST_CASE("stage_bound examples") {
  auto r1 = stage_bound(CountableSetDescriptor::naturals(), w());
  REQUIRE(std::holds_alternative<CofinalFailure>(r1));
  CHECK(std::get<CofinalFailure>(r1).sup == w());

  CountableSetDescriptor omega_multiples({}, {OmegaSequence{Ord(), 1}});
  auto r2 = stage_bound(omega_multiples, w1());
  REQUIRE(std::holds_alternative<Bounded>(r2));
  CHECK(std::get<Bounded>(r2).beta == w(2));

  CountableSetDescriptor finite({Ord(3), add(w(), Ord(1)), w(1, 2)});
  auto r3 = stage_bound(finite, w1());
  REQUIRE(std::holds_alternative<Bounded>(r3));
  CHECK(std::get<Bounded>(r3).beta == w(1, 2));

  CHECK_THROWS_AS(stage_bound(CountableSetDescriptor::singleton(w()), w()), Error);

  CountableSetDescriptor alephs({}, {EnumeratedSequence{"aleph_n", Ord::parse("aw")}});
  auto r4 = stage_bound(alephs, Ord::parse("aw"));
  REQUIRE(std::holds_alternative<CofinalFailure>(r4));
  CHECK(std::get<CofinalFailure>(r4).sup == Ord::parse("aw"));
}

TEST_CASE("empty supremum is zero") {
  CountableSetDescriptor empty;
  CHECK(empty.supremum().value == Ord());
  CHECK_FALSE(empty.supremum().attained);
  auto r = stage_bound(empty, w());
  REQUIRE(std::holds_alternative<Bounded>(r));
  CHECK(std::get<Bounded>(r).beta == Ord());
}

TEST_CASE("descriptor membership and normal form") {
  CountableSetDescriptor d({Ord(2), w(1, 3), Ord(2)}, {OmegaSequence{w(), 0}});
  CHECK(d.points().size() == 2);
  CHECK(d.contains(add(w(), Ord(5))) == true);
  CHECK(d.contains(w(1, 2)) == false);
  CHECK(d.contains(w(1, 3)) == true);
  CHECK(d.str() == "{2, w*3 | seq(w*1; 0)}");

  CountableSetDescriptor absorbed({add(w(), Ord(1))}, {OmegaSequence{w(), 0}});
  CHECK(absorbed.points().empty());

  CountableSetDescriptor intervals({}, {Interval{Ord(), w()}, Interval{w(), w(1, 2)}});
  CHECK(intervals == CountableSetDescriptor::segment(w(1, 2)));
  CHECK(CountableSetDescriptor::range(3).subset_of(CountableSetDescriptor::naturals()));
  CHECK_FALSE(CountableSetDescriptor::naturals().subset_of(CountableSetDescriptor::range(3)));
}

TEST_CASE("canonical enumeration is monotone per component and exhausts finite sets") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<std::uint64_t> coef(0, 3);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Ord> pts;
    for (int i = 0; i < 4; ++i) pts.push_back(from_coeffs({0, coef(rng), coef(rng), coef(rng)}));
    CountableSetDescriptor d(pts);
    auto listed = d.enumerate(100);
    CHECK(listed == d.points());
    for (std::size_t i = 1; i < listed.size(); ++i) CHECK(listed[i - 1] < listed[i]);
  }
  CountableSetDescriptor seq({}, {OmegaSequence{w(2), 1}});
  auto first = seq.enumerate(5);
  REQUIRE(first.size() == 5);
  for (std::size_t n = 0; n < 5; ++n) CHECK(first[n] == add(w(2), w(1, n)));

  // A low-degree interval lists many points quickly, all inside it.
  Ord lo = w(2), hi = Ord::parse("w^2 + w*2 + 2");
  CountableSetDescriptor iv({}, {Interval{lo, hi}});
  auto some = iv.enumerate(40);
  CHECK(some.size() == 40);
  for (const auto& x : some) CHECK((!(x < lo) && x < hi));
}

TEST_CASE("supremum of a union is the max of member suprema") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<std::uint64_t> coef(0, 3);
  std::uniform_int_distribution<std::uint32_t> exp(0, 2);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<CountableSetDescriptor> family;
    Ord best;
    for (int i = 0; i < 3; ++i) {
      Ord start = from_coeffs({0, coef(rng), coef(rng), coef(rng)});
      CountableSetDescriptor d({start}, {OmegaSequence{start, exp(rng)}});
      Ord s = d.supremum().value;
      if (s > best) best = s;
      family.push_back(d);
    }
    CHECK(unite_all(family).supremum().value == best);
  }
}

TEST_CASE("stage_bound never fails at an omega_1-cofinal bound") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<std::uint64_t> coef(0, 3);
  std::uniform_int_distribution<std::uint32_t> exp(0, 3);
  for (int trial = 0; trial < 100; ++trial) {
    Ord start = from_coeffs({coef(rng), coef(rng), coef(rng), coef(rng)});
    CountableSetDescriptor d({from_coeffs({0, 0, coef(rng), coef(rng)})}, {OmegaSequence{start, exp(rng)}});
    CHECK(std::holds_alternative<Bounded>(stage_bound(d, w1())));
  }
}
