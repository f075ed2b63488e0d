#include <set>

#include "doctest.h"
#include "sfw/error.hpp"
#include "sfw/symmetry.hpp"

using namespace sfw;
using namespace sfw::forcing;

TEST_CASE("small name corpus") {
  CHECK(small_name_corpus({0}, 0).size() == 1);
  CHECK(small_name_corpus({0}, 1).size() == 2);
  CHECK(small_name_corpus({0, 1}, 1).size() == 4);
  auto c = small_name_corpus({0, 1}, 2);
  CHECK(c.size() == 256);
  for (Name x : c) CHECK(x.rank() <= 2);
  std::set<std::uint32_t> ids;
  for (Name x : c) ids.insert(x.id());
  CHECK(ids.size() == 256);
  try {
    small_name_corpus({0, 1, 2}, 3);
    FAIL("expected OutOfBudget");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OutOfBudget);
  }
}

TEST_CASE("symmetry lemma on a single poset") {
  SymmetryLemmaParams p;
  p.max_depth = 1;
  p.cross_checks = 200;
  auto r = symmetry_lemma_check(Poset::antichain_with_top(2), p);
  CHECK(r.automorphisms == 2);
  CHECK(r.condition_sets == 6);
  CHECK(r.cases > 0);
  CHECK(r.ok());
  CHECK(r.cross_checked == 200);
}

TEST_CASE("forcing moves along an automorphism") {
  Poset P = Poset::antichain_with_top(2);
  auto swap = PosetAutomorphism::from_forward(P, {0, 2, 1});
  Name x = Name::make({NameEntry{Name(), 1}});
  auto phi = Formula::neg(Formula::equal(0, 1));
  // 1 forces x != empty; its image 2 forces swap(x) != empty but not x != empty.
  CHECK(forces(P, 1, phi, {x, Name()}));
  CHECK(forces(P, swap(1), phi, {apply_automorphism(swap, x), Name()}));
  CHECK_FALSE(forces(P, swap(1), phi, {x, Name()}));
}
