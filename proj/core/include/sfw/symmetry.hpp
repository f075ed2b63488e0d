#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sfw/forcing.hpp"

namespace sfw::forcing {

/// Every name of rank <= max_rank whose conditions lie in `conds`, built
/// level by level as subsets of (lower names x conds). Throws OutOfBudget
/// when a level would have more than 2^16 names.
std::vector<Name> small_name_corpus(const std::vector<CondId>& conds, std::size_t max_rank);

struct SymmetryLemmaParams {
  std::size_t max_poset_size = 5;  // counting top
  std::size_t max_conditions = 2;
  std::size_t max_rank = 2;
  std::size_t max_depth = 2;
  std::size_t cross_checks = 2000;
  std::uint64_t seed = 0;
  std::size_t jobs = 1;
};

struct SymmetryLemmaReport {
  std::size_t posets = 0;
  std::size_t automorphisms = 0;
  std::size_t condition_sets = 0;
  std::size_t names = 0;
  std::size_t formulas = 0;
  /// (automorphism, condition set, name tuple, formula, condition) cases.
  std::uint64_t cases = 0;
  std::uint64_t violations = 0;
  std::vector<std::string> examples;  // first few violations
  std::size_t cross_checked = 0;
  std::size_t cross_check_failures = 0;

  bool ok() const { return violations == 0 && cross_check_failures == 0; }
};

/// p forces phi(x, y) iff pi p forces phi(pi x, pi y), for every automorphism
/// of P, every name tuple of length 1 and 2 over each set of at most
/// max_conditions conditions and every formula of depth <= max_depth.
/// Verdicts are computed from valuation profiles, memoized per profile, and
/// a random sample is replayed through forces().
SymmetryLemmaReport symmetry_lemma_check(const Poset& P, const SymmetryLemmaParams& params);

/// Runs the check over poset_corpus(max_poset_size) and sums the reports.
SymmetryLemmaReport symmetry_lemma_corpus(const SymmetryLemmaParams& params);

}  // namespace sfw::forcing
