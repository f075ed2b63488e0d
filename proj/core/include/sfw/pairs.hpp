#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sfw/hs.hpp"
#include "sfw/iteration.hpp"

namespace sfw::pairs {

using forcing::CondId;
using forcing::Name;
using ord::Ord;

/// One truncated stage 2^{<=d} x 2^{<=d} with its swap.
struct CohenPairStage {
  std::size_t depth = 1;
  iteration::PosetPtr poset;
  forcing::PosetAutomorphism swap;

  static CohenPairStage make(std::size_t depth);
};

/// Name of the first (which = 0) or second generic real read at coordinate
/// `coord` of a product space whose factors there are Cohen pair stages:
/// {(op(i, b), p) : p is (s, empty) at coord, |s| = i + 1, s(i) = b}.
Name generic_real_name(const iteration::ProductSpace& space, std::size_t coord, std::size_t depth, int which);

struct PairNames {
  Name a;
  Name b;
  Name pair;  // {a, b}
};

PairNames stage_names(const iteration::ProductSpace& space, std::size_t coord, std::size_t depth);

struct PairsState {
  Ord kappa;
  std::size_t depth = 1;
  std::size_t prefix = 0;
  iteration::IterationState iteration;
  CohenPairStage stage;
  /// Names over the prefix product, one per materialized stage.
  std::vector<PairNames> names;
  /// <P_a : a < prefix> as a tuple name; the rest of the family is symbolic.
  Name family_prefix;
  /// Names over the single stage poset (all stages look alike).
  PairNames local;

  const iteration::StageRecord& limit() const { return *iteration.limit; }
  const iteration::StageRecord& top_stage() const { return iteration.stages.back(); }
};

/// Throws WrongCofinality unless cf(kappa) >= omega1.
PairsState build_pairs_model(const Ord& kappa, std::size_t depth, std::size_t prefix);

/// g_a: the swap at stage a and the identity elsewhere. Throws StageOutOfRange.
groups::SymbolicElement swap_automorphism(const PairsState& s, const Ord& alpha);
/// The explicit action of g_a on the prefix product (a must be materialized).
forcing::CondMap swap_action(const PairsState& s, std::size_t alpha);

struct GroupLemmaReport {
  bool abelian = false;
  std::size_t products_checked = 0;
  bool supports = false;
  bool kernels = false;
  std::vector<std::string> failures;
  bool ok() const { return abelian && supports && kernels; }
};

GroupLemmaReport verify_group_lemma(const PairsState& s);

enum class CertificateKind { no_choice_function, fs_dc_failure };

struct WitnessItem {
  Ord beta;
  groups::SupportKernel H;  // a subgroup of the stage-beta group
};

/// "g_stage lies in ker rho_{beta,length} = K[[0, beta)]".
struct MembershipClaim {
  Ord stage;
  Ord beta;
  bool member = false;
};

/// Valuations of a_stage and b_stage under a maximal filter of the stage
/// poset, and of the image of a_stage under the swap.
struct EvaluationClaim {
  Ord stage;
  std::size_t depth = 1;
  std::string filter;  // label of the generating minimal condition
  std::string a_value;
  std::string b_value;
  std::string swapped_a_value;
};

struct Certificate {
  std::string schema = "sfw.certificate/1";
  CertificateKind kind = CertificateKind::no_choice_function;
  Ord length;
  std::size_t depth = 1;
  std::vector<WitnessItem> witness;
  Ord beta_star;
  Ord chosen_alpha;
  std::vector<MembershipClaim> memberships;
  std::vector<EvaluationClaim> contradiction;
  // Finite-support certificates only.
  std::string relation;
  Ord threshold;
  ord::CountableSetDescriptor bounded_swaps;
  bool finite_mode_member = false;
  bool countable_mode_member = false;
};

/// Lexicographically least maximal filter of the stage poset separating the
/// two reals (the filters are ordered by their minimal condition's id).
std::optional<CondId> least_separating_filter(const CohenPairStage& stage);

/// Throws WitnessNotFinite for an infinite stage set.
std::vector<WitnessItem> witness_from_stages(const ord::CountableSetDescriptor& stages);

/// Throws StageOutOfRange for stages at or beyond kappa, or kernels that do
/// not live at their stage; OutOfBudget at depth 0, where nothing separates.
Certificate refute_choice_function(const PairsState& s, const std::vector<WitnessItem>& witness);

/// At lambda = omega with the finite-intersection limit filter. Witness stages
/// b stand for head pullbacks along rho_{b+1,omega}. Throws WrongMode when the
/// limit filter is countably closed.
Certificate fs_dc_counterexample(const iteration::IterationState& state, const std::vector<std::uint64_t>& witness_stages,
                                 std::size_t samples = 6);

struct VerifyResult {
  bool accepted = false;
  std::vector<std::string> failures;
};

/// Replays every claim from the certificate's primitive data.
VerifyResult verify_certificate(const Certificate& c);

std::string kind_str(CertificateKind k);

}  // namespace sfw::pairs
