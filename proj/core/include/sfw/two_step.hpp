#pragma once

#include <optional>
#include <vector>

#include "sfw/hfset.hpp"
#include "sfw/name.hpp"
#include "sfw/poset.hpp"

namespace sfw::forcing {

/// The order of P as a set of Kuratowski pairs (n_p, n_q) with p <= q,
/// where n_p is the von Neumann natural for condition p.
HSet encode_poset(const Poset& P);

/// A poset read back from a hereditarily finite relation.
struct DecodedPoset {
  std::vector<HSet> field;  // canonical order
  Poset poset;              // condition i is field[i]
};

/// nullopt when the set is not a relation whose field forms a poset with top.
std::optional<DecodedPoset> decode_poset(HSet relation);

struct TwoStepPoset {
  Poset poset;
  /// Representative (p, q-name) of each condition of `poset`.
  std::vector<std::pair<CondId, Name>> components;
  /// Names used for the second coordinate.
  std::vector<Name> pool;
};

/// P * Q for a name Q coding a poset. Second coordinates are check names when Q
/// evaluates to the same poset under every maximal filter, otherwise the names
/// that pick one field element per maximal filter. Conditions that P forces to
/// be equal are identified. Throws NotAPosetName if a valuation of Q is not a poset.
TwoStepPoset two_step_compose(const Poset& P, Name Q);

/// Projection of a composite condition onto P.
CondId project_head(const TwoStepPoset& c, CondId x);

}  // namespace sfw::forcing
