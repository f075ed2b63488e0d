#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "sfw/formula.hpp"
#include "sfw/hfset.hpp"
#include "sfw/name.hpp"
#include "sfw/poset.hpp"

namespace sfw::forcing {

/// {(check(y), top) : y in h}.
Name check_name(HSet h, CondId top = 0);
/// {(x, top), (y, top)}.
Name pair_name(Name x, Name y, CondId top = 0);
/// Kuratowski pair name pair(pair(x, x), pair(x, y)).
Name ordered_pair_name(Name x, Name y, CondId top = 0);
/// {(op(check(j), x_j), top) : j < n}.
Name tuple_name(const std::vector<Name>& xs, CondId top = 0);

/// Inverse of ordered_pair_name on canonical pair names.
std::optional<std::pair<Name, Name>> decode_ordered_pair_name(Name x, CondId top = 0);

/// Maximal common lower bounds of p and q, increasing.
std::vector<CondId> maximal_lower_bounds(const Poset& P, CondId p, CondId q);

/// {(tau, r) : (sigma, p) in A, (tau, q) in sigma, r a maximal lower bound of p, q}.
Name union_name(const Poset& P, Name A);
/// {(sigma, r) : (sigma, p) in A, r maximal below p with r forcing phi(sigma, params)}.
/// phi sees sigma as x0 and params as x1, x2, ...
Name separation_name(const Poset& P, Name A, const Formula& phi, const std::vector<Name>& params);
/// Image of A under the relation f: {(tau, r) : (op(sigma, tau), p) in f, (sigma, q) in A,
/// r a maximal lower bound of p, q}. Entries of f must be canonical pair names.
Name range_name(const Poset& P, Name A, Name f);

/// Bounded power collection: {(S', top) : S a subset of dom(A)}, where S' =
/// {(y, top) : y in S}. Throws OutOfBudget when 2^|dom(A)| exceeds budget.
Name power_name(Name A, CondId top = 0, std::size_t budget = 4096);

enum class NameKind { check, pair, tuple, union_of, separation, range, power };
NameKind parse_name_kind(std::string_view s);

struct NameArgs {
  std::optional<HSet> set;
  std::vector<Name> names;
  std::optional<Formula> formula;
};

/// Uniform entry point; throws ArityMismatch when args do not fit kind.
Name make_name(NameKind kind, const Poset& P, const NameArgs& args);

}  // namespace sfw::forcing
