#pragma once

#include <string>

#include "json.hpp"
#include "sfw/filters.hpp"
#include "sfw/hs.hpp"
#include "sfw/iteration.hpp"
#include "sfw/pairs.hpp"

namespace sfw::io {

using nlohmann::json;

// Every from_json throws SchemaError on a malformed document (ParseError for
// a malformed ordinal inside a well-formed one).

json to_json(const ord::Ord& x);
ord::Ord ord_from_json(const json& j);

json to_json(const ord::CountableSetDescriptor& d);
ord::CountableSetDescriptor descriptor_from_json(const json& j);

json to_json(const groups::FiniteGroup& G);
/// Accepts {"name"}, {"label","elements","table"} or {"label","generators"} (permutations).
groups::FiniteGroup group_from_json(const json& j);
/// Known group names: C1..C8, V4, S3, D4, Q8, D3.
groups::GroupPtr group_by_name(const std::string& name);

json to_json(const groups::Subgroup& s, const groups::FiniteGroup* G = nullptr);
/// Explicit subgroups as element-name lists or a mask; kernels as descriptors.
groups::Subgroup subgroup_from_json(const json& j, const groups::FiniteGroup* G = nullptr);

/// {"repr":"antichain","group":...,"generators":[...]} or
/// {"repr":"support_ideal","universe":...,"mode":...,"descriptors":[...]}.
json to_json(const filters::FilterOfSubgroups& F);
filters::FilterOfSubgroups filter_from_json(const json& j);

json to_json(const filters::FilterAuditReport& r, const groups::FiniteGroup* G = nullptr);

/// {"conditions":[labels],"top":label,"le":[[p,q],...]} with labels, pairs sorted.
json to_json(const forcing::Poset& P);
forcing::Poset poset_from_json(const json& j);

/// Nested entry arrays [[child, condition label], ...] sorted by their dump.
json to_json(forcing::Name x, const forcing::Poset& P);
forcing::Name name_from_json(const json& j, const forcing::Poset& P);

json to_json(const hs::HSReport& r, const hs::SymmetricSystem& sys);

json to_json(const pairs::Certificate& c);
pairs::Certificate certificate_from_json(const json& j);

json to_json(const std::vector<iteration::SummaryRow>& rows);

/// Canonical text: sorted keys, two-space indent, trailing newline.
std::string dump(const json& j);

}  // namespace sfw::io
