#include "sfw/json_io.hpp"

#include <algorithm>
#include <map>

#include "sfw/error.hpp"

namespace sfw::io {

using ord::CountableSetDescriptor;
using ord::Ord;

namespace {

[[noreturn]] void schema(const std::string& why) { throw Error(ErrorCode::SchemaError, why); }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) schema(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::string text(const json& j, const char* key) {
  const auto& v = field(j, key);
  if (!v.is_string()) schema(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

std::uint64_t natural(const json& j, const char* key) {
  const auto& v = field(j, key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
    schema(std::string("field '") + key + "' must be a natural number");
  return v.get<std::uint64_t>();
}

bool flag(const json& j, const char* key) {
  const auto& v = field(j, key);
  if (!v.is_boolean()) schema(std::string("field '") + key + "' must be a boolean");
  return v.get<bool>();
}

const json& array(const json& j, const char* key) {
  const auto& v = field(j, key);
  if (!v.is_array()) schema(std::string("field '") + key + "' must be an array");
  return v;
}

Ord ord_of(const json& j, const char* key) { return ord_from_json(field(j, key)); }

std::string kind_name(filters::BasisFamily::Kind k) {
  switch (k) {
    case filters::BasisFamily::Kind::singletons: return "singletons";
    case filters::BasisFamily::Kind::head_segments: return "head_segments";
    case filters::BasisFamily::Kind::sets: return "sets";
  }
  return "sets";
}

json family_json(const filters::BasisFamily& b) {
  json j{{"kind", kind_name(b.kind)}};
  if (b.kind == filters::BasisFamily::Kind::sets) {
    j["sets"] = json::array();
    for (const auto& s : b.sets) j["sets"].push_back(to_json(s));
  } else {
    j["bound"] = to_json(b.bound);
    if (b.kind == filters::BasisFamily::Kind::head_segments) j["inclusive"] = b.inclusive;
  }
  return j;
}

filters::BasisFamily family_from_json(const json& j) {
  auto kind = text(j, "kind");
  if (kind == "singletons") return filters::BasisFamily::singletons(ord_of(j, "bound"));
  if (kind == "head_segments")
    return filters::BasisFamily::head_segments(ord_of(j, "bound"), j.contains("inclusive") && flag(j, "inclusive"));
  if (kind == "sets") {
    std::vector<CountableSetDescriptor> sets;
    for (const auto& s : array(j, "sets")) sets.push_back(descriptor_from_json(s));
    return filters::BasisFamily::explicit_sets(std::move(sets));
  }
  schema("unknown basis family kind '" + kind + "'");
}

groups::Mask mask_from_names(const json& elems, const groups::FiniteGroup& G) {
  groups::Mask m = 0;
  for (const auto& e : elems) {
    if (e.is_number_unsigned()) {
      if (e.get<std::uint64_t>() >= G.order()) schema("element index out of range");
      m |= groups::Mask{1} << e.get<std::uint64_t>();
      continue;
    }
    if (!e.is_string()) schema("group elements are names or indices");
    auto it = std::find(G.names().begin(), G.names().end(), e.get<std::string>());
    if (it == G.names().end()) schema("no element '" + e.get<std::string>() + "' in " + G.label());
    m |= groups::Mask{1} << (it - G.names().begin());
  }
  return m;
}

json mask_json(groups::Mask m, const groups::FiniteGroup& G) {
  json out = json::array();
  for (groups::Elem g = 0; g < G.order(); ++g)
    if (groups::has(m, g)) out.push_back(G.name(g));
  return out;
}

std::string mode_name(filters::ClosureMode m) {
  return m == filters::ClosureMode::countable_unions ? "countable_unions" : "finite_unions";
}

}  // namespace

json to_json(const Ord& x) { return x.str(); }

Ord ord_from_json(const json& j) {
  if (j.is_number_unsigned()) return Ord(j.get<std::uint64_t>());
  if (!j.is_string()) schema("ordinals are strings in canonical form");
  return Ord::parse(j.get<std::string>());
}

json to_json(const CountableSetDescriptor& d) {
  json pts = json::array();
  for (const auto& p : d.points()) pts.push_back(p.str());
  json tails = json::array();
  for (const auto& t : d.tails()) {
    if (const auto* o = std::get_if<ord::OmegaSequence>(&t))
      tails.push_back({{"omega_sequence", {{"start", o->start.str()}, {"unit_exp", o->unit_exp}}}});
    else if (const auto* i = std::get_if<ord::Interval>(&t))
      tails.push_back({{"interval", {{"from", i->from.str()}, {"to", i->to.str()}}}});
    else {
      const auto& e = std::get<ord::EnumeratedSequence>(t);
      tails.push_back({{"enumerated", {{"label", e.label}, {"bound", e.bound.str()}}}});
    }
  }
  return {{"points", pts}, {"tails", tails}};
}

CountableSetDescriptor descriptor_from_json(const json& j) {
  std::vector<Ord> pts;
  for (const auto& p : array(j, "points")) pts.push_back(ord_from_json(p));
  std::vector<ord::Tail> tails;
  if (j.contains("tails"))
    for (const auto& t : array(j, "tails")) {
      if (t.contains("omega_sequence")) {
        const auto& o = t.at("omega_sequence");
        tails.push_back(ord::OmegaSequence{ord_of(o, "start"), static_cast<std::uint32_t>(natural(o, "unit_exp"))});
      } else if (t.contains("interval")) {
        const auto& i = t.at("interval");
        tails.push_back(ord::Interval{ord_of(i, "from"), ord_of(i, "to")});
      } else if (t.contains("enumerated")) {
        const auto& e = t.at("enumerated");
        tails.push_back(ord::EnumeratedSequence{text(e, "label"), ord_of(e, "bound")});
      } else {
        schema("unknown tail kind");
      }
    }
  return CountableSetDescriptor(std::move(pts), std::move(tails));
}

json to_json(const groups::FiniteGroup& G) {
  return {{"label", G.label()}, {"elements", G.names()}, {"table", G.table()}};
}

groups::GroupPtr group_by_name(const std::string& name) {
  for (auto& g : groups::small_group_corpus())
    if (g->label() == name) return g;
  if (name == "D3") return std::make_shared<const groups::FiniteGroup>(groups::FiniteGroup::dihedral(3));
  schema("unknown group '" + name + "'");
}

groups::FiniteGroup group_from_json(const json& j) {
  if (j.is_string()) return *group_by_name(j.get<std::string>());
  if (j.contains("name")) return *group_by_name(text(j, "name"));
  std::string label = j.contains("label") ? text(j, "label") : "G";
  if (j.contains("table")) {
    std::vector<std::string> names;
    std::vector<std::vector<groups::Elem>> table;
    try {
      table = j.at("table").get<std::vector<std::vector<groups::Elem>>>();
      if (j.contains("elements")) names = j.at("elements").get<std::vector<std::string>>();
    } catch (const json::exception& e) {
      schema(std::string("bad group table: ") + e.what());
    }
    if (names.empty())
      for (std::size_t i = 0; i < table.size(); ++i) names.push_back("g" + std::to_string(i));
    try {
      return groups::FiniteGroup(label, names, table);
    } catch (const Error& e) {
      schema(std::string("not a group: ") + e.what());
    }
  }
  const json* gens = j.contains("generators") ? &j.at("generators") : nullptr;
  if (!gens) schema("a group needs a name, a table or generating permutations");
  try {
    return groups::FiniteGroup::from_permutations(label, gens->get<std::vector<std::vector<std::uint32_t>>>());
  } catch (const json::exception& e) {
    schema(std::string("bad permutations: ") + e.what());
  }
}

json to_json(const groups::Subgroup& s, const groups::FiniteGroup* G) {
  if (const auto* k = std::get_if<groups::SupportKernel>(&s))
    return {{"kernel", to_json(k->support)}, {"text", groups::subgroup_str(s)}};
  auto m = std::get<groups::ExplicitSubgroup>(s).mask;
  json j{{"mask", m}};
  if (G) j["elements"] = mask_json(m, *G);
  return j;
}

groups::Subgroup subgroup_from_json(const json& j, const groups::FiniteGroup* G) {
  if (j.contains("kernel")) return groups::SupportKernel{descriptor_from_json(j.at("kernel"))};
  if (j.is_array()) {
    if (!G) schema("element lists need a group");
    return groups::ExplicitSubgroup{mask_from_names(j, *G)};
  }
  if (j.contains("elements")) {
    if (!G) schema("element lists need a group");
    return groups::ExplicitSubgroup{mask_from_names(j.at("elements"), *G)};
  }
  return groups::ExplicitSubgroup{natural(j, "mask")};
}

json to_json(const filters::FilterOfSubgroups& F) {
  if (const auto* e = std::get_if<filters::ExplicitFilter>(&F)) {
    json gens = json::array();
    for (auto m : e->generators) gens.push_back(mask_json(m, *e->group));
    return {{"repr", "antichain"}, {"group", to_json(*e->group)}, {"generators", gens}};
  }
  const auto& s = std::get<filters::SupportIdeal>(F);
  json ds = json::array();
  for (const auto& b : s.basis) ds.push_back(family_json(b));
  return {{"repr", "support_ideal"}, {"universe", to_json(s.universe)}, {"mode", mode_name(s.mode)}, {"descriptors", ds}};
}

filters::FilterOfSubgroups filter_from_json(const json& j) {
  auto repr = text(j, "repr");
  if (repr == "antichain") {
    auto G = std::make_shared<const groups::FiniteGroup>(group_from_json(field(j, "group")));
    std::vector<groups::Mask> gens;
    for (const auto& g : array(j, "generators")) {
      if (!g.is_array()) schema("antichain generators are element lists");
      gens.push_back(mask_from_names(g, *G));
    }
    return filters::ExplicitFilter::make(G, std::move(gens));
  }
  if (repr == "support_ideal") {
    auto mode = text(j, "mode");
    if (mode != "finite_unions" && mode != "countable_unions") schema("unknown closure mode '" + mode + "'");
    std::vector<filters::BasisFamily> basis;
    for (const auto& b : array(j, "descriptors")) basis.push_back(family_from_json(b));
    return filters::SupportIdeal::make(ord_of(j, "universe"), std::move(basis),
                                       mode == "countable_unions" ? filters::ClosureMode::countable_unions
                                                                  : filters::ClosureMode::finite_unions);
  }
  schema("unknown filter representation '" + repr + "'");
}

json to_json(const filters::FilterAuditReport& r, const groups::FiniteGroup* G) {
  json j{{"is_filter", r.is_filter},
         {"is_normal", r.is_normal},
         {"is_omega1_complete", r.is_omega1_complete},
         {"violations", r.violations}};
  if (r.normality_witness)
    j["normality_witness"] = {{"member", to_json(r.normality_witness->member, G)},
                              {"conjugator", G ? json(G->name(r.normality_witness->conjugator))
                                               : json(r.normality_witness->conjugator)},
                              {"conjugate", to_json(r.normality_witness->conjugate, G)}};
  if (r.completeness_witness) {
    json seq = json::array();
    for (const auto& s : r.completeness_witness->sequence) seq.push_back(to_json(s, G));
    j["completeness_witness"] = {{"sequence", seq},
                                 {"intersection", to_json(r.completeness_witness->intersection, G)},
                                 {"pattern", r.completeness_witness->pattern}};
  }
  return j;
}

json to_json(const forcing::Poset& P) {
  json le = json::array();
  for (forcing::CondId p = 0; p < P.size(); ++p)
    for (forcing::CondId q = 0; q < P.size(); ++q)
      if (p != q && P.le(p, q)) le.push_back({P.label(p), P.label(q)});
  return {{"conditions", P.labels()}, {"top", P.label(P.top())}, {"le", le}};
}

forcing::Poset poset_from_json(const json& j) {
  std::vector<std::string> labels;
  for (const auto& c : array(j, "conditions")) {
    if (!c.is_string()) schema("conditions are strings");
    labels.push_back(c.get<std::string>());
  }
  std::map<std::string, forcing::CondId> id;
  for (forcing::CondId i = 0; i < labels.size(); ++i)
    if (!id.emplace(labels[i], i).second) schema("duplicate condition '" + labels[i] + "'");
  auto lookup = [&](const json& v) {
    if (!v.is_string() || !id.count(v.get<std::string>())) schema("unknown condition " + v.dump());
    return id.at(v.get<std::string>());
  };
  std::vector<std::pair<forcing::CondId, forcing::CondId>> pairs;
  for (forcing::CondId i = 0; i < labels.size(); ++i) pairs.emplace_back(i, i);
  for (const auto& e : array(j, "le")) {
    if (!e.is_array() || e.size() != 2) schema("order pairs are [stronger, weaker]");
    pairs.emplace_back(lookup(e[0]), lookup(e[1]));
  }
  return forcing::Poset(std::move(labels), pairs, lookup(field(j, "top")));
}

json to_json(forcing::Name x, const forcing::Poset& P) {
  std::vector<std::pair<std::string, json>> es;
  for (const auto& e : x.entries()) {
    if (!P.contains(e.cond)) throw Error(ErrorCode::ForeignCondition, "condition " + std::to_string(e.cond) + " not in poset");
    json entry = json::array({to_json(e.child, P), P.label(e.cond)});
    es.emplace_back(entry.dump(), std::move(entry));
  }
  std::sort(es.begin(), es.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  json out = json::array();
  for (auto& e : es) out.push_back(std::move(e.second));
  return out;
}

forcing::Name name_from_json(const json& j, const forcing::Poset& P) {
  if (!j.is_array()) schema("names are arrays of [child, condition] entries");
  std::vector<forcing::NameEntry> es;
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2 || !e[1].is_string()) schema("name entries are [child, condition label]");
    auto it = std::find(P.labels().begin(), P.labels().end(), e[1].get<std::string>());
    if (it == P.labels().end()) throw Error(ErrorCode::ForeignCondition, "no condition '" + e[1].get<std::string>() + "'");
    es.push_back({name_from_json(e[0], P), static_cast<forcing::CondId>(it - P.labels().begin())});
  }
  return forcing::Name::make(std::move(es));
}

json to_json(const hs::HSReport& r, const hs::SymmetricSystem& sys) {
  const groups::FiniteGroup* G = nullptr;
  if (const auto* ex = std::get_if<hs::ExplicitSystem>(&sys)) G = ex->group.get();
  json children = json::array();
  for (const auto& c : r.children) children.push_back(to_json(*c, sys));
  return {{"name", {{"id", r.name.id()}, {"rank", r.name.rank()}}},
          {"stabilizer", to_json(r.stabilizer, G)},
          {"stabilizer_text", groups::subgroup_str(r.stabilizer, G)},
          {"in_filter", r.in_filter},
          {"verdict", r.verdict},
          {"hereditary_children", children}};
}

json to_json(const pairs::Certificate& c) {
  json w = json::array();
  for (const auto& it : c.witness) w.push_back({{"beta", to_json(it.beta)}, {"H", to_json(groups::Subgroup{it.H})}});
  json ms = json::array();
  for (const auto& m : c.memberships)
    ms.push_back({{"stage", to_json(m.stage)}, {"beta", to_json(m.beta)}, {"member", m.member}});
  json ev = json::array();
  for (const auto& e : c.contradiction)
    ev.push_back({{"stage", to_json(e.stage)},
                  {"depth", e.depth},
                  {"filter", e.filter},
                  {"a_value", e.a_value},
                  {"b_value", e.b_value},
                  {"swapped_a_value", e.swapped_a_value}});
  json j{{"schema", c.schema},
         {"kind", pairs::kind_str(c.kind)},
         {"length", to_json(c.length)},
         {"depth", c.depth},
         {"witness", w},
         {"beta_star", to_json(c.beta_star)},
         {"chosen_alpha", to_json(c.chosen_alpha)},
         {"memberships", ms},
         {"contradiction", ev}};
  if (c.kind == pairs::CertificateKind::fs_dc_failure) {
    j["relation"] = c.relation;
    j["threshold"] = to_json(c.threshold);
    j["bounded_swaps"] = to_json(c.bounded_swaps);
    j["finite_mode_member"] = c.finite_mode_member;
    j["countable_mode_member"] = c.countable_mode_member;
  }
  return j;
}

pairs::Certificate certificate_from_json(const json& j) {
  pairs::Certificate c;
  c.schema = text(j, "schema");
  auto kind = text(j, "kind");
  if (kind == "no_choice_function") c.kind = pairs::CertificateKind::no_choice_function;
  else if (kind == "fs_dc_failure") c.kind = pairs::CertificateKind::fs_dc_failure;
  else schema("unknown certificate kind '" + kind + "'");
  c.length = ord_of(j, "length");
  c.depth = natural(j, "depth");
  for (const auto& it : array(j, "witness")) {
    auto H = subgroup_from_json(field(it, "H"));
    const auto* k = std::get_if<groups::SupportKernel>(&H);
    if (!k) schema("witness subgroups are support kernels");
    c.witness.push_back(pairs::WitnessItem{ord_of(it, "beta"), *k});
  }
  c.beta_star = ord_of(j, "beta_star");
  c.chosen_alpha = ord_of(j, "chosen_alpha");
  for (const auto& m : array(j, "memberships"))
    c.memberships.push_back(pairs::MembershipClaim{ord_of(m, "stage"), ord_of(m, "beta"), flag(m, "member")});
  for (const auto& e : array(j, "contradiction"))
    c.contradiction.push_back(pairs::EvaluationClaim{ord_of(e, "stage"), natural(e, "depth"), text(e, "filter"),
                                                     text(e, "a_value"), text(e, "b_value"), text(e, "swapped_a_value")});
  if (c.kind == pairs::CertificateKind::fs_dc_failure) {
    c.relation = text(j, "relation");
    c.threshold = ord_of(j, "threshold");
    c.bounded_swaps = descriptor_from_json(field(j, "bounded_swaps"));
    c.finite_mode_member = flag(j, "finite_mode_member");
    c.countable_mode_member = flag(j, "countable_mode_member");
  }
  return c;
}

json to_json(const std::vector<iteration::SummaryRow>& rows) {
  json out = json::array();
  for (const auto& r : rows) out.push_back({{"stage", r.stage}, {"poset", r.poset}, {"group", r.group}, {"filter", r.filter}});
  return out;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace sfw::io
