#include "commands.hpp"

#include <algorithm>
#include <functional>
#include <future>
#include <map>
#include <set>
#include <sstream>

#include "sfw/error.hpp"
#include "sfw/hs.hpp"
#include "sfw/oracle.hpp"
#include "sfw/pairs.hpp"
#include "sfw/symmetry.hpp"

namespace sfw::cli {

using groups::Mask;
using groups::SupportKernel;
using ord::CountableSetDescriptor;
using ord::Ord;

bool Report::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

void Report::check(std::string invariant, bool passed, std::string detail) {
  checks.push_back({std::move(invariant), passed, std::move(detail)});
}

json Report::to_json() const {
  json cs = json::array();
  for (const auto& c : checks) cs.push_back({{"invariant", c.invariant}, {"passed", c.passed}, {"detail", c.detail}});
  return {{"version", "sfw.report/1"}, {"command", command}, {"id", id}, {"ok", ok()}, {"checks", cs}, {"data", data}};
}

std::string Report::text() const {
  std::ostringstream out;
  out << "sfw " << command << " (" << id << ")\n";
  for (const auto& l : lines) out << "  " << l << "\n";
  out << "checks:\n";
  std::vector<std::string> failed;
  for (const auto& c : checks) {
    out << "  " << (c.passed ? "PASS " : "FAIL ") << c.invariant << ": " << c.detail << "\n";
    if (!c.passed) failed.push_back(c.invariant);
  }
  if (failed.empty()) {
    out << "result: ok\n";
  } else {
    out << "result: FAILED";
    for (std::size_t i = 0; i < failed.size(); ++i) out << (i ? ", " : " ") << failed[i];
    out << "\n";
  }
  return out.str();
}

const std::vector<std::string>& commands() {
  static const std::vector<std::string> all{"audit-filter", "symmetry-lemma", "limit-filter",     "hs-check",
                                            "pairs-demo",   "fs-contrast",    "minimality-oracle"};
  return all;
}

namespace {

[[noreturn]] void schema_error(const std::string& msg) { throw Error(ErrorCode::SchemaError, msg); }

// Scenario keys shared by every command.
const std::set<std::string> kCommon{"version", "command", "id"};

void allow_keys(const json& j, const std::set<std::string>& keys, const std::string& where, bool common = false) {
  if (!j.is_object()) schema_error(where + " must be an object");
  for (const auto& [k, v] : j.items())
    if (!keys.count(k) && !(common && kCommon.count(k))) schema_error("unknown key '" + k + "' in " + where);
}

std::size_t get_count(const json& j, const char* key, std::size_t dflt) {
  if (!j.contains(key)) return dflt;
  if (!j[key].is_number_unsigned()) schema_error(std::string("'") + key + "' must be a non-negative integer");
  return j[key].get<std::size_t>();
}

std::string get_string(const json& j, const char* key, const std::string& dflt) {
  if (!j.contains(key)) return dflt;
  if (!j[key].is_string()) schema_error(std::string("'") + key + "' must be a string");
  return j[key].get<std::string>();
}

Ord get_ord(const json& j, const char* key, const std::string& dflt) {
  if (!j.contains(key)) {
    if (dflt.empty()) schema_error(std::string("missing '") + key + "'");
    return Ord::parse(dflt);
  }
  return io::ord_from_json(j[key]);
}

const json& get_array(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array()) schema_error(std::string("'") + key + "' must be an array");
  return j[key];
}

std::string join(const std::vector<std::string>& xs, const char* sep = "; ") {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + xs[i];
  return out;
}

iteration::LimitMode limit_mode(const std::string& s) {
  if (s == "automatic") return iteration::LimitMode::automatic;
  if (s == "finite") return iteration::LimitMode::finite_intersections;
  if (s == "countable") return iteration::LimitMode::countable_intersections;
  schema_error("mode must be automatic, finite or countable, not '" + s + "'");
}

const std::set<std::string> kSpecKeys{"length", "schema", "truncate_stages", "mode"};

// {"length", "schema": {"step", "depth"}, "truncate_stages", "mode"}
iteration::IterationSpec iteration_spec(const json& j, const Options& opt) {
  iteration::IterationSpec spec;
  spec.length = get_ord(j, "length", "");
  if (j.contains("schema")) {
    allow_keys(j["schema"], {"step", "depth"}, "schema");
    spec.step = get_string(j["schema"], "step", spec.step);
    spec.depth = get_count(j["schema"], "depth", spec.depth);
  }
  spec.truncate_stages = get_count(j, "truncate_stages", spec.truncate_stages);
  spec.mode = limit_mode(get_string(j, "mode", "automatic"));
  if (opt.depth) spec.depth = *opt.depth;
  if (opt.prefix) spec.truncate_stages = *opt.prefix;
  return spec;
}

std::string normality_detail(const filters::FilterAuditReport& r, const groups::FiniteGroup* G) {
  if (!r.normality_witness) return r.is_normal ? "closed under conjugation" : "not closed under conjugation";
  const auto& w = *r.normality_witness;
  std::string g = G ? G->name(w.conjugator) : std::to_string(w.conjugator);
  return "conjugating member " + groups::subgroup_str(w.member, G) + " by " + g + " gives " +
         groups::subgroup_str(w.conjugate, G) + ", which is not a member";
}

std::string completeness_detail(const filters::FilterAuditReport& r, const groups::FiniteGroup* G) {
  if (!r.completeness_witness) return r.is_omega1_complete ? "closed under countable intersections" : "not complete";
  const auto& w = *r.completeness_witness;
  std::vector<std::string> seq;
  for (const auto& s : w.sequence) seq.push_back(groups::subgroup_str(s, G));
  std::string out = "intersection of [" + join(seq, ", ") + (w.pattern.empty() ? "" : ", ... " + w.pattern) + "] is " +
                    groups::subgroup_str(w.intersection, G) + ", which is not a member";
  return out;
}

void audit_checks(Report& rep, const filters::FilterAuditReport& r, const groups::FiniteGroup* G) {
  rep.check("filters.filter_axioms", r.is_filter, r.is_filter ? "upward closed and closed under intersections"
                                                                : join(r.violations));
  rep.check("filters.normality", r.is_normal, normality_detail(r, G));
  rep.check("filters.omega1_completeness", r.is_omega1_complete, completeness_detail(r, G));
}

Report audit_filter(const json& j, const Options&) {
  Report rep;
  allow_keys(j, {"filter", "group", "family"}, "audit-filter scenario", true);
  if (j.contains("filter") == j.contains("family")) schema_error("give either 'filter' or 'group' with 'family'");
  if (j.contains("filter")) {
    auto F = io::filter_from_json(j["filter"]);
    const groups::FiniteGroup* G = nullptr;
    if (const auto* e = std::get_if<filters::ExplicitFilter>(&F)) G = e->group.get();
    auto r = filters::audit_filter(F);
    rep.lines.push_back("filter " + filters::filter_str(F));
    rep.data = {{"filter", io::to_json(F)}, {"audit", io::to_json(r, G)}};
    audit_checks(rep, r, G);
    return rep;
  }
  if (!j.contains("group")) schema_error("'family' needs a 'group'");
  auto G = std::make_shared<const groups::FiniteGroup>(io::group_from_json(j["group"]));
  std::vector<Mask> family;
  std::vector<std::string> shown;
  for (const auto& m : get_array(j, "family")) {
    auto s = io::subgroup_from_json(m, G.get());
    const auto* e = std::get_if<groups::ExplicitSubgroup>(&s);
    if (!e) schema_error("family members of a finite group must be explicit subgroups");
    family.push_back(e->mask);
    shown.push_back(groups::subgroup_str(s, G.get()));
  }
  auto r = filters::audit_family(*G, family);
  rep.lines.push_back("family over " + G->label() + ": {" + join(shown, ", ") + "}");
  json fam = json::array();
  for (Mask m : family) fam.push_back(io::to_json(groups::Subgroup{groups::ExplicitSubgroup{m}}, G.get()));
  rep.data = {{"group", io::to_json(*G)}, {"family", fam}, {"audit", io::to_json(r, G.get())}};
  audit_checks(rep, r, G.get());
  return rep;
}

Report symmetry_lemma(const json& j, const Options& opt) {
  Report rep;
  allow_keys(j, {"max_poset_size", "max_conditions", "max_rank", "max_depth", "cross_checks"}, "symmetry-lemma scenario",
             true);
  forcing::SymmetryLemmaParams p;
  p.max_poset_size = get_count(j, "max_poset_size", p.max_poset_size);
  p.max_conditions = get_count(j, "max_conditions", p.max_conditions);
  p.max_rank = get_count(j, "max_rank", p.max_rank);
  p.max_depth = opt.depth.value_or(get_count(j, "max_depth", p.max_depth));
  p.cross_checks = get_count(j, "cross_checks", p.cross_checks);
  p.seed = opt.seed;
  p.jobs = opt.jobs;
  auto r = forcing::symmetry_lemma_corpus(p);
  rep.lines.push_back(std::to_string(r.posets) + " posets, " + std::to_string(r.automorphisms) + " automorphisms, " +
                      std::to_string(r.condition_sets) + " condition sets, " + std::to_string(r.names) + " names, " +
                      std::to_string(r.formulas) + " formulas");
  rep.lines.push_back(std::to_string(r.cases) + " cases checked, " + std::to_string(r.cross_checked) +
                      " replayed through forces");
  for (const auto& e : r.examples) rep.lines.push_back("violation: " + e);
  rep.data = {{"params",
               {{"max_poset_size", p.max_poset_size},
                {"max_conditions", p.max_conditions},
                {"max_rank", p.max_rank},
                {"max_depth", p.max_depth},
                {"cross_checks", p.cross_checks},
                {"seed", p.seed}}},
              {"posets", r.posets},
              {"automorphisms", r.automorphisms},
              {"condition_sets", r.condition_sets},
              {"names", r.names},
              {"formulas", r.formulas},
              {"cases", r.cases},
              {"violations", r.violations},
              {"cross_checked", r.cross_checked},
              {"cross_check_failures", r.cross_check_failures},
              {"examples", r.examples}};
  rep.check("forcing.symmetry_lemma", r.violations == 0, std::to_string(r.violations) + " violations");
  rep.check("forcing.symmetry_lemma_replay", r.cross_check_failures == 0,
            std::to_string(r.cross_check_failures) + " of " + std::to_string(r.cross_checked) +
                " replays disagree with the memoized verdicts");
  return rep;
}

Report limit_filter(const json& j, const Options& opt) {
  Report rep;
  auto keys = kSpecKeys;
  keys.insert("queries");
  allow_keys(j, keys, "limit-filter scenario", true);
  auto spec = iteration_spec(j, opt);
  auto state = iteration::build_iteration(spec);
  auto rows = iteration::summary(state);
  for (const auto& r : rows) rep.lines.push_back(r.stage + " | " + r.poset + " | " + r.group + " | " + r.filter);
  rep.data["summary"] = io::to_json(rows);
  json queries = json::array();
  if (state.limit) {
    const auto& F = state.limit->filter;
    rep.data["limit_filter"] = io::to_json(F);
    rep.data["audit"] = io::to_json(filters::audit_filter(F));
    if (j.contains("queries")) {
      for (const auto& q : get_array(j, "queries")) {
        allow_keys(q, {"support", "expect"}, "query");
        if (!q.contains("support")) schema_error("query without 'support'");
        auto d = io::descriptor_from_json(q["support"]);
        bool member = filters::filter_contains(F, SupportKernel{d});
        json row = {{"support", io::to_json(d)}, {"member", member}};
        rep.lines.push_back("K[" + d.str() + "] " + (member ? "is" : "is not") + " a member");
        if (q.contains("expect")) {
          if (!q["expect"].is_boolean()) schema_error("'expect' must be a boolean");
          bool want = q["expect"].get<bool>();
          row["expect"] = want;
          rep.check("iteration.limit_filter_membership", member == want,
                    "K[" + d.str() + "] expected " + (want ? "member" : "non-member"));
        }
        queries.push_back(row);
      }
    }
  } else if (j.contains("queries")) {
    schema_error("membership queries need a limit length");
  }
  rep.data["queries"] = queries;
  return rep;
}

struct HsSetup {
  hs::SymmetricSystem sys;
  forcing::Poset poset;
  iteration::ProductSpace space;
  std::size_t depth = 1;
  std::string step;
};

HsSetup hs_setup(const json& s, const Options& opt) {
  std::string kind = get_string(s, "kind", "");
  HsSetup out;
  if (kind == "step") {
    allow_keys(s, {"kind", "step", "depth"}, "system");
    out.step = get_string(s, "step", "cohen_pair");
    out.depth = opt.depth.value_or(get_count(s, "depth", 1));
    auto step = iteration::step_by_name(out.step, out.depth);
    out.sys = hs::ExplicitSystem::from_step(step);
    out.poset = *step.poset;
    out.space = iteration::ProductSpace({step.poset});
    return out;
  }
  auto keys = kSpecKeys;
  keys.insert("kind");
  if (kind == "stage") keys.insert("stage");
  else if (kind != "limit") schema_error("system kind must be step, stage or limit");
  allow_keys(s, keys, "system");
  auto spec = iteration_spec(s, opt);
  out.depth = spec.depth;
  out.step = spec.step;
  auto state = std::make_shared<iteration::IterationState>(iteration::build_iteration(spec));
  if (kind == "stage") {
    std::size_t n = get_count(s, "stage", state->stages.size() - 1);
    if (n >= state->stages.size())
      throw Error(ErrorCode::StageMissing, "stage " + std::to_string(n) + " is not materialized");
    out.sys = hs::ExplicitSystem::from_stage(*state, n);
    out.space = state->stages[n].space;
    out.poset = out.space.materialize();
    return out;
  }
  if (!state->limit) schema_error("a limit system needs a limit length");
  auto sym = hs::SymbolicSystem::from_limit(*state->limit);
  out.poset = *sym.poset;
  out.space = state->limit->space;
  out.sys = std::move(sym);
  return out;
}

forcing::Name hs_name(const json& e, const HsSetup& h) {
  if (e.contains("name")) return io::name_from_json(e["name"], h.poset);
  if (!e.contains("builtin")) schema_error("name entry needs 'name' or 'builtin'");
  if (h.step != "cohen_pair") schema_error("builtin names exist only for cohen_pair steps");
  std::string b = get_string(e, "builtin", "");
  std::size_t coord = get_count(e, "coord", 0);
  if (coord >= h.space.factors()) throw Error(ErrorCode::StageOutOfRange, "coordinate " + std::to_string(coord) + " is not materialized");
  auto names = pairs::stage_names(h.space, coord, h.depth);
  if (b == "a") return names.a;
  if (b == "b") return names.b;
  if (b == "pair") return names.pair;
  schema_error("builtin must be a, b or pair");
}

Report hs_check(const json& j, const Options& opt) {
  Report rep;
  allow_keys(j, {"system", "names", "closure"}, "hs-check scenario", true);
  if (!j.contains("system")) schema_error("missing 'system'");
  auto h = hs_setup(j["system"], opt);
  const groups::FiniteGroup* G = nullptr;
  if (const auto* ex = std::get_if<hs::ExplicitSystem>(&h.sys)) G = ex->group.get();
  json out = json::array();
  std::vector<forcing::Name> hs_names;
  for (const auto& e : get_array(j, "names")) {
    allow_keys(e, {"label", "name", "builtin", "coord", "expect"}, "name entry");
    std::string label = get_string(e, "label", "x" + std::to_string(out.size()));
    auto x = hs_name(e, h);
    auto r = hs::is_hs(x, h.sys);
    if (r.verdict) hs_names.push_back(x);
    json row = {{"label", label},
                {"name", io::to_json(x, h.poset)},
                {"hereditarily_symmetric", r.verdict},
                {"stabilizer", groups::subgroup_str(r.stabilizer, G)},
                {"report", io::to_json(r, h.sys)}};
    rep.lines.push_back(label + ": " + (r.verdict ? "HS" : "not HS") + ", sym = " + groups::subgroup_str(r.stabilizer, G));
    if (!r.verdict) {
      json path = json::array();
      for (const auto* n : hs::why_not(r)) {
        path.push_back({{"name", io::to_json(n->name, h.poset)},
                        {"stabilizer", groups::subgroup_str(n->stabilizer, G)},
                        {"in_filter", n->in_filter}});
        if (opt.why)
          rep.lines.push_back("  why: " + io::to_json(n->name, h.poset).dump() + " has sym " +
                              groups::subgroup_str(n->stabilizer, G) + (n->in_filter ? ", in" : ", outside") +
                              " the filter");
      }
      row["why_not"] = path;
    }
    if (e.contains("expect")) {
      if (!e["expect"].is_boolean()) schema_error("'expect' must be a boolean");
      bool want = e["expect"].get<bool>();
      rep.check("hs.verdict", r.verdict == want, label + " expected " + (want ? "HS" : "not HS"));
    }
    out.push_back(row);
  }
  rep.data["names"] = out;
  if (j.contains("closure")) {
    if (!j["closure"].is_boolean()) schema_error("'closure' must be a boolean");
    if (j["closure"].get<bool>()) {
      auto c = hs::hs_closure_suite(h.sys, hs_names);
      std::vector<std::string> bad;
      for (const auto& e : c.entries)
        if (e.precondition && !e.verdict) bad.push_back(e.constructor + "(" + e.inputs + ")");
      rep.data["closure"] = {{"entries", c.entries.size()}, {"failures", bad}};
      rep.lines.push_back("closure suite: " + std::to_string(c.entries.size()) + " constructions");
      rep.check("hs.closure", c.ok(),
                bad.empty() ? "every construction on HS inputs is HS" : "not HS: " + join(bad));
    }
  }
  return rep;
}

Report pairs_demo(const json& j, const Options& opt) {
  Report rep;
  allow_keys(j, {"kappa", "depth", "prefix", "witness_stages", "witness"}, "pairs-demo scenario", true);
  Ord kappa = get_ord(j, "kappa", "w1");
  std::size_t depth = opt.depth.value_or(get_count(j, "depth", 1));
  std::size_t prefix = opt.prefix.value_or(get_count(j, "prefix", 3));
  auto s = pairs::build_pairs_model(kappa, depth, prefix);

  std::vector<pairs::WitnessItem> witness;
  if (j.contains("witness")) {
    if (j.contains("witness_stages")) schema_error("give 'witness' or 'witness_stages', not both");
    for (const auto& w : get_array(j, "witness")) {
      allow_keys(w, {"beta", "H"}, "witness item");
      Ord beta = get_ord(w, "beta", "");
      if (!w.contains("H")) {
        witness.push_back({beta, beta < Ord::parse("w1") ? iteration::head_pullback_kernel(beta) : SupportKernel{}});
        continue;
      }
      auto sg = io::subgroup_from_json(w["H"]);
      const auto* k = std::get_if<SupportKernel>(&sg);
      if (!k) schema_error("witness subgroups must be support kernels");
      witness.push_back({beta, *k});
    }
  } else {
    auto stages = j.contains("witness_stages") ? io::descriptor_from_json(j["witness_stages"])
                                               : CountableSetDescriptor::range(prefix);
    witness = pairs::witness_from_stages(stages);
    // Head pullbacks past w1 have uncountable support; K[{}] is the whole group.
    for (auto& w : witness)
      if (w.beta < Ord::parse("w1")) w.H = iteration::head_pullback_kernel(w.beta);
  }

  rep.lines.push_back("kappa = " + kappa.str() + ", depth " + std::to_string(depth) + ", " + std::to_string(prefix) +
                      " materialized stages");
  auto lemma = pairs::verify_group_lemma(s);
  rep.check("pairs.group_lemma", lemma.ok(),
            lemma.ok() ? std::to_string(lemma.products_checked) + " products commute, supports and kernels agree"
                       : join(lemma.failures));

  auto sep = pairs::least_separating_filter(s.stage);
  rep.check("pairs.separating_filter", sep.has_value(),
            sep ? "least separating filter at " + s.stage.poset->label(*sep) : "no maximal filter separates the reals");

  auto stepsys = hs::ExplicitSystem::from_step(iteration::cohen_pair_step(depth));
  auto sa = std::get<groups::ExplicitSubgroup>(hs::stabilizer(s.local.a, stepsys)).mask;
  auto sp = std::get<groups::ExplicitSubgroup>(hs::stabilizer(s.local.pair, stepsys)).mask;
  rep.check("pairs.swap_stabilizers", sa == 1 && sp == 3,
            "sym(a) = " + groups::subgroup_str(groups::ExplicitSubgroup{sa}, stepsys.group.get()) + ", sym({a, b}) = " +
                groups::subgroup_str(groups::ExplicitSubgroup{sp}, stepsys.group.get()));

  const auto& top = s.top_stage();
  std::size_t moved = 0;
  for (groups::Elem g = 0; g < top.group->order(); ++g)
    if (forcing::apply_automorphism(iteration::action_map(s.iteration, top, g), s.family_prefix) != s.family_prefix)
      ++moved;
  rep.check("pairs.family_symmetric", moved == 0,
            std::to_string(top.group->order() - moved) + " of " + std::to_string(top.group->order()) +
                " prefix group elements fix the family");

  auto cert = pairs::refute_choice_function(s, witness);
  auto v = pairs::verify_certificate(cert);
  rep.lines.push_back("witness stages up to " + cert.beta_star.str() + ", swap chosen at stage " + cert.chosen_alpha.str());
  for (const auto& e : cert.contradiction)
    rep.lines.push_back("filter " + e.filter + ": a = " + e.a_value + ", b = " + e.b_value + ", swapped a = " +
                        e.swapped_a_value);
  rep.check("pairs.certificate", v.accepted, v.accepted ? "verifier accepts" : join(v.failures));
  rep.data = {{"kappa", io::to_json(kappa)},
              {"depth", depth},
              {"prefix", prefix},
              {"products_checked", lemma.products_checked},
              {"certificate", io::to_json(cert)}};
  rep.artifacts.push_back({"certificate", io::to_json(cert)});
  return rep;
}

Report fs_contrast(const json& j, const Options& opt) {
  Report rep;
  allow_keys(j, {"length", "depth", "truncate_stages", "relation", "samples"}, "fs-contrast scenario", true);
  iteration::IterationSpec spec;
  spec.length = get_ord(j, "length", "w");
  spec.depth = opt.depth.value_or(get_count(j, "depth", 1));
  spec.truncate_stages = opt.prefix.value_or(get_count(j, "truncate_stages", 3));
  std::vector<std::uint64_t> rel{0, 1};
  if (j.contains("relation")) {
    rel.clear();
    for (const auto& x : get_array(j, "relation")) {
      if (!x.is_number_unsigned()) schema_error("relation stages must be non-negative integers");
      rel.push_back(x.get<std::uint64_t>());
    }
  }
  std::size_t samples = get_count(j, "samples", 6);

  spec.mode = iteration::LimitMode::finite_intersections;
  auto fs = iteration::build_iteration(spec);
  spec.mode = iteration::LimitMode::countable_intersections;
  auto cs = iteration::build_iteration(spec);
  if (!fs.limit) schema_error("fs-contrast needs a limit length");

  SupportKernel tuple{CountableSetDescriptor::naturals()};
  bool fin = filters::filter_contains(fs.limit->filter, tuple);
  bool cnt = filters::filter_contains(cs.limit->filter, tuple);
  auto cert = pairs::fs_dc_counterexample(fs, rel, samples);
  auto v = pairs::verify_certificate(cert);

  rep.lines.push_back("finite mode: K[" + tuple.support.str() + "] " + (fin ? "is" : "is not") + " a member");
  rep.lines.push_back("countable mode: K[" + tuple.support.str() + "] " + (cnt ? "is" : "is not") + " a member");
  rep.lines.push_back("relation " + cert.relation + ", bounded past stage " + cert.threshold.str());
  rep.check("iteration.finite_limit_failure", !fin, "finite-mode limit filter omits the omega-tuple kernel");
  rep.check("iteration.countable_limit_membership", cnt, "countable-mode limit filter contains the omega-tuple kernel");
  rep.check("pairs.fs_dc_certificate", v.accepted, v.accepted ? "verifier accepts" : join(v.failures));
  rep.data = {{"length", io::to_json(spec.length)},
              {"depth", spec.depth},
              {"finite_mode_member", fin},
              {"countable_mode_member", cnt},
              {"certificate", io::to_json(cert)}};
  rep.artifacts.push_back({"certificate", io::to_json(cert)});
  return rep;
}

struct MinimalityRow {
  std::string group;
  std::size_t subgroups = 0, normal_filters = 0, complete_filters = 0, cases = 0;
  std::size_t finite_agree = 0, countable_agree = 0;
  std::vector<std::string> mismatches;
  json generated = json::array();
};

MinimalityRow minimality_for(const groups::GroupPtr& G, const std::optional<std::vector<std::vector<Mask>>>& given,
                             bool finite, bool countable, std::size_t max_subsets) {
  MinimalityRow row;
  row.group = G->label();
  auto subs = oracle::subgroups_by_subsets(*G);
  auto normal = oracle::all_normal_filters(*G);
  std::vector<std::vector<Mask>> complete;
  for (const auto& f : normal)
    if (oracle::judge_family(*G, f).omega1_complete) complete.push_back(f);
  row.subgroups = subs.size();
  row.normal_filters = normal.size();
  row.complete_filters = complete.size();
  auto run = [&](const std::vector<Mask>& gens, bool keep) {
    ++row.cases;
    for (int m = 0; m < 2; ++m) {
      if ((m == 0 && !finite) || (m == 1 && !countable)) continue;
      auto mode = m == 0 ? filters::GenerationMode::finite_intersections : filters::GenerationMode::countable_intersections;
      auto F = filters::generate_normal_filter(G, gens, mode);
      auto got = F.members();
      std::sort(got.begin(), got.end());
      bool eq = got == oracle::least_containing(m == 0 ? normal : complete, gens);
      (m == 0 ? row.finite_agree : row.countable_agree) += eq;
      if (!eq && row.mismatches.size() < 4) {
        std::vector<std::string> g;
        for (Mask k : gens) g.push_back(groups::subgroup_str(groups::ExplicitSubgroup{k}, G.get()));
        row.mismatches.push_back(G->label() + " {" + join(g, ", ") + "}");
      }
      if (keep) row.generated.push_back({{"mode", m == 0 ? "finite" : "countable"}, {"filter", io::to_json(F)}});
    }
  };
  if (given) {
    for (const auto& gens : *given) run(gens, true);
  } else {
    if (subs.size() >= 64 || (std::uint64_t{1} << subs.size()) > max_subsets)
      throw Error(ErrorCode::OutOfBudget, G->label() + " has " + std::to_string(subs.size()) +
                                              " subgroups, too many generator subsets");
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << subs.size()); ++s) {
      std::vector<Mask> gens;
      for (std::size_t i = 0; i < subs.size(); ++i)
        if ((s >> i) & 1U) gens.push_back(subs[i]);
      run(gens, false);
    }
  }
  return row;
}

Report minimality_oracle(const json& j, const Options& opt) {
  Report rep;
  allow_keys(j, {"groups", "generators", "mode", "max_subsets"}, "minimality-oracle scenario", true);
  std::vector<groups::GroupPtr> gs;
  if (j.contains("groups")) {
    for (const auto& g : get_array(j, "groups"))
      gs.push_back(std::make_shared<const groups::FiniteGroup>(io::group_from_json(g)));
  } else {
    gs = groups::small_group_corpus();
  }
  std::string mode = get_string(j, "mode", "both");
  if (mode != "finite" && mode != "countable" && mode != "both") schema_error("mode must be finite, countable or both");
  bool finite = mode != "countable", countable = mode != "finite";
  std::size_t max_subsets = get_count(j, "max_subsets", 65536);
  std::optional<std::vector<std::vector<Mask>>> given;
  if (j.contains("generators")) {
    if (gs.size() != 1) schema_error("'generators' needs exactly one group");
    given.emplace();
    for (const auto& set : get_array(j, "generators")) {
      if (!set.is_array()) schema_error("each generator set is an array of subgroups");
      std::vector<Mask> gens;
      for (const auto& m : set) {
        auto sg = io::subgroup_from_json(m, gs[0].get());
        const auto* e = std::get_if<groups::ExplicitSubgroup>(&sg);
        if (!e) schema_error("generators of a finite group must be explicit subgroups");
        gens.push_back(e->mask);
      }
      given->push_back(std::move(gens));
    }
  }

  std::vector<MinimalityRow> rows(gs.size());
  const std::size_t jobs = std::max<std::size_t>(1, opt.jobs);
  for (std::size_t start = 0; start < gs.size(); start += jobs) {
    std::vector<std::future<MinimalityRow>> fs;
    for (std::size_t i = start; i < std::min(gs.size(), start + jobs); ++i)
      fs.push_back(std::async(std::launch::async, minimality_for, gs[i], given, finite, countable, max_subsets));
    for (std::size_t i = start; i < std::min(gs.size(), start + jobs); ++i) rows[i] = fs[i - start].get();
  }

  json out = json::array();
  std::size_t total = 0, agree = 0;
  std::vector<std::string> mismatches;
  for (const auto& r : rows) {
    std::size_t per = r.cases * (finite + countable);
    total += per;
    agree += r.finite_agree + r.countable_agree;
    for (const auto& m : r.mismatches) mismatches.push_back(m);
    rep.lines.push_back(r.group + ": " + std::to_string(r.subgroups) + " subgroups, " + std::to_string(r.normal_filters) +
                        " normal filters (" + std::to_string(r.complete_filters) + " complete), " +
                        std::to_string(r.finite_agree + r.countable_agree) + "/" + std::to_string(per) + " least");
    json row = {{"group", r.group},
                {"subgroups", r.subgroups},
                {"normal_filters", r.normal_filters},
                {"complete_filters", r.complete_filters},
                {"generator_sets", r.cases},
                {"finite_agree", r.finite_agree},
                {"countable_agree", r.countable_agree}};
    if (given) row["generated"] = r.generated;
    out.push_back(row);
  }
  rep.data = {{"mode", mode}, {"groups", out}};
  rep.check("filters.minimality", agree == total,
            std::to_string(agree) + "/" + std::to_string(total) + " generated filters equal the least normal filter" +
                (mismatches.empty() ? "" : "; first mismatches: " + join(mismatches)));
  return rep;
}

}  // namespace

Report run_scenario(const std::string& command, const json& j, const Options& opt) {
  if (!j.is_object()) schema_error("a scenario is a JSON object");
  if (j.contains("version") && j["version"] != "sfw.scenario/1")
    schema_error("unsupported scenario version " + j["version"].dump());
  if (j.contains("command") && j["command"] != command)
    schema_error("scenario is for " + j["command"].dump() + ", not " + command);
  static const std::map<std::string, std::function<Report(const json&, const Options&)>> table{
      {"audit-filter", audit_filter}, {"symmetry-lemma", symmetry_lemma}, {"limit-filter", limit_filter},
      {"hs-check", hs_check},         {"pairs-demo", pairs_demo},         {"fs-contrast", fs_contrast},
      {"minimality-oracle", minimality_oracle}};
  auto it = table.find(command);
  if (it == table.end()) schema_error("unknown command " + command);
  Report rep;
  try {
    rep = it->second(j, opt);
  } catch (const json::exception& e) {
    schema_error(e.what());
  }
  rep.command = command;
  rep.id = get_string(j, "id", command);
  return rep;
}

}  // namespace sfw::cli
