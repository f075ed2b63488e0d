#include "sfw/groups.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "sfw/error.hpp"
#include "sfw/forcing.hpp"

namespace sfw::groups {

namespace {

std::string cycle_notation(const std::vector<std::uint32_t>& p) {
  std::string out;
  std::vector<bool> seen(p.size(), false);
  for (std::uint32_t i = 0; i < p.size(); ++i) {
    if (seen[i] || p[i] == i) continue;
    out += "(";
    for (std::uint32_t j = i; !seen[j]; j = p[j]) {
      seen[j] = true;
      if (out.back() != '(') out += " ";
      out += std::to_string(j);
    }
    out += ")";
  }
  return out.empty() ? "()" : out;
}

std::vector<std::vector<Elem>> table_from(std::size_t n, auto&& mul) {
  std::vector<std::vector<Elem>> t(n, std::vector<Elem>(n));
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) t[a][b] = mul(a, b);
  return t;
}

}  // namespace

FiniteGroup::FiniteGroup(std::string label, std::vector<std::string> names, std::vector<std::vector<Elem>> table)
    : label_(std::move(label)), names_(std::move(names)), table_(std::move(table)) {
  const std::size_t n = table_.size();
  if (n == 0 || n > kMaxOrder)
    throw Error(ErrorCode::GroupTooLarge, "group order must be between 1 and " + std::to_string(kMaxOrder));
  if (names_.size() != n) throw Error(ErrorCode::InvalidTemplate, "one name per group element");
  for (const auto& row : table_) {
    if (row.size() != n) throw Error(ErrorCode::InvalidTemplate, "multiplication table is not square");
    for (Elem x : row)
      if (x >= n) throw Error(ErrorCode::InvalidTemplate, "multiplication table leaves the group");
  }
  for (Elem a = 0; a < n; ++a)
    if (table_[0][a] != a || table_[a][0] != a) throw Error(ErrorCode::InvalidTemplate, "element 0 is not the identity");
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      for (Elem c = 0; c < n; ++c)
        if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
          throw Error(ErrorCode::InvalidTemplate, "multiplication is not associative");
  inverse_.assign(n, 0);
  for (Elem a = 0; a < n; ++a) {
    auto it = std::find(table_[a].begin(), table_[a].end(), Elem{0});
    if (it == table_[a].end() || table_[it - table_[a].begin()][a] != 0)
      throw Error(ErrorCode::InvalidTemplate, "element without inverse");
    inverse_[a] = static_cast<Elem>(it - table_[a].begin());
  }
}

FiniteGroup FiniteGroup::from_permutations(std::string label, const std::vector<std::vector<std::uint32_t>>& gens) {
  std::size_t degree = gens.empty() ? 0 : gens[0].size();
  for (const auto& g : gens)
    if (g.size() != degree) throw Error(ErrorCode::InvalidTemplate, "generators of different degree");
  std::vector<std::uint32_t> id(degree);
  for (std::uint32_t i = 0; i < degree; ++i) id[i] = i;
  std::vector<std::vector<std::uint32_t>> elems{id};
  std::map<std::vector<std::uint32_t>, Elem> index{{id, 0}};
  auto compose = [](const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
    // (a b)(x) = a(b(x))
    std::vector<std::uint32_t> r(a.size());
    for (std::size_t x = 0; x < a.size(); ++x) r[x] = a[b[x]];
    return r;
  };
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (const auto& g : gens) {
      auto next = compose(g, elems[i]);
      if (index.emplace(next, static_cast<Elem>(elems.size())).second) {
        elems.push_back(next);
        if (elems.size() > kMaxOrder) throw Error(ErrorCode::GroupTooLarge, "generated group exceeds order 64");
      }
    }
  std::vector<std::string> names;
  for (const auto& p : elems) names.push_back(cycle_notation(p));
  auto table = table_from(elems.size(), [&](Elem a, Elem b) { return index.at(compose(elems[a], elems[b])); });
  FiniteGroup G(std::move(label), std::move(names), std::move(table));
  G.perms_ = std::move(elems);
  return G;
}

FiniteGroup FiniteGroup::cyclic(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t k = 0; k < n; ++k) names.push_back(k == 0 ? "e" : (k == 1 ? "r" : "r^" + std::to_string(k)));
  return FiniteGroup("C" + std::to_string(n), names,
                     table_from(n, [&](Elem a, Elem b) { return static_cast<Elem>((a + b) % n); }));
}

FiniteGroup FiniteGroup::klein() {
  FiniteGroup g = elementary_abelian(2);
  g.label_ = "V4";
  return g;
}

FiniteGroup FiniteGroup::symmetric3() { return from_permutations("S3", {{1, 0, 2}, {1, 2, 0}}); }

FiniteGroup FiniteGroup::dihedral(std::size_t n) {
  std::vector<std::uint32_t> rot(n), ref(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    rot[i] = static_cast<std::uint32_t>((i + 1) % n);
    ref[i] = static_cast<std::uint32_t>((n - i) % n);
  }
  return from_permutations("D" + std::to_string(n), {rot, ref});
}

FiniteGroup FiniteGroup::quaternion() {
  // Element 2*u + s encodes (-1)^s * unit u, units 1, i, j, k.
  static const int unit[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int sign[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
  const char* unames[] = {"1", "i", "j", "k"};
  std::vector<std::string> names;
  for (int e = 0; e < 8; ++e) names.push_back(std::string(e % 2 ? "-" : "") + unames[e / 2]);
  return FiniteGroup("Q8", names, table_from(8, [&](Elem a, Elem b) {
                       int u = unit[a / 2][b / 2];
                       int s = (a % 2 + b % 2 + sign[a / 2][b / 2]) % 2;
                       return static_cast<Elem>(2 * u + s);
                     }));
}

FiniteGroup FiniteGroup::elementary_abelian(std::size_t k) {
  if (k > 6) throw Error(ErrorCode::GroupTooLarge, "(Z/2)^k needs k <= 6");
  const std::size_t n = std::size_t{1} << k;
  std::vector<std::string> names;
  for (std::size_t e = 0; e < n; ++e) {
    if (e == 0) {
      names.push_back("e");
      continue;
    }
    std::string s = "g{";
    bool first = true;
    for (std::size_t b = 0; b < k; ++b)
      if ((e >> b) & 1U) {
        s += (first ? "" : ",") + std::to_string(b);
        first = false;
      }
    names.push_back(s + "}");
  }
  std::string label = k == 0 ? "C1" : (k == 1 ? "C2" : "C2^" + std::to_string(k));
  return FiniteGroup(label, names, table_from(n, [](Elem a, Elem b) { return a ^ b; }));
}

FiniteGroup FiniteGroup::direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  const std::size_t m = b.order();
  if (a.order() * m > kMaxOrder) throw Error(ErrorCode::GroupTooLarge, "direct product exceeds order 64");
  std::vector<std::string> names;
  for (Elem x = 0; x < a.order(); ++x)
    for (Elem y = 0; y < m; ++y) names.push_back("(" + a.name(x) + "," + b.name(y) + ")");
  return FiniteGroup(a.label() + "x" + b.label(), names, table_from(a.order() * m, [&](Elem x, Elem y) {
                       return static_cast<Elem>(a.mul(x / m, y / m) * m + b.mul(x % m, y % m));
                     }));
}

bool FiniteGroup::abelian() const {
  for (Elem a = 0; a < order(); ++a)
    for (Elem b = 0; b < order(); ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

std::vector<GroupPtr> small_group_corpus() {
  std::vector<GroupPtr> out;
  for (std::size_t n = 1; n <= 8; ++n) out.push_back(std::make_shared<FiniteGroup>(FiniteGroup::cyclic(n)));
  out.push_back(std::make_shared<FiniteGroup>(FiniteGroup::klein()));
  out.push_back(std::make_shared<FiniteGroup>(FiniteGroup::symmetric3()));
  out.push_back(std::make_shared<FiniteGroup>(FiniteGroup::dihedral(4)));
  out.push_back(std::make_shared<FiniteGroup>(FiniteGroup::quaternion()));
  out.push_back(
      std::make_shared<FiniteGroup>(FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(4))));
  out.push_back(std::make_shared<FiniteGroup>(FiniteGroup::elementary_abelian(3)));
  return out;
}

Mask full_mask(const FiniteGroup& G) {
  return G.order() == 64 ? ~Mask{0} : ((Mask{1} << G.order()) - 1);
}

bool is_subgroup(const FiniteGroup& G, Mask m) {
  if (!has(m, 0) || (m & ~full_mask(G)) != 0) return false;
  for (Elem a = 0; a < G.order(); ++a) {
    if (!has(m, a)) continue;
    if (!has(m, G.inv(a))) return false;
    for (Elem b = 0; b < G.order(); ++b)
      if (has(m, b) && !has(m, G.mul(a, b))) return false;
  }
  return true;
}

Mask generated_subgroup(const FiniteGroup& G, Mask gens) {
  Mask cur = (gens | 1) & full_mask(G);
  while (true) {
    Mask next = cur;
    for (Elem a = 0; a < G.order(); ++a)
      if (has(cur, a))
        for (Elem b = 0; b < G.order(); ++b)
          if (has(cur, b)) next |= Mask{1} << G.mul(a, b);
    if (next == cur) return cur;
    cur = next;
  }
}

std::vector<Mask> subgroup_lattice(const FiniteGroup& G) {
  std::set<Mask> found{trivial_mask()};
  std::vector<Mask> queue{trivial_mask()};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    Mask h = queue[i];
    for (Elem g = 0; g < G.order(); ++g) {
      if (has(h, g)) continue;
      Mask k = generated_subgroup(G, h | (Mask{1} << g));
      if (found.insert(k).second) queue.push_back(k);
    }
  }
  std::vector<Mask> out(found.begin(), found.end());
  std::sort(out.begin(), out.end(), [](Mask a, Mask b) {
    int pa = __builtin_popcountll(a), pb = __builtin_popcountll(b);
    return pa != pb ? pa < pb : a < b;
  });
  return out;
}

Mask conjugate(const FiniteGroup& G, Elem g, Mask m) {
  Mask out = 0;
  for (Elem k = 0; k < G.order(); ++k)
    if (has(m, k)) out |= Mask{1} << G.mul(G.mul(g, k), G.inv(g));
  return out;
}

Mask normal_core(const FiniteGroup& G, Mask m) {
  Mask out = m;
  for (Elem g = 0; g < G.order(); ++g) out &= conjugate(G, g, m);
  return out;
}

std::string mask_str(const FiniteGroup& G, Mask m) {
  std::string out = "{";
  bool first = true;
  for (Elem g = 0; g < G.order(); ++g)
    if (has(m, g)) {
      out += (first ? "" : ", ") + G.name(g);
      first = false;
    }
  return out + "}";
}

GroupAction GroupAction::by_permutations(GroupPtr g) {
  if (g->permutations().empty())
    throw Error(ErrorCode::InvalidTemplate, "group " + g->label() + " carries no permutation representation");
  GroupAction a;
  a.poset_size = g->permutations()[0].size();
  a.act = [g](Elem e, forcing::CondId c) { return static_cast<forcing::CondId>(g->permutations()[e][c]); };
  a.group = std::move(g);
  return a;
}

std::string subgroup_str(const Subgroup& s, const FiniteGroup* G) {
  if (const auto* k = std::get_if<SupportKernel>(&s)) return "K[" + k->support.str() + "]";
  Mask m = std::get<ExplicitSubgroup>(s).mask;
  if (G) return mask_str(*G, m);
  std::string out = "{";
  bool first = true;
  for (Elem g = 0; g < 64; ++g)
    if (has(m, g)) {
      out += (first ? "" : ", ") + std::to_string(g);
      first = false;
    }
  return out + "}";
}

ExplicitSubgroup stabilizer(const GroupAction& A, forcing::Name x) {
  forcing::check_conditions(x, A.poset_size);
  Mask m = 0;
  for (Elem g = 0; g < A.group->order(); ++g) {
    auto moved = forcing::apply_automorphism([&](forcing::CondId c) { return A.act(g, c); }, x);
    if (moved == x) m |= Mask{1} << g;
  }
  return ExplicitSubgroup{m};
}

Subgroup subgroup_intersect(const Subgroup& a, const Subgroup& b) {
  if (a.index() != b.index())
    throw Error(ErrorCode::MixedRepresentation, "cannot intersect an explicit subgroup with a support kernel");
  if (const auto* x = std::get_if<ExplicitSubgroup>(&a)) return ExplicitSubgroup{x->mask & std::get<ExplicitSubgroup>(b).mask};
  return SupportKernel{std::get<SupportKernel>(a).support.unite(std::get<SupportKernel>(b).support)};
}

Subgroup conjugate_subgroup(const FiniteGroup* G, Elem g, const Subgroup& K) {
  if (std::holds_alternative<SupportKernel>(K)) return K;
  if (!G) throw Error(ErrorCode::AmbientMismatch, "explicit conjugation needs the ambient group");
  if (g >= G->order()) throw Error(ErrorCode::AmbientMismatch, "conjugator outside the group");
  return ExplicitSubgroup{conjugate(*G, g, std::get<ExplicitSubgroup>(K).mask)};
}

ExplicitHom ExplicitHom::make(GroupPtr domain, GroupPtr codomain, std::vector<Elem> map) {
  if (map.size() != domain->order()) throw Error(ErrorCode::InvalidTemplate, "homomorphism table has the wrong length");
  for (Elem x : map)
    if (x >= codomain->order()) throw Error(ErrorCode::CodomainMismatch, "homomorphism leaves the codomain");
  for (Elem a = 0; a < domain->order(); ++a)
    for (Elem b = 0; b < domain->order(); ++b)
      if (map[domain->mul(a, b)] != codomain->mul(map[a], map[b]))
        throw Error(ErrorCode::InvalidTemplate, "map is not a homomorphism");
  return ExplicitHom{std::move(domain), std::move(codomain), std::move(map)};
}

bool ExplicitHom::injective() const {
  std::set<Elem> img(map.begin(), map.end());
  return img.size() == map.size();
}

Restriction make_restriction(const ord::Ord& from, const ord::Ord& to) {
  if (to > from) throw Error(ErrorCode::StageMismatch, "restriction target " + to.str() + " above " + from.str());
  return Restriction{from, to};
}

Restriction compose(const Restriction& outer, const Restriction& inner) {
  if (!(outer.from == inner.to)) throw Error(ErrorCode::StageMismatch, "restrictions do not compose");
  return Restriction{inner.from, outer.to};
}

namespace {

ord::CountableSetDescriptor all_stages_below(const ord::Ord& beta) {
  if (!beta.is_countable())
    throw Error(ErrorCode::StageOutOfRange, "stages below " + beta.str() + " are not countably described");
  return ord::CountableSetDescriptor::segment(beta);
}

}  // namespace

Subgroup preimage_subgroup(const GroupHom& h, const Subgroup& H) {
  if (const auto* e = std::get_if<ExplicitHom>(&h)) {
    const auto* s = std::get_if<ExplicitSubgroup>(&H);
    if (!s || (s->mask & ~full_mask(*e->codomain)) != 0 || !is_subgroup(*e->codomain, s->mask))
      throw Error(ErrorCode::CodomainMismatch, "subgroup does not live in the codomain");
    Mask m = 0;
    for (Elem g = 0; g < e->domain->order(); ++g)
      if (has(s->mask, e->map[g])) m |= Mask{1} << g;
    return ExplicitSubgroup{m};
  }
  const auto* k = std::get_if<SupportKernel>(&H);
  if (!k) throw Error(ErrorCode::CodomainMismatch, "symbolic homomorphisms act on support kernels");
  if (const auto* r = std::get_if<Restriction>(&h)) {
    if (!(k->support.below(r->to) == k->support))
      throw Error(ErrorCode::CodomainMismatch, k->support.str() + " is not below stage " + r->to.str());
    return *k;
  }
  const auto& inc = std::get<SymbolicInclusion>(h);
  return SupportKernel{k->support.below(inc.from)};
}

Subgroup kernel_of(const GroupHom& h) {
  if (std::holds_alternative<ExplicitHom>(h)) return preimage_subgroup(h, ExplicitSubgroup{trivial_mask()});
  if (const auto* r = std::get_if<Restriction>(&h)) return SupportKernel{all_stages_below(r->to)};
  const auto& inc = std::get<SymbolicInclusion>(h);
  return SupportKernel{all_stages_below(inc.from)};
}

}  // namespace sfw::groups
