#include "sfw/poset.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "sfw/error.hpp"

namespace sfw::forcing {

namespace {

void set_bit(std::vector<std::uint64_t>& row, CondId q) { row[q / 64] |= std::uint64_t{1} << (q % 64); }

}  // namespace

Poset::Poset(std::vector<std::string> labels, const std::vector<std::pair<CondId, CondId>>& le_pairs, CondId top)
    : labels_(std::move(labels)), top_(top) {
  const std::size_t n = labels_.size();
  if (n == 0) throw Error(ErrorCode::InvalidTemplate, "a poset needs at least one condition");
  if (top >= n) throw Error(ErrorCode::ForeignCondition, "top " + std::to_string(top) + " outside the poset");
  const std::size_t words = (n + 63) / 64;
  up_.assign(n, std::vector<std::uint64_t>(words, 0));
  for (auto [p, q] : le_pairs) {
    if (p >= n || q >= n) throw Error(ErrorCode::ForeignCondition, "order pair outside the poset");
    set_bit(up_[p], q);
  }
  for (CondId p = 0; p < n; ++p) {
    bool minimal = true;
    for (CondId q = 0; q < n && minimal; ++q)
      if (q != p && le(q, p)) minimal = false;
    if (minimal) minimal_.push_back(p);
  }
  minimal_below_.resize(n);
  for (CondId m : minimal_)
    for (CondId p = 0; p < n; ++p)
      if (le(m, p)) minimal_below_[p].push_back(m);
}

Poset Poset::antichain_with_top(std::size_t n) {
  std::vector<std::string> labels{"1"};
  std::vector<std::pair<CondId, CondId>> pairs{{0, 0}};
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back("a" + std::to_string(i));
    pairs.emplace_back(i + 1, i + 1);
    pairs.emplace_back(i + 1, 0);
  }
  return Poset(std::move(labels), pairs, 0);
}

bool Poset::compatible(CondId p, CondId q) const {
  for (CondId m : minimal_below_[p])
    if (le(m, q)) return true;
  return false;
}

ValidationReport validate_poset(const Poset& P) {
  ValidationReport r;
  const std::size_t n = P.size();
  auto fail = [&](std::string msg) {
    r.valid = false;
    r.violations.push_back(std::move(msg));
  };
  for (CondId p = 0; p < n; ++p)
    if (!P.le(p, p)) fail("reflexivity: missing " + P.label(p) + " <= " + P.label(p));
  for (CondId p = 0; p < n; ++p)
    for (CondId q = 0; q < n; ++q) {
      if (!P.le(p, q)) continue;
      if (p != q && P.le(q, p)) {
        if (p < q) fail("antisymmetry: " + P.label(p) + " and " + P.label(q) + " are mutually below");
      }
      for (CondId s = 0; s < n; ++s)
        if (P.le(q, s) && !P.le(p, s))
          fail("transitivity: " + P.label(p) + " <= " + P.label(q) + " <= " + P.label(s) + " but not " +
               P.label(p) + " <= " + P.label(s));
    }
  for (CondId p = 0; p < n; ++p)
    if (!P.le(p, P.top())) fail("top: " + P.label(p) + " is not below " + P.label(P.top()));
  return r;
}

PosetAutomorphism PosetAutomorphism::identity(std::size_t n) {
  std::vector<CondId> id(n);
  std::iota(id.begin(), id.end(), CondId{0});
  return PosetAutomorphism{id, id};
}

PosetAutomorphism PosetAutomorphism::from_forward(const Poset& P, std::vector<CondId> forward) {
  const std::size_t n = P.size();
  if (forward.size() != n) throw Error(ErrorCode::InvalidTemplate, "automorphism has the wrong length");
  std::vector<CondId> inverse(n, n);
  for (CondId p = 0; p < n; ++p) {
    if (forward[p] >= n || inverse[forward[p]] != n)
      throw Error(ErrorCode::InvalidTemplate, "automorphism is not a bijection");
    inverse[forward[p]] = p;
  }
  if (forward[P.top()] != P.top()) throw Error(ErrorCode::InvalidTemplate, "automorphism moves top");
  for (CondId p = 0; p < n; ++p)
    for (CondId q = 0; q < n; ++q)
      if (P.le(p, q) != P.le(forward[p], forward[q]))
        throw Error(ErrorCode::InvalidTemplate, "map does not preserve the order");
  return PosetAutomorphism{std::move(forward), std::move(inverse)};
}

PosetAutomorphism PosetAutomorphism::compose(const PosetAutomorphism& inner) const {
  const std::size_t n = forward.size();
  PosetAutomorphism out{std::vector<CondId>(n), std::vector<CondId>(n)};
  for (CondId p = 0; p < n; ++p) {
    out.forward[p] = forward[inner.forward[p]];
    out.inverse[out.forward[p]] = p;
  }
  return out;
}

std::vector<PosetAutomorphism> automorphisms(const Poset& P) {
  const std::size_t n = P.size();
  std::vector<std::size_t> up_count(n, 0), down_count(n, 0);
  for (CondId p = 0; p < n; ++p)
    for (CondId q = 0; q < n; ++q)
      if (P.le(p, q)) {
        ++up_count[p];
        ++down_count[q];
      }
  std::vector<PosetAutomorphism> out;
  std::vector<CondId> image(n, n);
  std::vector<bool> used(n, false);
  auto extend = [&](auto&& self, CondId p) -> void {
    if (p == n) {
      out.push_back(PosetAutomorphism::from_forward(P, image));
      return;
    }
    for (CondId c = 0; c < n; ++c) {
      if (used[c] || up_count[c] != up_count[p] || down_count[c] != down_count[p]) continue;
      if ((p == P.top()) != (c == P.top())) continue;
      bool ok = true;
      for (CondId q = 0; q < p && ok; ++q)
        ok = P.le(p, q) == P.le(c, image[q]) && P.le(q, p) == P.le(image[q], c);
      ok = ok && P.le(p, p) == P.le(c, c);
      if (!ok) continue;
      used[c] = true;
      image[p] = c;
      self(self, p + 1);
      used[c] = false;
      image[p] = n;
    }
  };
  extend(extend, 0);
  std::sort(out.begin() + (out.empty() ? 0 : 1), out.end(),
            [](const PosetAutomorphism& a, const PosetAutomorphism& b) { return a.forward < b.forward; });
  return out;
}

PosetFilter principal_filter(const Poset& P, CondId p) {
  if (!P.contains(p)) throw Error(ErrorCode::ForeignCondition, "condition " + std::to_string(p) + " outside the poset");
  PosetFilter f{std::vector<bool>(P.size(), false)};
  for (CondId q = 0; q < P.size(); ++q) f.member[q] = P.le(p, q);
  return f;
}

std::vector<PosetFilter> maximal_filters(const Poset& P) {
  std::vector<PosetFilter> out;
  for (CondId m : P.minimal_elements()) out.push_back(principal_filter(P, m));
  return out;
}

bool is_filter(const Poset& P, const PosetFilter& F) {
  const std::size_t n = P.size();
  if (F.member.size() != n) return false;
  bool nonempty = false;
  for (CondId p = 0; p < n; ++p) {
    if (!F.member[p]) continue;
    nonempty = true;
    for (CondId q = 0; q < n; ++q)
      if (P.le(p, q) && !F.member[q]) return false;
  }
  if (!nonempty) return false;
  for (CondId p = 0; p < n; ++p)
    for (CondId q = p + 1; q < n; ++q) {
      if (!F.member[p] || !F.member[q]) continue;
      bool below = false;
      for (CondId r = 0; r < n && !below; ++r) below = F.member[r] && P.le(r, p) && P.le(r, q);
      if (!below) return false;
    }
  return true;
}

std::vector<Poset> poset_corpus(std::size_t max_size) {
  if (max_size > 6) throw Error(ErrorCode::OutOfBudget, "poset corpus is limited to 6 conditions");
  std::vector<Poset> out;
  const char* names[] = {"a", "b", "c", "d", "e"};
  for (std::size_t n = 1; n <= max_size; ++n) {
    const std::size_t k = n - 1;  // conditions other than top
    std::vector<std::pair<std::size_t, std::size_t>> slots;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j)
        if (i != j) slots.emplace_back(i, j);
    std::vector<std::size_t> perm(k);
    std::map<std::uint64_t, std::uint64_t> canon;  // canonical code -> representative
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << slots.size()); ++mask) {
      auto rel = [&](std::size_t i, std::size_t j) {
        for (std::size_t s = 0; s < slots.size(); ++s)
          if (slots[s].first == i && slots[s].second == j) return ((mask >> s) & 1U) != 0;
        return false;
      };
      bool ok = true;
      for (std::size_t i = 0; i < k && ok; ++i)
        for (std::size_t j = 0; j < k && ok; ++j) {
          if (!rel(i, j)) continue;
          if (rel(j, i)) ok = false;
          for (std::size_t l = 0; l < k && ok; ++l)
            if (rel(j, l) && !rel(i, l)) ok = false;
        }
      if (!ok) continue;
      std::iota(perm.begin(), perm.end(), std::size_t{0});
      std::uint64_t best = ~std::uint64_t{0};
      do {
        std::uint64_t code = 0;
        for (std::size_t s = 0; s < slots.size(); ++s)
          if (rel(slots[s].first, slots[s].second)) {
            // position of (perm[i], perm[j]) in slot order
            for (std::size_t t = 0; t < slots.size(); ++t)
              if (slots[t].first == perm[slots[s].first] && slots[t].second == perm[slots[s].second])
                code |= std::uint64_t{1} << t;
          }
        best = std::min(best, code);
      } while (std::next_permutation(perm.begin(), perm.end()));
      canon.emplace(best, best);
    }
    for (auto [code, _] : canon) {
      std::vector<std::string> labels{"1"};
      for (std::size_t i = 0; i < k; ++i) labels.emplace_back(names[i]);
      std::vector<std::pair<CondId, CondId>> pairs;
      for (CondId p = 0; p < n; ++p) {
        pairs.emplace_back(p, p);
        pairs.emplace_back(p, 0);
      }
      for (std::size_t s = 0; s < slots.size(); ++s)
        if ((code >> s) & 1U) pairs.emplace_back(slots[s].first + 1, slots[s].second + 1);
      out.emplace_back(std::move(labels), pairs, 0);
    }
  }
  return out;
}

Poset product(const Poset& P, const Poset& Q) {
  const std::size_t m = Q.size();
  std::vector<std::string> labels;
  for (CondId p = 0; p < P.size(); ++p)
    for (CondId q = 0; q < m; ++q) labels.push_back("(" + P.label(p) + "," + Q.label(q) + ")");
  return Poset::from_predicate(
      std::move(labels), [&](CondId x, CondId y) { return P.le(x / m, y / m) && Q.le(x % m, y % m); },
      P.top() * m + Q.top());
}

}  // namespace sfw::forcing
