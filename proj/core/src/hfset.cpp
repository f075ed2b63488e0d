#include "sfw/hfset.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <unordered_map>

namespace sfw::forcing {

namespace {

struct VecHash {
  std::size_t operator()(const std::vector<std::uint32_t>& v) const noexcept {
    std::size_t h = v.size();
    for (auto x : v) h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

struct Node {
  std::vector<HSet> elements;
  std::vector<std::uint32_t> key;
  std::optional<std::uint64_t> natural;
};

class Table {
 public:
  Table() {
    nodes_.push_back(Node{{}, {}, 0});
    index_.emplace(std::vector<std::uint32_t>{}, 0);
  }

  std::uint32_t intern(std::vector<std::uint32_t> key, std::vector<HSet> elements) {
    {
      std::shared_lock lock(mu_);
      auto it = index_.find(key);
      if (it != index_.end()) return it->second;
    }
    std::unique_lock lock(mu_);
    auto it = index_.find(key);
    if (it != index_.end()) return it->second;
    auto id = static_cast<std::uint32_t>(nodes_.size());
    std::optional<std::uint64_t> nat;
    // n+1 = n U {n}: the elements are exactly 0..n, each a natural.
    bool is_nat = true;
    for (std::size_t i = 0; i < elements.size() && is_nat; ++i) {
      const auto& n = nodes_[elements[i].id()].natural;
      is_nat = n && *n < elements.size();
    }
    if (is_nat) nat = elements.size();
    nodes_.push_back(Node{std::move(elements), key, nat});
    index_.emplace(std::move(key), id);
    return id;
  }

  const Node& node(std::uint32_t id) const {
    std::shared_lock lock(mu_);
    return nodes_[id];
  }

 private:
  mutable std::shared_mutex mu_;
  std::deque<Node> nodes_;
  std::unordered_map<std::vector<std::uint32_t>, std::uint32_t, VecHash> index_;
};

Table& table() {
  static Table t;
  return t;
}

}  // namespace

HSet HSet::make(std::vector<HSet> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  std::vector<std::uint32_t> key;
  key.reserve(elements.size());
  for (auto e : elements) key.push_back(e.id_);
  return HSet(table().intern(std::move(key), std::move(elements)));
}

HSet HSet::natural(std::uint64_t n) {
  static std::mutex mu;
  static std::vector<HSet> naturals{HSet()};
  std::lock_guard lock(mu);
  while (naturals.size() <= n) naturals.push_back(make(std::vector<HSet>(naturals.begin(), naturals.end())));
  return naturals[n];
}

HSet HSet::kuratowski(HSet a, HSet b) { return make({make({a}), make({a, b})}); }

const std::vector<HSet>& HSet::elements() const { return table().node(id_).elements; }

bool HSet::contains(HSet x) const {
  const auto& e = elements();
  return std::binary_search(e.begin(), e.end(), x);
}

std::string HSet::str() const {
  const Node& n = table().node(id_);
  if (n.natural) return std::to_string(*n.natural);
  std::vector<std::string> parts;
  for (auto e : n.elements) parts.push_back(e.str());
  std::sort(parts.begin(), parts.end());
  std::string out = "{";
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? ", " : "") + parts[i];
  return out + "}";
}

bool decode_kuratowski(HSet p, HSet& first, HSet& second) {
  const auto& e = p.elements();
  if (e.size() == 1) {
    // {{a}} = (a, a)
    const auto& s = e[0].elements();
    if (s.size() != 1) return false;
    first = second = s[0];
    return true;
  }
  if (e.size() != 2) return false;
  HSet single = e[0].size() == 1 ? e[0] : e[1];
  HSet pair = e[0].size() == 1 ? e[1] : e[0];
  if (single.size() != 1 || pair.size() != 2) return false;
  HSet a = single.elements()[0];
  if (!pair.contains(a)) return false;
  first = a;
  second = pair.elements()[0] == a ? pair.elements()[1] : pair.elements()[0];
  return true;
}

bool canonical_less(HSet a, HSet b) {
  if (a == b) return false;
  if (a.size() != b.size()) return a.size() < b.size();
  auto ea = a.elements();
  auto eb = b.elements();
  std::sort(ea.begin(), ea.end(), canonical_less);
  std::sort(eb.begin(), eb.end(), canonical_less);
  for (std::size_t i = 0; i < ea.size(); ++i) {
    if (ea[i] == eb[i]) continue;
    return canonical_less(ea[i], eb[i]);
  }
  return false;
}

}  // namespace sfw::forcing
