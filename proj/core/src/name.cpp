#include "sfw/name.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

namespace sfw::forcing {

namespace {

struct Key {
  std::vector<std::pair<std::uint32_t, CondId>> entries;
  friend bool operator==(const Key&, const Key&) = default;
};

struct KeyHash {
  std::size_t operator()(const Key& k) const noexcept {
    std::size_t h = k.entries.size();
    for (auto [c, p] : k.entries) {
      h ^= c + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      h ^= std::hash<CondId>{}(p) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }
};

struct Node {
  std::vector<NameEntry> entries;
  std::uint32_t rank = 0;
};

class Interner {
 public:
  Interner() {
    nodes_.push_back(Node{});
    index_.emplace(Key{}, 0);
  }

  std::uint32_t intern(std::vector<NameEntry> entries) {
    Key key;
    key.entries.reserve(entries.size());
    for (const auto& e : entries) key.entries.emplace_back(e.child.id(), e.cond);
    {
      std::shared_lock lock(mu_);
      if (auto it = index_.find(key); it != index_.end()) return it->second;
    }
    std::uint32_t rank = 0;
    for (const auto& e : entries) rank = std::max(rank, e.child.rank() + 1);
    std::unique_lock lock(mu_);
    if (auto it = index_.find(key); it != index_.end()) return it->second;
    auto id = static_cast<std::uint32_t>(nodes_.size());
    nodes_.push_back(Node{std::move(entries), rank});
    index_.emplace(std::move(key), id);
    return id;
  }

  const Node& node(std::uint32_t id) const {
    std::shared_lock lock(mu_);
    return nodes_[id];
  }

  std::size_t size() const {
    std::shared_lock lock(mu_);
    return nodes_.size();
  }

 private:
  mutable std::shared_mutex mu_;
  std::deque<Node> nodes_;
  std::unordered_map<Key, std::uint32_t, KeyHash> index_;
};

Interner& interner() {
  static Interner t;
  return t;
}

}  // namespace

Name Name::make(std::vector<NameEntry> entries) {
  std::sort(entries.begin(), entries.end());
  entries.erase(std::unique(entries.begin(), entries.end()), entries.end());
  return Name(interner().intern(std::move(entries)));
}

const std::vector<NameEntry>& Name::entries() const { return interner().node(id_).entries; }

std::uint32_t Name::rank() const { return interner().node(id_).rank; }

std::size_t interned_name_count() { return interner().size(); }

}  // namespace sfw::forcing
