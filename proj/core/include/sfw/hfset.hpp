#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace sfw::forcing {

/// Handle to an interned hereditarily finite set. Two handles are equal iff
/// the sets are equal (extensionality is structural after interning).
class HSet {
 public:
  HSet() = default;

  static HSet make(std::vector<HSet> elements);
  static HSet empty() { return HSet(); }
  /// von Neumann natural n.
  static HSet natural(std::uint64_t n);
  /// Kuratowski pair {{a}, {a, b}}.
  static HSet kuratowski(HSet a, HSet b);

  const std::vector<HSet>& elements() const;
  std::size_t size() const { return elements().size(); }
  bool contains(HSet x) const;
  std::uint32_t id() const { return id_; }

  /// Canonical nested-brace rendering with naturals abbreviated as digits.
  std::string str() const;

  friend bool operator==(HSet a, HSet b) { return a.id_ == b.id_; }
  friend bool operator<(HSet a, HSet b) { return a.id_ < b.id_; }

 private:
  explicit HSet(std::uint32_t id) : id_(id) {}
  std::uint32_t id_ = 0;  // 0 is the empty set
};

/// Decodes a Kuratowski pair; nullopt-like false when `p` is not one.
bool decode_kuratowski(HSet p, HSet& first, HSet& second);

/// Canonical total order on hereditarily finite sets, independent of interning order.
bool canonical_less(HSet a, HSet b);

}  // namespace sfw::forcing

template <>
struct std::hash<sfw::forcing::HSet> {
  std::size_t operator()(sfw::forcing::HSet h) const noexcept { return h.id(); }
};
