#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace sfw::forcing {

using CondId = std::uint64_t;

struct NameEntry;

/// Handle to a hash-consed forcing name: a finite set of (name, condition)
/// pairs. Structurally equal names share one handle, so `a == b` is literal
/// name equality.
class Name {
 public:
  Name() = default;  // the empty name

  static Name make(std::vector<NameEntry> entries);

  const std::vector<NameEntry>& entries() const;
  std::uint32_t rank() const;
  bool empty() const { return id_ == 0; }
  std::uint32_t id() const { return id_; }

  friend bool operator==(Name a, Name b) { return a.id_ == b.id_; }
  friend bool operator<(Name a, Name b) { return a.id_ < b.id_; }

 private:
  explicit Name(std::uint32_t id) : id_(id) {}
  std::uint32_t id_ = 0;
};

struct NameEntry {
  Name child;
  CondId cond = 0;

  friend bool operator==(const NameEntry&, const NameEntry&) = default;
  friend bool operator<(const NameEntry& a, const NameEntry& b) {
    return a.child == b.child ? a.cond < b.cond : a.child < b.child;
  }
};

/// Number of distinct names interned so far (diagnostics only).
std::size_t interned_name_count();

}  // namespace sfw::forcing

template <>
struct std::hash<sfw::forcing::Name> {
  std::size_t operator()(sfw::forcing::Name n) const noexcept { return n.id(); }
};
