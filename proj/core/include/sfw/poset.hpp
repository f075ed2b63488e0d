#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "sfw/name.hpp"

namespace sfw::forcing {

/// A finite forcing poset. Conditions are 0..size()-1; `le(p, q)` means p is
/// stronger than (below) q. The relation is stored as given; use
/// validate_poset to check the axioms.
class Poset {
 public:
  Poset() : Poset({"1"}, {{0, 0}}, 0) {}
  /// `le_pairs` lists (p, q) with p <= q; reflexive pairs are NOT added implicitly.
  Poset(std::vector<std::string> labels, const std::vector<std::pair<CondId, CondId>>& le_pairs, CondId top);

  /// Builds from an explicit predicate, adding nothing.
  template <class Le>
  static Poset from_predicate(std::vector<std::string> labels, Le&& le, CondId top) {
    std::vector<std::pair<CondId, CondId>> pairs;
    for (CondId p = 0; p < labels.size(); ++p)
      for (CondId q = 0; q < labels.size(); ++q)
        if (le(p, q)) pairs.emplace_back(p, q);
    return Poset(std::move(labels), pairs, top);
  }

  static Poset trivial() { return Poset(); }
  /// Top above n pairwise incomparable atoms a0..a{n-1}.
  static Poset antichain_with_top(std::size_t n);

  std::size_t size() const { return labels_.size(); }
  CondId top() const { return top_; }
  const std::string& label(CondId p) const { return labels_[p]; }
  const std::vector<std::string>& labels() const { return labels_; }
  bool contains(CondId p) const { return p < labels_.size(); }

  bool le(CondId p, CondId q) const { return (up_[p][q / 64] >> (q % 64)) & 1U; }
  bool compatible(CondId p, CondId q) const;

  /// Conditions with nothing strictly below them, increasing.
  const std::vector<CondId>& minimal_elements() const { return minimal_; }
  /// Minimal conditions below p, increasing.
  const std::vector<CondId>& minimal_below(CondId p) const { return minimal_below_[p]; }

  friend bool operator==(const Poset& a, const Poset& b) {
    return a.labels_ == b.labels_ && a.top_ == b.top_ && a.up_ == b.up_;
  }

 private:
  std::vector<std::string> labels_;
  CondId top_ = 0;
  std::vector<std::vector<std::uint64_t>> up_;
  std::vector<CondId> minimal_;
  std::vector<std::vector<CondId>> minimal_below_;
};

struct ValidationReport {
  bool valid = true;
  std::vector<std::string> violations;
};

ValidationReport validate_poset(const Poset& p);

/// Order automorphism given by its forward and inverse condition maps.
struct PosetAutomorphism {
  std::vector<CondId> forward;
  std::vector<CondId> inverse;

  static PosetAutomorphism identity(std::size_t n);
  /// Builds from `forward`; checks bijectivity, order preservation both ways and
  /// that top is fixed. Throws InvalidTemplate otherwise.
  static PosetAutomorphism from_forward(const Poset& p, std::vector<CondId> forward);

  CondId operator()(CondId c) const { return forward[c]; }
  PosetAutomorphism compose(const PosetAutomorphism& inner) const;  // this after inner
  PosetAutomorphism inverted() const { return PosetAutomorphism{inverse, forward}; }
  friend bool operator==(const PosetAutomorphism&, const PosetAutomorphism&) = default;
};

/// All order automorphisms, identity first, then lexicographic by forward map.
std::vector<PosetAutomorphism> automorphisms(const Poset& p);

/// Membership vector over the conditions of a poset.
struct PosetFilter {
  std::vector<bool> member;
  bool contains(CondId p) const { return p < member.size() && member[p]; }
};

/// Upward closure of p.
PosetFilter principal_filter(const Poset& P, CondId p);
/// On a finite poset the maximal filters are the principal filters of the
/// minimal conditions; returned in increasing order of that condition.
std::vector<PosetFilter> maximal_filters(const Poset& P);
/// Nonempty, upward closed and downward directed.
bool is_filter(const Poset& P, const PosetFilter& F);

/// Non-isomorphic posets with a top element and at most `max_size`
/// conditions, top is condition 0, in a canonical order (size, then code).
std::vector<Poset> poset_corpus(std::size_t max_size);

/// Coordinatewise product; the condition (p, q) gets id p * |Q| + q.
Poset product(const Poset& P, const Poset& Q);

}  // namespace sfw::forcing
