#pragma once

#include <memory>
#include <string>
#include <vector>

#include "sfw/hfset.hpp"

namespace sfw::forcing {

/// Bounded formula over an environment of variables x0, x1, ...
/// `forall_in(j, body)` binds a fresh variable whose index is the
/// environment size at that point and ranges over the elements of xj.
class Formula {
 public:
  enum class Kind { member, equal, conj, neg, forall_in };

  static Formula member(std::size_t i, std::size_t j);
  static Formula equal(std::size_t i, std::size_t j);
  static Formula conj(Formula a, Formula b);
  static Formula neg(Formula a);
  static Formula forall_in(std::size_t j, Formula body);

  Kind kind() const { return kind_; }
  std::size_t lhs() const { return i_; }
  std::size_t rhs() const { return j_; }
  const Formula& left() const { return *a_; }
  const Formula& right() const { return *b_; }

  /// Atoms have depth 0; each connective or quantifier adds one.
  std::size_t depth() const;
  /// Throws UnboundVariable when a variable index is not below the
  /// environment size in scope.
  void check_bound(std::size_t env_size) const;
  /// Truth in the hereditarily finite universe. Assumes check_bound passed.
  bool eval(std::vector<HSet>& env) const;
  bool eval(const std::vector<HSet>& env) const;

  std::string str() const;

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  Formula() = default;
  Kind kind_ = Kind::equal;
  std::size_t i_ = 0;
  std::size_t j_ = 0;
  std::shared_ptr<const Formula> a_;
  std::shared_ptr<const Formula> b_;
};

/// Every formula of depth <= max_depth over `free_vars` variables, in a
/// fixed canonical order (by depth, then construction order).
std::vector<Formula> formula_corpus(std::size_t free_vars, std::size_t max_depth);

}  // namespace sfw::forcing
