#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sfw::ord {

enum class AtomCofinality { omega, ge_omega1 };

struct CardinalAtom {
  std::string name;
  AtomCofinality cofinality_class;
};

/// Declared cardinal atoms in increasing order. Index 0 is always `w`
/// (omega, cofinality omega).
class AtomTable {
 public:
  /// `w`, `w1` (ge_omega1) and `aw` (aleph_omega, cofinality omega).
  static std::shared_ptr<const AtomTable> standard();

  /// Atoms above omega, in increasing declared order. Throws on duplicates.
  static std::shared_ptr<const AtomTable> make(std::vector<CardinalAtom> above_omega);

  std::size_t size() const { return atoms_.size(); }
  const CardinalAtom& operator[](std::size_t i) const { return atoms_[i]; }
  std::optional<std::size_t> find(std::string_view name) const;
  bool same_as(const AtomTable& other) const;

 private:
  std::vector<CardinalAtom> atoms_;
};

using AtomTablePtr = std::shared_ptr<const AtomTable>;

/// One CNF summand atom^exponent * coefficient.
struct Term {
  std::uint32_t atom = 0;
  std::uint32_t exponent = 1;
  std::uint64_t coefficient = 1;

  friend bool operator==(const Term&, const Term&) = default;
};

enum class OrdClass { zero, successor, cof_omega, cof_ge_omega1 };

/// Ordinal in Cantor normal form over declared atoms: a strictly decreasing
/// list of terms followed by a natural-number tail. The term ordering is
/// lexicographic on (atom, exponent), which is faithful because every atom
/// is a cardinal strictly above every power of a smaller atom.
class Ord {
 public:
  Ord();  // zero over the standard table
  explicit Ord(std::uint64_t n, AtomTablePtr table = AtomTable::standard());
  Ord(AtomTablePtr table, std::vector<Term> terms, std::uint64_t finite);

  static Ord natural(std::uint64_t n, AtomTablePtr table = AtomTable::standard());
  /// atom^exponent * coefficient; exponent 0 yields the natural `coefficient`.
  static Ord power(const AtomTablePtr& table, std::string_view atom, std::uint32_t exponent = 1,
                   std::uint64_t coefficient = 1);
  /// omega^k (k = 0 gives 1).
  static Ord omega_power(std::uint32_t k, AtomTablePtr table = AtomTable::standard());

  static Ord parse(std::string_view text, AtomTablePtr table = AtomTable::standard());
  std::string str() const;

  const std::vector<Term>& terms() const { return terms_; }
  std::uint64_t finite_part() const { return finite_; }
  const AtomTablePtr& table() const { return table_; }

  bool is_zero() const { return terms_.empty() && finite_ == 0; }
  bool is_finite() const { return terms_.empty(); }
  bool is_successor() const { return finite_ > 0; }
  bool is_limit() const { return finite_ == 0 && !terms_.empty(); }
  /// True when every term is a power of omega, i.e. the ordinal is below omega_1.
  bool is_countable() const;

  Ord successor() const;
  /// Requires is_successor().
  Ord predecessor() const;

  friend bool operator==(const Ord& a, const Ord& b);
  friend std::strong_ordering operator<=>(const Ord& a, const Ord& b);

 private:
  AtomTablePtr table_;
  std::vector<Term> terms_;
  std::uint64_t finite_ = 0;
};

enum class Comparison { less, equal, greater };

/// Throws MismatchedAtomTable when the operands use different tables.
Comparison ord_compare(const Ord& a, const Ord& b);

OrdClass cofinality_class(const Ord& a);

/// Ordinal sum a + b.
Ord add(const Ord& a, const Ord& b);

/// The unique d with a + d = x; requires a <= x.
Ord subtract_left(const Ord& x, const Ord& a);

std::string_view to_string(OrdClass c);

}  // namespace sfw::ord
