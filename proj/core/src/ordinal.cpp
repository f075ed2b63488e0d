#include "sfw/ordinal.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>

#include "sfw/error.hpp"

namespace sfw::ord {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::uint64_t parse_natural(std::string_view s, std::string_view whole) {
  s = trim(s);
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw Error(ErrorCode::ParseError, "bad natural '" + std::string(s) + "' in '" + std::string(whole) + "'");
  return v;
}

bool term_less(const Term& a, const Term& b) {
  if (a.atom != b.atom) return a.atom < b.atom;
  return a.exponent < b.exponent;
}

bool same_key(const Term& a, const Term& b) { return a.atom == b.atom && a.exponent == b.exponent; }

void require_same_table(const Ord& a, const Ord& b) {
  if (a.table() != b.table() && !a.table()->same_as(*b.table()))
    throw Error(ErrorCode::MismatchedAtomTable, a.str() + " vs " + b.str());
}

}  // namespace

std::shared_ptr<const AtomTable> AtomTable::standard() {
  static const auto table = make({{"w1", AtomCofinality::ge_omega1}, {"aw", AtomCofinality::omega}});
  return table;
}

std::shared_ptr<const AtomTable> AtomTable::make(std::vector<CardinalAtom> above_omega) {
  auto t = std::shared_ptr<AtomTable>(new AtomTable());
  t->atoms_.push_back({"w", AtomCofinality::omega});
  std::set<std::string> seen{"w"};
  for (auto& a : above_omega) {
    if (a.name.empty() || !seen.insert(a.name).second)
      throw Error(ErrorCode::ParseError, "duplicate or empty atom name '" + a.name + "'");
    for (char c : a.name)
      if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
        throw Error(ErrorCode::ParseError, "atom names are alphanumeric: '" + a.name + "'");
    t->atoms_.push_back(std::move(a));
  }
  return t;
}

std::optional<std::size_t> AtomTable::find(std::string_view name) const {
  for (std::size_t i = 0; i < atoms_.size(); ++i)
    if (atoms_[i].name == name) return i;
  return std::nullopt;
}

bool AtomTable::same_as(const AtomTable& other) const {
  if (atoms_.size() != other.atoms_.size()) return false;
  for (std::size_t i = 0; i < atoms_.size(); ++i)
    if (atoms_[i].name != other.atoms_[i].name ||
        atoms_[i].cofinality_class != other.atoms_[i].cofinality_class)
      return false;
  return true;
}

Ord::Ord() : table_(AtomTable::standard()) {}

Ord::Ord(std::uint64_t n, AtomTablePtr table) : table_(std::move(table)), finite_(n) {}

Ord::Ord(AtomTablePtr table, std::vector<Term> terms, std::uint64_t finite)
    : table_(std::move(table)), terms_(std::move(terms)), finite_(finite) {
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const auto& t = terms_[i];
    if (t.atom >= table_->size()) throw Error(ErrorCode::ParseError, "atom index out of range");
    if (t.exponent == 0 || t.coefficient == 0)
      throw Error(ErrorCode::ParseError, "CNF terms need positive exponent and coefficient");
    if (i > 0 && !term_less(t, terms_[i - 1]))
      throw Error(ErrorCode::ParseError, "CNF terms must be strictly decreasing");
  }
}

Ord Ord::natural(std::uint64_t n, AtomTablePtr table) { return Ord(n, std::move(table)); }

Ord Ord::power(const AtomTablePtr& table, std::string_view atom, std::uint32_t exponent,
               std::uint64_t coefficient) {
  auto idx = table->find(atom);
  if (!idx) throw Error(ErrorCode::ParseError, "unknown atom '" + std::string(atom) + "'");
  if (coefficient == 0) return Ord(0, table);
  if (exponent == 0) return Ord(coefficient, table);
  return Ord(table, {Term{static_cast<std::uint32_t>(*idx), exponent, coefficient}}, 0);
}

Ord Ord::omega_power(std::uint32_t k, AtomTablePtr table) {
  if (k == 0) return Ord(1, std::move(table));
  return Ord(table, {Term{0, k, 1}}, 0);
}

Ord Ord::parse(std::string_view text, AtomTablePtr table) {
  std::string_view whole = text;
  std::vector<Term> terms;
  std::uint64_t finite = 0;
  bool seen_finite = false;
  text = trim(text);
  if (text.empty()) throw Error(ErrorCode::ParseError, "empty ordinal");
  while (!text.empty()) {
    auto plus = text.find('+');
    std::string_view part = trim(text.substr(0, plus));
    text = plus == std::string_view::npos ? std::string_view{} : text.substr(plus + 1);
    if (plus != std::string_view::npos && trim(text).empty())
      throw Error(ErrorCode::ParseError, "trailing '+' in '" + std::string(whole) + "'");
    if (part.empty()) throw Error(ErrorCode::ParseError, "empty summand in '" + std::string(whole) + "'");
    if (seen_finite) throw Error(ErrorCode::ParseError, "finite part must come last: '" + std::string(whole) + "'");
    if (std::isdigit(static_cast<unsigned char>(part.front()))) {
      finite = parse_natural(part, whole);
      seen_finite = true;
      continue;
    }
    std::uint64_t coef = 1;
    std::uint32_t exp = 1;
    if (auto star = part.find('*'); star != std::string_view::npos) {
      coef = parse_natural(part.substr(star + 1), whole);
      part = trim(part.substr(0, star));
    }
    if (auto caret = part.find('^'); caret != std::string_view::npos) {
      exp = static_cast<std::uint32_t>(parse_natural(part.substr(caret + 1), whole));
      part = trim(part.substr(0, caret));
    }
    auto idx = table->find(part);
    if (!idx) throw Error(ErrorCode::ParseError, "unknown atom '" + std::string(part) + "'");
    if (coef == 0 || exp == 0) throw Error(ErrorCode::ParseError, "zero coefficient/exponent in '" + std::string(whole) + "'");
    terms.push_back(Term{static_cast<std::uint32_t>(*idx), exp, coef});
  }
  return Ord(std::move(table), std::move(terms), finite);
}

std::string Ord::str() const {
  std::string out;
  for (const auto& t : terms_) {
    if (!out.empty()) out += " + ";
    out += (*table_)[t.atom].name;
    if (t.exponent != 1) out += "^" + std::to_string(t.exponent);
    out += "*" + std::to_string(t.coefficient);
  }
  if (finite_ > 0 || out.empty()) {
    if (!out.empty()) out += " + ";
    out += std::to_string(finite_);
  }
  return out;
}

bool Ord::is_countable() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.atom == 0; });
}

Ord Ord::successor() const { return Ord(table_, terms_, finite_ + 1); }

Ord Ord::predecessor() const {
  if (finite_ == 0) throw Error(ErrorCode::ParseError, "predecessor of non-successor " + str());
  return Ord(table_, terms_, finite_ - 1);
}

bool operator==(const Ord& a, const Ord& b) { return ord_compare(a, b) == Comparison::equal; }

std::strong_ordering operator<=>(const Ord& a, const Ord& b) {
  switch (ord_compare(a, b)) {
    case Comparison::less: return std::strong_ordering::less;
    case Comparison::equal: return std::strong_ordering::equal;
    default: return std::strong_ordering::greater;
  }
}

Comparison ord_compare(const Ord& a, const Ord& b) {
  require_same_table(a, b);
  const auto& x = a.terms();
  const auto& y = b.terms();
  for (std::size_t i = 0; i < std::min(x.size(), y.size()); ++i) {
    if (term_less(x[i], y[i])) return Comparison::less;
    if (term_less(y[i], x[i])) return Comparison::greater;
    if (x[i].coefficient != y[i].coefficient)
      return x[i].coefficient < y[i].coefficient ? Comparison::less : Comparison::greater;
  }
  if (x.size() != y.size()) return x.size() < y.size() ? Comparison::less : Comparison::greater;
  if (a.finite_part() != b.finite_part())
    return a.finite_part() < b.finite_part() ? Comparison::less : Comparison::greater;
  return Comparison::equal;
}

OrdClass cofinality_class(const Ord& a) {
  if (a.is_zero()) return OrdClass::zero;
  if (a.is_successor()) return OrdClass::successor;
  const Term& last = a.terms().back();
  return (*a.table())[last.atom].cofinality_class == AtomCofinality::ge_omega1 ? OrdClass::cof_ge_omega1
                                                                                : OrdClass::cof_omega;
}

Ord add(const Ord& a, const Ord& b) {
  require_same_table(a, b);
  if (b.terms().empty()) return Ord(a.table(), a.terms(), a.finite_part() + b.finite_part());
  const Term& lead = b.terms().front();
  std::vector<Term> out;
  for (const auto& t : a.terms()) {
    if (term_less(lead, t)) {
      out.push_back(t);
    } else if (same_key(lead, t)) {
      out.push_back(Term{t.atom, t.exponent, t.coefficient + lead.coefficient});
    }
  }
  bool merged = !out.empty() && same_key(out.back(), lead);
  for (std::size_t i = merged ? 1 : 0; i < b.terms().size(); ++i) out.push_back(b.terms()[i]);
  return Ord(a.table(), std::move(out), b.finite_part());
}

Ord subtract_left(const Ord& x, const Ord& a) {
  require_same_table(x, a);
  if (a > x) throw Error(ErrorCode::PointNotBelowLambda, "subtract_left needs " + a.str() + " <= " + x.str());
  const auto& xt = x.terms();
  const auto& at = a.terms();
  std::size_t i = 0;
  while (i < at.size() && i < xt.size() && xt[i] == at[i]) ++i;
  if (i == at.size() && i == xt.size()) return Ord(x.finite_part() - a.finite_part(), x.table());
  std::vector<Term> rest;
  if (i < at.size() && same_key(at[i], xt[i])) {
    // x has the larger coefficient at this key; the remainder of a is absorbed.
    rest.push_back(Term{xt[i].atom, xt[i].exponent, xt[i].coefficient - at[i].coefficient});
    ++i;
  }
  rest.insert(rest.end(), xt.begin() + static_cast<std::ptrdiff_t>(i), xt.end());
  return Ord(x.table(), std::move(rest), x.finite_part());
}

std::string_view to_string(OrdClass c) {
  switch (c) {
    case OrdClass::zero: return "zero";
    case OrdClass::successor: return "successor";
    case OrdClass::cof_omega: return "cof_omega";
    case OrdClass::cof_ge_omega1: return "cof_ge_omega1";
  }
  return "?";
}

}  // namespace sfw::ord
