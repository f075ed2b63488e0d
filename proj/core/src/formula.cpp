#include "sfw/formula.hpp"

#include "sfw/error.hpp"

namespace sfw::forcing {

Formula Formula::member(std::size_t i, std::size_t j) {
  Formula f;
  f.kind_ = Kind::member;
  f.i_ = i;
  f.j_ = j;
  return f;
}

Formula Formula::equal(std::size_t i, std::size_t j) {
  Formula f;
  f.kind_ = Kind::equal;
  f.i_ = i;
  f.j_ = j;
  return f;
}

Formula Formula::conj(Formula a, Formula b) {
  Formula f;
  f.kind_ = Kind::conj;
  f.a_ = std::make_shared<const Formula>(std::move(a));
  f.b_ = std::make_shared<const Formula>(std::move(b));
  return f;
}

Formula Formula::neg(Formula a) {
  Formula f;
  f.kind_ = Kind::neg;
  f.a_ = std::make_shared<const Formula>(std::move(a));
  return f;
}

Formula Formula::forall_in(std::size_t j, Formula body) {
  Formula f;
  f.kind_ = Kind::forall_in;
  f.j_ = j;
  f.a_ = std::make_shared<const Formula>(std::move(body));
  return f;
}

std::size_t Formula::depth() const {
  switch (kind_) {
    case Kind::member:
    case Kind::equal: return 0;
    case Kind::conj: return 1 + std::max(a_->depth(), b_->depth());
    case Kind::neg:
    case Kind::forall_in: return 1 + a_->depth();
  }
  return 0;
}

void Formula::check_bound(std::size_t env_size) const {
  auto need = [&](std::size_t v) {
    if (v >= env_size)
      throw Error(ErrorCode::UnboundVariable, "x" + std::to_string(v) + " is unbound in " + str());
  };
  switch (kind_) {
    case Kind::member:
    case Kind::equal:
      need(i_);
      need(j_);
      return;
    case Kind::conj:
      a_->check_bound(env_size);
      b_->check_bound(env_size);
      return;
    case Kind::neg: a_->check_bound(env_size); return;
    case Kind::forall_in:
      need(j_);
      a_->check_bound(env_size + 1);
      return;
  }
}

bool Formula::eval(std::vector<HSet>& env) const {
  switch (kind_) {
    case Kind::member: return env[j_].contains(env[i_]);
    case Kind::equal: return env[i_] == env[j_];
    case Kind::conj: return a_->eval(env) && b_->eval(env);
    case Kind::neg: return !a_->eval(env);
    case Kind::forall_in: {
      const auto elems = env[j_].elements();
      for (HSet e : elems) {
        env.push_back(e);
        bool ok = a_->eval(env);
        env.pop_back();
        if (!ok) return false;
      }
      return true;
    }
  }
  return false;
}

bool Formula::eval(const std::vector<HSet>& env) const {
  std::vector<HSet> scratch = env;
  return eval(scratch);
}

std::string Formula::str() const {
  auto v = [](std::size_t i) { return "x" + std::to_string(i); };
  switch (kind_) {
    case Kind::member: return v(i_) + " in " + v(j_);
    case Kind::equal: return v(i_) + " = " + v(j_);
    case Kind::conj: return "(" + a_->str() + " & " + b_->str() + ")";
    case Kind::neg: return "!" + (a_->kind_ == Kind::conj ? a_->str() : "(" + a_->str() + ")");
    case Kind::forall_in: return "(forall in " + v(j_) + ". " + a_->str() + ")";
  }
  return "?";
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.kind_ != b.kind_ || a.i_ != b.i_ || a.j_ != b.j_) return false;
  if (static_cast<bool>(a.a_) != static_cast<bool>(b.a_) || static_cast<bool>(a.b_) != static_cast<bool>(b.b_))
    return false;
  if (a.a_ && !(*a.a_ == *b.a_)) return false;
  if (a.b_ && !(*a.b_ == *b.b_)) return false;
  return true;
}

namespace {

// Formulas of depth exactly d over `vars` variables.
std::vector<Formula> exact(std::size_t vars, std::size_t d);

std::vector<Formula> up_to(std::size_t vars, std::size_t d) {
  std::vector<Formula> out;
  for (std::size_t k = 0; k <= d; ++k) {
    auto layer = exact(vars, k);
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

std::vector<Formula> exact(std::size_t vars, std::size_t d) {
  std::vector<Formula> out;
  if (d == 0) {
    for (std::size_t i = 0; i < vars; ++i)
      for (std::size_t j = 0; j < vars; ++j) out.push_back(Formula::member(i, j));
    for (std::size_t i = 0; i < vars; ++i)
      for (std::size_t j = 0; j < vars; ++j) out.push_back(Formula::equal(i, j));
    return out;
  }
  auto prev = exact(vars, d - 1);
  auto below = up_to(vars, d - 1);
  for (const auto& f : prev) out.push_back(Formula::neg(f));
  for (const auto& a : below)
    for (const auto& b : below)
      if (a.depth() == d - 1 || b.depth() == d - 1) out.push_back(Formula::conj(a, b));
  auto bodies = exact(vars + 1, d - 1);
  for (std::size_t j = 0; j < vars; ++j)
    for (const auto& body : bodies) out.push_back(Formula::forall_in(j, body));
  return out;
}

}  // namespace

std::vector<Formula> formula_corpus(std::size_t free_vars, std::size_t max_depth) {
  return up_to(free_vars, max_depth);
}

}  // namespace sfw::forcing
