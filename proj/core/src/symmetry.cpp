#include "sfw/symmetry.hpp"

#include <future>
#include <map>
#include <random>
#include <unordered_map>

#include "sfw/error.hpp"

namespace sfw::forcing {

std::vector<Name> small_name_corpus(const std::vector<CondId>& conds, std::size_t max_rank) {
  std::vector<Name> names{Name()};
  for (std::size_t r = 1; r <= max_rank; ++r) {
    std::vector<NameEntry> pool;
    for (Name c : names)
      for (CondId p : conds) pool.push_back({c, p});
    if (pool.size() > 16) throw Error(ErrorCode::OutOfBudget, "name corpus level " + std::to_string(r) + " is too large");
    std::vector<Name> next;
    for (std::uint32_t m = 0; m < (1U << pool.size()); ++m) {
      std::vector<NameEntry> es;
      for (std::size_t i = 0; i < pool.size(); ++i)
        if ((m >> i) & 1U) es.push_back(pool[i]);
      next.push_back(Name::make(std::move(es)));
    }
    names = std::move(next);
  }
  return names;
}

namespace {

using Bits = std::vector<std::uint64_t>;

// Value tuples are encoded as a * kValues + b in a 64-bit set.
constexpr std::size_t kValues = 8;

// Verdicts of every formula on a set of value tuples, memoized on the set.
class VerdictTable {
 public:
  VerdictTable(std::vector<Formula> formulas, std::size_t arity) : formulas_(std::move(formulas)), arity_(arity) {}

  std::size_t size() const { return formulas_.size(); }
  const Formula& formula(std::size_t i) const { return formulas_[i]; }

  // `tuples` is a bitmask over encoded value tuples.
  const Bits& verdicts(std::uint64_t tuples, const std::vector<HSet>& values) {
    auto it = memo_.find(tuples);
    if (it != memo_.end()) return it->second;
    Bits bits((formulas_.size() + 63) / 64, 0);
    for (std::size_t f = 0; f < formulas_.size(); ++f) {
      bool all = true;
      for (std::size_t t = 0; t < 64 && all; ++t) {
        if (!((tuples >> t) & 1U)) continue;
        std::vector<HSet> env;
        if (arity_ == 1) env = {values[t]};
        else env = {values[t / kValues], values[t % kValues]};
        all = formulas_[f].eval(env);
      }
      if (all) bits[f / 64] |= std::uint64_t{1} << (f % 64);
    }
    return memo_.emplace(tuples, std::move(bits)).first->second;
  }

 private:
  std::vector<Formula> formulas_;
  std::size_t arity_;
  std::unordered_map<std::uint64_t, Bits> memo_;
};

bool bit(const Bits& b, std::size_t i) { return (b[i / 64] >> (i % 64)) & 1U; }

struct Profiled {
  std::vector<int> self;   // value id at each minimal condition
  std::vector<int> image;  // the same for the automorphic image
};

}  // namespace

SymmetryLemmaReport symmetry_lemma_check(const Poset& P, const SymmetryLemmaParams& params) {
  SymmetryLemmaReport rep;
  rep.posets = 1;
  const auto auts = automorphisms(P);
  rep.automorphisms = auts.size();
  const auto mins = P.minimal_elements();
  VerdictTable one(formula_corpus(1, params.max_depth), 1);
  VerdictTable two(formula_corpus(2, params.max_depth), 2);
  rep.formulas = one.size() + two.size();

  std::vector<HSet> values;
  std::map<HSet, int> value_id;
  auto profile = [&](Name x) {
    std::vector<int> out;
    for (HSet v : valuation_profile(P, x)) {
      auto [it, fresh] = value_id.emplace(v, static_cast<int>(values.size()));
      if (fresh) values.push_back(v);
      out.push_back(it->second);
    }
    return out;
  };

  // below[p]: bitmask of minimal conditions under p.
  std::vector<std::uint32_t> below(P.size(), 0);
  for (CondId p = 0; p < P.size(); ++p)
    for (std::size_t m = 0; m < mins.size(); ++m)
      if (P.le(mins[m], p)) below[p] |= 1U << m;

  std::vector<std::vector<CondId>> cond_sets;
  for (std::uint32_t m = 1; m < (1U << P.size()); ++m) {
    if (static_cast<std::size_t>(__builtin_popcount(m)) > params.max_conditions) continue;
    std::vector<CondId> cs;
    for (CondId c = 0; c < P.size(); ++c)
      if ((m >> c) & 1U) cs.push_back(c);
    cond_sets.push_back(std::move(cs));
  }
  rep.condition_sets = cond_sets.size();

  std::vector<std::vector<Name>> corpora;
  for (const auto& cs : cond_sets) {
    corpora.push_back(small_name_corpus(cs, params.max_rank));
    rep.names += corpora.back().size();
  }

  auto note = [&](std::string s) {
    if (rep.examples.size() < 8) rep.examples.push_back(std::move(s));
  };

  for (std::size_t ci = 0; ci < cond_sets.size(); ++ci) {
    const auto& corpus = corpora[ci];
    std::vector<std::vector<int>> prof;
    for (Name x : corpus) prof.push_back(profile(x));
    for (std::size_t ai = 0; ai < auts.size(); ++ai) {
      const auto& pi = auts[ai];
      // Names with the same (profile, image profile) behave identically.
      std::map<std::pair<std::vector<int>, std::vector<int>>, std::uint64_t> cls;
      for (std::size_t i = 0; i < corpus.size(); ++i) ++cls[{prof[i], profile(apply_automorphism(pi, corpus[i]))}];
      if (values.size() > kValues) throw Error(ErrorCode::OutOfBudget, "too many distinct valuations for the verdict memo");
      std::vector<std::pair<Profiled, std::uint64_t>> classes;
      for (const auto& [k, n] : cls) classes.push_back({Profiled{k.first, k.second}, n});

      auto set_of = [&](std::uint32_t under, const std::vector<int>& x, const std::vector<int>* y) {
        std::uint64_t s = 0;
        for (std::size_t m = 0; m < mins.size(); ++m)
          if ((under >> m) & 1U) s |= std::uint64_t{1} << (y ? x[m] * kValues + (*y)[m] : x[m]);
        return s;
      };
      auto compare = [&](VerdictTable& table, std::uint64_t s1, std::uint64_t s2, std::uint64_t weight, CondId p) {
        rep.cases += weight * table.size();
        if (s1 == s2) return;
        const Bits& b1 = table.verdicts(s1, values);
        const Bits& b2 = table.verdicts(s2, values);
        for (std::size_t f = 0; f < table.size(); ++f)
          if (bit(b1, f) != bit(b2, f)) {
            rep.violations += weight;
            note("poset of size " + std::to_string(P.size()) + ", automorphism " + std::to_string(ai) + ", condition " +
                 std::to_string(p) + ": " + table.formula(f).str());
          }
      };
      for (CondId p = 0; p < P.size(); ++p) {
        const std::uint32_t u = below[p], v = below[pi(p)];
        for (const auto& [x, nx] : classes) {
          compare(one, set_of(u, x.self, nullptr), set_of(v, x.image, nullptr), nx, p);
          for (const auto& [y, ny] : classes)
            compare(two, set_of(u, x.self, &y.self), set_of(v, x.image, &y.image), nx * ny, p);
        }
      }
    }
  }

  // Replay a sample through forces() itself.
  std::mt19937_64 rng(params.seed);
  for (std::size_t k = 0; k < params.cross_checks && !cond_sets.empty(); ++k) {
    std::size_t ci = rng() % cond_sets.size();
    const auto& corpus = corpora[ci];
    const auto& pi = auts[rng() % auts.size()];
    Name x = corpus[rng() % corpus.size()], y = corpus[rng() % corpus.size()];
    const std::size_t fi = rng() % two.size();
    const Formula& phi = two.formula(fi);
    CondId p = rng() % P.size();
    bool lhs = forces(P, p, phi, {x, y});
    bool rhs = forces(P, pi(p), phi, {apply_automorphism(pi, x), apply_automorphism(pi, y)});
    auto px = profile(x), py = profile(y);
    std::uint64_t s = 0;
    for (std::size_t m = 0; m < mins.size(); ++m)
      if ((below[p] >> m) & 1U) s |= std::uint64_t{1} << (px[m] * kValues + py[m]);
    bool predicted = bit(two.verdicts(s, values), fi);
    ++rep.cross_checked;
    if (lhs != rhs || lhs != predicted) {
      ++rep.cross_check_failures;
      note("forces() disagrees at condition " + std::to_string(p) + " on " + phi.str());
    }
  }
  return rep;
}

SymmetryLemmaReport symmetry_lemma_corpus(const SymmetryLemmaParams& params) {
  const auto corpus = poset_corpus(params.max_poset_size);
  std::vector<SymmetryLemmaReport> parts(corpus.size());
  auto run = [&](std::size_t i) {
    auto p = params;
    p.seed = params.seed + i;
    p.cross_checks = (params.cross_checks + corpus.size() - 1) / corpus.size();
    parts[i] = symmetry_lemma_check(corpus[i], p);
  };
  const std::size_t jobs = std::max<std::size_t>(1, params.jobs);
  for (std::size_t start = 0; start < corpus.size(); start += jobs) {
    std::vector<std::future<void>> fs;
    for (std::size_t i = start; i < std::min(corpus.size(), start + jobs); ++i) fs.push_back(std::async(std::launch::async, run, i));
    for (auto& f : fs) f.get();
  }
  SymmetryLemmaReport total;
  for (const auto& r : parts) {
    total.posets += r.posets;
    total.automorphisms += r.automorphisms;
    total.condition_sets += r.condition_sets;
    total.names += r.names;
    total.formulas = r.formulas;
    total.cases += r.cases;
    total.violations += r.violations;
    for (const auto& e : r.examples)
      if (total.examples.size() < 8) total.examples.push_back(e);
    total.cross_checked += r.cross_checked;
    total.cross_check_failures += r.cross_check_failures;
  }
  return total;
}

}  // namespace sfw::forcing
