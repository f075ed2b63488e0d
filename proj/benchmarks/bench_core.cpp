#include <benchmark/benchmark.h>

#include "sfw/descriptor.hpp"
#include "sfw/filters.hpp"
#include "sfw/hs.hpp"
#include "sfw/oracle.hpp"
#include "sfw/pairs.hpp"
#include "sfw/symmetry.hpp"

using namespace sfw;
using groups::Mask;
using ord::CountableSetDescriptor;
using ord::Ord;

namespace {

groups::GroupPtr corpus_group(std::size_t i) { return groups::small_group_corpus()[i]; }
const int kLastGroup = static_cast<int>(groups::small_group_corpus().size()) - 1;

void BM_OrdinalParse(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(Ord::parse("w1^2*3 + w1*2 + w^3*4 + w*7 + 11"));
}
BENCHMARK(BM_OrdinalParse);

void BM_StageBound(benchmark::State& state) {
  CountableSetDescriptor d({Ord::parse("w^2*2 + 3"), Ord::parse("w*5")}, {ord::OmegaSequence{Ord::parse("w^2*3"), 1}});
  Ord w1 = Ord::parse("w1");
  for (auto _ : state) benchmark::DoNotOptimize(ord::stage_bound(d, w1));
}
BENCHMARK(BM_StageBound);

void BM_SubgroupLattice(benchmark::State& state) {
  auto G = corpus_group(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(groups::subgroup_lattice(*G));
  state.SetLabel(G->label());
}
BENCHMARK(BM_SubgroupLattice)->DenseRange(0, kLastGroup);

// Audits every antichain-generated filter of one group.
void BM_AuditAllFilters(benchmark::State& state) {
  auto G = corpus_group(static_cast<std::size_t>(state.range(0)));
  auto lat = groups::subgroup_lattice(*G);
  std::size_t audited = 0;
  for (auto _ : state) {
    for (Mask m : lat) {
      auto r = filters::audit_filter(filters::ExplicitFilter::make(G, {m}));
      benchmark::DoNotOptimize(r.is_normal);
      ++audited;
    }
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(audited));
  state.SetLabel(G->label());
}
BENCHMARK(BM_AuditAllFilters)->DenseRange(0, kLastGroup);

void BM_GenerateNormalFilter(benchmark::State& state) {
  auto G = corpus_group(static_cast<std::size_t>(state.range(0)));
  auto lat = groups::subgroup_lattice(*G);
  std::vector<Mask> gens(lat.begin(), lat.begin() + std::min<std::size_t>(3, lat.size()));
  for (auto _ : state)
    benchmark::DoNotOptimize(filters::generate_normal_filter(G, gens, filters::GenerationMode::countable_intersections));
  state.SetLabel(G->label());
}
BENCHMARK(BM_GenerateNormalFilter)->DenseRange(0, kLastGroup);

void BM_SymbolicMembership(benchmark::State& state) {
  Ord w1 = Ord::parse("w1");
  auto F = filters::generate_normal_filter(w1, {filters::BasisFamily::head_segments(w1)},
                                           filters::GenerationMode::finite_intersections);
  groups::SupportKernel k{CountableSetDescriptor({Ord::parse("w*3")}, {ord::OmegaSequence{Ord::parse("w^2"), 0}})};
  for (auto _ : state) benchmark::DoNotOptimize(filters::filter_contains(F, k));
}
BENCHMARK(BM_SymbolicMembership);

void BM_SymmetryLemmaPoset(benchmark::State& state) {
  auto posets = forcing::poset_corpus(5);
  const auto& P = posets[static_cast<std::size_t>(state.range(0)) % posets.size()];
  forcing::SymmetryLemmaParams p;
  p.cross_checks = 0;
  std::uint64_t cases = 0;
  for (auto _ : state) cases += forcing::symmetry_lemma_check(P, p).cases;
  state.counters["cases"] = benchmark::Counter(static_cast<double>(cases), benchmark::Counter::kIsRate);
}
BENCHMARK(BM_SymmetryLemmaPoset)->Arg(0)->Arg(8)->Arg(24)->Unit(benchmark::kMillisecond);

void BM_IsHS(benchmark::State& state) {
  auto d = static_cast<std::size_t>(state.range(0));
  auto step = iteration::cohen_pair_step(d);
  hs::SymmetricSystem sys = hs::ExplicitSystem::from_step(step);
  auto names = pairs::stage_names(iteration::ProductSpace({step.poset}), 0, d);
  for (auto _ : state) benchmark::DoNotOptimize(hs::is_hs(names.pair, sys).verdict);
}
BENCHMARK(BM_IsHS)->DenseRange(1, 3);

void BM_BuildPairsModel(benchmark::State& state) {
  auto prefix = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(pairs::build_pairs_model(Ord::parse("w1"), 1, prefix).prefix);
}
BENCHMARK(BM_BuildPairsModel)->DenseRange(1, 4)->Unit(benchmark::kMicrosecond);

void BM_RefuteAndVerify(benchmark::State& state) {
  auto d = static_cast<std::size_t>(state.range(0));
  auto s = pairs::build_pairs_model(Ord::parse("w1"), d, 2);
  auto w = pairs::witness_from_stages(CountableSetDescriptor({Ord(3), Ord::parse("w*2 + 1"), Ord::parse("w^2")}));
  for (auto _ : state) {
    auto c = pairs::refute_choice_function(s, w);
    benchmark::DoNotOptimize(pairs::verify_certificate(c).accepted);
  }
}
BENCHMARK(BM_RefuteAndVerify)->DenseRange(1, 3)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
