#include <benchmark/benchmark.h>

#include "roughsim/experiment.hpp"
#include "roughsim/gf2.hpp"

using namespace rough;

namespace {

StabilizerTableau scrambled_state(std::size_t L) {
  ProtocolConfig c;
  c.d = 3;
  c.L = L;
  c.p = 0.1;
  Rng rng(12);
  return prepare_initial_state(c, rng);
}

void bm_entropy_profile_sweep(benchmark::State& state) {
  const auto L = std::size_t(state.range(0));
  const auto spec = LatticeSpec::experiment(3, L);
  const auto tab = scrambled_state(L);
  const auto groups = spec.cut_prefix_groups();
  for (auto _ : state) {
    benchmark::DoNotOptimize(tab.entropy_profile(groups));
  }
  state.SetItemsProcessed(std::int64_t(state.iterations()) *
                          std::int64_t(groups.size()));
}

void bm_entropy_per_cut(benchmark::State& state) {
  const auto L = std::size_t(state.range(0));
  const auto spec = LatticeSpec::experiment(3, L);
  const auto tab = scrambled_state(L);
  const auto groups = spec.cut_prefix_groups();
  for (auto _ : state) {
    CutSpec cut;
    std::size_t total = 0;
    for (const auto& g : groups) {
      cut.subsystem.insert(cut.subsystem.end(), g.begin(), g.end());
      total += tab.entropy_of_cut(cut);
    }
    benchmark::DoNotOptimize(total);
  }
  state.SetItemsProcessed(std::int64_t(state.iterations()) *
                          std::int64_t(groups.size()));
}

void bm_apply_realization(benchmark::State& state) {
  const auto L = std::size_t(state.range(0));
  ProtocolConfig c;
  c.d = 3;
  c.L = L;
  c.p = 0.1;
  const auto spec = LatticeSpec::experiment(3, L);
  Rng rng(34);
  const auto base = prepare_initial_state(c, rng);
  const auto circuit = sample_realization(spec, c.p, 2 * L, derive_seed(34, 2));
  for (auto _ : state) {
    auto tab = base;
    apply_realization(circuit, tab, 2 * L);
    benchmark::DoNotOptimize(tab);
  }
  state.SetItemsProcessed(std::int64_t(state.iterations()) *
                          std::int64_t(circuit.events.size()));
}

void bm_gf2_rank(benchmark::State& state) {
  const auto n = std::size_t(state.range(0));
  Rng rng(56);
  gf2::BitMatrix m(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < 2 * n; ++c)
      if (rng.bit()) m.set(r, c, true);
  for (auto _ : state) {
    benchmark::DoNotOptimize(gf2::rank(m));
  }
}

}  // namespace

BENCHMARK(bm_entropy_profile_sweep)->Arg(4)->Arg(6)->Arg(8);
BENCHMARK(bm_entropy_per_cut)->Arg(4)->Arg(6);
BENCHMARK(bm_apply_realization)->Arg(4)->Arg(6);
BENCHMARK(bm_gf2_rank)->Arg(256)->Arg(1024);

BENCHMARK_MAIN();
