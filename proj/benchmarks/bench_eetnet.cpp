#include <benchmark/benchmark.h>

#include <eetnet/ensemble.hpp>
#include <eetnet/liouville.hpp>
#include <eetnet/mfpt.hpp>
#include <eetnet/network.hpp>

using namespace eetnet;

static void BM_Assemble(benchmark::State& state) {
  const SiteNetwork net = build_chain(static_cast<int>(state.range(0)), 20.0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(assemble(net, 5.0));
}
BENCHMARK(BM_Assemble)->Arg(8)->Arg(16)->Arg(32)->Arg(64);

static void BM_TrappingTime(benchmark::State& state) {
  const SiteNetwork net = build_chain(static_cast<int>(state.range(0)), 20.0, 1.0);
  const auto parts = assemble(net, 5.0);
  const StateSpec rho0 = make_state(net, StatePreset::site, 0);
  for (auto _ : state) benchmark::DoNotOptimize(trapping_time(parts, rho0));
}
BENCHMARK(BM_TrappingTime)->Arg(8)->Arg(16)->Arg(24);

static void BM_EnsembleSample(benchmark::State& state) {
  const SiteNetwork net = build_dendrimer(2, 3, 20.0);
  const StateSpec rho0 = make_state(net, StatePreset::outer_incoherent);
  const DisorderSpec spec = DisorderSpec::uniform(4.0, net.n_sites(), 17, 1 << 20);
  int index = 0;
  for (auto _ : state) {
    const SiteNetwork sample = sample_disorder(net, spec, index++ & ((1 << 20) - 1));
    const auto parts = assemble(sample, 1.0);
    benchmark::DoNotOptimize(trapping_time(parts, rho0));
    benchmark::DoNotOptimize(efficiency_exact(parts, rho0));
  }
}
BENCHMARK(BM_EnsembleSample);

static void BM_Propagate(benchmark::State& state) {
  const SiteNetwork net = build_dendrimer(2, 3, 20.0);
  const auto parts = assemble(net, 20.0);
  const StateSpec rho0 = make_state(net, StatePreset::outer_incoherent);
  PropagateOptions options;
  options.t_final = 1.0;
  for (auto _ : state) benchmark::DoNotOptimize(propagate(parts, rho0, options));
}
BENCHMARK(BM_Propagate);

BENCHMARK_MAIN();
