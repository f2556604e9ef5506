#include "ddff/dynamics.hpp"
#include "ddff/filter.hpp"
#include "ddff/fit.hpp"
#include "ddff/mc_oracle.hpp"
#include "ddff/plateau.hpp"

#include <benchmark/benchmark.h>

#include <numbers>

using namespace ddff;

namespace {

constexpr double kPi = std::numbers::pi;

SpinBoson storage_bath(double t12) {
  const double wc = 2 * kPi * 1e4;
  return SpinBoson::two_qubit(PowerLaw{wc, -2.0, Cutoff{wc, CutoffKind::hard}}, SpinBoson::kZeroTemperature, t12, -1);
}

PulseSequence storage_base(double tau) {
  const auto unit = build_displacement("cdd", std::vector<int>{1, 2}, 1.0);
  return unit.with_duration(tau / pulse_stats(unit).tau_min);
}

void BM_BuildDisplacement(benchmark::State& state) {
  const int a = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_displacement("cdd", std::vector<int>{a, a, a}, 1.0));
}
BENCHMARK(BM_BuildDisplacement)->DenseRange(1, 4);

void BM_BuildNudd(benchmark::State& state) {
  const int a = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_nudd(std::vector<int>{a, a, a}, 1.0));
}
BENCHMARK(BM_BuildNudd)->DenseRange(2, 8, 2);

void BM_G2Direct(benchmark::State& state) {
  const int a = static_cast<int>(state.range(0));
  const auto b = FilterBundle::direct(build_displacement("cdd", std::vector<int>{a, a}, 1.0));
  double w = 3.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(b.g2(Channel::qubit(0), Channel::qubit(1), w));
    w += 1e-9;
  }
}
BENCHMARK(BM_G2Direct)->DenseRange(1, 5);

void BM_G2SeriesBranch(benchmark::State& state) {
  const auto b = FilterBundle::direct(build_displacement("cdd", std::vector<int>{3, 4}, 1.0));
  double w = 0.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(b.g2(Channel::qubit(0), Channel::qubit(1), w));
    w += 1e-9;
  }
}
BENCHMARK(BM_G2SeriesBranch);

void BM_G2Repeated(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const auto b = FilterBundle::repeated(FilterBundle::direct(storage_base(1.0)), m);
  double w = 1e5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(b.g2(Channel::qubit(0), Channel::qubit(1), w));
    w += 1e-3;
  }
}
BENCHMARK(BM_G2Repeated)->RangeMultiplier(8)->Range(1, 4096);

void BM_OrderFit(benchmark::State& state) {
  const auto b = FilterBundle::direct(build_displacement("cdd", std::vector<int>{4, 4}, 1.0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        estimate_order([&](double w) { return std::abs(b.g2(Channel::qubit(0), Channel::qubit(1), w)); }, 1e-3, 1e-1));
  }
}
BENCHMARK(BM_OrderFit);

void BM_ClassicalOverlap(benchmark::State& state) {
  const auto b = FilterBundle::direct(build_udd(static_cast<int>(state.range(0)), 1.0));
  const ClassicalSource src{Channel::qubit(0), Channel::qubit(0),
                            ClassicalPSD(PowerLaw{1.0, 0.0, Cutoff{50.0, CutoffKind::gaussian}})};
  for (auto _ : state) benchmark::DoNotOptimize(classical_overlap(b, src));
}
BENCHMARK(BM_ClassicalOverlap)->Arg(2)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_AssembleRepeated(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  NoiseModel noise;
  noise.quantum = storage_bath(1e-2);
  const auto b = FilterBundle::repeated(FilterBundle::direct(storage_base(1e-6)), m);
  for (auto _ : state) benchmark::DoNotOptimize(assemble_coherence(b, noise));
}
BENCHMARK(BM_AssembleRepeated)->RangeMultiplier(8)->Range(1, 512)->Unit(benchmark::kMillisecond);

void BM_PlateauValue(benchmark::State& state) {
  NoiseModel noise;
  noise.quantum = storage_bath(1e-2);
  const auto base = storage_base(1e-6);
  for (auto _ : state) benchmark::DoNotOptimize(plateau_value(base, noise));
}
BENCHMARK(BM_PlateauValue)->Unit(benchmark::kMillisecond);

void BM_Fidelity(benchmark::State& state) {
  NoiseModel noise;
  noise.quantum = storage_bath(1e-2);
  const auto cf = assemble_coherence(FilterBundle::direct(storage_base(1e-6)), noise);
  const auto states = sample_real_states(2, 1000, 1);
  std::vector<std::vector<Complex>> cs;
  for (const auto& s : states) cs.emplace_back(s.begin(), s.end());
  for (auto _ : state) {
    double acc = 0;
    for (const auto& psi : cs) acc += fidelity(psi, cf);
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_Fidelity);

void BM_McCoherence(benchmark::State& state) {
  const auto seq = build_udd(2, 1.0);
  const std::vector<McSource> src{{{Channel::qubit(0)}, ClassicalPSD(PowerLaw{0.1, 0.0, Cutoff{20.0, CutoffKind::hard}})}};
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(mc_coherence(seq, src, TrajectoryConfig{1.0, n, 3}, 0, 1, 1));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n));
}
BENCHMARK(BM_McCoherence)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
