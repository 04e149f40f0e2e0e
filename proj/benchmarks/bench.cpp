#include <benchmark/benchmark.h>

#include <Eigen/Core>

#include "fredkin/closure.hpp"
#include "fredkin/correlator.hpp"
#include "fredkin/counts.hpp"
#include "fredkin/entanglement.hpp"
#include "fredkin/hamiltonian.hpp"
#include "fredkin/series.hpp"
#include "fredkin/spectra.hpp"
#include "fredkin/walks.hpp"

namespace {

using namespace fredkin;

static void BM_EnumerateFamily(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto walks = enumerate_walks(n, {1, 1, 0});
    benchmark::DoNotOptimize(walks);
  }
}
BENCHMARK(BM_EnumerateFamily)->Arg(8)->Arg(10)->Arg(12);

static void BM_ClassClosure(benchmark::State& state) {
  const int pairs = static_cast<int>(state.range(0));
  std::vector<Step> steps;
  for (int i = 0; i < pairs; ++i) {
    steps.emplace_back(1, 2);
    steps.emplace_back(2, 1);
  }
  const Path seed(steps);
  for (auto _ : state) {
    auto cls = equivalence_closure(seed, MoveSet::all());
    benchmark::DoNotOptimize(cls);
  }
}
BENCHMARK(BM_ClassClosure)->Arg(3)->Arg(4)->Arg(5);

// Cold fill of the exact count tables up to the requested length.
static void BM_CountTableFill(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    CountTable table(Phase::kFull, n);
    benchmark::DoNotOptimize(table.count(n, 0, 1, 1));
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_CountTableFill)->Arg(128)->Arg(256)->Arg(1024)->Complexity();

static void BM_SeriesCoefficients(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto series = series_genfunc(Phase::kFull, 0, 1, 1, order);
    benchmark::DoNotOptimize(series);
  }
}
BENCHMARK(BM_SeriesCoefficients)->Arg(64)->Arg(256);

static void BM_BuildHamiltonian(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto h = build_hf(n, {1.0, 0.0});
    benchmark::DoNotOptimize(h);
  }
}
BENCHMARK(BM_BuildHamiltonian)->Arg(4)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);

static void BM_SparseApply(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto h = build_hf(n, {1.0, 0.0});
  Eigen::VectorXd x = Eigen::VectorXd::Ones(static_cast<long>(h.dim()));
  x.normalize();
  for (auto _ : state) {
    Eigen::VectorXd y = h.apply(x);
    benchmark::DoNotOptimize(y.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(h.dim()));
}
BENCHMARK(BM_SparseApply)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);

static void BM_ConnectedKernel(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto h = restrict_to(build_hf(n, {1.0, 0.0}), connected_sector(n));
  for (auto _ : state) {
    auto gs = ground_space(h);
    benchmark::DoNotOptimize(gs.vectors.data());
  }
}
BENCHMARK(BM_ConnectedKernel)->Arg(4)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);

static void BM_SchmidtEntropy(benchmark::State& state) {
  const int two_n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto report =
        entropy_from_distribution(schmidt_distribution(two_n, 0, Phase::kFull, 1, 1));
    benchmark::DoNotOptimize(report.S);
  }
}
BENCHMARK(BM_SchmidtEntropy)->Arg(100)->Arg(400)->Arg(1600);

// One localization scan window: evolve, probe, difference.
static void BM_LocalizationScan(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto h = build_hf(n, {1.0, 0.0});
  const Eigen::VectorXd psi = highly_excited_state(n, 2);
  LocalizationOptions opts;
  opts.times = {0.5};
  opts.flip_samples = 1;
  opts.diagonal_samples = 1;
  opts.mixed_samples = 0;
  for (auto _ : state) {
    auto report = localization_report(h, psi, {1, 2}, opts);
    benchmark::DoNotOptimize(report.samples.data());
  }
}
BENCHMARK(BM_LocalizationScan)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
