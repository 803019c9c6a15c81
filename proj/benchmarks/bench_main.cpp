#include <benchmark/benchmark.h>

#include <random>

#include "g2calc/algebra.hpp"
#include "g2calc/forms.hpp"
#include "g2calc/g2.hpp"

using namespace g2calc;

static void BM_OctonionMultiply(benchmark::State& state) {
  std::mt19937_64 rng(1);
  AlgebraElement a = random_element(8, rng), b = random_element(8, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mul(a, b));
  }
}
BENCHMARK(BM_OctonionMultiply);

static void BM_MetricFromPhi(benchmark::State& state) {
  KForm phi = standard_phi();
  for (auto _ : state) {
    benchmark::DoNotOptimize(metric_from_phi(phi));
  }
}
BENCHMARK(BM_MetricFromPhi);

static void BM_Hodge3(benchmark::State& state) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  KForm a(3);
  for (int i = 0; i < a.size(); ++i) a[i] = u(rng);
  Metric m = Metric::euclidean();
  for (auto _ : state) {
    benchmark::DoNotOptimize(hodge(a, m));
  }
}
BENCHMARK(BM_Hodge3);

BENCHMARK_MAIN();
