#include <benchmark/benchmark.h>

#include <cstdint>
#include <string>
#include <vector>

#include <catprob/fincat.hpp>
#include <catprob/finspace.hpp>
#include <catprob/giry.hpp>
#include <catprob/kernel.hpp>
#include <catprob/measure.hpp>
#include <catprob/sampling.hpp>

using namespace catprob;

namespace {

FinSpace discrete_n(std::size_t n, const std::string& name) {
  std::vector<Label> pts;
  for (std::size_t i = 0; i < n; ++i) pts.push_back("p" + std::to_string(i));
  return FinSpace::discrete(name, pts);
}

void BM_ComposeKernels(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  SampleRng rng(1);
  const auto x = discrete_n(n, "x");
  const auto y = discrete_n(n, "y");
  const auto z = discrete_n(n, "z");
  const auto t = random_kernel(rng, x, y);
  const auto u = random_kernel(rng, y, z);
  for (auto _ : state) {
    benchmark::DoNotOptimize(compose_kernels(u, t));
  }
}
BENCHMARK(BM_ComposeKernels)->Arg(4)->Arg(8)->Arg(16);

void BM_GiryMult(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  SampleRng rng(2);
  const auto s = discrete_n(n, "s");
  const auto mix = random_mix(rng, s, 8);
  for (auto _ : state) {
    benchmark::DoNotOptimize(giry_mult(mix));
  }
}
BENCHMARK(BM_GiryMult)->Arg(4)->Arg(8)->Arg(16);

void BM_SigmaClosure(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<Label> pts;
  for (std::size_t i = 0; i < n; ++i) pts.push_back("p" + std::to_string(100 + i));
  std::vector<std::vector<Label>> generators;
  for (std::size_t g = 0; g + 1 < n; g += 2) generators.push_back({pts[g], pts[g + 1]});
  for (auto _ : state) {
    benchmark::DoNotOptimize(sigma_closure(pts, generators));
  }
}
BENCHMARK(BM_SigmaClosure)->Arg(8)->Arg(16);

void BM_ChiLeq(benchmark::State& state) {
  const auto ambient = discrete_n(4, "g");
  const auto coarse = ChiObject::make(
      {{"p0", "p1"}, {"p2", "p3"}},
      RationalMeasure::make(ambient, {Rat(1) / 4, Rat(1) / 4, Rat(1) / 4, Rat(1) / 4},
                            MeasureKind::Probability));
  const auto fine = ChiObject::make(
      {{"p0"}, {"p1"}, {"p2"}, {"p3"}},
      RationalMeasure::make(ambient, {Rat(1) / 2, Rat(1) / 2, 0, 0},
                            MeasureKind::Probability));
  for (auto _ : state) {
    benchmark::DoNotOptimize(chi_leq(coarse, fine));
  }
}
BENCHMARK(BM_ChiLeq);

void BM_ProductUniversal(benchmark::State& state) {
  const auto z = discrete_n(3, "z");
  const auto x = discrete_n(2, "x");
  const auto y = discrete_n(2, "y");
  SampleRng rng(3);
  const auto f = random_map(rng, z, x, "f");
  const auto g = random_map(rng, z, y, "g");
  for (auto _ : state) {
    benchmark::DoNotOptimize(check_product_universal(z, x, y, f, g));
  }
}
BENCHMARK(BM_ProductUniversal);

}  // namespace

BENCHMARK_MAIN();
