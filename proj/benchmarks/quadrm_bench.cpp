#include <benchmark/benchmark.h>

#include <random>

#include "quadrm/census.hpp"
#include "quadrm/code_distributions.hpp"
#include "quadrm/coset_spectra.hpp"
#include "quadrm/quadratic_form.hpp"

namespace {

using namespace quadrm;

void BM_FieldMul(benchmark::State& state) {
  const FiniteField f = FiniteField::of_order(static_cast<std::uint64_t>(state.range(0)));
  std::uint32_t a = 1;
  std::uint32_t b = f.q() / 2 + 1;
  for (auto _ : state) {
    a = f.mul({a}, {b}).index;
    b = f.add({a}, {b}).index;
    if (a == 0) a = 1;
    benchmark::DoNotOptimize(a);
  }
}
BENCHMARK(BM_FieldMul)->Arg(256)->Arg(729)->Arg(1 << 16);

void BM_FieldConstruct(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(FiniteField::of_order(static_cast<std::uint64_t>(state.range(0))));
}
BENCHMARK(BM_FieldConstruct)->Arg(64)->Arg(1 << 16);

void BM_Classify(benchmark::State& state) {
  const FiniteField f = FiniteField::of_order(static_cast<std::uint64_t>(state.range(0)));
  const auto m = static_cast<unsigned>(state.range(1));
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<std::uint32_t> el(0, f.q() - 1);
  QuadraticForm form(f, m);
  for (unsigned i = 0; i < m; ++i) {
    for (unsigned j = i; j < m; ++j) form.set_coefficient(i, j, {el(rng)});
  }
  for (auto _ : state) benchmark::DoNotOptimize(classify(form));
}
BENCHMARK(BM_Classify)->Args({2, 8})->Args({4, 6})->Args({3, 8})->Args({9, 6});

void BM_Rm2Formula(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(rm2_distribution(static_cast<std::uint64_t>(state.range(0)),
                                              static_cast<unsigned>(state.range(1))));
  }
}
BENCHMARK(BM_Rm2Formula)->Args({2, 7})->Args({3, 4})->Args({9, 12});

void BM_CosetAssembled(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(coset_assembled_distribution(static_cast<std::uint64_t>(state.range(0)),
                                                          static_cast<unsigned>(state.range(1))));
  }
}
BENCHMARK(BM_CosetAssembled)->Args({3, 4})->Args({7, 8});

void BM_BruteForceHrm(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_distribution(CodeFamily::HRM2, 3, 3));
}
BENCHMARK(BM_BruteForceHrm)->Unit(benchmark::kMillisecond);

void BM_CensusExhaustive(benchmark::State& state) {
  const FiniteField f(2, 1);
  for (auto _ : state) benchmark::DoNotOptimize(census_exhaustive(f, 4));
}
BENCHMARK(BM_CensusExhaustive)->Unit(benchmark::kMillisecond);

void BM_SpectrumOracle(benchmark::State& state) {
  const FiniteField f(5, 1);
  const QuadraticForm form = canonical_form(f, 3, {3, FormType::Minus});
  for (auto _ : state) benchmark::DoNotOptimize(spectrum_oracle_all(form));
}
BENCHMARK(BM_SpectrumOracle)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
