// Copyright 2026 The modframe authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include "modframe/bundle.hpp"
#include "modframe/parametrize.hpp"

using namespace modframe;

namespace {

FrameSystem make_random_frame(std::size_t count, Eigen::Index dim,
                              std::uint64_t seed) {
  Rng rng(seed);
  const ModuleShape shape(FiniteSpectrum({"t1", "t2"}), {dim, dim});
  std::vector<ModuleElement> vectors;
  vectors.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    vectors.push_back(random_element(shape, rng));
  }
  return FrameSystem(std::move(vectors));
}

void BM_CanonicalParseval(benchmark::State& state) {
  const FrameSystem frame =
      make_random_frame(static_cast<std::size_t>(state.range(0)),
                        state.range(1), 42);
  for (auto _ : state) {
    benchmark::DoNotOptimize(canonical_parseval(frame));
  }
}
BENCHMARK(BM_CanonicalParseval)->Args({8, 4})->Args({16, 6})->Args({24, 8});

void BM_CommutantRegular(benchmark::State& state) {
  const FiniteGroup group = FiniteGroup::cyclic(static_cast<int>(state.range(0)));
  const FiniteSpectrum spectrum({"t"});
  const auto [left, right] = regular_representations(group, spectrum);
  (void)right;
  for (auto _ : state) {
    benchmark::DoNotOptimize(commutant(left.images()));
  }
}
BENCHMARK(BM_CommutantRegular)->Arg(2)->Arg(4)->Arg(6);

void BM_SolveGenerator(benchmark::State& state) {
  const FiniteGroup group = FiniteGroup::cyclic(static_cast<int>(state.range(0)));
  const FiniteSpectrum spectrum({"t1", "t2"});
  Rng rng(7);
  const CompressedRegularInstance instance =
      compressed_regular_instance(group, spectrum, rng);
  const OperatorAlgebraBasis bicomm = bicommutant(instance.rep.images());
  const ModuleOperator a = random_unitary_in(bicomm, rng);
  const ModuleElement xi = a.apply(instance.eta);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        solve_generator(instance.rep, instance.eta, xi, 11));
  }
}
BENCHMARK(BM_SolveGenerator)->Arg(2)->Arg(3)->Arg(4);

void BM_BestParsevalApprox(benchmark::State& state) {
  const FiniteGroup group = FiniteGroup::symmetric(3);
  const FiniteSpectrum spectrum({"t1", "t2"});
  Rng rng(5);
  const CompressedRegularInstance instance =
      compressed_regular_instance(group, spectrum, rng);
  std::vector<ModuleElement> gens;
  for (int k = 0; k < static_cast<int>(state.range(0)); ++k) {
    gens.push_back(random_element(instance.rep.shape(), rng));
  }
  const MultiGenerator phi(std::move(gens));
  for (auto _ : state) {
    benchmark::DoNotOptimize(best_parseval_approx(instance.rep, phi));
  }
}
BENCHMARK(BM_BestParsevalApprox)->Arg(1)->Arg(2)->Arg(3);

}  // namespace

BENCHMARK_MAIN();
