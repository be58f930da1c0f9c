#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "sm/encoder.hpp"
#include "sm/lattice.hpp"
#include "sm/orlicz.hpp"
#include "sm/pwl.hpp"
#include "sm/submult.hpp"

namespace {

const sm::OrliczParams kParams{sm::Rat(1, 2), sm::Rat(2), sm::Rat(5, 2)};

void BM_PwlEval(benchmark::State& state) {
  sm::PwlFunction f =
      sm::extend_fast_to(sm::PwlFunction::identity_seed(), sm::Rat(10));
  sm::Rat x = f.domain_end() * sm::Rat(3, 7);
  if (x < 1) x = sm::Rat(3, 2);
  for (auto _ : state) benchmark::DoNotOptimize(f.eval(x));
}
BENCHMARK(BM_PwlEval);

void BM_SubmultChecker(benchmark::State& state) {
  sm::PwlFunction f =
      sm::extend_fast_to(sm::PwlFunction::identity_seed(), sm::Rat(10));
  for (auto _ : state)
    benchmark::DoNotOptimize(
        sm::check_submultiplicative(f, state.range(0), 1, 1));
}
BENCHMARK(BM_SubmultChecker)->Arg(32)->Arg(128);

void BM_LuxemburgNorm(benchmark::State& state) {
  sm::OrliczFunction m(kParams, sm::Pattern::all_ones(sm::Int(80)));
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> unif(0.05, 1.0);
  std::vector<double> a(static_cast<std::size_t>(state.range(0)));
  for (double& v : a) v = unif(rng);
  for (auto _ : state) benchmark::DoNotOptimize(sm::luxemburg_norm(m, a));
}
BENCHMARK(BM_LuxemburgNorm)->Arg(4)->Arg(16);

void BM_RunEncoder(benchmark::State& state) {
  sm::FiniteLattice m3 = sm::m3_lattice();
  for (auto _ : state) {
    sm::EncoderState s =
        sm::run_encoder(m3, kParams, static_cast<int>(state.range(0)));
    benchmark::DoNotOptimize(s.horizon);
  }
}
BENCHMARK(BM_RunEncoder)->Arg(3)->Arg(6);

void BM_VerifyProperties(benchmark::State& state) {
  sm::EncoderState s = sm::run_encoder(sm::m3_lattice(), kParams, 6);
  for (auto _ : state)
    benchmark::DoNotOptimize(sm::verify_properties(s).ok);
}
BENCHMARK(BM_VerifyProperties);

}  // namespace

BENCHMARK_MAIN();
