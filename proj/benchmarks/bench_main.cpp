#include <benchmark/benchmark.h>

#include <memory>

#include "twistzero/hlharness.hpp"
#include "twistzero/lfun.hpp"
#include "twistzero/qseries.hpp"
#include "twistzero/specfun.hpp"

using namespace twistzero;

static void BM_LogGamma(benchmark::State& state) {
  cplx s(6.0, 0.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(log_gamma(s));
    s += cplx(0.0, 0.01);
  }
}
BENCHMARK(BM_LogGamma);

static void BM_IncompleteGammaTail(benchmark::State& state) {
  const cplx w(12.0, 30.0);
  double x = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(incomplete_gamma_tail(w, cplx(x, -x)));
    x = x > 40.0 ? 0.5 : x + 0.37;
  }
}
BENCHMARK(BM_IncompleteGammaTail);

static void BM_EtaCoefficients(benchmark::State& state) {
  const FormSpec delta = parse_form("eta:1^24");
  const auto M = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(eta_quotient_coeffs(delta, M));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_EtaCoefficients)->RangeMultiplier(4)->Range(1 << 10, 1 << 16)->Complexity();

static void BM_SmoothedL(benchmark::State& state) {
  const double t = static_cast<double>(state.range(0));
  const TwistedL L(std::make_shared<const CoeffTable>(eta_quotient_coeffs(
                       parse_form("eta:1^24"), TwistedL::coefficients_needed(12.0, 5, t + 1.0, 1e-12))),
                   {1, 5});
  for (auto _ : state) benchmark::DoNotOptimize(L.smoothed_L(cplx(0.5, t)));
}
BENCHMARK(BM_SmoothedL)->Arg(10)->Arg(40)->Arg(160);

static void BM_BumpU(benchmark::State& state) {
  const BumpFamily fam;
  double t = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(fam.u(t));
    t = t > 30.0 ? 0.0 : t + 0.013;
  }
}
BENCHMARK(BM_BumpU);

BENCHMARK_MAIN();
