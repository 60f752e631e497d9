#include <benchmark/benchmark.h>

#include <cmath>

#include "superbos/riesz.hpp"
#include "superbos/superexpr.hpp"
#include "superbos/superfourier.hpp"
#include "superbos/supermatrix.hpp"

using namespace superbos;

namespace {

// dense element with every coefficient set
GrassmannNumber dense(const AlgebraPtr& alg, double shift) {
  GrassmannNumber x(alg, 1.0 + shift);
  for (int i = 0; i < alg->size(); ++i) {
    GrassmannNumber g = GrassmannNumber::generator(alg, i, cplx(0.1 * (i + 1), shift));
    x = x + g + x * g;
  }
  return x;
}

void BM_GrassmannMultiply(benchmark::State& st) {
  auto alg = GrassmannAlgebra::make(static_cast<int>(st.range(0)));
  GrassmannNumber a = dense(alg, 0.3), b = dense(alg, -0.7);
  for (auto _ : st) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_GrassmannMultiply)->DenseRange(2, 12, 2);

void BM_Berezinian(benchmark::State& st) {
  auto alg = GrassmannAlgebra::make(4);
  SuperMatrix x = parse_matrix("3,0.5,θ1,θ2;0.2,2,θ3,θ4;θ2,θ1,1.5,0.1;θ4,θ3,0.3,1", {2, 2}, {2, 2}, alg);
  for (auto _ : st) benchmark::DoNotOptimize(berezinian(x));
}
BENCHMARK(BM_Berezinian);

void BM_GammaNumeric(benchmark::State& st) {
  OmegaSpec s;
  s.p = static_cast<int>(st.range(0));
  s.q = 1;
  s.cone = QuadSpec{QuadRule::GaussLaguerre, {4, 4}, 1, 0};
  s.unitary = QuadSpec{QuadRule::CircleTrapezoid, {32}, 1, 0};
  std::vector<double> m(s.p, s.p + 2.0);
  m.push_back(1.0);
  MultiIndex mi(s.p, m);
  for (auto _ : st) benchmark::DoNotOptimize(gamma_numeric(s, mi));
}
BENCHMARK(BM_GammaNumeric)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_Fourier(benchmark::State& st) {
  int q = static_cast<int>(st.range(0));
  std::vector<std::function<cplx(double)>> fs(std::size_t(1) << q, [](double x) { return cplx{std::exp(-x * x)}; });
  SchwartzSample f = SchwartzSample::from_functions(1, q, fs);
  for (auto _ : st) benchmark::DoNotOptimize(ft(f));
}
BENCHMARK(BM_Fourier)->Arg(0)->Arg(1)->Arg(2)->Unit(benchmark::kMicrosecond);

}  // namespace
BENCHMARK_MAIN();
