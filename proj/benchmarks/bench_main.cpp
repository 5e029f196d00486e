#include <ptc/enumeration.hpp>
#include <ptc/jacobi.hpp>
#include <ptc/moduli.hpp>
#include <ptc/neumann.hpp>
#include <ptc/recursion.hpp>

#include <benchmark/benchmark.h>

using namespace ptc;

namespace {

// d copies of the toric directions of the projective plane.
DeltaSet<Rational> degree(int d) {
  DeltaSet<Rational> out;
  for (int k = 0; k < d; ++k) {
    out.vectors.push_back({-1, 0});
    out.vectors.push_back({0, -1});
    out.vectors.push_back({1, 1});
  }
  return out;
}

DeltaSet<Rational> generic(int n) {
  const Vec2<Rational> pool[] = {{3, 1}, {-1, 4}, {-5, -2}, {2, -7}, {Rational(1, 2), 3}, {-4, Rational(5, 3)}, {6, -1}};
  DeltaSet<Rational> out;
  Vec2<Rational> sum;
  for (int i = 0; i + 1 < n; ++i) {
    out.vectors.push_back(pool[i]);
    sum += pool[i];
  }
  out.vectors.push_back(-sum);
  return out;
}

// Caterpillar with n legs and unit edges.
AbstractCurve<Rational> caterpillar(int n) {
  AbstractCurve<Rational> g;
  g.num_vertices = n - 2;
  for (int v = 0; v + 1 < g.num_vertices; ++v) g.edges.push_back({v, v + 1, Rational(1)});
  g.legs.push_back({0});
  for (int v = 0; v < g.num_vertices; ++v) g.legs.push_back({v});
  g.legs.push_back({g.num_vertices - 1});
  return g;
}

void BM_Realize(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto g = caterpillar(n);
  const auto delta = generic(n);
  for (auto _ : state) benchmark::DoNotOptimize(realize(g, delta, 0, Vec2<Rational>{}));
}
BENCHMARK(BM_Realize)->Arg(4)->Arg(6)->Arg(8);

void BM_CurvesThrough(benchmark::State& state) {
  const auto delta = generic(static_cast<int>(state.range(0)));
  const auto points = random_configuration(delta, 1);
  for (auto _ : state) benchmark::DoNotOptimize(curves_through(delta, points));
}
BENCHMARK(BM_CurvesThrough)->Arg(4)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_LieCycle(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto delta = generic(n);
  type_table(n);
  for (auto _ : state) benchmark::DoNotOptimize(lie_cycle(n, delta, WeightMode::numeric(0.5)));
}
BENCHMARK(BM_LieCycle)->Arg(4)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_VerifyCycle(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto z = lie_cycle(n, generic(n), WeightMode::exact());
  boundary_complex(n);
  for (auto _ : state) benchmark::DoNotOptimize(verify_cycle(z));
}
BENCHMARK(BM_VerifyCycle)->Arg(4)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_RecursionDegree(benchmark::State& state) {
  const auto delta = degree(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(recursive_count(delta, WeightMode::laurent()));
}
BENCHMARK(BM_RecursionDegree)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_CountDegree(benchmark::State& state) {
  const auto delta = degree(static_cast<int>(state.range(0)));
  CountOptions opt;
  opt.mode = WeightMode::laurent();
  opt.seed = 7;
  for (auto _ : state) benchmark::DoNotOptimize(refined_invariant(delta, opt));
}
BENCHMARK(BM_CountDegree)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond)->Iterations(1);

}  // namespace

BENCHMARK_MAIN();
