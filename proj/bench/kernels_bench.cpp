#include <benchmark/benchmark.h>

#include "ehall/autoforms.hpp"
#include "ehall/curve.hpp"
#include "ehall/dvr_hall.hpp"

using namespace ehall;

namespace {

// Fresh curve per iteration so the point cache does not hide the work.
void BM_points_parallel(benchmark::State& st) {
  for (auto _ : st) {
    EllipticCurve X = EllipticCurve::E2();
    benchmark::DoNotOptimize(X.enumerate_points(static_cast<int>(st.range(0))));
  }
}
void BM_points_reference(benchmark::State& st) {
  for (auto _ : st) {
    EllipticCurve X = EllipticCurve::E2();
    benchmark::DoNotOptimize(X.enumerate_points_reference(static_cast<int>(st.range(0))));
  }
}

Partition bench_partition(long k) { return k == 0 ? Partition{2, 2, 1} : Partition{3, 2, 1}; }

void BM_submodules_parallel(benchmark::State& st) {
  auto l = bench_partition(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(enumerate_submodule_types(l, 3));
}
void BM_submodules_serial(benchmark::State& st) {
  auto l = bench_partition(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(enumerate_submodule_types_serial(l, 3));
}

void BM_euler_parallel(benchmark::State& st) {
  EllipticCurve X = EllipticCurve::E1();
  auto r = X.primitive_orbits(2).front().rep();
  int order = static_cast<int>(st.range(0));
  l_function(X, r, r, order);  // warm the point caches
  for (auto _ : st) benchmark::DoNotOptimize(l_function(X, r, r, order));
}
void BM_euler_serial(benchmark::State& st) {
  EllipticCurve X = EllipticCurve::E1();
  auto r = X.primitive_orbits(2).front().rep();
  int order = static_cast<int>(st.range(0));
  l_function_serial(X, r, r, order);  // warm the point caches
  for (auto _ : st) benchmark::DoNotOptimize(l_function_serial(X, r, r, order));
}

}  // namespace

BENCHMARK(BM_points_parallel)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_points_reference)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_submodules_parallel)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_submodules_serial)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_euler_parallel)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_euler_serial)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
