// Microbenchmarks for the hot paths: exact normal forms, lattice class
// canonicalization, building distance, and the end-to-end intersection
// routes at both places. Instances are generated outside the timed loops.

#include <benchmark/benchmark.h>

#include <vector>

#include "arakelov/arch.hpp"
#include "arakelov/building.hpp"
#include "arakelov/generator.hpp"
#include "arakelov/nonarch.hpp"
#include "arakelov/smith.hpp"

using namespace arakelov;

namespace {

std::vector<QMatrix> dense_matrices(int n, int count) {
  Rng rng(11);
  ValuationContext ctx(5);
  std::vector<QMatrix> out;
  for (int i = 0; i < count; ++i)
    out.push_back(random_full_lattice(rng, n, ctx, -3, 3).basis());
  return out;
}

void bench_smith_local(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  ValuationContext ctx(5);
  auto mats = dense_matrices(n, 16);
  size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(smith_local(mats[i % mats.size()], ctx));
    ++i;
  }
}
BENCHMARK(bench_smith_local)->Arg(2)->Arg(4)->Arg(6);

void bench_lattice_class(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  ValuationContext ctx(5);
  auto mats = dense_matrices(n, 16);
  size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(LatticeClass(Lattice(mats[i % mats.size()], ctx)));
    ++i;
  }
}
BENCHMARK(bench_lattice_class)->Arg(2)->Arg(4)->Arg(6);

void bench_building_distance(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  Rng rng(12);
  ValuationContext ctx(3);
  std::vector<LatticeClass> classes;
  for (int i = 0; i < 16; ++i)
    classes.emplace_back(random_full_lattice(rng, n, ctx, 0, 4));
  size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(building::combinatorial_distance(
        classes[i % classes.size()], classes[(i + 7) % classes.size()]));
    ++i;
  }
}
BENCHMARK(bench_building_distance)->Arg(2)->Arg(3)->Arg(4);

void bench_finite_algebraic(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  Rng rng(13);
  ValuationContext ctx(5);
  std::vector<NonarchInstance> insts;
  for (int i = 0; i < 8; ++i)
    insts.push_back(random_nonarch_instance(rng, n, n / 2, ctx, true));
  size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        nonarch::intersection_algebraic(insts[i % insts.size()].quad));
    ++i;
  }
}
BENCHMARK(bench_finite_algebraic)->Arg(2)->Arg(4)->Arg(6);

void bench_finite_geometric(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  Rng rng(13);
  ValuationContext ctx(5);
  std::vector<NonarchInstance> insts;
  for (int i = 0; i < 8; ++i)
    insts.push_back(random_nonarch_instance(rng, n, n / 2, ctx, true));
  size_t i = 0;
  for (auto _ : state) {
    const NonarchInstance& inst = insts[i % insts.size()];
    benchmark::DoNotOptimize(
        nonarch::intersection_geometric(inst.quad, inst.l_a, inst.l_b));
    ++i;
  }
}
BENCHMARK(bench_finite_geometric)->Arg(2)->Arg(4)->Arg(6);

void bench_arch_closed_form(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  Rng rng(14);
  std::vector<ArchInstance> insts;
  for (int i = 0; i < 8; ++i)
    insts.push_back(random_arch_instance(rng, n, n / 2 >= 3 ? 3 : n / 2, true));
  size_t i = 0;
  for (auto _ : state) {
    const ArchInstance& inst = insts[i % insts.size()];
    benchmark::DoNotOptimize(
        arch::intersection_closed_form(inst.quad, inst.h_a, inst.h_b));
    ++i;
  }
}
BENCHMARK(bench_arch_closed_form)->Arg(2)->Arg(4)->Arg(8);

void bench_arch_geometric(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  Rng rng(14);
  std::vector<ArchInstance> insts;
  for (int i = 0; i < 8; ++i)
    insts.push_back(random_arch_instance(rng, n, n / 2 >= 3 ? 3 : n / 2, true));
  size_t i = 0;
  for (auto _ : state) {
    const ArchInstance& inst = insts[i % insts.size()];
    benchmark::DoNotOptimize(
        arch::intersection_geometric(inst.quad, inst.h_a, inst.h_b));
    ++i;
  }
}
BENCHMARK(bench_arch_geometric)->Arg(2)->Arg(4)->Arg(8);

}  // namespace

BENCHMARK_MAIN();
