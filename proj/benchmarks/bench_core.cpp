#include <benchmark/benchmark.h>

#include <random>

#include "modsuper/meataxe.hpp"

using namespace modsuper;

namespace {

Matrix random_matrix(FieldPtr F, int n, std::mt19937_64& rng) {
  Matrix m(F, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.set(i, j, F->random(rng));
  return m;
}

void BM_field_mul(benchmark::State& state) {
  auto F = make_field(5, 2);
  std::mt19937_64 rng(1);
  Scalar a = F->random_nonzero(rng), b = F->random_nonzero(rng);
  for (auto _ : state) {
    a = F->mul(a, b);
    benchmark::DoNotOptimize(a);
  }
}
BENCHMARK(BM_field_mul);

void BM_matrix_mul(benchmark::State& state) {
  auto F = make_field(5);
  std::mt19937_64 rng(2);
  int n = static_cast<int>(state.range(0));
  Matrix A = random_matrix(F, n, rng), B = random_matrix(F, n, rng);
  for (auto _ : state) {
    Matrix C = A * B;
    benchmark::DoNotOptimize(C);
  }
}
BENCHMARK(BM_matrix_mul)->Arg(64)->Arg(256);

void BM_kernel(benchmark::State& state) {
  auto F = make_field(3);
  std::mt19937_64 rng(3);
  int n = static_cast<int>(state.range(0));
  Matrix A = random_matrix(F, n, rng);
  for (auto _ : state) {
    auto k = kernel_basis(A);
    benchmark::DoNotOptimize(k);
  }
}
BENCHMARK(BM_kernel)->Arg(128)->Arg(256);

void BM_straighten_regular(benchmark::State& state) {
  auto g = construct_osp12(make_field(3));
  PChar chi = chi_from_values(*g, {{2, g->field->one()}});
  for (auto _ : state) {
    UAlgebraCtx u(g, chi);
    RegularModule R = regular_module(u);
    benchmark::DoNotOptimize(R.rep.dim);
  }
}
BENCHMARK(BM_straighten_regular);

void BM_meataxe_split(benchmark::State& state) {
  auto g = construct_osp12(make_field(5));
  ModuleRep Z = osp12_verma_closed_form(g, zero_chi(*g), g->field->from_int(1));
  for (auto _ : state) {
    auto out = is_simple(Z, 1);
    benchmark::DoNotOptimize(out.verdict);
  }
}
BENCHMARK(BM_meataxe_split);

}  // namespace

BENCHMARK_MAIN();
