#include <benchmark/benchmark.h>

#include <random>

#include "vmlat/commuting_square.hpp"
#include "vmlat/fixtures.hpp"
#include "vmlat/intertwiner.hpp"

namespace fx = vmlat::fixtures;
using namespace vmlat;

namespace {

void BM_kron_exact(benchmark::State& state) {
  const long d = state.range(0);
  Matrix a = fx::random_exact_invertible(d, 1);
  Matrix b = fx::random_exact_invertible(d, 2);
  for (auto _ : state) benchmark::DoNotOptimize(kron(a, b));
}
BENCHMARK(BM_kron_exact)->Arg(4)->Arg(8);

void BM_inverse_exact(benchmark::State& state) {
  const long d = state.range(0);
  Matrix a = fx::random_exact_invertible(d, 3);
  for (auto _ : state) benchmark::DoNotOptimize(inverse(a));
}
BENCHMARK(BM_inverse_exact)->Arg(4)->Arg(8)->Arg(16);

void BM_nullspace_exact(benchmark::State& state) {
  const long d = state.range(0);
  Matrix m(d, 2 * d, Mode::exact);
  std::mt19937_64 rng(7);
  for (long r = 0; r < d; ++r)
    for (long c = 0; c < 2 * d; ++c)
      if (rng() % 3 == 0) m.set(r, c, Scalar::integer(static_cast<long>(rng() % 5) - 2, Mode::exact));
  for (auto _ : state) benchmark::DoNotOptimize(nullspace(m));
}
BENCHMARK(BM_nullspace_exact)->Arg(16)->Arg(32);

void BM_end_algebra_cell(benchmark::State& state) {
  const int len = static_cast<int>(state.range(0));
  auto base = std::make_shared<VertexOperator>(make_uprime(fx::diag_pauli()));
  for (auto _ : state) {
    TensorWord w = realize_word(base, lattice_word(len, 0));
    benchmark::DoNotOptimize(end_algebra(w));
  }
}
BENCHMARK(BM_end_algebra_cell)->Arg(2)->Arg(3);

void BM_relative_commutant(benchmark::State& state) {
  const int i = static_cast<int>(state.range(0));
  VertexOperator u = fx::diag_pauli();
  for (auto _ : state) benchmark::DoNotOptimize(relative_commutant_direct(u, i, 0));
}
BENCHMARK(BM_relative_commutant)->Arg(2)->Arg(3);

void BM_decompose_cell(benchmark::State& state) {
  LatticeGrid grid = lattice(make_uprime(fx::diag_pauli()), 3);
  const LatticeCell& cell = grid.cell(3, 0);
  MatrixStarAlgebra alg(cell.basis[0].rows(), cell.basis);
  for (auto _ : state) benchmark::DoNotOptimize(decompose(alg, 0));
}
BENCHMARK(BM_decompose_cell);

}  // namespace

BENCHMARK_MAIN();
