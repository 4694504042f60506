#include <benchmark/benchmark.h>

#include "nonunitary/analytic.hpp"
#include "nonunitary/eigensys.hpp"
#include "nonunitary/entanglement.hpp"
#include "nonunitary/fidelity.hpp"

using namespace nonunitary;

namespace {

ChainSpec impurity_chain(int cells, double lambda) {
  ChainSpec s;
  s.n_cells = cells;
  s.v1 = 1.0;
  s.w1 = -1.0;
  s.boundary = Boundary::PBC;
  s.impurities = {{0, lambda, 3.0, 3.0}};
  return s;
}

void bm_build_hamiltonian(benchmark::State& state) {
  const auto spec = impurity_chain(int(state.range(0)), 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(build_hamiltonian(spec));
}

void bm_diagonalize(benchmark::State& state) {
  const auto h = build_hamiltonian(impurity_chain(int(state.range(0)), 0.5));
  for (auto _ : state) benchmark::DoNotOptimize(diagonalize(h));
}

void bm_correlation_matrix(benchmark::State& state) {
  const auto sys = diagonalize(build_hamiltonian(impurity_chain(int(state.range(0)), 0.5)));
  const auto gs = ground_state(sys);
  for (auto _ : state) benchmark::DoNotOptimize(correlation_matrix(sys, gs));
}

void bm_half_cut_entropy(benchmark::State& state) {
  const int cells = int(state.range(0));
  const auto sys = diagonalize(build_hamiltonian(impurity_chain(cells, 0.5)));
  const auto c = correlation_matrix(sys, ground_state(sys));
  for (auto _ : state) benchmark::DoNotOptimize(subsystem_entropy(c, 0, cells));
}

void bm_gs_overlap(benchmark::State& state) {
  const auto a = diagonalize(build_hamiltonian(impurity_chain(int(state.range(0)), 0.5)));
  const auto b = diagonalize(build_hamiltonian(impurity_chain(int(state.range(0)), 0.501)));
  const auto ga = ground_state(a);
  const auto gb = ground_state(b);
  for (auto _ : state) benchmark::DoNotOptimize(gs_overlap(a, ga, b, gb));
}

void bm_ep_check(benchmark::State& state) {
  const auto spec = impurity_chain(int(state.range(0)), 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(check_ep(spec));
}

BENCHMARK(bm_build_hamiltonian)->Arg(64)->Arg(256);
BENCHMARK(bm_diagonalize)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_correlation_matrix)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_half_cut_entropy)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_gs_overlap)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_ep_check)->Arg(128)->Arg(512);

} // namespace

BENCHMARK_MAIN();
