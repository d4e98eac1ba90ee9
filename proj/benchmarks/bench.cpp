#include <benchmark/benchmark.h>

#include "uclab/discrete_laplace.hpp"
#include "uclab/growth_analysis.hpp"
#include "uclab/nodal_geometry.hpp"
#include "uclab/solution_family.hpp"

namespace {

void bm_assemble(benchmark::State& state) {
  const auto grid = uclab::GridSpec::square(-1.0, 1.0, int(state.range(0)));
  const auto dom = uclab::GridDomain::full_interior(grid);
  for (auto _ : state)
    benchmark::DoNotOptimize(uclab::assemble_dirichlet(dom).matrix.nonZeros());
}
BENCHMARK(bm_assemble)->Arg(65)->Arg(129)->Arg(257);

void bm_eigensolve(benchmark::State& state) {
  const auto grid = uclab::GridSpec::square(-1.0, 1.0, int(state.range(0)));
  const auto op =
      uclab::assemble_dirichlet(uclab::GridDomain::full_interior(grid));
  for (auto _ : state)
    benchmark::DoNotOptimize(uclab::eigensolve(op, 4)[0].lambda);
}
BENCHMARK(bm_eigensolve)->Arg(65)->Arg(129);

void bm_frequency_profile(benchmark::State& state) {
  const auto grid = uclab::GridSpec::square(-1.0, 1.0, 257);
  const auto h = uclab::random_harmonic(7, 6, grid);
  const auto eye = uclab::CoefficientMatrixField::identity(grid);
  const std::vector<double> radii = {0.1, 0.2, 0.3, 0.4};
  for (auto _ : state)
    benchmark::DoNotOptimize(
        uclab::frequency_profile(h.field, eye, {0.0, 0.0}, radii).N[0]);
}
BENCHMARK(bm_frequency_profile);

void bm_zero_set(benchmark::State& state) {
  const auto grid = uclab::GridSpec::square(-1.0, 1.0, int(state.range(0)));
  const auto h = uclab::random_harmonic(11, 6, grid);
  for (auto _ : state)
    benchmark::DoNotOptimize(uclab::extract_zero_set(h.field).total_length);
}
BENCHMARK(bm_zero_set)->Arg(129)->Arg(257)->Arg(513);

void bm_doubling_cube(benchmark::State& state) {
  const auto grid = uclab::GridSpec::square(-1.0, 1.0, 513);
  const auto h = uclab::random_harmonic(13, 6, grid);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        uclab::doubling_cube(h.field, {0.0, 0.0, 0.25}, 3).value);
}
BENCHMARK(bm_doubling_cube);

}  // namespace

BENCHMARK_MAIN();
