#include <benchmark/benchmark.h>

#include "dpg/elliptic_projection.hpp"
#include "dpg/timestep.hpp"

using namespace dpg;

static void BM_LocalBlocks(benchmark::State& state) {
  const Mesh mesh = build_structured_mesh(static_cast<std::size_t>(state.range(0)));
  const DofMap dofs(mesh, static_cast<int>(state.range(1)));
  const PdeCoefficients c = make_case("adr-decay", 0.01, 0.01).coeffs;
  for (auto _ : state) benchmark::DoNotOptimize(build_local_blocks(mesh, dofs, c));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(mesh.num_elements()));
}
BENCHMARK(BM_LocalBlocks)->ArgsProduct({{8, 16, 32}, {0, 1}})->Unit(benchmark::kMillisecond);

static void BM_AssembleCondensed(benchmark::State& state) {
  const Mesh mesh = build_structured_mesh(static_cast<std::size_t>(state.range(0)));
  const DofMap dofs(mesh, static_cast<int>(state.range(1)));
  const PdeCoefficients c = make_case("adr-decay", 0.01, 0.01).coeffs;
  for (auto _ : state) benchmark::DoNotOptimize(assemble_condensed(mesh, dofs, c));
}
BENCHMARK(BM_AssembleCondensed)->ArgsProduct({{8, 16, 32}, {0, 1}})->Unit(benchmark::kMillisecond);

static void BM_CgSolve(benchmark::State& state) {
  const Mesh mesh = build_structured_mesh(static_cast<std::size_t>(state.range(0)));
  const DofMap dofs(mesh, 0);
  const PdeCase pde = make_case("adr-decay", 0.01, 0.01);
  const CondensedSystem sys = assemble_condensed(mesh, dofs, pde.coeffs);
  const JacobiPreconditioner precond(sys.S);
  const Eigen::VectorXd u0 = initial_field(pde.initial_value(), dofs, mesh).field;
  const Eigen::VectorXd rhs = condense_load(sys.blocks, mesh, dofs, pde.coeffs, pde.source_at(0.01), u0);
  int iterations = 0;
  for (auto _ : state) {
    const CgResult r = cg_solve(sys.S, rhs, precond, 1e-12);
    iterations = r.iterations;
    benchmark::DoNotOptimize(r.x.data());
  }
  state.counters["cg_iterations"] = iterations;
}
BENCHMARK(BM_CgSolve)->Arg(8)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

static void BM_TimeStep(benchmark::State& state) {
  const Mesh mesh = build_structured_mesh(static_cast<std::size_t>(state.range(0)));
  const DofMap dofs(mesh, 0);
  const PdeCase pde = make_case("heat-decay", 0.01, 0.01);
  const TimeStepper stepper(mesh, dofs, pde.coeffs);
  const MarchState s0 = stepper.start(pde.initial_value());
  const SpatialFunction f = pde.source_at(0.01);
  for (auto _ : state) benchmark::DoNotOptimize(stepper.step(s0, f));
}
BENCHMARK(BM_TimeStep)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

static void BM_Projection(benchmark::State& state) {
  const Mesh mesh = build_structured_mesh(static_cast<std::size_t>(state.range(0)));
  const DofMap dofs(mesh, 0);
  const PdeCase pde = make_case("adr-decay", 0.1, 0.1);
  const ExactSolution exact = pde.exact_at(0.0);
  for (auto _ : state) benchmark::DoNotOptimize(project(mesh, dofs, pde.coeffs, exact));
}
BENCHMARK(BM_Projection)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
