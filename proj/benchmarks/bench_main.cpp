// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include "pecddm/ddm.hpp"

using namespace pecddm;

namespace {

std::shared_ptr<const SurfaceMesh> sphere(int refinement) {
  SphereOptions o;
  o.radius = 0.5;
  o.refinement = refinement;
  o.base = SphereBase::Octahedron;
  return std::make_shared<const SurfaceMesh>(generate_sphere(o));
}

const WaveContext kCtx = WaveContext::from_frequency(100e6);

void BM_AssembleT(benchmark::State& state) {
  const auto mesh = sphere(static_cast<int>(state.range(0)));
  auto space = std::make_shared<const RwgSpace>(mesh, mesh->shell(Side::Plus));
  for (auto _ : state) benchmark::DoNotOptimize(assemble_T(space, kCtx).data.data());
  state.counters["dofs"] = static_cast<double>(space->dof_count());
}
BENCHMARK(BM_AssembleT)->Arg(3)->Arg(7)->Arg(11)->Unit(benchmark::kMillisecond);

void BM_AssembleK(benchmark::State& state) {
  const auto mesh = sphere(static_cast<int>(state.range(0)));
  const RwgSpace space(mesh, mesh->shell(Side::Plus));
  for (auto _ : state) benchmark::DoNotOptimize(assemble_K_stored(space, kCtx).data());
  state.counters["dofs"] = static_cast<double>(space.dof_count());
}
BENCHMARK(BM_AssembleK)->Arg(3)->Arg(7)->Unit(benchmark::kMillisecond);

void BM_DenseLu(benchmark::State& state) {
  const auto mesh = sphere(static_cast<int>(state.range(0)));
  auto space = std::make_shared<const RwgSpace>(mesh, mesh->shell(Side::Plus));
  const CMatrix t = assemble_T(space, kCtx).data;
  for (auto _ : state) {
    DenseLu lu(t);
    benchmark::DoNotOptimize(lu.rcond());
  }
  state.counters["dofs"] = static_cast<double>(space->dof_count());
}
BENCHMARK(BM_DenseLu)->Arg(7)->Arg(11)->Unit(benchmark::kMillisecond);

void BM_OuterSolve(benchmark::State& state) {
  BoxOptions bo;
  auto maps = std::make_shared<const InterfaceMaps>(
      build_spaces(std::make_shared<const SurfaceMesh>(generate_open_box(bo))));
  const auto wave = PlaneWave::from_angles(90.0, 0.0, true, kCtx);
  auto sys = build_system(maps, wave, static_cast<DdmVariant>(state.range(0)));
  GmresConfig g;
  g.tolerance = 1e-6;
  int iterations = 0;
  for (auto _ : state) {
    const auto s = solve(*sys, g);
    iterations = s.report.iterations;
  }
  state.counters["iterations"] = iterations;
  state.SetLabel(to_string(sys->variant()));
}
BENCHMARK(BM_OuterSolve)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
