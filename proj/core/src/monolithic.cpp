// SPDX-License-Identifier: Apache-2.0

#include "pecddm/admittance.hpp"
#include "pecddm/postprocess.hpp"

namespace pecddm {

std::shared_ptr<const RwgSpace> scatterer_space(std::shared_ptr<const SurfaceMesh> mesh) {
  auto metal = mesh->region_triangles(Region::GdPlus);
  if (metal.empty()) metal = mesh->region_triangles(Region::Sigma);
  return std::make_shared<RwgSpace>(std::move(mesh), std::move(metal));
}

MonolithicSolution monolithic_efie(std::shared_ptr<const RwgSpace> space, const PlaneWave& wave,
                                   const QuadratureOptions& quad) {
  BoundaryOperatorMatrix t = assemble_T(space, wave.context(), quad);
  const CVector b = project_tangential_E(*space, wave, quad);
  MonolithicSolution out;
  out.space = space;
  try {
    DenseLu lu(std::move(t.data));
    out.rcond = lu.rcond();
    out.current = lu.solve(CVector(-b));
  } catch (const SingularMatrixError& e) {
    throw ResonanceError(std::string("interior resonance suspected: ") + e.what(), 0.0);
  }
  return out;
}

}  // namespace pecddm
