// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "pecddm/excitation.hpp"
#include "support.hpp"

using namespace pecddm;

TEST_CASE("plane wave satisfies Maxwell's equations") {
  const auto ctx = WaveContext::from_wavenumber(2.7);
  const auto w = PlaneWave::from_angles(60.0, 30.0, true, ctx);
  for (const Vec3& x : {Vec3(0.1, 0.2, 0.3), Vec3(-1.0, 0.5, 2.0)}) {
    const double h = 1e-5;
    CVec3 curl;
    auto dE = [&](int d) {
      Vec3 e = Vec3::Zero();
      e(d) = h;
      return CVec3((w.E(x + e) - w.E(x - e)) / (2.0 * h));
    };
    const CVec3 dx = dE(0), dy = dE(1), dz = dE(2);
    curl << dy(2) - dz(1), dz(0) - dx(2), dx(1) - dy(0);
    const CVec3 ikH = kI * ctx.k * w.H(x);
    CHECK((curl - ikH).norm() < 1e-8);
    CHECK(std::abs(testing::bilinear(w.E(x), w.direction().cast<cplx>())) < 1e-15);
    CHECK(std::abs(testing::bilinear(w.H(x), w.direction().cast<cplx>())) < 1e-15);
    CHECK(w.E(x).norm() == doctest::Approx(w.H(x).norm()));
  }
}

TEST_CASE("incidence angles") {
  const auto ctx = WaveContext::from_wavenumber(1.0);
  // arriving from the south pole: travelling along +z
  const auto w = PlaneWave::from_angles(180.0, 0.0, true, ctx);
  CHECK((w.direction() - Vec3(0, 0, 1)).norm() < 1e-15);
  CHECK((w.polarization() - Vec3(-1, 0, 0)).norm() < 1e-15);
  const auto v = PlaneWave::from_angles(90.0, 0.0, false, ctx);
  CHECK((v.direction() - Vec3(-1, 0, 0)).norm() < 1e-15);
  CHECK((v.polarization() - Vec3(0, 1, 0)).norm() < 1e-15);
  CHECK(w.amplitude() == cplx(1.0));

  CHECK_THROWS_AS(PlaneWave(Vec3(0, 0, 2), Vec3(1, 0, 0), ctx), std::invalid_argument);
  CHECK_THROWS_AS(PlaneWave(Vec3(0, 0, 1), Vec3(0.6, 0, 0.8), ctx), std::invalid_argument);
}

TEST_CASE("load vectors match brute-force quadrature") {
  const auto mesh = testing::artificial_sphere(1, 0.8, SphereBase::Icosahedron);
  const RwgSpace space(mesh, mesh->shell(Side::Plus));
  const auto ctx = WaveContext::from_wavenumber(3.0);
  const PlaneWave wave(Vec3(0, 0.6, 0.8), Vec3(1, 0, 0), ctx, cplx(0.5, 2.0));
  const CVector b = project_tangential_E(space, wave);
  const CVector cp = project_rotated_H(space, wave, Side::Plus);
  const CVector cm = project_rotated_H(space, wave, Side::Minus);
  CHECK((cp + cm).norm() < 1e-14 * cp.norm());

  CVector b_ref = CVector::Zero(space.dof_count()), c_ref = CVector::Zero(space.dof_count());
  const auto rule = testing::reference_rule<10>();
  for (std::size_t s = 0; s < space.triangles().size(); ++s) {
    const auto t = space.triangles()[s];
    const Vec3 n = mesh->normal(t);
    for (const auto& q : rule) {
      const Vec3 x = testing::map_point(*mesh, t, q.a1, q.a2);
      const CVec3 e = wave.E(x), h = wave.H(x);
      const CVec3 nxh(n(1) * h(2) - n(2) * h(1), n(2) * h(0) - n(0) * h(2), n(0) * h(1) - n(1) * h(0));
      for (int j = 0; j < 3; ++j) {
        const auto& lb = space.local(s)[j];
        if (lb.dof < 0) continue;
        const Vec3 th = lb.sign * lb.length / (2.0 * mesh->area(t)) * (x - mesh->vertex(t, j));
        const double w = 2.0 * mesh->area(t) * q.w;
        b_ref(lb.dof) += w * testing::bilinear(th.cast<cplx>(), e);
        c_ref(lb.dof) += w * testing::bilinear(th.cast<cplx>(), nxh);
      }
    }
  }
  CHECK((b - b_ref).norm() < 1e-7 * b_ref.norm());
  CHECK((cp - c_ref).norm() < 1e-7 * c_ref.norm());
}
