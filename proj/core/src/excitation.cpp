// SPDX-License-Identifier: Apache-2.0

#include "pecddm/excitation.hpp"

#include <cmath>
#include <stdexcept>

#include "pecddm/quadrature.hpp"

namespace pecddm {

PlaneWave::PlaneWave(const Vec3& direction, const Vec3& polarization, const WaveContext& ctx,
                     cplx amplitude)
    : d_(direction), p_(polarization), ctx_(ctx), amp_(amplitude) {
  if (std::abs(d_.norm() - 1.0) > 1e-12 || std::abs(p_.norm() - 1.0) > 1e-12)
    throw std::invalid_argument("plane wave direction and polarization must be unit vectors");
  if (std::abs(d_.dot(p_)) > 1e-12)
    throw std::invalid_argument("plane wave polarization must be orthogonal to direction");
}

PlaneWave PlaneWave::from_angles(double theta_deg, double phi_deg, bool theta_polarized,
                                 const WaveContext& ctx) {
  const double th = theta_deg * kPi / 180.0, ph = phi_deg * kPi / 180.0;
  const Vec3 r(std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th));
  const Vec3 th_hat(std::cos(th) * std::cos(ph), std::cos(th) * std::sin(ph), -std::sin(th));
  const Vec3 ph_hat(-std::sin(ph), std::cos(ph), 0.0);
  return PlaneWave(-r, theta_polarized ? th_hat : ph_hat, ctx);
}

CVec3 PlaneWave::E(const Vec3& x) const {
  return (amp_ * std::exp(kI * (ctx_.k * d_.dot(x)))) * p_.cast<cplx>();
}

CVec3 PlaneWave::H(const Vec3& x) const {
  return (amp_ * std::exp(kI * (ctx_.k * d_.dot(x)))) * d_.cross(p_).cast<cplx>();
}

namespace {

template <class Field>
CVector project(const RwgSpace& space, const QuadratureOptions& quad, Field&& field) {
  const TriangleRule rule = collapsed_gauss(quad.load_order);
  const auto& mesh = space.mesh();
  CVector out = CVector::Zero(space.dof_count());
  for (std::size_t s = 0; s < space.triangles().size(); ++s) {
    const auto t = space.triangles()[s];
    const auto& l = space.local(s);
    const Vec3 p0 = mesh.vertex(t, 0), p1 = mesh.vertex(t, 1), p2 = mesh.vertex(t, 2);
    for (std::size_t q = 0; q < rule.weights.size(); ++q) {
      const auto [a1, a2] = rule.points[q];
      const Vec3 x = (1.0 - a1 - a2) * p0 + a1 * p1 + a2 * p2;
      const CVec3 f = field(t, x);
      const double w = 2.0 * mesh.area(t) * rule.weights[q];
      for (int j = 0; j < 3; ++j)
        if (l[j].dof >= 0) out[l[j].dof] += w * space.value(s, j, x).cast<cplx>().dot(f);
    }
  }
  return out;
}

}  // namespace

CVector project_tangential_E(const RwgSpace& space, const PlaneWave& wave,
                             const QuadratureOptions& quad) {
  return project(space, quad, [&](std::uint32_t, const Vec3& x) { return wave.E(x); });
}

CVector project_rotated_H(const RwgSpace& space, const PlaneWave& wave, Side side,
                          const QuadratureOptions& quad) {
  const double sgn = SurfaceMesh::normal_sign(side);
  const auto& mesh = space.mesh();
  return project(space, quad, [&](std::uint32_t t, const Vec3& x) -> CVec3 {
    return cross((sgn * mesh.normal(t)).cast<cplx>(), wave.H(x));
  });
}

}  // namespace pecddm
