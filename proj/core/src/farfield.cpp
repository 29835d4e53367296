// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <stdexcept>

#include "pecddm/assembly.hpp"
#include "pecddm/postprocess.hpp"
#include "pecddm/quadrature.hpp"

namespace pecddm {

FarFieldPattern far_field(const std::vector<SurfaceCurrent>& currents, const WaveContext& ctx,
                          const std::vector<Vec3>& directions, const QuadratureOptions& quad) {
  for (const auto& r : directions)
    if (std::abs(r.norm() - 1.0) > 1e-9) throw std::invalid_argument("far_field: direction not unit");

  // Sample every current at the quadrature points once.
  struct Sample {
    Vec3 y;
    CVec3 j;  // weighted
    CVec3 m;
  };
  std::vector<Sample> samples;
  const TriangleRule rule = collapsed_gauss(quad.load_order);
  for (const auto& c : currents) {
    const RwgSpace& space = *c.space;
    if (c.coefficients.size() != space.dof_count())
      throw std::invalid_argument("far_field: coefficient length does not match space");
    const auto& mesh = space.mesh();
    for (std::size_t s = 0; s < space.triangles().size(); ++s) {
      const auto t = space.triangles()[s];
      const auto& l = space.local(s);
      const Vec3 p0 = mesh.vertex(t, 0), p1 = mesh.vertex(t, 1), p2 = mesh.vertex(t, 2);
      for (std::size_t q = 0; q < rule.weights.size(); ++q) {
        const auto [a1, a2] = rule.points[q];
        const Vec3 y = (1.0 - a1 - a2) * p0 + a1 * p1 + a2 * p2;
        CVec3 f = CVec3::Zero();
        for (int j = 0; j < 3; ++j)
          if (l[j].dof >= 0) f += c.coefficients[l[j].dof] * space.value(s, j, y).cast<cplx>();
        f *= 2.0 * mesh.area(t) * rule.weights[q];
        if (c.kind == CurrentKind::Electric) samples.push_back({y, f, CVec3::Zero()});
        else
          samples.push_back(
              {y, CVec3::Zero(), cross((c.normal_sign * mesh.normal(t)).cast<cplx>(), f)});
      }
    }
  }

  FarFieldPattern out;
  out.directions = directions;
  out.amplitude.resize(directions.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t d = 0; d < static_cast<std::ptrdiff_t>(directions.size()); ++d) {
    const Vec3& r = directions[d];
    CVec3 J = CVec3::Zero(), M = CVec3::Zero();
    for (const auto& s : samples) {
      const cplx ph = std::exp(-kI * (ctx.k * r.dot(s.y)));
      J += ph * s.j;
      M += ph * s.m;
    }
    const CVec3 rc = r.cast<cplx>();
    const CVec3 jt = J - rc * rc.dot(J);  // r real, dot conjugation harmless
    out.amplitude[d] = (kI * ctx.k / (4.0 * kPi)) * (jt + cross(rc, M));
  }
  return out;
}

double rcs_dbsm(const CVec3& amplitude, double incident_amplitude) {
  const double sigma = 4.0 * kPi * amplitude.squaredNorm() / (incident_amplitude * incident_amplitude);
  return 10.0 * std::log10(sigma);
}

std::vector<double> rcs_dbsm(const FarFieldPattern& pattern, double incident_amplitude) {
  std::vector<double> out;
  out.reserve(pattern.amplitude.size());
  for (const auto& a : pattern.amplitude) out.push_back(rcs_dbsm(a, incident_amplitude));
  return out;
}

Vec3 unit_vector(const Direction& d) {
  const double th = d.theta_deg * kPi / 180.0, ph = d.phi_deg * kPi / 180.0;
  return {std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th)};
}

std::vector<Direction> bistatic_cut(double phi_deg, double step_deg) {
  if (!(step_deg > 0.0)) throw std::invalid_argument("angle step must be positive");
  std::vector<Direction> out;
  const int n = static_cast<int>(std::lround(180.0 / step_deg));
  for (int i = 0; i <= n; ++i) out.push_back({std::min(180.0, i * step_deg), phi_deg});
  return out;
}

}  // namespace pecddm
