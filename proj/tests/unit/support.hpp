// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <memory>
#include <random>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>

#include "pecddm/mesh.hpp"
#include "pecddm/types.hpp"

namespace testing {

using pecddm::cplx;
using pecddm::CVec3;
using pecddm::Vec3;

// Product Gauss rule on the unit triangle via the collapsed map
// (s, t) -> (s, t (1 - s)), independent of the library rules.
struct RefPoint {
  double a1, a2, w;
};

template <unsigned N>
std::vector<RefPoint> reference_rule() {
  using G = boost::math::quadrature::gauss<double, N>;
  std::vector<double> x, w;
  // boost stores the non-negative half of the symmetric rule on [-1, 1]
  const auto& ab = G::abscissa();
  const auto& wt = G::weights();
  for (std::size_t i = 0; i < ab.size(); ++i) {
    if (ab[i] == 0.0) {
      x.push_back(0.5);
      w.push_back(0.5 * wt[i]);
      continue;
    }
    x.push_back(0.5 * (1.0 + ab[i]));
    w.push_back(0.5 * wt[i]);
    x.push_back(0.5 * (1.0 - ab[i]));
    w.push_back(0.5 * wt[i]);
  }
  std::vector<RefPoint> out;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j)
      out.push_back({x[i], x[j] * (1.0 - x[i]), w[i] * w[j] * (1.0 - x[i])});
  return out;
}

inline Vec3 map_point(const pecddm::SurfaceMesh& m, std::uint32_t t, double a1, double a2) {
  return (1.0 - a1 - a2) * m.vertex(t, 0) + a1 * m.vertex(t, 1) + a2 * m.vertex(t, 2);
}

// Non-conjugating dot product of complex 3-vectors.
inline cplx bilinear(const CVec3& a, const CVec3& b) { return a(0) * b(0) + a(1) * b(1) + a(2) * b(2); }

inline double max_abs(const pecddm::CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

inline pecddm::CVector random_vector(pecddm::Index n, unsigned seed) {
  std::mt19937 gen(seed);
  std::normal_distribution<double> d;
  pecddm::CVector v(n);
  for (pecddm::Index i = 0; i < n; ++i) v(i) = cplx(d(gen), d(gen));
  return v;
}

// Generated meshes shared by several test files.
inline std::shared_ptr<const pecddm::SurfaceMesh> artificial_sphere(int refinement, double radius = 0.5,
                                                                    pecddm::SphereBase base = pecddm::SphereBase::LatLong) {
  pecddm::SphereOptions o;
  o.radius = radius;
  o.refinement = refinement;
  o.base = base;
  return std::make_shared<pecddm::SurfaceMesh>(pecddm::generate_sphere(o));
}

inline std::shared_ptr<const pecddm::SurfaceMesh> open_box(double resolution = 1.0 / 6.0) {
  pecddm::BoxOptions o;
  o.resolution = resolution;
  return std::make_shared<pecddm::SurfaceMesh>(pecddm::generate_open_box(o));
}

}  // namespace testing
