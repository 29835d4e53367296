// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <vector>

#include "pecddm/assembly.hpp"
#include "pecddm/quadrature.hpp"

namespace pecddm::detail {

struct TriGeom {
  std::array<Vec3, 3> p;
  std::array<std::uint32_t, 3> v{};
  Vec3 normal;
  Vec3 centroid;
  double area = 0.0;
  double circumradius = 0.0;
  std::array<double, 3> c{};    // basis value is c[j] * (x - p[j])
  std::array<double, 3> div{};  // basis divergence
};

// Triangle data of an RWG space plus the pair integration dispatch
// (Sauter-Schwab for touching pairs, refined Gauss for near pairs).
class SpaceGeometry {
 public:
  SpaceGeometry(const RwgSpace& space, const QuadratureOptions& quad) : quad_(quad) {
    const auto& mesh = space.mesh();
    tris_.resize(space.triangles().size());
    regular_ = triangle_rule(quad.regular_points);
    near_ = collapsed_gauss(quad.near_order);
    const std::size_t nr = regular_.weights.size();
    reg_pts_.resize(tris_.size() * nr);
    reg_w_.resize(tris_.size() * nr);
    for (std::size_t s = 0; s < tris_.size(); ++s) {
      const auto t = space.triangles()[s];
      auto& g = tris_[s];
      g.v = mesh.triangles()[t].v;
      for (int j = 0; j < 3; ++j) g.p[j] = mesh.vertex(t, j);
      g.normal = mesh.normal(t);
      g.centroid = mesh.centroid(t);
      g.area = mesh.area(t);
      const double la = (g.p[1] - g.p[2]).norm(), lb = (g.p[2] - g.p[0]).norm(),
                   lc = (g.p[0] - g.p[1]).norm();
      g.circumradius = la * lb * lc / (4.0 * g.area);
      for (int j = 0; j < 3; ++j) {
        const auto& lbas = space.local(s)[j];
        g.c[j] = lbas.sign * lbas.length / (2.0 * g.area);
        g.div[j] = lbas.sign * lbas.length / g.area;
      }
      for (std::size_t q = 0; q < nr; ++q) {
        reg_pts_[s * nr + q] = map(g, regular_.points[q]);
        reg_w_[s * nr + q] = 2.0 * g.area * regular_.weights[q];
      }
    }
  }

  const TriGeom& tri(std::size_t s) const { return tris_[s]; }

  static Vec3 map(const TriGeom& g, const std::array<double, 2>& a) {
    return (1.0 - a[0] - a[1]) * g.p[0] + a[0] * g.p[1] + a[1] * g.p[2];
  }

  // Calls f(x, y, w) with x on triangle a, y on triangle b and w including
  // both Jacobians.
  template <class F>
  void integrate(std::size_t a, std::size_t b, F&& f) const {
    const TriGeom& A = tris_[a];
    const TriGeom& B = tris_[b];
    std::array<int, 3> pa{}, pb{};
    int common = 0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        if (A.v[i] == B.v[j]) {
          pa[common] = i;
          pb[common] = j;
          ++common;
          break;
        }
    if (common > 0) {
      fill_rest(pa, common);
      fill_rest(pb, common);
      const PairRule& rule = sauter_schwab(common, quad_.singular_order);
      const double jac = 4.0 * A.area * B.area;
      const std::array<Vec3, 3> qa{A.p[pa[0]], A.p[pa[1]], A.p[pa[2]]};
      const std::array<Vec3, 3> qb{B.p[pb[0]], B.p[pb[1]], B.p[pb[2]]};
      for (std::size_t q = 0; q < rule.w.size(); ++q) {
        const auto& u = rule.p1[q];
        const auto& v = rule.p2[q];
        const Vec3 x = (1.0 - u[0] - u[1]) * qa[0] + u[0] * qa[1] + u[1] * qa[2];
        const Vec3 y = (1.0 - v[0] - v[1]) * qb[0] + v[0] * qb[1] + v[1] * qb[2];
        f(x, y, jac * rule.w[q]);
      }
      return;
    }
    const double dist = (A.centroid - B.centroid).norm();
    if (dist < quad_.near_factor * std::max(A.circumradius, B.circumradius)) {
      const auto& r = near_;
      for (std::size_t i = 0; i < r.weights.size(); ++i) {
        const Vec3 x = map(A, r.points[i]);
        const double wx = 2.0 * A.area * r.weights[i];
        for (std::size_t j = 0; j < r.weights.size(); ++j)
          f(x, map(B, r.points[j]), wx * 2.0 * B.area * r.weights[j]);
      }
      return;
    }
    const std::size_t nr = regular_.weights.size();
    for (std::size_t i = 0; i < nr; ++i) {
      const Vec3& x = reg_pts_[a * nr + i];
      const double wx = reg_w_[a * nr + i];
      for (std::size_t j = 0; j < nr; ++j) f(x, reg_pts_[b * nr + j], wx * reg_w_[b * nr + j]);
    }
  }

 private:
  static void fill_rest(std::array<int, 3>& perm, int common) {
    int n = common;
    for (int i = 0; i < 3 && n < 3; ++i) {
      bool used = false;
      for (int j = 0; j < common; ++j) used |= perm[j] == i;
      if (!used) perm[n++] = i;
    }
  }

  QuadratureOptions quad_;
  std::vector<TriGeom> tris_;
  TriangleRule regular_;
  TriangleRule near_;
  std::vector<Vec3> reg_pts_;
  std::vector<double> reg_w_;
};

}  // namespace pecddm::detail
