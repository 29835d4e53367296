// SPDX-License-Identifier: Apache-2.0

#include "pecddm/assembly.hpp"

#include <algorithm>

#include "pecddm/quadrature.hpp"
#include "pair_geometry.hpp"

namespace pecddm {

namespace {

using Block = Eigen::Matrix<cplx, 3, 3>;

// Computes blocks for (test slot, trial slot) pairs in parallel, one chunk of
// test slots at a time, and hands them to `scatter` sequentially in scan order
// so that the result does not depend on the thread count.
template <class Compute, class Scatter>
void chunked_pairs(std::size_t n_test, const std::vector<std::size_t>& trial, bool upper,
                   Compute&& compute, Scatter&& scatter) {
  const std::size_t nt = trial.size();
  if (n_test == 0 || nt == 0) return;
  const std::size_t budget = std::size_t(48) << 20;  // bytes of block buffer
  const std::size_t chunk = std::max<std::size_t>(1, budget / (nt * sizeof(Block)));
  std::vector<Block> buf;
  for (std::size_t a0 = 0; a0 < n_test; a0 += chunk) {
    const std::size_t a1 = std::min(n_test, a0 + chunk);
    buf.resize((a1 - a0) * nt);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t a = static_cast<std::ptrdiff_t>(a0); a < static_cast<std::ptrdiff_t>(a1);
         ++a) {
      for (std::size_t b = 0; b < nt; ++b) {
        if (upper && trial[b] < static_cast<std::size_t>(a)) continue;
        buf[(a - a0) * nt + b] = compute(static_cast<std::size_t>(a), trial[b]);
      }
    }
    for (std::size_t a = a0; a < a1; ++a)
      for (std::size_t b = 0; b < nt; ++b) {
        if (upper && trial[b] < a) continue;
        scatter(a, trial[b], buf[(a - a0) * nt + b]);
      }
  }
}

}  // namespace

BoundaryOperatorMatrix assemble_T(std::shared_ptr<const RwgSpace> space, const WaveContext& ctx,
                                  const QuadratureOptions& quad) {
  const detail::SpaceGeometry geo(*space, quad);
  const double k = ctx.k;
  const cplx inv_ik = 1.0 / (kI * k);
  const auto nslots = space->triangles().size();

  auto compute = [&](std::size_t a, std::size_t b) {
    const auto& A = geo.tri(a);
    const auto& B = geo.tri(b);
    cplx s0 = 0.0, sxy = 0.0;
    CVec3 sx = CVec3::Zero(), sy = CVec3::Zero();
    geo.integrate(a, b, [&](const Vec3& x, const Vec3& y, double w) {
      const cplx gw = w * detail::green_r((x - y).norm(), k);
      s0 += gw;
      sx += gw * x.cast<cplx>();
      sy += gw * y.cast<cplx>();
      sxy += gw * x.dot(y);
    });
    Block e;
    for (int i = 0; i < 3; ++i) {
      const Vec3& p = A.p[i];
      for (int j = 0; j < 3; ++j) {
        const Vec3& q = B.p[j];
        const cplx vv = sxy - p.cast<cplx>().dot(sy) - q.cast<cplx>().dot(sx) + p.dot(q) * s0;
        e(i, j) = inv_ik * (k * k * A.c[i] * B.c[j] * vv - A.div[i] * B.div[j] * s0);
      }
    }
    if (a == b) e = (0.5 * (e + e.transpose())).eval();
    return e;
  };

  BoundaryOperatorMatrix out{OperatorKind::SingleLayerT, space, CMatrix::Zero(space->dof_count(), space->dof_count())};
  auto& D = out.data;
  auto scatter = [&](std::size_t a, std::size_t b, const Block& e) {
    const auto& la = space->local(a);
    const auto& lb = space->local(b);
    for (int i = 0; i < 3; ++i) {
      if (la[i].dof < 0) continue;
      for (int j = 0; j < 3; ++j) {
        if (lb[j].dof < 0) continue;
        D(la[i].dof, lb[j].dof) += e(i, j);
        if (a != b) D(lb[j].dof, la[i].dof) += e(i, j);
      }
    }
  };
  std::vector<std::size_t> trial(nslots);
  for (std::size_t s = 0; s < nslots; ++s) trial[s] = s;
  chunked_pairs(nslots, trial, true, compute, scatter);
  return out;
}

CMatrix assemble_K_stored(const RwgSpace& space, const WaveContext& ctx,
                          const QuadratureOptions& quad, Index trial_count) {
  if (trial_count < 0) trial_count = space.dof_count();
  const detail::SpaceGeometry geo(space, quad);
  const double k = ctx.k;
  const auto nslots = space.triangles().size();

  std::vector<std::size_t> trial;
  for (std::size_t s = 0; s < nslots; ++s) {
    const auto& l = space.local(s);
    if (std::any_of(l.begin(), l.end(),
                    [&](const LocalBasis& b) { return b.dof >= 0 && b.dof < trial_count; }))
      trial.push_back(s);
  }

  auto compute = [&](std::size_t a, std::size_t b) {
    Block e = Block::Zero();
    // On a flat triangle grad g x (n x theta) is normal to the plane.
    if (a == b) return e;
    const auto& A = geo.tri(a);
    const auto& B = geo.tri(b);
    geo.integrate(a, b, [&](const Vec3& x, const Vec3& y, double w) {
      const Vec3 d = x - y;
      const cplx coeff = w * detail::green_gradient_coeff(d.norm(), k);
      for (int j = 0; j < 3; ++j) {
        const Vec3 u = d.cross(B.normal.cross(y - B.p[j]));
        for (int i = 0; i < 3; ++i) e(i, j) += coeff * (x - A.p[i]).dot(u);
      }
    });
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) e(i, j) *= A.c[i] * B.c[j];
    return e;
  };

  CMatrix D = CMatrix::Zero(space.dof_count(), trial_count);
  auto scatter = [&](std::size_t a, std::size_t b, const Block& e) {
    const auto& la = space.local(a);
    const auto& lb = space.local(b);
    for (int i = 0; i < 3; ++i) {
      if (la[i].dof < 0) continue;
      for (int j = 0; j < 3; ++j) {
        if (lb[j].dof < 0 || lb[j].dof >= trial_count) continue;
        D(la[i].dof, lb[j].dof) += e(i, j);
      }
    }
  };
  chunked_pairs(nslots, trial, false, compute, scatter);
  return D;
}

BoundaryOperatorMatrix assemble_Kn(std::shared_ptr<const RwgSpace> space, Side side,
                                   const WaveContext& ctx, const QuadratureOptions& quad) {
  CMatrix k = SurfaceMesh::normal_sign(side) * assemble_K_stored(*space, ctx, quad);
  k += 0.5 * CMatrix(mass_sparse(*space).cast<cplx>());
  return {OperatorKind::DoubleLayerKn, std::move(space), std::move(k)};
}

Eigen::SparseMatrix<double> mass_sparse(const RwgSpace& space) {
  // The 3-point rule is exact for the quadratic integrand.
  const TriangleRule rule = triangle_rule(3);
  std::vector<Eigen::Triplet<double>> trips;
  const auto& mesh = space.mesh();
  for (std::size_t s = 0; s < space.triangles().size(); ++s) {
    const auto t = space.triangles()[s];
    const auto& l = space.local(s);
    const Vec3 p0 = mesh.vertex(t, 0), p1 = mesh.vertex(t, 1), p2 = mesh.vertex(t, 2);
    for (int i = 0; i < 3; ++i) {
      if (l[i].dof < 0) continue;
      for (int j = 0; j < 3; ++j) {
        if (l[j].dof < 0) continue;
        double acc = 0.0;
        for (std::size_t q = 0; q < rule.weights.size(); ++q) {
          const auto [a1, a2] = rule.points[q];
          const Vec3 x = (1.0 - a1 - a2) * p0 + a1 * p1 + a2 * p2;
          acc += rule.weights[q] * space.value(s, i, x).dot(space.value(s, j, x));
        }
        trips.emplace_back(l[i].dof, l[j].dof, 2.0 * mesh.area(t) * acc);
      }
    }
  }
  Eigen::SparseMatrix<double> m(space.dof_count(), space.dof_count());
  m.setFromTriplets(trips.begin(), trips.end());
  return m;
}

BoundaryOperatorMatrix assemble_mass(std::shared_ptr<const RwgSpace> space) {
  CMatrix m = CMatrix(mass_sparse(*space).cast<cplx>());
  return {OperatorKind::Mass, std::move(space), std::move(m)};
}

BoundaryOperatorMatrix assemble_TSigma(const InterfaceMaps& maps, const WaveContext& ctx,
                                       const QuadratureOptions& quad) {
  return assemble_T(maps.sigma, ctx, quad);
}

}  // namespace pecddm
