// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "pecddm/assembly.hpp"
#include "support.hpp"

using namespace pecddm;

namespace {

struct Piece {
  std::uint32_t tri;
  int local;  // opposite vertex
  double sign, length;
};

std::vector<std::vector<Piece>> supports(const RwgSpace& s) {
  std::vector<std::vector<Piece>> out(s.dof_count());
  for (std::size_t a = 0; a < s.triangles().size(); ++a)
    for (int j = 0; j < 3; ++j) {
      const auto& lb = s.local(a)[j];
      if (lb.dof >= 0) out[lb.dof].push_back({s.triangles()[a], j, lb.sign, lb.length});
    }
  return out;
}

Vec3 rwg(const SurfaceMesh& m, const Piece& p, const Vec3& x) {
  return p.sign * p.length / (2.0 * m.area(p.tri)) * (x - m.vertex(p.tri, p.local));
}
double rwg_div(const SurfaceMesh& m, const Piece& p) { return p.sign * p.length / m.area(p.tri); }

// Straight product quadrature of the single layer pairing for well separated supports.
cplx brute_T(const SurfaceMesh& m, const std::vector<Piece>& si, const std::vector<Piece>& sj, double k) {
  const auto rule = testing::reference_rule<12>();
  cplx s = 0.0;
  for (const auto& pi : si)
    for (const auto& pj : sj)
      for (const auto& qx : rule)
        for (const auto& qy : rule) {
          const Vec3 x = testing::map_point(m, pi.tri, qx.a1, qx.a2);
          const Vec3 y = testing::map_point(m, pj.tri, qy.a1, qy.a2);
          const double r = (x - y).norm();
          const cplx g = -std::exp(kI * k * r) / (4.0 * kPi * r);
          const double w = 4.0 * m.area(pi.tri) * m.area(pj.tri) * qx.w * qy.w;
          s += w * g * (k * k * rwg(m, pi, x).dot(rwg(m, pj, y)) - rwg_div(m, pi) * rwg_div(m, pj));
        }
  return s / (kI * k);
}

cplx brute_K(const SurfaceMesh& m, const std::vector<Piece>& si, const std::vector<Piece>& sj, double k) {
  const auto rule = testing::reference_rule<12>();
  cplx s = 0.0;
  for (const auto& pi : si)
    for (const auto& pj : sj)
      for (const auto& qx : rule)
        for (const auto& qy : rule) {
          const Vec3 x = testing::map_point(m, pi.tri, qx.a1, qx.a2);
          const Vec3 y = testing::map_point(m, pj.tri, qy.a1, qy.a2);
          const Vec3 d = x - y;
          const double r = d.norm();
          const cplx coeff = (1.0 - kI * k * r) * std::exp(kI * k * r) / (4.0 * kPi * r * r * r);
          const Vec3 geom = d.cross(m.normal(pj.tri).cross(rwg(m, pj, y)));
          const double w = 4.0 * m.area(pi.tri) * m.area(pj.tri) * qx.w * qy.w;
          s += w * coeff * rwg(m, pi, x).dot(geom);
        }
  return s;
}

Vec3 edge_midpoint(const SurfaceMesh& m, const Piece& p) {
  return 0.5 * (m.vertex(p.tri, (p.local + 1) % 3) + m.vertex(p.tri, (p.local + 2) % 3));
}

}  // namespace

TEST_CASE("single layer and double layer entries match brute-force quadrature") {
  const auto mesh = testing::artificial_sphere(3, 0.5, SphereBase::Icosahedron);
  auto space = std::make_shared<RwgSpace>(mesh, mesh->shell(Side::Plus));
  const auto sup = supports(*space);
  const auto ctx = WaveContext::from_wavenumber(2.0);

  QuadratureOptions fine;
  fine.near_factor = 1e9;  // every non-touching pair on the collapsed rule
  fine.near_order = 10;
  const auto T = assemble_T(space, ctx, fine).data;
  const auto K = assemble_K_stored(*space, ctx, fine);
  const auto Tdef = assemble_T(space, ctx).data;
  const auto Kdef = assemble_K_stored(*space, ctx);

  // pairs at a spread of separations
  const Vec3 c0 = edge_midpoint(*mesh, sup[0][0]);
  std::vector<std::pair<double, Index>> by_dist;
  for (Index j = 0; j < space->dof_count(); ++j)
    by_dist.push_back({(edge_midpoint(*mesh, sup[j][0]) - c0).norm(), j});
  std::sort(by_dist.begin(), by_dist.end());
  int tested = 0;
  for (std::size_t q = by_dist.size() / 4; q < by_dist.size(); q += by_dist.size() / 8) {
    const Index j = by_dist[q].second;
    bool touching = false;
    for (const auto& a : sup[0])
      for (const auto& b : sup[j])
        for (auto va : mesh->triangles()[a.tri].v)
          for (auto vb : mesh->triangles()[b.tri].v) touching |= va == vb;
    if (touching) continue;
    CAPTURE(j);
    const cplx t_ref = brute_T(*mesh, sup[0], sup[j], ctx.k);
    const cplx k_ref = brute_K(*mesh, sup[0], sup[j], ctx.k);
    CHECK(std::abs(T(0, j) - t_ref) < 1e-9 * std::abs(t_ref));
    CHECK(std::abs(K(0, j) - k_ref) < 1e-9 * std::abs(k_ref));
    CHECK(std::abs(Tdef(0, j) - t_ref) < 2e-3 * std::abs(t_ref));
    CHECK(std::abs(Kdef(0, j) - k_ref) < 2e-3 * std::abs(k_ref));
    ++tested;
  }
  CHECK(tested >= 4);
}

TEST_CASE("single layer matrix is complex symmetric and converges in the singular order") {
  const auto mesh = testing::artificial_sphere(2, 0.5, SphereBase::Icosahedron);
  auto space = std::make_shared<RwgSpace>(mesh, mesh->shell(Side::Plus));
  const auto ctx = WaveContext::from_wavenumber(1.5);
  const auto T = assemble_T(space, ctx).data;
  CHECK(testing::max_abs(T - T.transpose()) < 1e-13 * testing::max_abs(T));

  QuadratureOptions q8;
  q8.singular_order = 8;
  const auto T8 = assemble_T(space, ctx, q8).data;
  CHECK(testing::max_abs(T - T8) < 1e-4 * testing::max_abs(T8));
}

TEST_CASE("mass matrix matches the closed form") {
  const auto box = testing::open_box(0.25);
  auto space = std::make_shared<RwgSpace>(box, box->shell(Side::Minus));
  Eigen::MatrixXd ref = Eigen::MatrixXd::Zero(space->dof_count(), space->dof_count());
  // int_T (x - a).(x - b) = A [ (c - a).(c - b) + sum_k |p_k - c|^2 / 12 ]
  for (std::size_t s = 0; s < space->triangles().size(); ++s) {
    const auto t = space->triangles()[s];
    const double A = box->area(t);
    const Vec3 c = box->centroid(t);
    double spread = 0.0;
    for (int v = 0; v < 3; ++v) spread += (box->vertex(t, v) - c).squaredNorm();
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        const auto& li = space->local(s)[i];
        const auto& lj = space->local(s)[j];
        if (li.dof < 0 || lj.dof < 0) continue;
        const double geom = (c - box->vertex(t, i)).dot(c - box->vertex(t, j)) + spread / 12.0;
        ref(li.dof, lj.dof) += li.sign * lj.sign * li.length * lj.length / (4.0 * A) * geom;
      }
  }
  const Eigen::MatrixXd M = Eigen::MatrixXd(mass_sparse(*space));
  CHECK((M - ref).cwiseAbs().maxCoeff() < 1e-14 * ref.cwiseAbs().maxCoeff());
  const auto Md = assemble_mass(space);
  CHECK(testing::max_abs(Md.data - ref.cast<cplx>()) < 1e-14 * ref.cwiseAbs().maxCoeff());
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(M);
  CHECK(eig.eigenvalues().minCoeff() > 0.0);
  CHECK(eig.eigenvalues().maxCoeff() / eig.eigenvalues().minCoeff() < 1e3);
}

TEST_CASE("double layer vanishes between coplanar triangles") {
  const auto box = testing::open_box();
  const auto maps = build_spaces(box);
  const auto ctx = WaveContext::from_frequency(100e6);
  const auto K = assemble_K_stored(*maps.sigma, ctx);
  CHECK(testing::max_abs(K) < 1e-15);

  // Kn on each side differs only through the stored-normal sign
  const auto sphere = testing::artificial_sphere(2);
  auto space = std::make_shared<RwgSpace>(sphere, sphere->shell(Side::Plus));
  const auto kp = assemble_Kn(space, Side::Plus, ctx).data;
  const auto km = assemble_Kn(space, Side::Minus, ctx).data;
  const auto ks = assemble_K_stored(*space, ctx);
  const CMatrix M = Eigen::MatrixXd(mass_sparse(*space)).cast<cplx>();
  CHECK(testing::max_abs(kp + km - M) < 1e-14);
  CHECK(testing::max_abs(kp - km - 2.0 * ks) < 1e-14);
  CHECK(testing::max_abs(ks) > 1e-3);

  const auto cols = assemble_K_stored(*space, ctx, {}, 10);
  CHECK(cols.cols() == 10);
  CHECK(testing::max_abs(cols - ks.leftCols(10)) == 0.0);
}

TEST_CASE("interface single layer equals the leading block of the shell matrix") {
  const auto box = testing::open_box();
  const auto maps = build_spaces(box);
  const auto ctx = WaveContext::from_frequency(100e6);
  const auto ts = assemble_TSigma(maps, ctx).data;
  const auto tp = assemble_T(maps.plus, ctx).data;
  const Index n = maps.n();
  CHECK(testing::max_abs(ts - tp.topLeftCorner(n, n)) < 1e-12 * testing::max_abs(ts));
}

#ifdef _OPENMP
TEST_CASE("assembly does not depend on the thread count") {
  const auto mesh = testing::artificial_sphere(3, 0.5, SphereBase::Icosahedron);
  auto space = std::make_shared<RwgSpace>(mesh, mesh->shell(Side::Plus));
  const auto ctx = WaveContext::from_wavenumber(2.0);
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  const auto t1 = assemble_T(space, ctx).data;
  const auto k1 = assemble_K_stored(*space, ctx);
  omp_set_num_threads(3);
  const auto t3 = assemble_T(space, ctx).data;
  const auto k3 = assemble_K_stored(*space, ctx);
  omp_set_num_threads(saved);
  CHECK(testing::max_abs(t1 - t3) == 0.0);
  CHECK(testing::max_abs(k1 - k3) == 0.0);
}
#endif
