// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>

#include "pecddm/linalg.hpp"
#include "pecddm/matrix_io.hpp"
#include "support.hpp"

using namespace pecddm;

namespace {

CMatrix random_matrix(Index n, unsigned seed, double shift) {
  CMatrix a(n, n);
  for (Index j = 0; j < n; ++j) a.col(j) = testing::random_vector(n, seed + 31 * j);
  a /= std::sqrt(static_cast<double>(n));
  a.diagonal().array() += shift;
  return a;
}

bool non_increasing(const std::vector<double>& h) {
  for (std::size_t i = 1; i < h.size(); ++i)
    if (h[i] > h[i - 1] * (1.0 + 1e-12)) return false;
  return true;
}

}  // namespace

TEST_CASE("dense LU") {
  const CMatrix a = random_matrix(40, 1, 3.0);
  const CVector b = testing::random_vector(40, 2);
  const DenseLu lu(a);
  CHECK(lu.size() == 40);
  CHECK((a * lu.solve(b) - b).norm() < 1e-12 * b.norm());
  CHECK(lu.rcond() > 1e-3);
  CHECK(lu.rcond() <= 1.0);
  CHECK((a * lu_solve(a, b) - b).norm() < 1e-12 * b.norm());

  CMatrix s = a;
  s.row(7) = s.row(3);
  CHECK_THROWS_AS(DenseLu{s}, SingularMatrixError);
  CHECK_THROWS_AS(DenseLu{CMatrix::Zero(5, 5)}, SingularMatrixError);
  CHECK_THROWS_AS(DenseLu{CMatrix(3, 4)}, std::invalid_argument);

  // near-singular: the estimate tracks the true reciprocal condition number
  CMatrix d = CMatrix::Identity(10, 10);
  d(9, 9) = 1e-9;
  const DenseLu ld(d);
  CHECK(ld.rcond() == doctest::Approx(1e-9).epsilon(0.5));
}

TEST_CASE("full GMRES: convergence, monotone residuals, finite termination") {
  const Index n = 60;
  const CMatrix a = random_matrix(n, 5, 4.0);
  const MatrixOperator op(a);
  const CVector b = testing::random_vector(n, 6);
  GmresConfig cfg;
  cfg.tolerance = 1e-10;
  const auto r = gmres(op, b, cfg);
  CHECK(r.report.converged);
  CHECK(r.report.iterations <= n);
  CHECK(r.report.residual_history.front() == 1.0);
  CHECK(r.report.residual_history.size() == static_cast<std::size_t>(r.report.iterations + 1));
  CHECK(non_increasing(r.report.residual_history));
  CHECK((a * r.x - b).norm() < 1e-9 * b.norm());

  // k distinct eigenvalues: exact convergence in k steps
  CVector diag(n);
  for (Index i = 0; i < n; ++i) diag(i) = cplx(1.0 + (i % 5), 0.3 * (i % 5));
  const FunctionOperator dop(n, [&](const CVector& x) { return CVector(diag.cwiseProduct(x)); });
  const auto rd = gmres(dop, b, cfg);
  CHECK(rd.report.converged);
  CHECK(rd.report.iterations == 5);
  CHECK((diag.cwiseProduct(rd.x) - b).norm() < 1e-9 * b.norm());

  const auto z = gmres(op, CVector::Zero(n), cfg);
  CHECK(z.report.converged);
  CHECK(z.report.iterations == 0);
  CHECK(z.x.norm() == 0.0);
}

TEST_CASE("GMRES stops at max_iterations and restarts converge") {
  const Index n = 80;
  const CMatrix a = random_matrix(n, 9, 3.0);
  const MatrixOperator op(a);
  const CVector b = testing::random_vector(n, 10);
  GmresConfig cfg;
  cfg.tolerance = 1e-8;
  cfg.max_iterations = 5;
  const auto r = gmres(op, b, cfg);
  CHECK_FALSE(r.report.converged);
  CHECK(r.report.iterations == 5);

  cfg.max_iterations = 2000;
  cfg.restart = 10;
  const auto rr = gmres(op, b, cfg);
  CHECK(rr.report.converged);
  CHECK(non_increasing(rr.report.residual_history));
  CHECK((a * rr.x - b).norm() < 1e-7 * b.norm());

  GmresConfig bad;
  bad.tolerance = 0.0;
  CHECK_THROWS_AS(gmres(op, b, bad), std::invalid_argument);
  CHECK_THROWS_AS(gmres(op, CVector::Zero(3), GmresConfig{}), std::invalid_argument);
  CHECK_THROWS_AS(gmres(op, b, GmresConfig{}, &op), std::invalid_argument);
}

TEST_CASE("preconditioned GMRES") {
  const Index n = 50;
  const CMatrix a = random_matrix(n, 11, 2.0);
  const CMatrix inv = a.inverse();
  const MatrixOperator op(a), pinv(inv);
  const CVector b = testing::random_vector(n, 12);
  for (auto side : {PrecondSide::Left, PrecondSide::Right}) {
    GmresConfig cfg;
    cfg.tolerance = 1e-10;
    cfg.side = side;
    const auto r = gmres(op, b, cfg, &pinv);
    CHECK(r.report.converged);
    CHECK(r.report.iterations == 1);
    CHECK((a * r.x - b).norm() < 1e-9 * b.norm());
  }
  // a partial preconditioner still returns x, not the right-preconditioned y
  const CMatrix dinv = a.diagonal().cwiseInverse().asDiagonal();
  const MatrixOperator pd(dinv);
  GmresConfig cfg;
  cfg.tolerance = 1e-10;
  cfg.side = PrecondSide::Right;
  const auto r = gmres(op, b, cfg, &pd);
  CHECK((a * r.x - b).norm() < 1e-9 * b.norm());
}

TEST_CASE("Arnoldi Ritz values recover a small spectrum") {
  const Index n = 40;
  const std::vector<cplx> eig{cplx(1, 0), cplx(2, 1), cplx(-0.5, 0.2)};
  CVector diag(n);
  for (Index i = 0; i < n; ++i) diag(i) = eig[i % 3];
  const FunctionOperator op(n, [&](const CVector& x) { return CVector(diag.cwiseProduct(x)); });
  const auto ritz = arnoldi_ritz_values(op, 10);
  REQUIRE(ritz.size() == 3);
  for (const auto& e : eig)
    CHECK(std::any_of(ritz.begin(), ritz.end(), [&](cplx r) { return std::abs(r - e) < 1e-10; }));
  CHECK(arnoldi_ritz_values(MatrixOperator(random_matrix(8, 1, 0.0)), 30).size() == 8);
}

TEST_CASE("binary matrix files") {
  const auto dir = std::filesystem::temp_directory_path() / "pecddm_matrix_io";
  std::filesystem::create_directories(dir);
  const CMatrix a = random_matrix(7, 3, 0.5);
  write_matrix(dir / "a.bin", a);
  CHECK(std::filesystem::file_size(dir / "a.bin") == 8 + 7 * 7 * 16);
  const CMatrix b = read_matrix(dir / "a.bin");
  CHECK(b == a);
  {
    std::ofstream f(dir / "short.bin", std::ios::binary);
    const std::uint64_t n = 3;
    f.write(reinterpret_cast<const char*>(&n), sizeof n);
  }
  CHECK_THROWS(read_matrix(dir / "short.bin"));
  CHECK_THROWS(read_matrix(dir / "missing.bin"));
  CHECK_THROWS(write_matrix(dir / "x.bin", CMatrix(2, 3)));
  std::filesystem::remove_all(dir);
}
