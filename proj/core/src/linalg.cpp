// SPDX-License-Identifier: Apache-2.0

#include "pecddm/linalg.hpp"

#include <cmath>
#include <limits>
#include <random>

#include <Eigen/Eigenvalues>

namespace pecddm {

DenseLu::DenseLu(CMatrix&& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("LU needs a square matrix");
  const double scale = a.cwiseAbs().maxCoeff();
  const Index n = a.rows();
  storage_ = std::make_shared<CMatrix>(std::move(a));
  lu_ = std::make_shared<Eigen::PartialPivLU<Eigen::Ref<CMatrix>>>(*storage_);
  const auto& m = lu_->matrixLU();
  min_pivot_ = std::numeric_limits<double>::infinity();
  for (Index i = 0; i < m.rows(); ++i) min_pivot_ = std::min(min_pivot_, std::abs(m(i, i)));
  if (!(min_pivot_ > scale * n * std::numeric_limits<double>::epsilon()))
    throw SingularMatrixError("matrix is singular to working precision (pivot " +
                                  std::to_string(min_pivot_) + ")",
                              min_pivot_, 0.0);
  rcond_ = lu_->rcond();
}

CMatrix lu_solve(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("lu_solve: dimension mismatch");
  return DenseLu(a).solve(b);
}

namespace {

void givens(const cplx& a, const cplx& b, double& c, cplx& s) {
  // Rotation with [c s; -conj(s) c] [a; b] = [r; 0].
  const double na = std::abs(a), nb = std::abs(b);
  if (nb == 0.0) {
    c = 1.0;
    s = 0.0;
    return;
  }
  if (na == 0.0) {
    c = 0.0;
    s = std::conj(b) / nb;
    return;
  }
  const double nr = std::hypot(na, nb);
  c = na / nr;
  s = (a / na) * std::conj(b) / nr;
}

}  // namespace

GmresResult gmres(const LinearOperator& a, const CVector& b, const GmresConfig& config,
                  const LinearOperator* precond) {
  const Index n = a.size();
  if (b.size() != n) throw std::invalid_argument("gmres: right-hand side has wrong length");
  if (!(config.tolerance > 0.0 && config.tolerance < 1.0))
    throw std::invalid_argument("gmres: tolerance must lie in (0, 1)");
  if (config.max_iterations < 1) throw std::invalid_argument("gmres: max_iterations must be >= 1");
  const PrecondSide side = precond ? config.side : PrecondSide::None;
  if (precond && side == PrecondSide::None)
    throw std::invalid_argument("gmres: preconditioner given without a side");

  auto op = [&](const CVector& v) -> CVector {
    switch (side) {
      case PrecondSide::Left: return precond->apply(a.apply(v));
      case PrecondSide::Right: return a.apply(precond->apply(v));
      default: return a.apply(v);
    }
  };

  GmresResult res;
  res.x = CVector::Zero(n);
  CVector y_acc = CVector::Zero(n);  // right preconditioning accumulates M^-1-space iterate
  const CVector rhs = side == PrecondSide::Left ? precond->apply(b) : b;
  const double rhs_norm = rhs.norm();
  res.report.residual_history.push_back(1.0);
  if (rhs_norm == 0.0) {
    res.report.converged = true;
    return res;
  }

  const int m = config.restart ? std::max(1, *config.restart) : config.max_iterations;
  int total = 0;
  CVector r = rhs;
  while (true) {
    const double beta = r.norm();
    std::vector<CVector> v;
    v.reserve(m + 1);
    v.push_back(r / beta);
    CMatrix h = CMatrix::Zero(m + 1, m);
    std::vector<double> cs(m);
    std::vector<cplx> sn(m);
    CVector g = CVector::Zero(m + 1);
    g[0] = beta;
    int j = 0;
    bool done = false;
    for (; j < m && total < config.max_iterations; ++j) {
      CVector w = op(v[j]);
      for (int pass = 0; pass < 2; ++pass) {
        for (int i = 0; i <= j; ++i) {
          const cplx hij = v[i].dot(w);  // conjugates v[i]
          h(i, j) += hij;
          w -= hij * v[i];
        }
      }
      const double hn = w.norm();
      h(j + 1, j) = hn;
      for (int i = 0; i < j; ++i) {
        const cplx t = cs[i] * h(i, j) + sn[i] * h(i + 1, j);
        h(i + 1, j) = -std::conj(sn[i]) * h(i, j) + cs[i] * h(i + 1, j);
        h(i, j) = t;
      }
      givens(h(j, j), h(j + 1, j), cs[j], sn[j]);
      h(j, j) = cs[j] * h(j, j) + sn[j] * h(j + 1, j);
      h(j + 1, j) = 0.0;
      g[j + 1] = -std::conj(sn[j]) * g[j];
      g[j] = cs[j] * g[j];
      ++total;
      const double rel = std::abs(g[j + 1]) / rhs_norm;
      res.report.residual_history.push_back(rel);
      const bool breakdown = hn <= 1e-14 * beta;
      if (rel <= config.tolerance || breakdown) {
        done = true;
        ++j;
        break;
      }
      v.push_back(w / hn);
    }
    // Back substitution on the rotated Hessenberg system.
    CVector y(j);
    for (int i = j - 1; i >= 0; --i) {
      cplx s = g[i];
      for (int l = i + 1; l < j; ++l) s -= h(i, l) * y[l];
      y[i] = s / h(i, i);
    }
    CVector update = CVector::Zero(n);
    for (int i = 0; i < j; ++i) update += y[i] * v[i];
    if (side == PrecondSide::Right) y_acc += update;
    else res.x += update;

    if (done || total >= config.max_iterations) {
      res.report.converged = done;
      break;
    }
    // Restart from the true residual of the current iterate.
    const CVector xcur = side == PrecondSide::Right ? y_acc : res.x;
    r = rhs - op(xcur);
  }
  if (side == PrecondSide::Right) res.x = precond->apply(y_acc);
  res.report.iterations = total;
  return res;
}

std::vector<cplx> arnoldi_ritz_values(const LinearOperator& a, int steps, unsigned seed) {
  const Index n = a.size();
  steps = static_cast<int>(std::min<Index>(steps, n));
  std::mt19937 rng(seed);
  std::normal_distribution<double> dist;
  CVector v0(n);
  for (Index i = 0; i < n; ++i) v0[i] = cplx(dist(rng), dist(rng));
  std::vector<CVector> v{v0 / v0.norm()};
  CMatrix h = CMatrix::Zero(steps + 1, steps);
  int m = 0;
  for (; m < steps; ++m) {
    CVector w = a.apply(v[m]);
    for (int pass = 0; pass < 2; ++pass)
      for (int i = 0; i <= m; ++i) {
        const cplx hij = v[i].dot(w);
        h(i, m) += hij;
        w -= hij * v[i];
      }
    const double hn = w.norm();
    h(m + 1, m) = hn;
    if (hn < 1e-14) {
      ++m;
      break;
    }
    v.push_back(w / hn);
  }
  Eigen::ComplexEigenSolver<CMatrix> es(h.topLeftCorner(m, m), false);
  std::vector<cplx> out(es.eigenvalues().data(), es.eigenvalues().data() + m);
  return out;
}

}  // namespace pecddm
