// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/LU>

#include "pecddm/types.hpp"

namespace pecddm {

class LinearOperator {
 public:
  virtual ~LinearOperator() = default;
  virtual Index size() const = 0;
  virtual CVector apply(const CVector& x) const = 0;
};

// Wraps a callable; handy for tests and operator composition.
class FunctionOperator final : public LinearOperator {
 public:
  FunctionOperator(Index n, std::function<CVector(const CVector&)> f) : n_(n), f_(std::move(f)) {}
  Index size() const override { return n_; }
  CVector apply(const CVector& x) const override { return f_(x); }

 private:
  Index n_;
  std::function<CVector(const CVector&)> f_;
};

class MatrixOperator final : public LinearOperator {
 public:
  explicit MatrixOperator(const CMatrix& m) : m_(&m) {}
  Index size() const override { return m_->rows(); }
  CVector apply(const CVector& x) const override { return (*m_) * x; }

 private:
  const CMatrix* m_;
};

class SingularMatrixError : public std::runtime_error {
 public:
  SingularMatrixError(const std::string& what, double pivot, double rcond)
      : std::runtime_error(what), pivot_(pivot), rcond_(rcond) {}
  double pivot() const { return pivot_; }
  double rcond() const { return rcond_; }

 private:
  double pivot_;
  double rcond_;
};

/// Partial-pivoting LU of a dense complex matrix. Throws SingularMatrixError
/// when a pivot underflows relative to the matrix scale.
class DenseLu {
 public:
  DenseLu() = default;
  explicit DenseLu(const CMatrix& a) : DenseLu(CMatrix(a)) {}
  // Factorizes in the storage of `a`, avoiding a second N x N buffer.
  explicit DenseLu(CMatrix&& a);

  Index size() const { return storage_ ? storage_->rows() : 0; }
  CMatrix solve(const CMatrix& b) const { return lu_->solve(b); }
  CVector solve(const CVector& b) const { return lu_->solve(b); }
  double rcond() const { return rcond_; }
  double min_pivot() const { return min_pivot_; }

 private:
  std::shared_ptr<CMatrix> storage_;
  std::shared_ptr<Eigen::PartialPivLU<Eigen::Ref<CMatrix>>> lu_;
  double rcond_ = 0.0;
  double min_pivot_ = 0.0;
};

CMatrix lu_solve(const CMatrix& a, const CMatrix& b);

enum class PrecondSide { None, Left, Right };

struct GmresConfig {
  double tolerance = 1e-6;
  int max_iterations = 500;
  std::optional<int> restart;  // full GMRES when empty
  PrecondSide side = PrecondSide::None;
};

struct SolveReport {
  int iterations = 0;
  // Relative residual in the norm GMRES minimizes, starting with 1 at
  // iteration 0 (zero initial guess).
  std::vector<double> residual_history;
  bool converged = false;
};

struct GmresResult {
  CVector x;
  SolveReport report;
};

/// GMRES with modified Gram-Schmidt plus one reorthogonalization pass and
/// Givens rotations. Zero initial guess. With a left preconditioner M the
/// monitored residual is |M(b - Ax)| / |Mb|; with a right preconditioner the
/// system A M y = b is solved and x = M y returned.
GmresResult gmres(const LinearOperator& a, const CVector& b, const GmresConfig& config,
                  const LinearOperator* precond = nullptr);

/// Eigenvalues of the Hessenberg matrix after `steps` Arnoldi steps from a
/// deterministic pseudo-random start vector.
std::vector<cplx> arnoldi_ritz_values(const LinearOperator& a, int steps, unsigned seed = 7);

}  // namespace pecddm
