// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>
#include <optional>
#include <utility>

#include "pecddm/assembly.hpp"
#include "pecddm/linalg.hpp"

namespace pecddm {

enum class InnerSolverKind { Direct, Gmres };

struct InnerSolverConfig {
  InnerSolverKind kind = InnerSolverKind::Direct;
  double tolerance = 1e-8;     // nested GMRES only
  int max_iterations = 2000;   // nested GMRES only
  // LU reciprocal condition estimate below which the shell EFIE is treated as
  // resonant.
  double resonance_rcond = 1e-10;
};

class ResonanceError : public std::runtime_error {
 public:
  ResonanceError(const std::string& what, double rcond) : std::runtime_error(what), rcond_(rcond) {}
  double rcond() const { return rcond_; }

 private:
  double rcond_;
};

/// Single layer operator of one closed shell, factorized or kept for nested
/// GMRES, with the stored-normal double layer columns of the interface DoFs
/// and the shell mass matrix. Shared by both sides when the shells coincide.
class ShellOperators {
 public:
  ShellOperators(std::shared_ptr<const RwgSpace> space, Index interface_dofs,
                 const WaveContext& ctx, const QuadratureOptions& quad,
                 const InnerSolverConfig& inner);

  const RwgSpace& space() const { return *space_; }
  Index interface_dofs() const { return k_stored_.cols(); }
  const CMatrix& k_stored() const { return k_stored_; }
  const Eigen::SparseMatrix<double>& mass() const { return mass_; }
  std::optional<double> rcond() const { return rcond_; }

  // Right-hand side (1/2 M + sign K) P v of the shell EFIE for interface data v.
  CVector efie_rhs(const CVector& v, double normal_sign) const;
  // [T]^-1 b.
  CVector solve(const CVector& b) const;

 private:
  std::shared_ptr<const RwgSpace> space_;
  InnerSolverConfig inner_;
  std::optional<DenseLu> lu_;
  CMatrix t_;  // only for the nested GMRES path
  CMatrix k_stored_;
  Eigen::SparseMatrix<double> mass_;
  std::optional<double> rcond_;
};

/// Interface admittance: v0 (primal E_tan on Sigma) -> R u, where u solves the
/// shell EFIE [T] u = [1/2 Id + K nu x] P v0. The output is primal, the RWG
/// amplitudes of nu x H on Sigma.
class AdmittanceOperator final : public LinearOperator {
 public:
  AdmittanceOperator(const InterfaceMaps& maps, Side side, std::shared_ptr<const ShellOperators> shell);

  Index size() const override { return maps_->n(); }
  CVector apply(const CVector& v0) const override;
  Primal apply(const Primal& v0) const { return Primal(apply(v0.values)); }

  // Full shell solution u (length N+/-).
  CVector shell_current(const CVector& v0) const;

  Side side() const { return side_; }
  const ShellOperators& shell() const { return *shell_; }
  const std::shared_ptr<const ShellOperators>& shell_ptr() const { return shell_; }

 private:
  const InterfaceMaps* maps_;
  Side side_;
  std::shared_ptr<const ShellOperators> shell_;
};

AdmittanceOperator build_admittance(const InterfaceMaps& maps, const WaveContext& ctx,
                                    const QuadratureOptions& quad, Side side,
                                    const InnerSolverConfig& inner = {});

/// Both admittances; the shell operators are built once when the shells coincide.
std::pair<AdmittanceOperator, AdmittanceOperator> build_admittance_pair(
    const InterfaceMaps& maps, const WaveContext& ctx, const QuadratureOptions& quad,
    const InnerSolverConfig& inner = {});

}  // namespace pecddm
