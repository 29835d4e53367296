// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>
#include <string>

#include "pecddm/admittance.hpp"
#include "pecddm/excitation.hpp"

namespace pecddm {

// Y0: (A+ + A-) E = U0
// Y1: T_S (A+ + A-) E = T_S U0
// Y2: M^-1 T_S (A+ + A-) E = M^-1 T_S U0
// Y3: (A+ + A-) M^-1 T_S V = U0, E = M^-1 T_S V
enum class DdmVariant { Y0, Y1, Y2, Y3 };

const char* to_string(DdmVariant v);
DdmVariant variant_from_string(const std::string& s);

enum class MassSolverKind { ConjugateGradient, Cholesky };

/// Applies [Id]^-1: maps a dual vector to primal amplitudes.
class MassInverse final : public LinearOperator {
 public:
  MassInverse(const BoundaryOperatorMatrix& mass, MassSolverKind kind,
              double tolerance = 1e-12);

  Index size() const override { return m_.rows(); }
  CVector apply(const CVector& x) const override;
  Primal apply(const Dual& x) const { return Primal(apply(x.values)); }

 private:
  Eigen::MatrixXd m_;
  MassSolverKind kind_;
  double tol_;
  Eigen::LLT<Eigen::MatrixXd> llt_;
};

std::shared_ptr<MassInverse> mass_solve_operator(const BoundaryOperatorMatrix& mass,
                                                 MassSolverKind kind = MassSolverKind::ConjugateGradient);

/// Field scattered by the metallized exterior shell: w solves [T+] w = -b on
/// the plus shell and u_rhs = R+ w.
struct ShortCutField {
  CVector shell_current;  // w, length N+
  Primal u_rhs;
};

ShortCutField build_rhs(const InterfaceMaps& maps, const ShellOperators& plus_shell,
                        const PlaneWave& wave, const QuadratureOptions& quad = {});

struct DdmOptions {
  QuadratureOptions quad;
  InnerSolverConfig inner;
  MassSolverKind mass_solver = MassSolverKind::ConjugateGradient;
};

class DdmSystem {
 public:
  DdmSystem(std::shared_ptr<const InterfaceMaps> maps, const PlaneWave& wave, DdmVariant variant,
            const DdmOptions& options = {});

  const InterfaceMaps& maps() const { return *maps_; }
  DdmVariant variant() const { return variant_; }
  void set_variant(DdmVariant v) { variant_ = v; }
  const AdmittanceOperator& a_plus() const { return pair_.first; }
  const AdmittanceOperator& a_minus() const { return pair_.second; }
  const BoundaryOperatorMatrix& t_sigma() const { return t_sigma_; }
  const BoundaryOperatorMatrix& mass() const { return mass_; }
  const MassInverse& mass_inverse() const { return *mass_inv_; }
  const ShortCutField& short_cut() const { return short_cut_; }
  // -u_rhs
  const Primal& rhs() const { return rhs_; }
  const PlaneWave& wave() const { return wave_; }

  // (A+ + A-) e; a single shell solve when the shells coincide.
  Primal interface_sum(const Primal& e) const;
  Dual t_sigma_apply(const Primal& e) const { return Dual(t_sigma_.data * e.values); }
  // M^-1 T_S e
  Primal preconditioner_apply(const Primal& e) const;

 private:
  std::shared_ptr<const InterfaceMaps> maps_;
  PlaneWave wave_;
  DdmVariant variant_;
  std::pair<AdmittanceOperator, AdmittanceOperator> pair_;
  BoundaryOperatorMatrix t_sigma_;
  BoundaryOperatorMatrix mass_;
  std::shared_ptr<MassInverse> mass_inv_;
  ShortCutField short_cut_;
  Primal rhs_;
};

std::unique_ptr<DdmSystem> build_system(std::shared_ptr<const InterfaceMaps> maps,
                                        const PlaneWave& wave, DdmVariant variant,
                                        const DdmOptions& options = {});

struct DdmSolution {
  Primal e_tan;
  SolveReport report;
};

DdmSolution solve(const DdmSystem& system, GmresConfig config);

// Outer operator (A+ + A-) as a plain linear operator on primal coefficients.
FunctionOperator interface_operator(const DdmSystem& system);
// M^-1 T_S (A+ + A-), the Y2 operator.
FunctionOperator preconditioned_operator(const DdmSystem& system);

struct Traces {
  CVector plus_current;   // u+, length N+
  CVector minus_current;  // u-, length N-
  Primal sigma_e;
  // |R- u- + R+ u+ + u_rhs| / |u_rhs|
  double transmission_residual = 0.0;
};

Traces recover_traces(const DdmSystem& system, const Primal& e_tan);

}  // namespace pecddm
