// SPDX-License-Identifier: Apache-2.0

#include "pecddm/admittance.hpp"

#include <sstream>

namespace pecddm {

ShellOperators::ShellOperators(std::shared_ptr<const RwgSpace> space, Index interface_dofs,
                               const WaveContext& ctx, const QuadratureOptions& quad,
                               const InnerSolverConfig& inner)
    : space_(std::move(space)), inner_(inner) {
  if (interface_dofs < 1) throw std::invalid_argument("admittance needs a non-empty interface");
  k_stored_ = assemble_K_stored(*space_, ctx, quad, interface_dofs);
  mass_ = mass_sparse(*space_);
  BoundaryOperatorMatrix t = assemble_T(space_, ctx, quad);
  if (inner_.kind == InnerSolverKind::Gmres) {
    t_ = std::move(t.data);
    return;
  }
  try {
    lu_.emplace(std::move(t.data));
  } catch (const SingularMatrixError& e) {
    throw ResonanceError(std::string("interior resonance suspected: ") + e.what(), 0.0);
  }
  rcond_ = lu_->rcond();
  if (*rcond_ < inner_.resonance_rcond) {
    std::ostringstream msg;
    msg << "interior resonance suspected: shell EFIE reciprocal condition " << *rcond_
        << " below " << inner_.resonance_rcond << " at k = " << ctx.k;
    throw ResonanceError(msg.str(), *rcond_);
  }
}

CVector ShellOperators::efie_rhs(const CVector& v, double normal_sign) const {
  const Index n = interface_dofs();
  CVector ext = CVector::Zero(space_->dof_count());
  ext.head(n) = v;
  CVector rhs = 0.5 * (mass_.cast<cplx>() * ext);
  rhs.noalias() += normal_sign * (k_stored_ * v);
  return rhs;
}

CVector ShellOperators::solve(const CVector& b) const {
  if (lu_) return lu_->solve(b);
  MatrixOperator op(t_);
  GmresConfig cfg;
  cfg.tolerance = inner_.tolerance;
  cfg.max_iterations = inner_.max_iterations;
  auto res = gmres(op, b, cfg);
  if (!res.report.converged)
    throw std::runtime_error("inner EFIE GMRES did not converge in " +
                             std::to_string(res.report.iterations) + " iterations");
  return res.x;
}

AdmittanceOperator::AdmittanceOperator(const InterfaceMaps& maps, Side side,
                                       std::shared_ptr<const ShellOperators> shell)
    : maps_(&maps), side_(side), shell_(std::move(shell)) {}

CVector AdmittanceOperator::shell_current(const CVector& v0) const {
  if (v0.size() != maps_->n()) throw std::invalid_argument("admittance: wrong input length");
  // Interface DoFs lead the shell numbering, so P is a head() embedding.
  return shell_->solve(shell_->efie_rhs(v0, SurfaceMesh::normal_sign(side_)));
}

CVector AdmittanceOperator::apply(const CVector& v0) const {
  return maps_->restrict(shell_current(v0), side_);
}

AdmittanceOperator build_admittance(const InterfaceMaps& maps, const WaveContext& ctx,
                                    const QuadratureOptions& quad, Side side,
                                    const InnerSolverConfig& inner) {
  auto shell = std::make_shared<ShellOperators>(
      side == Side::Plus ? maps.plus : maps.minus, maps.n(), ctx, quad, inner);
  return AdmittanceOperator(maps, side, std::move(shell));
}

std::pair<AdmittanceOperator, AdmittanceOperator> build_admittance_pair(
    const InterfaceMaps& maps, const WaveContext& ctx, const QuadratureOptions& quad,
    const InnerSolverConfig& inner) {
  auto plus = std::make_shared<ShellOperators>(maps.plus, maps.n(), ctx, quad, inner);
  auto minus = maps.shells_coincide
                   ? plus
                   : std::make_shared<ShellOperators>(maps.minus, maps.n(), ctx, quad, inner);
  return {AdmittanceOperator(maps, Side::Plus, plus), AdmittanceOperator(maps, Side::Minus, minus)};
}

}  // namespace pecddm
