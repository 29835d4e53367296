// SPDX-License-Identifier: Apache-2.0

#include "pecddm/ddm.hpp"

#include <Eigen/IterativeLinearSolvers>

namespace pecddm {

const char* to_string(DdmVariant v) {
  switch (v) {
    case DdmVariant::Y0: return "y0";
    case DdmVariant::Y1: return "y1";
    case DdmVariant::Y2: return "y2";
    case DdmVariant::Y3: return "y3";
  }
  return "?";
}

DdmVariant variant_from_string(const std::string& s) {
  for (auto v : {DdmVariant::Y0, DdmVariant::Y1, DdmVariant::Y2, DdmVariant::Y3}) {
    std::string name = to_string(v);
    std::string upper = name;
    upper[0] = 'Y';
    if (s == name || s == upper) return v;
  }
  throw std::invalid_argument("unknown DDM variant '" + s + "' (expected y0, y1, y2 or y3)");
}

MassInverse::MassInverse(const BoundaryOperatorMatrix& mass, MassSolverKind kind, double tolerance)
    : m_(mass.data.real()), kind_(kind), tol_(tolerance) {
  if (m_.rows() != m_.cols() || m_.rows() == 0)
    throw std::invalid_argument("mass matrix must be square and non-empty");
  if (kind_ == MassSolverKind::Cholesky) {
    llt_.compute(m_);
    if (llt_.info() != Eigen::Success)
      throw std::runtime_error("mass matrix is not positive definite");
  }
}

CVector MassInverse::apply(const CVector& x) const {
  if (kind_ == MassSolverKind::Cholesky) {
    CVector out(x.size());
    out.real() = llt_.solve(Eigen::VectorXd(x.real()));
    out.imag() = llt_.solve(Eigen::VectorXd(x.imag()));
    return out;
  }
  const Eigen::SparseMatrix<double> sp = m_.sparseView();
  Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper> cg(sp);
  cg.setTolerance(tol_);
  cg.setMaxIterations(static_cast<Index>(10 * m_.rows()) + 100);
  CVector out(x.size());
  for (int part = 0; part < 2; ++part) {
    const Eigen::VectorXd b = part == 0 ? Eigen::VectorXd(x.real()) : Eigen::VectorXd(x.imag());
    Eigen::VectorXd y = b.isZero(0.0) ? Eigen::VectorXd::Zero(b.size()) : Eigen::VectorXd(cg.solve(b));
    if (!b.isZero(0.0) && cg.info() != Eigen::Success)
      throw std::runtime_error("mass-matrix CG did not converge");
    if (part == 0) out.real() = y;
    else out.imag() = y;
  }
  return out;
}

std::shared_ptr<MassInverse> mass_solve_operator(const BoundaryOperatorMatrix& mass,
                                                 MassSolverKind kind) {
  return std::make_shared<MassInverse>(mass, kind);
}

ShortCutField build_rhs(const InterfaceMaps& maps, const ShellOperators& plus_shell,
                        const PlaneWave& wave, const QuadratureOptions& quad) {
  const CVector b = project_tangential_E(*maps.plus, wave, quad);
  ShortCutField out;
  out.shell_current = plus_shell.solve(-b);
  out.u_rhs = Primal(maps.restrict(out.shell_current, Side::Plus));
  return out;
}

DdmSystem::DdmSystem(std::shared_ptr<const InterfaceMaps> maps, const PlaneWave& wave,
                     DdmVariant variant, const DdmOptions& options)
    : maps_(std::move(maps)),
      wave_(wave),
      variant_(variant),
      pair_(build_admittance_pair(*maps_, wave.context(), options.quad, options.inner)),
      t_sigma_(assemble_TSigma(*maps_, wave.context(), options.quad)),
      mass_(assemble_mass(maps_->sigma)),
      mass_inv_(mass_solve_operator(mass_, options.mass_solver)),
      short_cut_(build_rhs(*maps_, pair_.first.shell(), wave, options.quad)),
      rhs_(-1.0 * short_cut_.u_rhs) {}

Primal DdmSystem::interface_sum(const Primal& e) const {
  const auto& sp = pair_.first.shell();
  if (pair_.first.shell_ptr() == pair_.second.shell_ptr()) {
    // Same [T] on both sides: one solve of the summed right-hand sides.
    const CVector rhs = sp.efie_rhs(e.values, 1.0) + sp.efie_rhs(e.values, -1.0);
    return Primal(maps_->restrict(sp.solve(rhs), Side::Plus));
  }
  return pair_.first.apply(e) + pair_.second.apply(e);
}

Primal DdmSystem::preconditioner_apply(const Primal& e) const {
  return mass_inv_->apply(t_sigma_apply(e));
}

std::unique_ptr<DdmSystem> build_system(std::shared_ptr<const InterfaceMaps> maps,
                                        const PlaneWave& wave, DdmVariant variant,
                                        const DdmOptions& options) {
  return std::make_unique<DdmSystem>(std::move(maps), wave, variant, options);
}

FunctionOperator interface_operator(const DdmSystem& system) {
  return FunctionOperator(system.maps().n(), [&system](const CVector& x) {
    return system.interface_sum(Primal(x)).values;
  });
}

FunctionOperator preconditioned_operator(const DdmSystem& system) {
  return FunctionOperator(system.maps().n(), [&system](const CVector& x) {
    return system.preconditioner_apply(system.interface_sum(Primal(x))).values;
  });
}

DdmSolution solve(const DdmSystem& system, GmresConfig config) {
  const FunctionOperator a = interface_operator(system);
  const Index n = system.maps().n();
  const FunctionOperator t_sigma(n, [&system](const CVector& x) {
    return system.t_sigma_apply(Primal(x)).values;
  });
  const FunctionOperator m_inv_t(n, [&system](const CVector& x) {
    return system.preconditioner_apply(Primal(x)).values;
  });

  const LinearOperator* precond = nullptr;
  switch (system.variant()) {
    case DdmVariant::Y0: config.side = PrecondSide::None; break;
    case DdmVariant::Y1: config.side = PrecondSide::Left; precond = &t_sigma; break;
    case DdmVariant::Y2: config.side = PrecondSide::Left; precond = &m_inv_t; break;
    case DdmVariant::Y3: config.side = PrecondSide::Right; precond = &m_inv_t; break;
  }
  GmresResult r = gmres(a, system.rhs().values, config, precond);
  return {Primal(std::move(r.x)), std::move(r.report)};
}

Traces recover_traces(const DdmSystem& system, const Primal& e_tan) {
  Traces t;
  t.sigma_e = e_tan;
  t.plus_current = system.a_plus().shell_current(e_tan.values);
  t.minus_current = system.a_minus().shell_current(e_tan.values);
  const auto& maps = system.maps();
  const CVector gap = maps.restrict(t.minus_current, Side::Minus) +
                      maps.restrict(t.plus_current, Side::Plus) +
                      system.short_cut().u_rhs.values;
  const double ref = system.short_cut().u_rhs.norm();
  t.transmission_residual = ref > 0.0 ? gap.norm() / ref : gap.norm();
  return t;
}

}  // namespace pecddm
