// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>
#include <vector>

#include "pecddm/excitation.hpp"
#include "pecddm/linalg.hpp"

namespace pecddm {

enum class CurrentKind {
  Electric,  // j = sum c_i theta_i
  Magnetic,  // m = nu x sum c_i theta_i, nu = normal_sign * stored normal
};

struct SurfaceCurrent {
  std::shared_ptr<const RwgSpace> space;
  CVector coefficients;
  CurrentKind kind = CurrentKind::Electric;
  double normal_sign = 1.0;
};

struct FarFieldPattern {
  std::vector<Vec3> directions;
  std::vector<CVec3> amplitude;  // E ~ exp(ikr)/r * amplitude
};

/// Radiation-zone amplitude of E = T(j) - K(m):
/// A(r) = (ik/4pi) [ (I - r r) J + r x M ], J = int exp(-ik r.y) j(y) dy.
FarFieldPattern far_field(const std::vector<SurfaceCurrent>& currents, const WaveContext& ctx,
                          const std::vector<Vec3>& directions, const QuadratureOptions& quad = {});

// sigma = 4 pi |A|^2 / |E0|^2 in dB relative to 1 m^2.
std::vector<double> rcs_dbsm(const FarFieldPattern& pattern, double incident_amplitude = 1.0);
double rcs_dbsm(const CVec3& amplitude, double incident_amplitude = 1.0);

struct Direction {
  double theta_deg = 0.0;
  double phi_deg = 0.0;
};

Vec3 unit_vector(const Direction& d);
// theta = 0, step, ..., 180 at fixed phi.
std::vector<Direction> bistatic_cut(double phi_deg, double step_deg);

/// Space of the physical scatterer for a reference solve without interface:
/// the GD_PLUS triangles when present (an open surface for cavities),
/// otherwise the closed SIGMA sphere treated as metal.
std::shared_ptr<const RwgSpace> scatterer_space(std::shared_ptr<const SurfaceMesh> mesh);

struct MonolithicSolution {
  std::shared_ptr<const RwgSpace> space;
  CVector current;  // n x H_total amplitudes
  double rcond = 0.0;
};

/// EFIE [T] u = -b on the given space, solved by dense LU.
MonolithicSolution monolithic_efie(std::shared_ptr<const RwgSpace> space, const PlaneWave& wave,
                                   const QuadratureOptions& quad = {});

}  // namespace pecddm
