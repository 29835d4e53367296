// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "pecddm/assembly.hpp"

namespace pecddm {

/// E(x) = p exp(ik d.x), H(x) = (d x p) exp(ik d.x), normalized impedance.
class PlaneWave {
 public:
  PlaneWave(const Vec3& direction, const Vec3& polarization, const WaveContext& ctx,
            cplx amplitude = 1.0);

  // Incidence from spherical angles: the wave travels towards the origin from
  // (theta, phi), i.e. d = -r(theta, phi); polarization along theta-hat or phi-hat.
  static PlaneWave from_angles(double theta_deg, double phi_deg, bool theta_polarized,
                               const WaveContext& ctx);

  const Vec3& direction() const { return d_; }
  const Vec3& polarization() const { return p_; }
  const WaveContext& context() const { return ctx_; }
  cplx amplitude() const { return amp_; }

  CVec3 E(const Vec3& x) const;
  CVec3 H(const Vec3& x) const;

 private:
  Vec3 d_, p_;
  WaveContext ctx_;
  cplx amp_;
};

/// b_i = int E_inc . theta_i (dual vector).
CVector project_tangential_E(const RwgSpace& space, const PlaneWave& wave,
                             const QuadratureOptions& quad = {});

/// c_i = int (n x H_inc) . theta_i with n the physical normal of `side`.
CVector project_rotated_H(const RwgSpace& space, const PlaneWave& wave, Side side,
                          const QuadratureOptions& quad = {});

}  // namespace pecddm
