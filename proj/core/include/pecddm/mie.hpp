// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "pecddm/excitation.hpp"

namespace pecddm::mie {

// Series coefficients of a perfectly conducting sphere with size parameter
// x = ka: a_n = psi_n'(x) / xi_n'(x), b_n = psi_n(x) / xi_n(x), n = 1..N.
struct Coefficients {
  std::vector<cplx> a;
  std::vector<cplx> b;
};

// ceil(x) + 10; coefficients() extends the series until both tails drop below 1e-12.
int term_count(double x);
Coefficients coefficients(double x, int terms);

struct Amplitudes {
  cplx s1;
  cplx s2;
};

Amplitudes amplitudes(const Coefficients& c, double cos_theta);

/// Far-field amplitude A(r) of the field scattered by a PEC sphere of given
/// radius centred at the origin (E_sc ~ exp(ikr)/r A).
CVec3 far_field(double radius, const PlaneWave& wave, const Vec3& direction);

double rcs_dbsm(double radius, const PlaneWave& wave, const Vec3& direction);

/// Total surface current n x H on the sphere at point x (|x| = radius),
/// outward normal.
CVec3 surface_current(double radius, const PlaneWave& wave, const Vec3& x);

}  // namespace pecddm::mie
