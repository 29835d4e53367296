// SPDX-License-Identifier: Apache-2.0

#include "pecddm/kernel.hpp"

#include <stdexcept>

namespace pecddm {

WaveContext WaveContext::from_frequency(double hz) {
  if (!(hz > 0.0)) throw std::invalid_argument("frequency must be positive");
  return {hz, 2.0 * kPi * hz / kSpeedOfLight};
}

WaveContext WaveContext::from_wavenumber(double k) {
  if (!(k > 0.0)) throw std::invalid_argument("wavenumber must be positive");
  return {k * kSpeedOfLight / (2.0 * kPi), k};
}

cplx green_kernel(const Vec3& x, const Vec3& y, const WaveContext& ctx) {
  const double r = (x - y).norm();
  if (r == 0.0) throw std::domain_error("green_kernel: coincident points");
  return detail::green_r(r, ctx.k);
}

CVec3 green_gradient(const Vec3& x, const Vec3& y, const WaveContext& ctx) {
  const Vec3 d = x - y;
  const double r = d.norm();
  if (r == 0.0) throw std::domain_error("green_gradient: coincident points");
  return detail::green_gradient_coeff(r, ctx.k) * d.cast<cplx>();
}

}  // namespace pecddm
