// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "pecddm/types.hpp"

namespace pecddm {

struct WaveContext {
  double frequency_hz = 0.0;
  double k = 0.0;  // rad/m

  static WaveContext from_frequency(double hz);
  static WaveContext from_wavenumber(double k);
};

// g(x, y) = -exp(ik|x-y|) / (4 pi |x-y|); throws for coincident points.
cplx green_kernel(const Vec3& x, const Vec3& y, const WaveContext& ctx);
// Gradient of g with respect to x.
CVec3 green_gradient(const Vec3& x, const Vec3& y, const WaveContext& ctx);

namespace detail {

inline cplx green_r(double r, double k) {
  return -std::exp(kI * (k * r)) / (4.0 * kPi * r);
}

// grad_x g = coeff * (x - y)
inline cplx green_gradient_coeff(double r, double k) {
  return (1.0 - kI * (k * r)) * std::exp(kI * (k * r)) / (4.0 * kPi * r * r * r);
}

}  // namespace detail

}  // namespace pecddm
