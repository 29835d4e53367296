// SPDX-License-Identifier: Apache-2.0

#include "pecddm/mie.hpp"

#include <cmath>
#include <stdexcept>

namespace pecddm::mie {

namespace {

// Spherical Bessel j_n (downward recurrence, normalized by j_0) and y_n
// (upward recurrence) for n = 0..nmax.
void spherical_bessel(double x, int nmax, std::vector<double>& j, std::vector<double>& y) {
  j.assign(nmax + 2, 0.0);
  y.assign(nmax + 2, 0.0);
  const int start = nmax + 20 + static_cast<int>(std::sqrt(40.0 * (nmax + 1)) + x);
  double jp1 = 0.0, jc = 1e-300;
  std::vector<double> tmp(start + 2, 0.0);
  tmp[start] = jc;
  for (int n = start; n > 0; --n) {
    const double jm1 = (2.0 * n + 1.0) / x * jc - jp1;
    jp1 = jc;
    jc = jm1;
    tmp[n - 1] = jc;
    if (std::abs(jc) > 1e250) {
      for (int m = n - 1; m <= start; ++m) tmp[m] *= 1e-250;
      jc *= 1e-250;
      jp1 *= 1e-250;
    }
  }
  const double scale = (std::sin(x) / x) / tmp[0];
  for (int n = 0; n <= nmax + 1; ++n) j[n] = tmp[n] * scale;
  y[0] = -std::cos(x) / x;
  y[1] = -std::cos(x) / (x * x) - std::sin(x) / x;
  for (int n = 1; n <= nmax; ++n) y[n + 1] = (2.0 * n + 1.0) / x * y[n] - y[n - 1];
}

struct Frame {
  Vec3 x, y, z;  // z along propagation, x along polarization
};

Frame frame_of(const PlaneWave& w) {
  return {w.polarization(), w.direction().cross(w.polarization()), w.direction()};
}

}  // namespace

int term_count(double x) { return static_cast<int>(std::ceil(x)) + 10; }

Coefficients coefficients(double x, int terms) {
  if (!(x > 0.0)) throw std::invalid_argument("size parameter must be positive");
  int n_total = std::max(terms, 1);
  Coefficients c;
  while (true) {
    std::vector<double> j, y;
    spherical_bessel(x, n_total, j, y);
    c.a.assign(n_total, 0.0);
    c.b.assign(n_total, 0.0);
    for (int n = 1; n <= n_total; ++n) {
      const cplx h(j[n], y[n]), hm1(j[n - 1], y[n - 1]);
      const double psi = x * j[n];
      const double dpsi = x * j[n - 1] - n * j[n];
      const cplx xi = x * h;
      const cplx dxi = x * hm1 - static_cast<double>(n) * h;
      c.a[n - 1] = dpsi / dxi;
      c.b[n - 1] = psi / xi;
    }
    const double tail = std::abs(c.a.back()) + std::abs(c.b.back());
    if (tail < 1e-12 || n_total > 400) break;
    n_total += 5;
  }
  return c;
}

Amplitudes amplitudes(const Coefficients& c, double mu) {
  Amplitudes s{0.0, 0.0};
  double pi_prev = 0.0, pi_cur = 1.0;
  for (std::size_t i = 0; i < c.a.size(); ++i) {
    const double n = static_cast<double>(i + 1);
    const double tau = n * mu * pi_cur - (n + 1.0) * pi_prev;
    const double f = (2.0 * n + 1.0) / (n * (n + 1.0));
    s.s1 += f * (c.a[i] * pi_cur + c.b[i] * tau);
    s.s2 += f * (c.a[i] * tau + c.b[i] * pi_cur);
    const double pi_next = ((2.0 * n + 1.0) * mu * pi_cur - (n + 1.0) * pi_prev) / n;
    pi_prev = pi_cur;
    pi_cur = pi_next;
  }
  return s;
}

CVec3 far_field(double radius, const PlaneWave& wave, const Vec3& r) {
  const double k = wave.context().k;
  const Frame f = frame_of(wave);
  const Vec3 loc(r.dot(f.x), r.dot(f.y), r.dot(f.z));
  const double ct = std::clamp(loc.z(), -1.0, 1.0);
  const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
  const double phi = std::atan2(loc.y(), loc.x());
  const Amplitudes s = amplitudes(coefficients(k * radius, term_count(k * radius)), ct);
  // Local spherical unit vectors, expressed in the global frame.
  const Vec3 th_hat = (ct * std::cos(phi)) * f.x + (ct * std::sin(phi)) * f.y - st * f.z;
  const Vec3 ph_hat = -std::sin(phi) * f.x + std::cos(phi) * f.y;
  const cplx pre = wave.amplitude() / (-kI * k);
  return pre * (std::cos(phi) * s.s2 * th_hat.cast<cplx>() -
                std::sin(phi) * s.s1 * ph_hat.cast<cplx>());
}

double rcs_dbsm(double radius, const PlaneWave& wave, const Vec3& direction) {
  const CVec3 a = far_field(radius, wave, direction);
  const double e0 = std::abs(wave.amplitude());
  return 10.0 * std::log10(4.0 * kPi * a.squaredNorm() / (e0 * e0));
}

CVec3 surface_current(double radius, const PlaneWave& wave, const Vec3& x) {
  const double k = wave.context().k;
  const double rho = k * radius;
  const Frame f = frame_of(wave);
  const Vec3 loc(x.dot(f.x), x.dot(f.y), x.dot(f.z));
  const double ct = std::clamp(loc.z() / loc.norm(), -1.0, 1.0);
  const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
  const double phi = std::atan2(loc.y(), loc.x());

  const Coefficients c = coefficients(rho, term_count(rho));
  const int nmax = static_cast<int>(c.a.size());
  std::vector<double> j, y;
  spherical_bessel(rho, nmax, j, y);

  // Tangential total H from the incident and scattered expansions with
  // normalized impedance; h_theta carries sin(phi), h_phi carries cos(phi).
  cplx h_theta = 0.0, h_phi = 0.0;
  double pi_prev = 0.0, pi_cur = 1.0;
  cplx in = kI;  // i^n
  for (int n = 1; n <= nmax; ++n) {
    const double nn = n;
    const double tau = nn * ct * pi_cur - (nn + 1.0) * pi_prev;
    const cplx en = in * (2.0 * nn + 1.0) / (nn * (nn + 1.0));
    const cplx h(j[n], y[n]), hm1(j[n - 1], y[n - 1]);
    const double dpsi = rho * j[n - 1] - nn * j[n];  // (rho j_n)'
    const cplx dxi = rho * hm1 - nn * h;
    const cplx an = c.a[n - 1], bn = c.b[n - 1];
    h_theta += en * (pi_cur * j[n] - kI * tau * dpsi / rho + kI * bn * tau * dxi / rho -
                     an * pi_cur * h);
    h_phi += en * (tau * j[n] - kI * pi_cur * dpsi / rho + kI * bn * pi_cur * dxi / rho -
                   an * tau * h);
    const double pi_next = ((2.0 * nn + 1.0) * ct * pi_cur - (nn + 1.0) * pi_prev) / nn;
    pi_prev = pi_cur;
    pi_cur = pi_next;
    in *= kI;
  }
  h_theta *= std::sin(phi) * wave.amplitude();
  h_phi *= std::cos(phi) * wave.amplitude();
  const Vec3 th_hat = (ct * std::cos(phi)) * f.x + (ct * std::sin(phi)) * f.y - st * f.z;
  const Vec3 ph_hat = -std::sin(phi) * f.x + std::cos(phi) * f.y;
  // r x (H_t th + H_p ph) = H_t ph - H_p th
  return h_theta * ph_hat.cast<cplx>() - h_phi * th_hat.cast<cplx>();
}

}  // namespace pecddm::mie
