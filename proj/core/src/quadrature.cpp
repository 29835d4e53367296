// SPDX-License-Identifier: Apache-2.0

#include "pecddm/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "pecddm/types.hpp"

namespace pecddm {

GaussRule gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("Gauss rule needs at least one point");
  GaussRule r;
  r.x.resize(n);
  r.w.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    // Map [-1, 1] to [0, 1].
    const double w = 1.0 / ((1.0 - z * z) * dp * dp);
    r.x[i] = 0.5 * (1.0 - z);
    r.x[n - 1 - i] = 0.5 * (1.0 + z);
    r.w[i] = w;
    r.w[n - 1 - i] = w;
  }
  return r;
}

namespace {

void add_orbit(TriangleRule& r, double a, double b, double w) {
  // Permutations of barycentrics (a, b, b); a == b collapses to the centroid.
  if (a == b) {
    r.points.push_back({a, a});
    r.weights.push_back(0.5 * w);
    return;
  }
  const double c = b;
  r.points.push_back({b, c});
  r.points.push_back({a, c});
  r.points.push_back({b, a});
  for (int i = 0; i < 3; ++i) r.weights.push_back(0.5 * w);
}

}  // namespace

TriangleRule collapsed_gauss(int order) {
  const GaussRule g = gauss_legendre(order);
  TriangleRule r;
  for (int i = 0; i < order; ++i) {
    for (int j = 0; j < order; ++j) {
      const double u = g.x[i], v = g.x[j];
      r.points.push_back({u * (1.0 - v), u * v});
      r.weights.push_back(g.w[i] * g.w[j] * u);
    }
  }
  return r;
}

TriangleRule triangle_rule(int points) {
  TriangleRule r;
  switch (points) {
    case 1:
      add_orbit(r, 1.0 / 3.0, 1.0 / 3.0, 1.0);
      return r;
    case 3:
      add_orbit(r, 2.0 / 3.0, 1.0 / 6.0, 1.0 / 3.0);
      return r;
    case 4:
      add_orbit(r, 1.0 / 3.0, 1.0 / 3.0, -27.0 / 48.0);
      add_orbit(r, 0.6, 0.2, 25.0 / 48.0);
      return r;
    case 6:
      add_orbit(r, 0.108103018168070, 0.445948490915965, 0.223381589678011);
      add_orbit(r, 0.816847572980459, 0.091576213509771, 0.109951743655322);
      return r;
    case 7:
      add_orbit(r, 1.0 / 3.0, 1.0 / 3.0, 0.225);
      add_orbit(r, 0.059715871789770, 0.470142064105115, 0.132394152788506);
      add_orbit(r, 0.797426985353087, 0.101286507323456, 0.125939180544827);
      return r;
    default:
      if (points < 1) throw std::invalid_argument("triangle rule needs at least one point");
      return collapsed_gauss(static_cast<int>(std::ceil(std::sqrt(static_cast<double>(points)))));
  }
}

namespace {

// Relative-coordinate rules over the reference triangle {0 <= y <= x <= 1},
// converted to (x - y, y) so that P0, P1, P2 sit at (0,0), (1,0), (0,1).
PairRule build_pair_rule(int common, int order) {
  const GaussRule g = gauss_legendre(order);
  PairRule r;
  auto push = [&](double x1, double y1, double x2, double y2, double w) {
    r.p1.push_back({x1 - y1, y1});
    r.p2.push_back({x2 - y2, y2});
    r.w.push_back(w);
  };
  for (int a = 0; a < order; ++a) {
    const double xi = g.x[a];
    for (int b = 0; b < order; ++b) {
      const double e3 = g.x[b];
      for (int c = 0; c < order; ++c) {
        const double e2 = g.x[c];
        for (int d = 0; d < order; ++d) {
          const double e1 = g.x[d];
          const double base = g.w[a] * g.w[b] * g.w[c] * g.w[d] * xi * xi * xi;
          if (common == 3) {
            const double w = base * e1 * e1 * e2;
            push(xi, xi * (1 - e1 + e1 * e2), xi * (1 - e1 * e2 * e3), xi * (1 - e1), w);
            push(xi * (1 - e1 * e2 * e3), xi * (1 - e1), xi, xi * (1 - e1 + e1 * e2), w);
            push(xi, xi * e1 * (1 - e2 + e2 * e3), xi * (1 - e1 * e2), xi * e1 * (1 - e2), w);
            push(xi * (1 - e1 * e2), xi * e1 * (1 - e2), xi, xi * e1 * (1 - e2 + e2 * e3), w);
            push(xi * (1 - e1 * e2 * e3), xi * e1 * (1 - e2 * e3), xi, xi * e1 * (1 - e2), w);
            push(xi, xi * e1 * (1 - e2), xi * (1 - e1 * e2 * e3), xi * e1 * (1 - e2 * e3), w);
          } else if (common == 2) {
            const double w = base * e1 * e1 * e2;
            push(xi, xi * e1 * e3, xi * (1 - e1 * e2), xi * e1 * (1 - e2), base * e1 * e1);
            push(xi, xi * e1, xi * (1 - e1 * e2 * e3), xi * e1 * e2 * (1 - e3), w);
            push(xi * (1 - e1 * e2), xi * e1 * (1 - e2), xi, xi * e1 * e2 * e3, w);
            push(xi * (1 - e1 * e2 * e3), xi * e1 * e2 * (1 - e3), xi, xi * e1, w);
            push(xi * (1 - e1 * e2 * e3), xi * e1 * (1 - e2 * e3), xi, xi * e1 * e2, w);
          } else if (common == 1) {
            const double w = base * e2;
            push(xi, xi * e1, xi * e2, xi * e2 * e3, w);
            push(xi * e2, xi * e2 * e3, xi, xi * e1, w);
          } else {
            throw std::invalid_argument("Sauter-Schwab rule needs 1 to 3 common vertices");
          }
        }
      }
    }
  }
  return r;
}

}  // namespace

const PairRule& sauter_schwab(int common, int order) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, PairRule> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto key = std::make_pair(common, order);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, build_pair_rule(common, order)).first;
  return it->second;
}

}  // namespace pecddm
