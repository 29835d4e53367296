// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <vector>

namespace pecddm {

struct GaussRule {
  std::vector<double> x;  // on [0, 1]
  std::vector<double> w;  // sum to 1
};

GaussRule gauss_legendre(int n);

// Points as (a1, a2) in the unit triangle {a1, a2 >= 0, a1 + a2 <= 1}; the
// point maps to a0*P0 + a1*P1 + a2*P2. Weights sum to the reference area 1/2.
struct TriangleRule {
  std::vector<std::array<double, 2>> points;
  std::vector<double> weights;
};

// Symmetric Dunavant rule for 1, 3, 4, 6 or 7 points, collapsed Gauss with
// ceil(sqrt(n))^2 points otherwise.
TriangleRule triangle_rule(int points);
TriangleRule collapsed_gauss(int order);

// Sauter-Schwab rule for a pair of triangles sharing `common` vertices
// (3, 2 or 1). Common vertices occupy the leading positions P0 (and P1) of
// both triangles in the same order. Weights sum to 1/4.
struct PairRule {
  std::vector<std::array<double, 2>> p1;
  std::vector<std::array<double, 2>> p2;
  std::vector<double> w;
};

const PairRule& sauter_schwab(int common, int order);

}  // namespace pecddm
