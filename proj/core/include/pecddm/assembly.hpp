// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Sparse>

#include "pecddm/kernel.hpp"
#include "pecddm/rwg.hpp"

namespace pecddm {

struct QuadratureOptions {
  int regular_points = 4;     // per triangle, far pairs
  int singular_order = 4;     // Gauss points per axis of the Sauter-Schwab cubes
  double near_factor = 1.5;   // near pair: centroid distance < factor * max circumradius
  int near_order = 6;         // collapsed Gauss order per triangle for near pairs
  int load_order = 5;         // collapsed Gauss order for load vectors and far fields
};

enum class OperatorKind { SingleLayerT, DoubleLayerKn, Mass };

struct BoundaryOperatorMatrix {
  OperatorKind kind = OperatorKind::Mass;
  std::shared_ptr<const RwgSpace> space;
  CMatrix data;
};

/// Galerkin matrix of the single layer operator,
/// <Tu, v> = (1/ik) [ k^2 <g u, v> - <g div u, div v> ].
BoundaryOperatorMatrix assemble_T(std::shared_ptr<const RwgSpace> space, const WaveContext& ctx,
                                  const QuadratureOptions& quad = {});

/// Double layer part of (1/2 Id + K nu x) with nu the stored triangle normal:
/// entries int theta_i(x) . [grad_x g(x,y) x (n(y) x theta_j(y))]. Only the first
/// `trial_count` trial functions are assembled (all when negative). Flip the
/// sign for a side whose normal is opposite to storage.
CMatrix assemble_K_stored(const RwgSpace& space, const WaveContext& ctx,
                          const QuadratureOptions& quad = {}, Index trial_count = -1);

/// Full (1/2 Id + K nu x) matrix for the side's physical normal.
BoundaryOperatorMatrix assemble_Kn(std::shared_ptr<const RwgSpace> space, Side side,
                                   const WaveContext& ctx, const QuadratureOptions& quad = {});

Eigen::SparseMatrix<double> mass_sparse(const RwgSpace& space);
BoundaryOperatorMatrix assemble_mass(std::shared_ptr<const RwgSpace> space);

/// Single layer matrix on the interface space only.
BoundaryOperatorMatrix assemble_TSigma(const InterfaceMaps& maps, const WaveContext& ctx,
                                       const QuadratureOptions& quad = {});

}  // namespace pecddm
