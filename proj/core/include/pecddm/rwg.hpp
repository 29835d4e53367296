// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <memory>
#include <vector>

#include "pecddm/mesh.hpp"
#include "pecddm/types.hpp"

namespace pecddm {

struct RwgEdge {
  std::array<std::uint32_t, 2> vertices{};  // sorted
  std::uint32_t plus_tri = 0;               // global triangle indices
  std::uint32_t minus_tri = 0;
  double length = 0.0;
};

// Restriction of one basis function to one triangle. Local slot j is the
// edge opposite local vertex j; dof < 0 marks a boundary edge.
struct LocalBasis {
  Index dof = -1;
  double sign = 0.0;  // +1 on the plus triangle, -1 on the minus triangle
  double length = 0.0;
};

/// RWG space on a subset of mesh triangles. Basis functions live on edges
/// shared by exactly two triangles of the subset.
///
/// Plus triangle of an edge is the one traversing it from the smaller to the
/// larger vertex index. DoFs listed in `leading` (edge keys) come first in the
/// given order, the remaining edges follow sorted by key.
class RwgSpace {
 public:
  RwgSpace(std::shared_ptr<const SurfaceMesh> mesh, std::vector<std::uint32_t> triangles,
           const std::vector<std::uint64_t>& leading = {});

  const SurfaceMesh& mesh() const { return *mesh_; }
  const std::shared_ptr<const SurfaceMesh>& mesh_ptr() const { return mesh_; }

  // Global triangle indices of the support, in assembly order.
  const std::vector<std::uint32_t>& triangles() const { return triangles_; }
  const std::array<LocalBasis, 3>& local(std::size_t slot) const { return local_[slot]; }

  Index dof_count() const { return static_cast<Index>(edges_.size()); }
  const std::vector<RwgEdge>& edges() const { return edges_; }
  std::uint64_t edge_key(Index dof) const;

  // Value of the basis restricted to triangle `slot` with local index j.
  Vec3 value(std::size_t slot, int j, const Vec3& x) const;
  double divergence(std::size_t slot, int j) const;

 private:
  std::shared_ptr<const SurfaceMesh> mesh_;
  std::vector<std::uint32_t> triangles_;
  std::vector<std::array<LocalBasis, 3>> local_;
  std::vector<RwgEdge> edges_;
};

/// The interface space X_h (edges with both triangles on SIGMA) and the two
/// shell spaces, with X_h occupying the first N DoFs of each shell space.
struct InterfaceMaps {
  std::shared_ptr<const SurfaceMesh> mesh;
  std::shared_ptr<const RwgSpace> sigma;
  std::shared_ptr<const RwgSpace> plus;
  std::shared_ptr<const RwgSpace> minus;
  std::vector<Index> embed_plus;
  std::vector<Index> embed_minus;
  // Both shells have the same vertex triples in the same order (thin metal
  // or no metal at all); shell matrices may then be shared.
  bool shells_coincide = false;

  Index n() const { return sigma->dof_count(); }
  const RwgSpace& shell(Side s) const { return s == Side::Plus ? *plus : *minus; }
  const std::vector<Index>& embed(Side s) const { return s == Side::Plus ? embed_plus : embed_minus; }

  CVector extend(const CVector& v, Side side) const;
  CVector restrict(const CVector& v, Side side) const;
};

InterfaceMaps build_spaces(std::shared_ptr<const SurfaceMesh> mesh);

}  // namespace pecddm
