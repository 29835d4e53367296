// SPDX-License-Identifier: Apache-2.0

#include "pecddm/rwg.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include "edge_key.hpp"

namespace pecddm {

RwgSpace::RwgSpace(std::shared_ptr<const SurfaceMesh> mesh, std::vector<std::uint32_t> triangles,
                   const std::vector<std::uint64_t>& leading)
    : mesh_(std::move(mesh)), triangles_(std::move(triangles)) {
  struct Use {
    std::uint32_t slot[2];
    int local[2];
    int count = 0;
  };
  std::map<std::uint64_t, Use> uses;  // ordered: the trailing DoFs come out sorted
  for (std::uint32_t s = 0; s < triangles_.size(); ++s) {
    const auto& v = mesh_->triangles()[triangles_[s]].v;
    for (int j = 0; j < 3; ++j) {
      auto& u = uses[detail::edge_key(v[(j + 1) % 3], v[(j + 2) % 3])];
      if (u.count < 2) {
        u.slot[u.count] = s;
        u.local[u.count] = j;
      }
      ++u.count;
    }
  }

  std::vector<std::uint64_t> order;
  order.reserve(uses.size());
  std::unordered_map<std::uint64_t, bool> taken;
  for (auto key : leading) {
    auto it = uses.find(key);
    if (it == uses.end() || it->second.count != 2)
      throw std::invalid_argument("leading edge is not interior to the space");
    order.push_back(key);
    taken[key] = true;
  }
  for (const auto& [key, u] : uses)
    if (u.count == 2 && !taken.count(key)) order.push_back(key);

  local_.assign(triangles_.size(), {});
  edges_.reserve(order.size());
  for (auto key : order) {
    const Use& u = uses[key];
    const auto lo = static_cast<std::uint32_t>(key >> 32);
    RwgEdge e;
    e.vertices = {lo, static_cast<std::uint32_t>(key & 0xffffffffu)};
    e.length = (mesh_->vertices()[e.vertices[1]] - mesh_->vertices()[e.vertices[0]]).norm();
    const Index dof = static_cast<Index>(edges_.size());
    for (int side = 0; side < 2; ++side) {
      const auto slot = u.slot[side];
      const int j = u.local[side];
      // Local edge j runs from vertex j+1 to vertex j+2.
      const bool forward = mesh_->triangles()[triangles_[slot]].v[(j + 1) % 3] == lo;
      local_[slot][j] = {dof, forward ? 1.0 : -1.0, e.length};
      (forward ? e.plus_tri : e.minus_tri) = triangles_[slot];
    }
    if (local_[u.slot[0]][u.local[0]].sign == local_[u.slot[1]][u.local[1]].sign)
      throw MeshError("inconsistent orientation across edge " + std::to_string(e.vertices[0]) +
                      "-" + std::to_string(e.vertices[1]));
    edges_.push_back(e);
  }
}

std::uint64_t RwgSpace::edge_key(Index dof) const {
  const auto& e = edges_[dof];
  return detail::edge_key(e.vertices[0], e.vertices[1]);
}

Vec3 RwgSpace::value(std::size_t slot, int j, const Vec3& x) const {
  const auto t = triangles_[slot];
  const auto& lb = local_[slot][j];
  return (lb.sign * lb.length / (2.0 * mesh_->area(t))) * (x - mesh_->vertex(t, j));
}

double RwgSpace::divergence(std::size_t slot, int j) const {
  const auto& lb = local_[slot][j];
  return lb.sign * lb.length / mesh_->area(triangles_[slot]);
}

CVector InterfaceMaps::extend(const CVector& v, Side side) const {
  const auto& map = embed(side);
  if (v.size() != static_cast<Index>(map.size()))
    throw std::invalid_argument("extend: expected " + std::to_string(map.size()) + " entries");
  CVector out = CVector::Zero(shell(side).dof_count());
  for (std::size_t i = 0; i < map.size(); ++i) out[map[i]] = v[static_cast<Index>(i)];
  return out;
}

CVector InterfaceMaps::restrict(const CVector& v, Side side) const {
  const auto& map = embed(side);
  if (v.size() != shell(side).dof_count())
    throw std::invalid_argument("restrict: expected " + std::to_string(shell(side).dof_count()) +
                                " entries");
  CVector out(static_cast<Index>(map.size()));
  for (std::size_t i = 0; i < map.size(); ++i) out[static_cast<Index>(i)] = v[map[i]];
  return out;
}

InterfaceMaps build_spaces(std::shared_ptr<const SurfaceMesh> mesh) {
  InterfaceMaps maps;
  maps.mesh = mesh;
  maps.sigma = std::make_shared<RwgSpace>(mesh, mesh->region_triangles(Region::Sigma));
  if (maps.sigma->dof_count() == 0) throw MeshError("interface has no interior edges");

  std::vector<std::uint64_t> keys;
  for (Index i = 0; i < maps.sigma->dof_count(); ++i) keys.push_back(maps.sigma->edge_key(i));
  maps.plus = std::make_shared<RwgSpace>(mesh, mesh->shell(Side::Plus), keys);
  maps.minus = std::make_shared<RwgSpace>(mesh, mesh->shell(Side::Minus), keys);
  for (Index i = 0; i < maps.sigma->dof_count(); ++i) {
    maps.embed_plus.push_back(i);
    maps.embed_minus.push_back(i);
  }

  const auto& pt = maps.plus->triangles();
  const auto& mt = maps.minus->triangles();
  maps.shells_coincide =
      pt.size() == mt.size() && std::equal(pt.begin(), pt.end(), mt.begin(), [&](auto a, auto b) {
        return mesh->triangles()[a].v == mesh->triangles()[b].v;
      });
  return maps;
}

}  // namespace pecddm
