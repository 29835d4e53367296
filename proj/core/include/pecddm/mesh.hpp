// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pecddm/types.hpp"

namespace pecddm {

// Region tag of a triangle. GD_PLUS and GD_MINUS are the metallic faces seen
// from the exterior and from the cavity; SIGMA is the fictitious interface
// shared by both subdomain boundaries.
enum class Region : std::uint8_t { GdPlus, GdMinus, Sigma };

const char* to_string(Region r);

struct Triangle {
  std::array<std::uint32_t, 3> v{};
  Region region = Region::Sigma;
};

class MeshError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Tagged surface triangulation of a scatterer split by an interface.
///
/// Storage orientation convention: every triangle is stored so that each
/// shell (GD_PLUS + SIGMA and GD_MINUS + SIGMA) is a closed surface with
/// outward normals. The physical normals follow from it: n+ is the stored
/// normal, n- is its opposite. Thin metallic sheets are represented by two
/// copies of the same triangle, one tagged GD_PLUS and one tagged GD_MINUS.
///
/// The constructor validates every invariant and throws MeshError.
class SurfaceMesh {
 public:
  SurfaceMesh(std::vector<Vec3> vertices, std::vector<Triangle> triangles);

  const std::vector<Vec3>& vertices() const { return vertices_; }
  const std::vector<Triangle>& triangles() const { return triangles_; }
  std::size_t triangle_count() const { return triangles_.size(); }

  const Vec3& vertex(std::uint32_t t, int local) const { return vertices_[triangles_[t].v[local]]; }
  double area(std::uint32_t t) const { return areas_[t]; }
  const Vec3& normal(std::uint32_t t) const { return normals_[t]; }
  Vec3 centroid(std::uint32_t t) const;

  // Triangles of the closed boundary of the given subdomain: SIGMA triangles
  // first, then the GD triangles of that side, each group in storage order.
  std::vector<std::uint32_t> shell(Side side) const;
  std::vector<std::uint32_t> region_triangles(Region r) const;
  bool has_sigma() const;

  // Outward-normal sign of the physical normal n+/- relative to storage.
  static double normal_sign(Side side) { return side == Side::Plus ? 1.0 : -1.0; }

 private:
  void validate_shell(const std::vector<std::uint32_t>& tris, const char* name) const;

  std::vector<Vec3> vertices_;
  std::vector<Triangle> triangles_;
  std::vector<double> areas_;
  std::vector<Vec3> normals_;
};

/// Signed volume enclosed by a triangle set (positive for outward orientation).
double signed_volume(const SurfaceMesh& mesh, const std::vector<std::uint32_t>& tris);

/// Euler characteristic V - E + F of a triangle subset.
int euler_characteristic(const SurfaceMesh& mesh, const std::vector<std::uint32_t>& tris);

SurfaceMesh load_mesh(const std::filesystem::path& path);
SurfaceMesh parse_mesh(const std::string& text);
void save_mesh(const SurfaceMesh& mesh, const std::filesystem::path& path);
std::string format_mesh(const SurfaceMesh& mesh);

enum class SphereBase : std::uint8_t {
  Icosahedron,  // geodesic, 30 (r+1)^2 edges
  Octahedron,   // geodesic, 12 (r+1)^2 edges
  CubeCross,    // cube-sphere, each cell split in 4 at its center, 36 (r+1)^2 edges
  LatLong,      // (r+3) meridians x (r+3) latitude bands
};

const char* to_string(SphereBase b);
SphereBase sphere_base_from_string(const std::string& s);

struct SphereOptions {
  double radius = 1.0;
  int refinement = 0;
  std::optional<double> cap_latitude_deg;  // open above this latitude
  SphereBase base = SphereBase::Icosahedron;
};

/// Without a cap every triangle is SIGMA (the fictitious sphere). With a cap,
/// triangles whose centroid latitude exceeds the cap are SIGMA and the rest
/// is a thin metallic sheet (duplicated as GD_PLUS and GD_MINUS).
SurfaceMesh generate_sphere(const SphereOptions& opts);

enum class Axis : std::uint8_t { X = 0, Y = 1, Z = 2 };

struct BoxOptions {
  Vec3 dimensions{1.0, 1.0, 1.0};
  Axis open_axis = Axis::X;
  bool open_positive = true;
  double resolution = 1.0 / 6.0;  // target edge length
};

/// Thin-walled box with one face replaced by the SIGMA opening. The five walls
/// are both the exterior face (GD_PLUS) and the cavity wall (GD_MINUS).
SurfaceMesh generate_open_box(const BoxOptions& opts);

}  // namespace pecddm
