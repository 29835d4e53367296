// SPDX-License-Identifier: Apache-2.0

#include <array>
#include <cmath>
#include <map>
#include <stdexcept>
#include <tuple>

#include "pecddm/mesh.hpp"

namespace pecddm {

const char* to_string(SphereBase b) {
  switch (b) {
    case SphereBase::Icosahedron: return "icosahedron";
    case SphereBase::Octahedron: return "octahedron";
    case SphereBase::CubeCross: return "cube-cross";
    case SphereBase::LatLong: return "latlong";
  }
  return "?";
}

SphereBase sphere_base_from_string(const std::string& s) {
  for (auto b : {SphereBase::Icosahedron, SphereBase::Octahedron, SphereBase::CubeCross,
                 SphereBase::LatLong})
    if (s == to_string(b)) return b;
  throw std::invalid_argument("unknown sphere base '" + s + "'");
}

namespace {

using Face = std::array<std::uint32_t, 3>;

struct Polyhedron {
  std::vector<Vec3> vertices;
  std::vector<Face> faces;
};

Polyhedron icosahedron() {
  const double p = (1.0 + std::sqrt(5.0)) / 2.0;
  Polyhedron ph;
  ph.vertices = {{-1, p, 0}, {1, p, 0}, {-1, -p, 0}, {1, -p, 0}, {0, -1, p}, {0, 1, p},
                 {0, -1, -p}, {0, 1, -p}, {p, 0, -1}, {p, 0, 1}, {-p, 0, -1}, {-p, 0, 1}};
  ph.faces = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
              {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
              {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
              {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
  return ph;
}

Polyhedron octahedron() {
  Polyhedron ph;
  ph.vertices = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
  ph.faces = {{0, 2, 4}, {2, 1, 4}, {1, 3, 4}, {3, 0, 4},
              {2, 0, 5}, {1, 2, 5}, {3, 1, 5}, {0, 3, 5}};
  return ph;
}

// Splits every face into nu^2 triangles. Points on a shared polyhedron edge are
// generated once from the edge's canonical direction so that they coincide.
Polyhedron subdivide(const Polyhedron& base, int nu) {
  Polyhedron out;
  out.vertices = base.vertices;
  std::map<std::tuple<std::uint32_t, std::uint32_t, int>, std::uint32_t> edge_points;

  auto edge_point = [&](std::uint32_t a, std::uint32_t b, int i) -> std::uint32_t {
    // i-th of nu steps from a to b
    if (i == 0) return a;
    if (i == nu) return b;
    if (a > b) {
      std::swap(a, b);
      i = nu - i;
    }
    auto key = std::make_tuple(a, b, i);
    auto it = edge_points.find(key);
    if (it != edge_points.end()) return it->second;
    const double t = static_cast<double>(i) / nu;
    out.vertices.push_back((1.0 - t) * base.vertices[a] + t * base.vertices[b]);
    auto id = static_cast<std::uint32_t>(out.vertices.size() - 1);
    edge_points.emplace(key, id);
    return id;
  };

  for (const auto& f : base.faces) {
    const Vec3& A = base.vertices[f[0]];
    const Vec3& B = base.vertices[f[1]];
    const Vec3& C = base.vertices[f[2]];
    std::vector<std::uint32_t> grid((nu + 1) * (nu + 1));
    auto at = [&](int i, int j) -> std::uint32_t& { return grid[i * (nu + 1) + j]; };
    for (int i = 0; i <= nu; ++i) {
      for (int j = 0; i + j <= nu; ++j) {
        if (j == 0) at(i, j) = edge_point(f[0], f[1], i);
        else if (i == 0) at(i, j) = edge_point(f[0], f[2], j);
        else if (i + j == nu) at(i, j) = edge_point(f[1], f[2], j);
        else {
          out.vertices.push_back(A + (static_cast<double>(i) / nu) * (B - A) +
                                 (static_cast<double>(j) / nu) * (C - A));
          at(i, j) = static_cast<std::uint32_t>(out.vertices.size() - 1);
        }
      }
    }
    for (int i = 0; i < nu; ++i) {
      for (int j = 0; i + j < nu; ++j) {
        out.faces.push_back({at(i, j), at(i + 1, j), at(i, j + 1)});
        if (i + j + 1 < nu) out.faces.push_back({at(i + 1, j), at(i + 1, j + 1), at(i, j + 1)});
      }
    }
  }
  return out;
}

// Cube surface on an integer lattice of spacing 1/2, each cell split into four
// triangles around its center.
Polyhedron cube_cross(int n) {
  Polyhedron out;
  std::map<std::array<int, 3>, std::uint32_t> ids;
  auto vid = [&](const std::array<int, 3>& p) {
    auto it = ids.find(p);
    if (it != ids.end()) return it->second;
    out.vertices.emplace_back(p[0] - n, p[1] - n, p[2] - n);
    auto id = static_cast<std::uint32_t>(out.vertices.size() - 1);
    ids.emplace(p, id);
    return id;
  };
  for (int axis = 0; axis < 3; ++axis) {
    for (int side = 0; side < 2; ++side) {
      const int u = (axis + 1) % 3, v = (axis + 2) % 3;
      for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
          auto corner = [&](int da, int db) {
            std::array<int, 3> p{};
            p[axis] = side * 2 * n;
            p[u] = 2 * (a + da);
            p[v] = 2 * (b + db);
            return vid(p);
          };
          std::array<int, 3> c{};
          c[axis] = side * 2 * n;
          c[u] = 2 * a + 1;
          c[v] = 2 * b + 1;
          const auto center = vid(c);
          const std::array<std::uint32_t, 4> ring{corner(0, 0), corner(1, 0), corner(1, 1),
                                                  corner(0, 1)};
          for (int e = 0; e < 4; ++e) {
            // (u, v, axis) is right-handed, so this winding faces +axis.
            if (side == 1) out.faces.push_back({ring[e], ring[(e + 1) % 4], center});
            else out.faces.push_back({ring[(e + 1) % 4], ring[e], center});
          }
        }
      }
    }
  }
  return out;
}

Polyhedron latlong(int meridians, int bands) {
  Polyhedron out;
  out.vertices.emplace_back(0, 0, 1);
  for (int b = 1; b < bands; ++b) {
    const double th = kPi * b / bands;
    for (int m = 0; m < meridians; ++m) {
      const double ph = 2.0 * kPi * m / meridians;
      out.vertices.emplace_back(std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph),
                                std::cos(th));
    }
  }
  out.vertices.emplace_back(0, 0, -1);
  const auto south = static_cast<std::uint32_t>(out.vertices.size() - 1);
  auto ring = [&](int b, int m) {
    return static_cast<std::uint32_t>(1 + (b - 1) * meridians + (m % meridians));
  };
  for (int m = 0; m < meridians; ++m) out.faces.push_back({0, ring(1, m), ring(1, m + 1)});
  for (int b = 1; b + 1 < bands; ++b) {
    for (int m = 0; m < meridians; ++m) {
      out.faces.push_back({ring(b, m), ring(b + 1, m), ring(b + 1, m + 1)});
      out.faces.push_back({ring(b, m), ring(b + 1, m + 1), ring(b, m + 1)});
    }
  }
  for (int m = 0; m < meridians; ++m)
    out.faces.push_back({ring(bands - 1, m), south, ring(bands - 1, m + 1)});
  return out;
}

// Flips faces whose normal points towards the origin (the generators above are
// star-shaped around it).
void orient_outward(Polyhedron& ph) {
  for (auto& f : ph.faces) {
    const Vec3& a = ph.vertices[f[0]];
    const Vec3& b = ph.vertices[f[1]];
    const Vec3& c = ph.vertices[f[2]];
    if ((b - a).cross(c - a).dot(a + b + c) < 0.0) std::swap(f[1], f[2]);
  }
}

// SIGMA triangles first, then the metal as a GD_PLUS copy followed by an
// identical GD_MINUS copy.
SurfaceMesh tag_and_build(std::vector<Vec3> vertices, const std::vector<Face>& faces,
                          const std::vector<bool>& is_sigma) {
  std::vector<Triangle> tris;
  for (std::size_t i = 0; i < faces.size(); ++i)
    if (is_sigma[i]) tris.push_back({faces[i], Region::Sigma});
  for (Region r : {Region::GdPlus, Region::GdMinus})
    for (std::size_t i = 0; i < faces.size(); ++i)
      if (!is_sigma[i]) tris.push_back({faces[i], r});
  return SurfaceMesh(std::move(vertices), std::move(tris));
}

}  // namespace

SurfaceMesh generate_sphere(const SphereOptions& opts) {
  if (!(opts.radius > 0.0)) throw std::invalid_argument("sphere radius must be positive");
  if (opts.refinement < 0) throw std::invalid_argument("sphere refinement must be >= 0");
  const int nu = opts.refinement + 1;

  Polyhedron ph;
  switch (opts.base) {
    case SphereBase::Icosahedron: ph = subdivide(icosahedron(), nu); break;
    case SphereBase::Octahedron: ph = subdivide(octahedron(), nu); break;
    case SphereBase::CubeCross: ph = cube_cross(nu); break;
    case SphereBase::LatLong: ph = latlong(opts.refinement + 3, opts.refinement + 3); break;
  }
  for (auto& v : ph.vertices) v = opts.radius * v.normalized();
  orient_outward(ph);

  std::vector<bool> is_sigma(ph.faces.size(), true);
  if (opts.cap_latitude_deg) {
    const double cap = *opts.cap_latitude_deg * kPi / 180.0;
    for (std::size_t i = 0; i < ph.faces.size(); ++i) {
      const Vec3 c = ph.vertices[ph.faces[i][0]] + ph.vertices[ph.faces[i][1]] +
                     ph.vertices[ph.faces[i][2]];
      is_sigma[i] = std::asin(c.z() / c.norm()) > cap;
    }
  }
  return tag_and_build(std::move(ph.vertices), ph.faces, is_sigma);
}

SurfaceMesh generate_open_box(const BoxOptions& opts) {
  if (!(opts.dimensions.minCoeff() > 0.0) || !(opts.resolution > 0.0))
    throw std::invalid_argument("box dimensions and resolution must be positive");
  std::array<int, 3> cells{};
  for (int a = 0; a < 3; ++a) {
    cells[a] = static_cast<int>(std::lround(opts.dimensions[a] / opts.resolution));
    if (cells[a] < 2)
      throw std::invalid_argument("resolution too coarse: fewer than 2 elements across a face");
  }

  std::vector<Vec3> vertices;
  std::map<std::array<int, 3>, std::uint32_t> ids;
  auto vid = [&](const std::array<int, 3>& p) {
    auto it = ids.find(p);
    if (it != ids.end()) return it->second;
    Vec3 x;
    for (int a = 0; a < 3; ++a)
      x[a] = opts.dimensions[a] * (static_cast<double>(p[a]) / cells[a] - 0.5);
    vertices.push_back(x);
    auto id = static_cast<std::uint32_t>(vertices.size() - 1);
    ids.emplace(p, id);
    return id;
  };

  std::vector<Face> faces;
  std::vector<bool> is_sigma;
  const int open_axis = static_cast<int>(opts.open_axis);
  for (int axis = 0; axis < 3; ++axis) {
    for (int side = 0; side < 2; ++side) {
      const int u = (axis + 1) % 3, v = (axis + 2) % 3;
      const bool open = axis == open_axis && side == (opts.open_positive ? 1 : 0);
      for (int a = 0; a < cells[u]; ++a) {
        for (int b = 0; b < cells[v]; ++b) {
          auto corner = [&](int da, int db) {
            std::array<int, 3> p{};
            p[axis] = side * cells[axis];
            p[u] = a + da;
            p[v] = b + db;
            return vid(p);
          };
          Face f1{corner(0, 0), corner(1, 0), corner(1, 1)};
          Face f2{corner(0, 0), corner(1, 1), corner(0, 1)};
          if (side == 0) {
            std::swap(f1[1], f1[2]);
            std::swap(f2[1], f2[2]);
          }
          faces.push_back(f1);
          faces.push_back(f2);
          is_sigma.push_back(open);
          is_sigma.push_back(open);
        }
      }
    }
  }
  return tag_and_build(std::move(vertices), faces, is_sigma);
}

}  // namespace pecddm
