// SPDX-License-Identifier: Apache-2.0

#include "pecddm/mesh.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "edge_key.hpp"

namespace pecddm {

const char* to_string(Region r) {
  switch (r) {
    case Region::GdPlus: return "GDP";
    case Region::GdMinus: return "GDM";
    case Region::Sigma: return "SIG";
  }
  return "?";
}

namespace {

constexpr double kMinArea = 1e-14;

Region region_from_tag(const std::string& tag, std::size_t line) {
  if (tag == "GDP") return Region::GdPlus;
  if (tag == "GDM") return Region::GdMinus;
  if (tag == "SIG") return Region::Sigma;
  throw MeshError("line " + std::to_string(line) + ": unknown region tag '" + tag + "'");
}

}  // namespace

SurfaceMesh::SurfaceMesh(std::vector<Vec3> vertices, std::vector<Triangle> triangles)
    : vertices_(std::move(vertices)), triangles_(std::move(triangles)) {
  if (triangles_.empty()) throw MeshError("mesh has no triangles");

  areas_.resize(triangles_.size());
  normals_.resize(triangles_.size());
  for (std::size_t t = 0; t < triangles_.size(); ++t) {
    for (auto v : triangles_[t].v) {
      if (v >= vertices_.size())
        throw MeshError("triangle " + std::to_string(t) + " references missing vertex " +
                        std::to_string(v));
    }
    const Vec3& a = vertices_[triangles_[t].v[0]];
    const Vec3& b = vertices_[triangles_[t].v[1]];
    const Vec3& c = vertices_[triangles_[t].v[2]];
    const Vec3 cr = (b - a).cross(c - a);
    const double twice_area = cr.norm();
    areas_[t] = 0.5 * twice_area;
    if (areas_[t] <= kMinArea) throw MeshError("degenerate triangle " + std::to_string(t));
    normals_[t] = cr / twice_area;
  }

  validate_shell(shell(Side::Plus), "plus");
  validate_shell(shell(Side::Minus), "minus");
}

Vec3 SurfaceMesh::centroid(std::uint32_t t) const {
  return (vertex(t, 0) + vertex(t, 1) + vertex(t, 2)) / 3.0;
}

std::vector<std::uint32_t> SurfaceMesh::region_triangles(Region r) const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t t = 0; t < triangles_.size(); ++t)
    if (triangles_[t].region == r) out.push_back(t);
  return out;
}

std::vector<std::uint32_t> SurfaceMesh::shell(Side side) const {
  auto out = region_triangles(Region::Sigma);
  const auto gd = region_triangles(side == Side::Plus ? Region::GdPlus : Region::GdMinus);
  out.insert(out.end(), gd.begin(), gd.end());
  return out;
}

bool SurfaceMesh::has_sigma() const {
  return std::any_of(triangles_.begin(), triangles_.end(),
                     [](const Triangle& t) { return t.region == Region::Sigma; });
}

void SurfaceMesh::validate_shell(const std::vector<std::uint32_t>& tris, const char* name) const {
  if (tris.empty()) return;

  struct EdgeUse {
    int count = 0;
    int forward = 0;  // traversals from the smaller to the larger vertex index
  };
  std::unordered_map<std::uint64_t, EdgeUse> edges;
  edges.reserve(tris.size() * 2);
  for (auto t : tris) {
    const auto& v = triangles_[t].v;
    for (int e = 0; e < 3; ++e) {
      const auto a = v[(e + 1) % 3];
      const auto b = v[(e + 2) % 3];
      auto& use = edges[detail::edge_key(a, b)];
      ++use.count;
      if (a < b) ++use.forward;
    }
  }
  for (const auto& [key, use] : edges) {
    if (use.count == 1)
      throw MeshError(std::string(name) + " shell not closed (boundary edge " +
                      std::to_string(key >> 32) + "-" + std::to_string(key & 0xffffffffu) + ")");
    if (use.count > 2)
      throw MeshError(std::string(name) + " shell is non-manifold (edge shared by " +
                      std::to_string(use.count) + " triangles)");
    if (use.forward != 1)
      throw MeshError(std::string(name) + " shell has inconsistent orientation");
  }
  if (signed_volume(*this, tris) <= 0.0)
    throw MeshError(std::string(name) + " shell has inconsistent orientation (inward normals)");
}

double signed_volume(const SurfaceMesh& mesh, const std::vector<std::uint32_t>& tris) {
  double vol = 0.0;
  for (auto t : tris) vol += mesh.vertex(t, 0).dot(mesh.vertex(t, 1).cross(mesh.vertex(t, 2)));
  return vol / 6.0;
}

int euler_characteristic(const SurfaceMesh& mesh, const std::vector<std::uint32_t>& tris) {
  std::unordered_set<std::uint32_t> verts;
  std::unordered_set<std::uint64_t> edges;
  for (auto t : tris) {
    const auto& v = mesh.triangles()[t].v;
    for (int e = 0; e < 3; ++e) {
      verts.insert(v[e]);
      edges.insert(detail::edge_key(v[(e + 1) % 3], v[(e + 2) % 3]));
    }
  }
  return static_cast<int>(verts.size()) - static_cast<int>(edges.size()) +
         static_cast<int>(tris.size());
}

SurfaceMesh parse_mesh(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  std::size_t line_no = 0;

  // Returns the next non-empty line with comments stripped.
  auto next_line = [&](std::string& out) {
    while (std::getline(in, raw)) {
      ++line_no;
      if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
      if (raw.find_first_not_of(" \t\r") == std::string::npos) continue;
      out = raw;
      return true;
    }
    return false;
  };
  auto fail = [&](const std::string& what) -> MeshError {
    return MeshError("parse error at line " + std::to_string(line_no) + ": " + what);
  };

  std::string line;
  if (!next_line(line)) throw MeshError("parse error: empty mesh file");
  {
    std::istringstream ls(line);
    std::string magic;
    int version = 0;
    if (!(ls >> magic >> version) || magic != "ddm-mesh" || version != 1)
      throw fail("expected header 'ddm-mesh 1'");
  }

  auto read_count = [&](const char* keyword) {
    if (!next_line(line)) throw fail(std::string("missing '") + keyword + "' section");
    std::istringstream ls(line);
    std::string kw;
    long long n = -1;
    if (!(ls >> kw >> n) || kw != keyword || n < 0)
      throw fail(std::string("expected '") + keyword + " <count>'");
    return static_cast<std::size_t>(n);
  };

  const std::size_t nv = read_count("vertices");
  std::vector<Vec3> vertices(nv);
  for (std::size_t i = 0; i < nv; ++i) {
    if (!next_line(line)) throw fail("unexpected end of vertex list");
    std::istringstream ls(line);
    if (!(ls >> vertices[i].x() >> vertices[i].y() >> vertices[i].z()))
      throw fail("malformed vertex");
  }

  const std::size_t nt = read_count("triangles");
  std::vector<Triangle> triangles(nt);
  for (std::size_t i = 0; i < nt; ++i) {
    if (!next_line(line)) throw fail("unexpected end of triangle list");
    std::istringstream ls(line);
    long long a = -1, b = -1, c = -1;
    std::string tag;
    if (!(ls >> a >> b >> c >> tag)) throw fail("malformed triangle");
    if (a < 0 || b < 0 || c < 0 || std::max({a, b, c}) >= static_cast<long long>(nv))
      throw fail("vertex index out of range");
    triangles[i].v = {static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b),
                      static_cast<std::uint32_t>(c)};
    triangles[i].region = region_from_tag(tag, line_no);
  }
  return SurfaceMesh(std::move(vertices), std::move(triangles));
}

SurfaceMesh load_mesh(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw MeshError("cannot open mesh file " + path.string());
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_mesh(ss.str());
}

std::string format_mesh(const SurfaceMesh& mesh) {
  std::ostringstream out;
  out << "ddm-mesh 1\n";
  out << "vertices " << mesh.vertices().size() << "\n";
  out << std::setprecision(17);
  for (const auto& v : mesh.vertices()) out << v.x() << ' ' << v.y() << ' ' << v.z() << "\n";
  out << "triangles " << mesh.triangles().size() << "\n";
  for (const auto& t : mesh.triangles())
    out << t.v[0] << ' ' << t.v[1] << ' ' << t.v[2] << ' ' << to_string(t.region) << "\n";
  return out.str();
}

void save_mesh(const SurfaceMesh& mesh, const std::filesystem::path& path) {
  std::ofstream f(path);
  if (!f) throw MeshError("cannot write mesh file " + path.string());
  f << format_mesh(mesh);
}

}  // namespace pecddm
