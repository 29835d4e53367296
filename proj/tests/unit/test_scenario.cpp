// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "pecddm/scenario.hpp"
#include "support.hpp"

using namespace pecddm;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string first_line(const fs::path& p) {
  std::ifstream f(p);
  std::string line;
  std::getline(f, line);
  return line;
}

std::size_t line_count(const fs::path& p) {
  std::ifstream f(p);
  std::size_t n = 0;
  for (std::string line; std::getline(f, line);) ++n;
  return n;
}

RunConfig small_sphere(const fs::path& out) {
  RunConfig c;
  c.mesh.kind = MeshSource::Kind::Sphere;
  c.mesh.sphere.radius = 0.5;
  c.mesh.sphere.refinement = 1;
  c.mesh.sphere.base = SphereBase::LatLong;
  c.frequency_mhz = 68.0;
  c.rcs_step_deg = 10.0;
  c.out_dir = out;
  return c;
}

}  // namespace

TEST_CASE("presets") {
  const auto names = preset_names();
  CHECK(names.size() == 4);
  for (const auto& n : names) {
    CAPTURE(n);
    const auto c = preset(n);
    CHECK_NOTHROW(c.validate());
    CHECK(c.out_dir == fs::path("out") / n);
  }
  const auto a = preset("artificial-sphere-168");
  CHECK(a.frequency_mhz == 68.0);
  CHECK(a.tolerance == 1e-6);
  CHECK(a.mesh.label() == "latlong-r5");
  const auto b = preset("open-box-102");
  CHECK(b.frequency_mhz == 100.0);
  CHECK(b.compute_monolithic);
  CHECK_FALSE(b.restart.has_value());
  const auto s = preset("sphere-3072-sweep");
  CHECK(s.sweep.frequencies_mhz.size() == 8);
  CHECK(s.sweep.frequencies_mhz.front() == 50.0);
  CHECK(s.sweep.frequencies_mhz.back() == 360.0);
  const auto h = preset("hollow-sphere-family");
  CHECK(h.sweep.variants.size() == 4);
  CHECK(h.mesh.label() == "hollow12");
  CHECK_THROWS_AS(preset("no-such-preset"), InputError);
}

TEST_CASE("config validation") {
  RunConfig c;
  CHECK_NOTHROW(c.validate());
  c.tolerance = 1.5;
  CHECK_THROWS_AS(c.validate(), InputError);
  c = RunConfig{};
  c.frequency_mhz = 0.0;
  CHECK_THROWS_AS(c.validate(), InputError);
  c = RunConfig{};
  c.restart = 0;
  CHECK_THROWS_AS(c.validate(), InputError);
  c = RunConfig{};
  c.mesh.kind = MeshSource::Kind::OpenBox;
  c.sweep.refinements = {1, 2};
  CHECK_THROWS_AS(c.validate(), InputError);
}

TEST_CASE("INI configuration files") {
  TempDir dir("pecddm_config_test");
  {
    std::ofstream f(dir.path / "run.ini");
    f << "name = trial\n"
         "[mesh]\nsource = box\nbox_dimensions = 2, 1, 1\nopen_face = -z\nresolution = 0.25\n"
         "[solver]\nvariant = y3\nfrequency_mhz = 120\ntolerance = 1e-7\nrestart = 30\ninner = gmres\n"
         "mass_solver = cholesky\n"
         "[excitation]\ntheta_deg = 45\nphi_deg = 10\npolarization = phi\n"
         "[output]\ndir = results\nrcs = false\nrcs_step_deg = 5\n"
         "[sweep]\nfrequencies_mhz = 100, 150\nvariants = y0 y2\n";
  }
  const auto c = load_config(dir.path / "run.ini");
  CHECK(c.name == "trial");
  CHECK(c.mesh.kind == MeshSource::Kind::OpenBox);
  CHECK(c.mesh.box.dimensions == Vec3(2, 1, 1));
  CHECK(c.mesh.box.open_axis == Axis::Z);
  CHECK_FALSE(c.mesh.box.open_positive);
  CHECK(c.variant == DdmVariant::Y3);
  CHECK(c.frequency_mhz == 120.0);
  CHECK(c.tolerance == 1e-7);
  CHECK(c.restart == 30);
  CHECK(c.ddm.inner.kind == InnerSolverKind::Gmres);
  CHECK(c.ddm.mass_solver == MassSolverKind::Cholesky);
  CHECK(c.inc_theta_deg == 45.0);
  CHECK_FALSE(c.theta_polarized);
  CHECK(c.out_dir == "results");
  CHECK_FALSE(c.compute_rcs);
  CHECK(c.sweep.frequencies_mhz == std::vector<double>{100.0, 150.0});
  CHECK(c.sweep.variants == std::vector<DdmVariant>{DdmVariant::Y0, DdmVariant::Y2});

  // keys absent from the file keep the base values
  {
    std::ofstream f(dir.path / "partial.ini");
    f << "[solver]\ntolerance = 1e-9\n";
  }
  const auto p = load_config(dir.path / "partial.ini", preset("open-box-102"));
  CHECK(p.tolerance == 1e-9);
  CHECK(p.frequency_mhz == 100.0);

  auto bad = [&](const std::string& text) {
    std::ofstream(dir.path / "bad.ini") << text;
    return load_config(dir.path / "bad.ini");
  };
  CHECK_THROWS_AS(bad("[solver]\nvariant = y7\n"), InputError);
  CHECK_THROWS_AS(bad("[solver]\ntolerance = abc\n"), InputError);
  CHECK_THROWS_AS(bad("[mesh]\nsource = cylinder\n"), InputError);
  CHECK_THROWS_AS(bad("[mesh]\nopen_face = up\n"), InputError);
  CHECK_THROWS_AS(bad("[output]\nrcs = maybe\n"), InputError);
  CHECK_THROWS_AS(bad("[solver\n"), InputError);
  CHECK_THROWS_AS(load_config(dir.path / "absent.ini"), InputError);
}

TEST_CASE("missing mesh file is an input error and leaves no outputs") {
  TempDir dir("pecddm_missing_mesh");
  RunConfig c;
  c.mesh.kind = MeshSource::Kind::File;
  c.mesh.path = dir.path / "nothing.txt";
  c.out_dir = dir.path / "out";
  CHECK_THROWS_WITH_AS(run_scenario(c), doctest::Contains("mesh file not found"), InputError);
  CHECK_FALSE(fs::exists(c.out_dir));
  CHECK_THROWS_AS(run_sweep(c), InputError);
  CHECK_FALSE(fs::exists(c.out_dir));

  std::ofstream(dir.path / "broken.txt") << "ddm-mesh 1\nvertices 1\n0 0 0\ntriangles 0\n";
  c.mesh.path = dir.path / "broken.txt";
  CHECK_THROWS_AS(run_scenario(c), InputError);
  CHECK_FALSE(fs::exists(c.out_dir));
}

TEST_CASE("a run writes residuals, RCS and a summary") {
  TempDir dir("pecddm_run_test");
  auto c = small_sphere(dir.path / "run");
  c.compute_monolithic = true;
  const auto r = run_scenario(c);
  CHECK(r.exit_code == 0);
  CHECK(r.report.converged);
  CHECK(r.n_interface == r.n_plus);
  CHECK(first_line(c.out_dir / "residuals.csv") == "iteration,relative_residual");
  CHECK(line_count(c.out_dir / "residuals.csv") == static_cast<std::size_t>(r.report.iterations + 2));
  CHECK(first_line(c.out_dir / "rcs.csv") == "theta_deg,phi_deg,rcs_dbsm");
  CHECK(line_count(c.out_dir / "rcs.csv") == 20);
  CHECK(fs::exists(c.out_dir / "rcs_monolithic.csv"));

  std::ifstream f(c.out_dir / "run.json");
  const auto j = nlohmann::json::parse(f);
  CHECK(j["status"] == "ok");
  CHECK(j["iterations"] == r.report.iterations);
  CHECK(j["converged"] == true);
  CHECK(j["dofs"]["interface"] == r.n_interface);
  CHECK(j.contains("transmission_residual"));
  CHECK(j.contains("residual_definition"));
  CHECK(j["config"]["frequency_mhz"] == 68.0);
}

TEST_CASE("non-convergence is reported through the exit code") {
  TempDir dir("pecddm_nonconv_test");
  auto c = small_sphere(dir.path / "run");
  c.mesh.kind = MeshSource::Kind::OpenBox;
  c.mesh.box.resolution = 0.25;
  c.variant = DdmVariant::Y0;
  c.max_iterations = 2;
  c.compute_rcs = false;
  const auto r = run_scenario(c);
  CHECK(r.exit_code == 1);
  CHECK_FALSE(r.report.converged);
  std::ifstream f(c.out_dir / "run.json");
  CHECK(nlohmann::json::parse(f)["status"] == "not-converged");
}

TEST_CASE("sweeps write one row per run") {
  TempDir dir("pecddm_sweep_test");
  auto c = small_sphere(dir.path / "sweep");
  c.compute_rcs = false;
  c.sweep.frequencies_mhz = {50.0, 80.0};
  c.sweep.variants = {DdmVariant::Y0, DdmVariant::Y2};
  const auto rows = run_sweep(c);
  REQUIRE(rows.size() == 4);
  for (const auto& row : rows) {
    CHECK(row.converged);
    CHECK(row.status == "ok");
  }
  CHECK(rows[1].axis_value == "50");
  CHECK(first_line(c.out_dir / "sweep.csv") == "frequency_mhz,variant,iterations,converged,status");
  CHECK(line_count(c.out_dir / "sweep.csv") == 5);
  CHECK(fs::exists(c.out_dir / "latlong-r1_80MHz_y2" / "run.json"));

  auto m = small_sphere(dir.path / "mesh-sweep");
  m.compute_rcs = false;
  m.sweep.refinements = {0, 1};
  const auto mr = run_sweep(m);
  REQUIRE(mr.size() == 2);
  CHECK(mr[0].axis_value == "latlong-r0");
  CHECK(first_line(m.out_dir / "sweep.csv").rfind("mesh,", 0) == 0);
}

TEST_CASE("file meshes run like generated ones") {
  TempDir dir("pecddm_file_mesh");
  auto c = small_sphere(dir.path / "gen");
  c.compute_rcs = false;
  const auto gen = run_scenario(c);
  save_mesh(*make_mesh(c.mesh), dir.path / "sphere.txt");
  c.mesh.kind = MeshSource::Kind::File;
  c.mesh.path = dir.path / "sphere.txt";
  c.out_dir = dir.path / "file";
  CHECK(c.mesh.label() == "sphere");
  const auto file = run_scenario(c);
  CHECK(file.report.iterations == gen.report.iterations);
  CHECK(file.n_interface == gen.n_interface);
}
