// SPDX-License-Identifier: Apache-2.0

#include "pecddm/scenario.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <json.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace pecddm {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

const char* kResidualDefinition =
    "relative residual of the GMRES least-squares problem: |P(b - Ax)|/|Pb| for left "
    "preconditioner P (y1: T_sigma, y2: M^-1 T_sigma), |b - A M^-1 T_sigma y|/|b| for y3, "
    "|b - Ax|/|b| for y0";

std::string format_double(double v) {
  std::ostringstream s;
  s << std::setprecision(15) << v;
  return s.str();
}

const char* to_string(MeshSource::Kind k) {
  switch (k) {
    case MeshSource::Kind::File: return "file";
    case MeshSource::Kind::Sphere: return "sphere";
    case MeshSource::Kind::OpenBox: return "box";
  }
  return "?";
}

const char* axis_name(Axis a) { return a == Axis::X ? "x" : a == Axis::Y ? "y" : "z"; }

nlohmann::json config_json(const RunConfig& c) {
  nlohmann::json j;
  j["name"] = c.name;
  auto& m = j["mesh"];
  m["source"] = to_string(c.mesh.kind);
  m["label"] = c.mesh.label();
  switch (c.mesh.kind) {
    case MeshSource::Kind::File: m["path"] = c.mesh.path.string(); break;
    case MeshSource::Kind::Sphere:
      m["radius"] = c.mesh.sphere.radius;
      m["refinement"] = c.mesh.sphere.refinement;
      m["base"] = to_string(c.mesh.sphere.base);
      if (c.mesh.sphere.cap_latitude_deg) m["cap_latitude_deg"] = *c.mesh.sphere.cap_latitude_deg;
      break;
    case MeshSource::Kind::OpenBox:
      m["dimensions"] = {c.mesh.box.dimensions.x(), c.mesh.box.dimensions.y(),
                         c.mesh.box.dimensions.z()};
      m["open_face"] = std::string(c.mesh.box.open_positive ? "+" : "-") + axis_name(c.mesh.box.open_axis);
      m["resolution"] = c.mesh.box.resolution;
      break;
  }
  j["frequency_mhz"] = c.frequency_mhz;
  j["variant"] = to_string(c.variant);
  j["tolerance"] = c.tolerance;
  j["max_iterations"] = c.max_iterations;
  j["restart"] = c.restart ? nlohmann::json(*c.restart) : nlohmann::json(nullptr);
  j["inner"] = {{"solver", c.ddm.inner.kind == InnerSolverKind::Direct ? "direct" : "gmres"},
                {"tolerance", c.ddm.inner.tolerance},
                {"max_iterations", c.ddm.inner.max_iterations},
                {"resonance_rcond", c.ddm.inner.resonance_rcond}};
  j["mass_solver"] = c.ddm.mass_solver == MassSolverKind::Cholesky ? "cholesky" : "cg";
  j["quadrature"] = {{"regular_points", c.ddm.quad.regular_points},
                     {"singular_order", c.ddm.quad.singular_order},
                     {"near_factor", c.ddm.quad.near_factor},
                     {"near_order", c.ddm.quad.near_order},
                     {"load_order", c.ddm.quad.load_order}};
  j["excitation"] = {{"theta_deg", c.inc_theta_deg},
                     {"phi_deg", c.inc_phi_deg},
                     {"polarization", c.theta_polarized ? "theta" : "phi"}};
  j["output"] = {{"rcs", c.compute_rcs},
                 {"monolithic", c.compute_monolithic},
                 {"rcs_phi_deg", c.rcs_phi_deg},
                 {"rcs_step_deg", c.rcs_step_deg}};
  j["threads"] = c.threads;
  return j;
}

void write_residuals(const std::filesystem::path& dir, const SolveReport& r) {
  std::ofstream f(dir / "residuals.csv");
  f << "iteration,relative_residual\n";
  for (std::size_t i = 0; i < r.residual_history.size(); ++i)
    f << i << ',' << format_double(r.residual_history[i]) << '\n';
}

void write_rcs(const std::filesystem::path& file, const std::vector<Direction>& dirs,
               const std::vector<double>& rcs) {
  std::ofstream f(file);
  f << "theta_deg,phi_deg,rcs_dbsm\n";
  for (std::size_t i = 0; i < dirs.size(); ++i)
    f << format_double(dirs[i].theta_deg) << ',' << format_double(dirs[i].phi_deg) << ','
      << format_double(rcs[i]) << '\n';
}

void write_run_json(const std::filesystem::path& dir, const RunConfig& c, const RunResult& r) {
  nlohmann::json j;
  j["config"] = config_json(c);
  j["status"] = r.exit_code == 0 ? "ok" : (r.error.empty() ? "not-converged" : "error");
  if (!r.error.empty()) j["error"] = r.error;
  j["dofs"] = {{"interface", r.n_interface}, {"plus_shell", r.n_plus}, {"minus_shell", r.n_minus}};
  j["iterations"] = r.report.iterations;
  j["converged"] = r.report.converged;
  j["final_relative_residual"] =
      r.report.residual_history.empty() ? 0.0 : r.report.residual_history.back();
  j["residual_definition"] = kResidualDefinition;
  j["transmission_residual"] = r.transmission_residual;
  if (r.shell_rcond) j["shell_rcond"] = *r.shell_rcond;
  j["timings_seconds"] = {{"build", r.seconds_build}, {"solve", r.seconds_solve},
                          {"postprocess", r.seconds_post}};
  std::ofstream f(dir / "run.json");
  f << j.dump(2) << '\n';
}

PlaneWave make_wave(const RunConfig& c) {
  return PlaneWave::from_angles(c.inc_theta_deg, c.inc_phi_deg, c.theta_polarized,
                                WaveContext::from_frequency(c.frequency_mhz * 1e6));
}

// Solves the system for the configured variant and runs the post-processing.
RunResult solve_built(const DdmSystem& sys, const RunConfig& c) {
  RunResult r;
  const auto& maps = sys.maps();
  r.n_interface = maps.n();
  r.n_plus = maps.plus->dof_count();
  r.n_minus = maps.minus->dof_count();
  r.shell_rcond = sys.a_plus().shell().rcond();

  auto t0 = Clock::now();
  GmresConfig g;
  g.tolerance = c.tolerance;
  g.max_iterations = c.max_iterations;
  g.restart = c.restart;
  DdmSolution sol = solve(sys, g);
  r.report = sol.report;
  r.seconds_solve = seconds_since(t0);

  t0 = Clock::now();
  const Traces tr = recover_traces(sys, sol.e_tan);
  r.transmission_residual = tr.transmission_residual;
  if (c.compute_rcs) {
    r.directions = bistatic_cut(c.rcs_phi_deg, c.rcs_step_deg);
    std::vector<Vec3> dirs;
    for (const auto& d : r.directions) dirs.push_back(unit_vector(d));
    const WaveContext& ctx = sys.wave().context();
    const std::vector<SurfaceCurrent> currents{
        {maps.plus, tr.plus_current, CurrentKind::Electric, 1.0},
        {maps.plus, maps.extend(sol.e_tan.values, Side::Plus), CurrentKind::Magnetic,
         SurfaceMesh::normal_sign(Side::Plus)},
        {maps.plus, sys.short_cut().shell_current, CurrentKind::Electric, 1.0}};
    r.rcs = rcs_dbsm(far_field(currents, ctx, dirs, c.ddm.quad));
    if (c.compute_monolithic) {
      const auto mono = monolithic_efie(scatterer_space(maps.mesh), sys.wave(), c.ddm.quad);
      r.rcs_monolithic = rcs_dbsm(far_field(
          {{mono.space, mono.current, CurrentKind::Electric, 1.0}}, ctx, dirs, c.ddm.quad));
    }
  }
  r.seconds_post = seconds_since(t0);
  r.exit_code = r.report.converged ? 0 : 1;
  return r;
}

void write_outputs(const std::filesystem::path& dir, const RunConfig& c, const RunResult& r) {
  std::filesystem::create_directories(dir);
  write_residuals(dir, r.report);
  if (!r.rcs.empty()) write_rcs(dir / "rcs.csv", r.directions, r.rcs);
  if (!r.rcs_monolithic.empty()) write_rcs(dir / "rcs_monolithic.csv", r.directions, r.rcs_monolithic);
  write_run_json(dir, c, r);
}

void apply_threads(int threads) {
#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#else
  (void)threads;
#endif
}

}  // namespace

std::string MeshSource::label() const {
  switch (kind) {
    case Kind::File: return path.stem().string();
    case Kind::OpenBox: return "open-box";
    case Kind::Sphere:
      if (sphere.cap_latitude_deg && sphere.base == SphereBase::CubeCross)
        return "hollow" + std::to_string(sphere.refinement + 1);
      return std::string(to_string(sphere.base)) + "-r" + std::to_string(sphere.refinement);
  }
  return "?";
}

void RunConfig::validate() const {
  if (!(frequency_mhz > 0.0)) throw InputError("frequency must be positive");
  if (!(tolerance > 0.0 && tolerance < 1.0)) throw InputError("tolerance must lie in (0, 1)");
  if (max_iterations < 1) throw InputError("max iterations must be >= 1");
  if (restart && *restart < 1) throw InputError("restart must be >= 1");
  for (double f : sweep.frequencies_mhz)
    if (!(f > 0.0)) throw InputError("sweep frequencies must be positive");
  if (!sweep.refinements.empty() && mesh.kind != MeshSource::Kind::Sphere)
    throw InputError("a refinement sweep needs a generated sphere mesh");
}

std::vector<std::string> preset_names() {
  return {"artificial-sphere-168", "sphere-3072-sweep", "open-box-102", "hollow-sphere-family"};
}

RunConfig preset(const std::string& name) {
  RunConfig c;
  c.name = name;
  if (name == "artificial-sphere-168") {
    // 8 meridians x 8 bands: 168 edges on a sphere of diameter 1 m.
    c.mesh.kind = MeshSource::Kind::Sphere;
    c.mesh.sphere = {0.5, 5, std::nullopt, SphereBase::LatLong};
    c.frequency_mhz = 68.0;
    c.tolerance = 1e-6;
  } else if (name == "sphere-3072-sweep") {
    c.mesh.kind = MeshSource::Kind::Sphere;
    c.mesh.sphere = {0.5, 15, std::nullopt, SphereBase::Octahedron};
    c.tolerance = 1e-5;
    c.max_iterations = 1000;
    c.compute_rcs = false;
    c.sweep.frequencies_mhz = {50, 68, 100, 150, 200, 250, 300, 360};
    c.sweep.variants = {DdmVariant::Y0, DdmVariant::Y2};
  } else if (name == "open-box-102") {
    c.mesh.kind = MeshSource::Kind::OpenBox;
    c.frequency_mhz = 100.0;
    c.tolerance = 1e-6;
    c.max_iterations = 1000;
    c.compute_monolithic = true;
    c.inc_theta_deg = 90.0;  // broadside on the opening
    c.inc_phi_deg = 0.0;
    c.rcs_phi_deg = 0.0;
    c.rcs_step_deg = 2.0;
  } else if (name == "hollow-sphere-family") {
    c.mesh.kind = MeshSource::Kind::Sphere;
    c.mesh.sphere = {1.0, 11, 45.0, SphereBase::CubeCross};
    c.frequency_mhz = 400.0;
    c.tolerance = 1e-4;
    c.max_iterations = 500;
    c.compute_rcs = false;
    c.sweep.refinements = {11, 14};
    c.sweep.variants = {DdmVariant::Y0, DdmVariant::Y1, DdmVariant::Y2, DdmVariant::Y3};
  } else {
    std::string known;
    for (const auto& n : preset_names()) known += " " + n;
    throw InputError("unknown preset '" + name + "' (known:" + known + ")");
  }
  c.out_dir = "out/" + name;
  return c;
}

namespace {

template <class T>
std::vector<T> parse_list(const std::string& s) {
  std::vector<T> out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) {
    if (tok.back() == ',') tok.pop_back();
    if (tok.empty()) continue;
    if constexpr (std::is_same_v<T, DdmVariant>) out.push_back(variant_from_string(tok));
    else {
      std::istringstream ts(tok);
      T v{};
      if (!(ts >> v)) throw InputError("cannot parse list entry '" + tok + "'");
      out.push_back(v);
    }
  }
  return out;
}

bool parse_bool(const std::string& s) {
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  throw InputError("cannot parse boolean '" + s + "'");
}

}  // namespace

RunConfig load_config(const std::filesystem::path& path, RunConfig c) {
  boost::property_tree::ptree pt;
  try {
    boost::property_tree::ini_parser::read_ini(path.string(), pt);
  } catch (const std::exception& e) {
    throw InputError(std::string("cannot read config: ") + e.what());
  }
  auto get = [&](const char* key) { return pt.get_optional<std::string>(key); };
  try {
    if (auto v = get("name")) c.name = *v;
    if (auto v = get("mesh.source")) {
      if (*v == "file") c.mesh.kind = MeshSource::Kind::File;
      else if (*v == "sphere") c.mesh.kind = MeshSource::Kind::Sphere;
      else if (*v == "box") c.mesh.kind = MeshSource::Kind::OpenBox;
      else throw InputError("mesh.source must be file, sphere or box");
    }
    if (auto v = get("mesh.path")) {
      std::filesystem::path p = *v;
      c.mesh.path = p.is_relative() ? path.parent_path() / p : p;
    }
    if (auto v = get("mesh.radius")) c.mesh.sphere.radius = std::stod(*v);
    if (auto v = get("mesh.refinement")) c.mesh.sphere.refinement = std::stoi(*v);
    if (auto v = get("mesh.base")) c.mesh.sphere.base = sphere_base_from_string(*v);
    if (auto v = get("mesh.cap_latitude_deg")) {
      if (*v == "none") c.mesh.sphere.cap_latitude_deg.reset();
      else c.mesh.sphere.cap_latitude_deg = std::stod(*v);
    }
    if (auto v = get("mesh.box_dimensions")) {
      auto d = parse_list<double>(*v);
      if (d.size() != 3) throw InputError("mesh.box_dimensions needs three lengths");
      c.mesh.box.dimensions = Vec3(d[0], d[1], d[2]);
    }
    if (auto v = get("mesh.open_face")) {
      if (v->size() != 2 || (v->at(0) != '+' && v->at(0) != '-') ||
          std::string("xyz").find(v->at(1)) == std::string::npos)
        throw InputError("mesh.open_face must look like +x or -z");
      c.mesh.box.open_positive = v->at(0) == '+';
      c.mesh.box.open_axis = static_cast<Axis>(std::string("xyz").find(v->at(1)));
    }
    if (auto v = get("mesh.resolution")) c.mesh.box.resolution = std::stod(*v);

    if (auto v = get("solver.variant")) c.variant = variant_from_string(*v);
    if (auto v = get("solver.frequency_mhz")) c.frequency_mhz = std::stod(*v);
    if (auto v = get("solver.tolerance")) c.tolerance = std::stod(*v);
    if (auto v = get("solver.max_iterations")) c.max_iterations = std::stoi(*v);
    if (auto v = get("solver.restart")) {
      if (*v == "none" || *v == "0") c.restart.reset();
      else c.restart = std::stoi(*v);
    }
    if (auto v = get("solver.inner")) {
      if (*v == "direct") c.ddm.inner.kind = InnerSolverKind::Direct;
      else if (*v == "gmres") c.ddm.inner.kind = InnerSolverKind::Gmres;
      else throw InputError("solver.inner must be direct or gmres");
    }
    if (auto v = get("solver.inner_tolerance")) c.ddm.inner.tolerance = std::stod(*v);
    if (auto v = get("solver.resonance_rcond")) c.ddm.inner.resonance_rcond = std::stod(*v);
    if (auto v = get("solver.mass_solver")) {
      if (*v == "cg") c.ddm.mass_solver = MassSolverKind::ConjugateGradient;
      else if (*v == "cholesky") c.ddm.mass_solver = MassSolverKind::Cholesky;
      else throw InputError("solver.mass_solver must be cg or cholesky");
    }
    if (auto v = get("solver.threads")) c.threads = std::stoi(*v);

    if (auto v = get("quadrature.regular_points")) c.ddm.quad.regular_points = std::stoi(*v);
    if (auto v = get("quadrature.singular_order")) c.ddm.quad.singular_order = std::stoi(*v);
    if (auto v = get("quadrature.near_factor")) c.ddm.quad.near_factor = std::stod(*v);
    if (auto v = get("quadrature.near_order")) c.ddm.quad.near_order = std::stoi(*v);
    if (auto v = get("quadrature.load_order")) c.ddm.quad.load_order = std::stoi(*v);

    if (auto v = get("excitation.theta_deg")) c.inc_theta_deg = std::stod(*v);
    if (auto v = get("excitation.phi_deg")) c.inc_phi_deg = std::stod(*v);
    if (auto v = get("excitation.polarization")) {
      if (*v != "theta" && *v != "phi") throw InputError("excitation.polarization must be theta or phi");
      c.theta_polarized = *v == "theta";
    }

    if (auto v = get("output.dir")) c.out_dir = *v;
    if (auto v = get("output.rcs")) c.compute_rcs = parse_bool(*v);
    if (auto v = get("output.monolithic")) c.compute_monolithic = parse_bool(*v);
    if (auto v = get("output.rcs_phi_deg")) c.rcs_phi_deg = std::stod(*v);
    if (auto v = get("output.rcs_step_deg")) c.rcs_step_deg = std::stod(*v);

    if (auto v = get("sweep.frequencies_mhz")) c.sweep.frequencies_mhz = parse_list<double>(*v);
    if (auto v = get("sweep.variants")) c.sweep.variants = parse_list<DdmVariant>(*v);
    if (auto v = get("sweep.refinements")) c.sweep.refinements = parse_list<int>(*v);
  } catch (const InputError&) {
    throw;
  } catch (const std::exception& e) {
    throw InputError(std::string("invalid config value: ") + e.what());
  }
  return c;
}

std::shared_ptr<const SurfaceMesh> make_mesh(const MeshSource& src) {
  try {
    switch (src.kind) {
      case MeshSource::Kind::File:
        if (!std::filesystem::exists(src.path))
          throw InputError("mesh file not found: " + src.path.string());
        return std::make_shared<SurfaceMesh>(load_mesh(src.path));
      case MeshSource::Kind::Sphere: return std::make_shared<SurfaceMesh>(generate_sphere(src.sphere));
      case MeshSource::Kind::OpenBox: return std::make_shared<SurfaceMesh>(generate_open_box(src.box));
    }
  } catch (const InputError&) {
    throw;
  } catch (const std::exception& e) {
    throw InputError(std::string("mesh: ") + e.what());
  }
  throw InputError("unknown mesh source");
}

RunResult run_scenario(const RunConfig& config) {
  config.validate();
  apply_threads(config.threads);
  const auto mesh = make_mesh(config.mesh);

  RunResult r;
  auto t0 = Clock::now();
  try {
    auto maps = std::make_shared<const InterfaceMaps>(build_spaces(mesh));
    auto sys = build_system(maps, make_wave(config), config.variant, config.ddm);
    const double build = seconds_since(t0);
    r = solve_built(*sys, config);
    r.seconds_build = build;
  } catch (const MeshError& e) {
    throw InputError(std::string("mesh: ") + e.what());
  } catch (const std::exception& e) {
    r.exit_code = 1;
    r.error = e.what();
    r.seconds_build = seconds_since(t0);
  }
  write_outputs(config.out_dir, config, r);
  return r;
}

std::vector<SweepRow> run_sweep(const RunConfig& config) {
  config.validate();
  apply_threads(config.threads);

  std::vector<int> refinements = config.sweep.refinements;
  if (refinements.empty()) refinements.push_back(config.mesh.sphere.refinement);
  std::vector<double> freqs = config.sweep.frequencies_mhz;
  if (freqs.empty()) freqs.push_back(config.frequency_mhz);
  std::vector<DdmVariant> variants = config.sweep.variants;
  if (variants.empty()) variants.push_back(config.variant);

  const bool mesh_axis = !config.sweep.refinements.empty();
  const bool freq_axis = !config.sweep.frequencies_mhz.empty();
  const std::string axis = mesh_axis ? "mesh" : freq_axis ? "frequency_mhz" : "variant";

  // Mesh inputs are checked up front so that bad input leaves no outputs.
  std::vector<std::shared_ptr<const SurfaceMesh>> meshes;
  for (int ref : refinements) {
    MeshSource src = config.mesh;
    if (mesh_axis) src.sphere.refinement = ref;
    meshes.push_back(make_mesh(src));
  }

  std::filesystem::create_directories(config.out_dir);
  std::vector<SweepRow> rows;
  for (std::size_t mi = 0; mi < refinements.size(); ++mi) {
    RunConfig base = config;
    if (mesh_axis) base.mesh.sphere.refinement = refinements[mi];
    std::shared_ptr<const InterfaceMaps> maps;
    for (double f : freqs) {
      base.frequency_mhz = f;
      std::unique_ptr<DdmSystem> sys;
      std::string build_error;
      double build_seconds = 0.0;
      auto t0 = Clock::now();
      try {
        if (!maps) maps = std::make_shared<const InterfaceMaps>(build_spaces(meshes[mi]));
        sys = build_system(maps, make_wave(base), variants.front(), base.ddm);
      } catch (const std::exception& e) {
        build_error = e.what();
      }
      build_seconds = seconds_since(t0);
      for (DdmVariant v : variants) {
        RunConfig rc = base;
        rc.variant = v;
        SweepRow row;
        row.variant = v;
        row.axis_value = axis == "mesh" ? rc.mesh.label()
                         : axis == "frequency_mhz" ? format_double(f)
                                                   : std::string(to_string(v));
        std::string sub = rc.mesh.label() + "_" + format_double(f) + "MHz_" + to_string(v);
        rc.out_dir = config.out_dir / sub;
        if (sys) {
          try {
            sys->set_variant(v);
            row.result = solve_built(*sys, rc);
          } catch (const std::exception& e) {
            row.result.exit_code = 1;
            row.result.error = e.what();
          }
        } else {
          row.result.exit_code = 1;
          row.result.error = build_error;
        }
        row.result.seconds_build = build_seconds;
        row.iterations = row.result.report.iterations;
        row.converged = row.result.report.converged;
        row.status = !row.result.error.empty() ? row.result.error
                     : row.converged           ? "ok"
                                               : "not-converged";
        write_outputs(rc.out_dir, rc, row.result);
        rows.push_back(std::move(row));
      }
    }
  }

  std::ofstream f(config.out_dir / "sweep.csv");
  f << axis << ",variant,iterations,converged,status\n";
  for (const auto& r : rows) {
    std::string status = r.status;
    for (auto& ch : status)
      if (ch == ',' || ch == '\n') ch = ';';
    f << r.axis_value << ',' << to_string(r.variant) << ',' << r.iterations << ','
      << (r.converged ? "true" : "false") << ',' << status << '\n';
  }
  return rows;
}

}  // namespace pecddm
