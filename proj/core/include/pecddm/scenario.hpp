// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "pecddm/ddm.hpp"
#include "pecddm/mesh.hpp"
#include "pecddm/postprocess.hpp"

namespace pecddm {

struct MeshSource {
  enum class Kind { File, Sphere, OpenBox };
  Kind kind = Kind::Sphere;
  std::filesystem::path path;
  SphereOptions sphere;
  BoxOptions box;

  std::string label() const;
};

struct SweepSpec {
  std::vector<double> frequencies_mhz;
  std::vector<DdmVariant> variants;
  std::vector<int> refinements;  // generated sphere meshes only
  bool empty() const { return frequencies_mhz.empty() && variants.empty() && refinements.empty(); }
};

struct RunConfig {
  std::string name = "custom";
  MeshSource mesh;
  double frequency_mhz = 68.0;
  DdmVariant variant = DdmVariant::Y2;
  double tolerance = 1e-6;
  int max_iterations = 500;
  std::optional<int> restart;
  DdmOptions ddm;
  // Incidence: the wave arrives from (theta, phi), polarized along theta-hat
  // or phi-hat there.
  double inc_theta_deg = 180.0;
  double inc_phi_deg = 0.0;
  bool theta_polarized = true;
  bool compute_rcs = true;
  bool compute_monolithic = false;
  double rcs_phi_deg = 0.0;
  double rcs_step_deg = 2.0;
  int threads = 0;  // 0: runtime default
  std::filesystem::path out_dir = "out";
  SweepSpec sweep;

  void validate() const;
};

// Names: artificial-sphere-168, sphere-3072-sweep, open-box-102, hollow-sphere-family.
RunConfig preset(const std::string& name);
std::vector<std::string> preset_names();

// INI-style file; keys absent from the file keep the values already in `base`.
RunConfig load_config(const std::filesystem::path& path, RunConfig base = {});

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunResult {
  int exit_code = 0;
  std::string error;
  Index n_interface = 0;
  Index n_plus = 0;
  Index n_minus = 0;
  SolveReport report;
  double transmission_residual = 0.0;
  std::optional<double> shell_rcond;
  std::vector<Direction> directions;
  std::vector<double> rcs;
  std::vector<double> rcs_monolithic;
  double seconds_build = 0.0;
  double seconds_solve = 0.0;
  double seconds_post = 0.0;
};

/// Builds and solves one configuration and writes residuals.csv, rcs.csv and
/// run.json into config.out_dir. Throws InputError (before touching the
/// output directory) when the mesh cannot be loaded; solver failures are
/// reported through exit_code 1 and run.json.
RunResult run_scenario(const RunConfig& config);

struct SweepRow {
  std::string axis_value;
  DdmVariant variant = DdmVariant::Y0;
  int iterations = 0;
  bool converged = false;
  std::string status;  // "ok", "not-converged" or the error text
  RunResult result;
};

/// Runs the cartesian product of the sweep axes, one build per mesh and
/// frequency, and writes sweep.csv plus one sub-directory per run.
std::vector<SweepRow> run_sweep(const RunConfig& config);

std::shared_ptr<const SurfaceMesh> make_mesh(const MeshSource& src);

}  // namespace pecddm
