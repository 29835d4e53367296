// SPDX-License-Identifier: Apache-2.0
// pecddm: PEC scattering with cavities by a DDM on a fictitious interface.

#include <cstdio>
#include <iostream>

#include <CLI11.hpp>

#include "pecddm/scenario.hpp"

using namespace pecddm;

namespace {

void print_result(const RunConfig& c, const RunResult& r) {
  std::printf("%s  f=%g MHz  %s  N_sigma=%lld N+=%lld N-=%lld\n", c.mesh.label().c_str(),
              c.frequency_mhz, to_string(c.variant), static_cast<long long>(r.n_interface),
              static_cast<long long>(r.n_plus), static_cast<long long>(r.n_minus));
  if (!r.error.empty()) {
    std::printf("  error: %s\n", r.error.c_str());
    return;
  }
  std::printf("  iterations=%d converged=%s final residual=%.3e transmission residual=%.3e\n",
              r.report.iterations, r.report.converged ? "yes" : "no",
              r.report.residual_history.empty() ? 0.0 : r.report.residual_history.back(),
              r.transmission_residual);
  std::printf("  build %.2fs  solve %.2fs  post %.2fs\n", r.seconds_build, r.seconds_solve,
              r.seconds_post);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Time-harmonic PEC scattering with cavities (BEM + domain decomposition)"};

  std::string config_path, preset_name, variant, inner, out_dir, mesh_path;
  std::optional<double> freq, tol, inner_tol;
  std::optional<int> max_iter, threads, restart;
  bool list = false, no_rcs = false, monolithic = false;

  app.add_option("--config", config_path, "INI configuration file")->check(CLI::ExistingFile);
  app.add_option("--preset", preset_name, "named scenario (see --list-presets)");
  app.add_flag("--list-presets", list, "print preset names and exit");
  app.add_option("--mesh", mesh_path, "mesh file (ddm-mesh format)");
  app.add_option("--variant", variant, "y0, y1, y2 or y3");
  app.add_option("--freq-mhz", freq, "frequency in MHz");
  app.add_option("--tol", tol, "GMRES relative residual tolerance");
  app.add_option("--max-iter", max_iter, "GMRES iteration cap");
  app.add_option("--restart", restart, "GMRES restart length (0: full GMRES)");
  app.add_option("--inner", inner, "inner shell solver: direct or gmres")
      ->check(CLI::IsMember({"direct", "gmres"}));
  app.add_option("--inner-tol", inner_tol, "inner GMRES tolerance");
  app.add_option("--threads", threads, "OpenMP threads");
  app.add_option("--out", out_dir, "output directory");
  app.add_flag("--no-rcs", no_rcs, "skip far-field post-processing");
  app.add_flag("--monolithic", monolithic, "also solve the EFIE without interface for comparison");

  CLI11_PARSE(app, argc, argv);

  if (list) {
    for (const auto& n : preset_names()) std::cout << n << '\n';
    return 0;
  }

  try {
    RunConfig c;
    if (!preset_name.empty()) c = preset(preset_name);
    if (!config_path.empty()) c = load_config(config_path, c);
    if (!mesh_path.empty()) {
      c.mesh.kind = MeshSource::Kind::File;
      c.mesh.path = mesh_path;
    }
    if (!variant.empty()) {
      c.variant = variant_from_string(variant);
      c.sweep.variants.clear();
    }
    if (freq) {
      c.frequency_mhz = *freq;
      c.sweep.frequencies_mhz.clear();
    }
    if (tol) c.tolerance = *tol;
    if (max_iter) c.max_iterations = *max_iter;
    if (restart) {
      if (*restart == 0) c.restart.reset();
      else c.restart = *restart;
    }
    if (inner == "direct") c.ddm.inner.kind = InnerSolverKind::Direct;
    if (inner == "gmres") c.ddm.inner.kind = InnerSolverKind::Gmres;
    if (inner_tol) c.ddm.inner.tolerance = *inner_tol;
    if (threads) c.threads = *threads;
    if (!out_dir.empty()) c.out_dir = out_dir;
    if (no_rcs) c.compute_rcs = false;
    if (monolithic) c.compute_monolithic = true;

    if (c.sweep.empty()) {
      const RunResult r = run_scenario(c);
      print_result(c, r);
      std::printf("  outputs in %s\n", c.out_dir.string().c_str());
      return r.exit_code;
    }
    const auto rows = run_sweep(c);
    int code = 0;
    for (const auto& row : rows) {
      std::printf("%-14s %-3s iterations=%4d %s\n", row.axis_value.c_str(), to_string(row.variant),
                  row.iterations, row.status.c_str());
      if (!row.converged) code = 1;
    }
    std::printf("sweep table in %s\n", (c.out_dir / "sweep.csv").string().c_str());
    return code;
  } catch (const InputError& e) {
    std::fprintf(stderr, "input error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "input error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
