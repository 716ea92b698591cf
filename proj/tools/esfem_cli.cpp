#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <iostream>

#include "esfem/experiment.hpp"

namespace {

struct CommonFlags {
  std::string config_path;
  std::string surface;
  int degree = -1;
  int bdf = -1;
  std::string levels;
  double tau1 = -1.0;
  double tend = -1.0;
  std::string out;
};

void add_common_flags(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--config", flags.config_path, "key=value configuration file");
  cmd->add_option("--surface", flags.surface, "sphere | ellipsoid | circle | ellipse");
  cmd->add_option("--degree", flags.degree, "element degree k (1..4)");
  cmd->add_option("--bdf", flags.bdf, "BDF order p (1..5)");
  cmd->add_option("--levels", flags.levels, "level range a..b");
  cmd->add_option("--tau1", flags.tau1, "base time step");
  cmd->add_option("--tend", flags.tend, "end time T");
  cmd->add_option("--out", flags.out, "output directory");
}

esfem::ExperimentConfig resolve_config(const CommonFlags& flags) {
  esfem::ExperimentConfig config;
  if (!flags.config_path.empty()) config = esfem::load_config(flags.config_path);
  if (!flags.surface.empty()) config.surface = esfem::parse_surface(flags.surface);
  if (flags.degree > 0) config.degree = flags.degree;
  if (flags.bdf > 0) config.bdf_order = flags.bdf;
  if (flags.tau1 > 0) config.tau1 = flags.tau1;
  if (flags.tend >= 0) config.end_time = flags.tend;
  if (!flags.out.empty()) config.out_dir = flags.out;
  if (!flags.levels.empty()) {
    const auto sep = flags.levels.find("..");
    if (sep == std::string::npos) throw std::runtime_error("--levels expects a..b");
    config.level_min = std::stoi(flags.levels.substr(0, sep));
    config.level_max = std::stoi(flags.levels.substr(sep + 2));
  }
  std::filesystem::create_directories(config.out_dir);
  return config;
}

int cmd_run(const CommonFlags& flags) {
  esfem::ExperimentConfig config = resolve_config(flags);
  config.mode = esfem::CouplingMode::HalveBoth;
  const auto records = esfem::run_experiment(config);
  const std::string path = config.out_dir + "/table_" +
                           esfem::surface_name(config.surface) + "_k" +
                           std::to_string(config.degree) + "_p" +
                           std::to_string(config.bdf_order) + ".csv";
  esfem::write_csv(path, records);
  std::printf("%-6s %-8s %-12s %-12s %-13s %-8s %-13s %-8s\n", "level", "dof", "h", "tau",
              "LinfL2", "EOC", "L2H1", "EOC");
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    std::printf("%-6d %-8d %-12.4e %-12.4e %-13.4e ", r.level, r.dof, r.h, r.tau,
                r.err_linf_l2);
    if (i > 0)
      std::printf("%-8.4f ",
                  std::log(records[i - 1].err_linf_l2 / r.err_linf_l2) / std::log(2.0));
    else
      std::printf("%-8s ", "-");
    std::printf("%-13.4e ", r.err_l2_h1);
    if (i > 0)
      std::printf("%-8.4f\n",
                  std::log(records[i - 1].err_l2_h1 / r.err_l2_h1) / std::log(2.0));
    else
      std::printf("%-8s\n", "-");
  }
  std::printf("wrote %s\n", path.c_str());
  return 0;
}

int cmd_sweep(const CommonFlags& flags, const std::string& mode) {
  esfem::ExperimentConfig config = resolve_config(flags);
  config.mode = mode == "temporal" ? esfem::CouplingMode::FixHSweepTau
                                   : esfem::CouplingMode::FixTauSweepH;
  const auto points = esfem::run_sweep(config);
  esfem::emit_convergence_data(config, points);
  for (const auto& p : points)
    std::printf("%.6e %.6e %.6e\n", p.abscissa, p.l2_error, p.h1_error);
  return 0;
}

int cmd_diagnose(const CommonFlags& flags) {
  esfem::ExperimentConfig config = resolve_config(flags);
  std::printf("%-6s %-8s %-12s %-14s %-14s\n", "level", "dof", "t", "max_dist",
              "area_err");
  for (int level = config.level_min; level <= config.level_max; ++level) {
    esfem::HighOrderMesh mesh =
        esfem::build_level_mesh(config.surface, config.degree, level);
    for (double t : {0.0, 0.25 * config.end_time, 0.5 * config.end_time, config.end_time}) {
      esfem::advance_nodes(mesh, t);
      const auto diag = esfem::geometric_diagnostics(mesh, t);
      std::printf("%-6d %-8d %-12.4f %-14.6e %-14.6e\n", level, mesh.num_nodes(), t,
                  diag.max_distance, diag.area_error);
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"High-order evolving surface FEM convergence experiments"};
  app.require_subcommand(1);

  CommonFlags run_flags, sweep_flags, diag_flags;
  std::string sweep_mode = "spatial";

  CLI::App* run = app.add_subcommand("run", "refinement/step-halving table experiment");
  add_common_flags(run, run_flags);
  CLI::App* sweep = app.add_subcommand("sweep", "error-vs-h or error-vs-tau figure data");
  add_common_flags(sweep, sweep_flags);
  sweep->add_option("--mode", sweep_mode, "spatial | temporal");
  CLI::App* diagnose = app.add_subcommand("diagnose", "geometric diagnostics table");
  add_common_flags(diagnose, diag_flags);

  CLI11_PARSE(app, argc, argv);
  try {
    if (run->parsed()) return cmd_run(run_flags);
    if (sweep->parsed()) return cmd_sweep(sweep_flags, sweep_mode);
    if (diagnose->parsed()) return cmd_diagnose(diag_flags);
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return 1;
  }
  return 1;
}
