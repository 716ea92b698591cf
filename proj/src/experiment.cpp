#include "esfem/experiment.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace esfem {

SurfaceKind parse_surface(const std::string& name) {
  if (name == "sphere") return SurfaceKind::Sphere;
  if (name == "ellipsoid") return SurfaceKind::OscillatingEllipsoid;
  if (name == "circle") return SurfaceKind::Circle;
  if (name == "ellipse") return SurfaceKind::OscillatingEllipse;
  throw std::runtime_error("unknown surface: " + name);
}

std::string surface_name(SurfaceKind kind) {
  switch (kind) {
    case SurfaceKind::Sphere: return "sphere";
    case SurfaceKind::OscillatingEllipsoid: return "ellipsoid";
    case SurfaceKind::Circle: return "circle";
    default: return "ellipse";
  }
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path);
  ExperimentConfig config;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "surface") config.surface = parse_surface(value);
    else if (key == "degree") config.degree = std::stoi(value);
    else if (key == "bdf") config.bdf_order = std::stoi(value);
    else if (key == "tau1") config.tau1 = std::stod(value);
    else if (key == "level_min") config.level_min = std::stoi(value);
    else if (key == "level_max") config.level_max = std::stoi(value);
    else if (key == "tend") config.end_time = std::stod(value);
    else if (key == "out") config.out_dir = value;
    else if (key == "mode") {
      if (value == "halve-both") config.mode = CouplingMode::HalveBoth;
      else if (value == "fix-tau-sweep-h") config.mode = CouplingMode::FixTauSweepH;
      else if (value == "fix-h-sweep-tau") config.mode = CouplingMode::FixHSweepTau;
      else throw std::runtime_error("unknown mode: " + value);
    } else if (!key.empty()) {
      throw std::runtime_error("unknown config key: " + key);
    }
  }
  return config;
}

double level_tau(const ExperimentConfig& config, int level) {
  return config.tau1 * std::pow(2.0, 1 - level);
}

HighOrderMesh build_level_mesh(SurfaceKind surface, int degree, int level) {
  const LevelSetSurface s = make_surface(surface);
  const int refinements = s.dim() == 2 ? level - 2 : level;
  if (refinements < 0) throw std::runtime_error("level below the coarsest mesh");
  HighOrderMesh mesh = base_mesh(s);
  for (int r = 0; r < refinements; ++r) mesh = refine(mesh);
  return promote_order(mesh, degree);
}

std::vector<ErrorRecord> run_experiment(const ExperimentConfig& config) {
  std::vector<ErrorRecord> records;
  for (int level = config.level_min; level <= config.level_max; ++level) {
    HighOrderMesh mesh = build_level_mesh(config.surface, config.degree, level);
    const ManufacturedProblem problem =
        ManufacturedProblem::decaying_product(mesh.surface, config.end_time);
    const double tau = level_tau(config, level);
    ErrorRecord record;
    record.level = level;
    record.dof = mesh.num_nodes();
    record.h = mesh.mesh_width();
    record.tau = tau;
    const auto trajectory =
        run_simulation(mesh, problem, config.bdf_order, tau, config.end_time);
    const CompositeNorms norms = composite_norms(trajectory, mesh, problem);
    record.err_linf_l2 = norms.linf_l2;
    record.err_l2_h1 = norms.l2_h1;
    records.push_back(record);
  }
  return records;
}

void write_csv(const std::string& path, const std::vector<ErrorRecord>& records) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << "level,dof,h,tau,err_LinfL2,eoc_LinfL2,err_L2H1,eoc_L2H1\n";
  out.precision(10);
  out << std::scientific;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const ErrorRecord& r = records[i];
    out << r.level << ',' << r.dof << ',' << r.h << ',' << r.tau << ',' << r.err_linf_l2
        << ',';
    if (i > 0)
      out << std::log(records[i - 1].err_linf_l2 / r.err_linf_l2) / std::log(2.0);
    out << ',' << r.err_l2_h1 << ',';
    if (i > 0) out << std::log(records[i - 1].err_l2_h1 / r.err_l2_h1) / std::log(2.0);
    out << '\n';
  }
}

namespace {

ErrorPair final_time_errors(HighOrderMesh& mesh, const ManufacturedProblem& problem,
                            const std::vector<TrajectoryPoint>& trajectory) {
  const TrajectoryPoint& last = trajectory.back();
  advance_nodes(mesh, last.t);
  return error_norms(mesh, last.alpha, problem, last.t);
}

}  // namespace

std::vector<SweepPoint> run_sweep(const ExperimentConfig& config) {
  std::vector<SweepPoint> points;
  if (config.mode == CouplingMode::FixTauSweepH) {
    const double tau = level_tau(config, config.level_max) / 4.0;
    for (int level = config.level_min; level <= config.level_max; ++level) {
      HighOrderMesh mesh = build_level_mesh(config.surface, config.degree, level);
      const ManufacturedProblem problem =
          ManufacturedProblem::decaying_product(mesh.surface, config.end_time);
      const auto trajectory =
          run_simulation(mesh, problem, config.bdf_order, tau, config.end_time);
      const ErrorPair errs = final_time_errors(mesh, problem, trajectory);
      points.push_back({mesh.mesh_width(), errs.l2, errs.h1_semi});
    }
  } else if (config.mode == CouplingMode::FixHSweepTau) {
    for (int level = config.level_min; level <= config.level_max; ++level) {
      HighOrderMesh mesh = build_level_mesh(config.surface, config.degree, config.level_max);
      const ManufacturedProblem problem =
          ManufacturedProblem::decaying_product(mesh.surface, config.end_time);
      const double tau = level_tau(config, level);
      const auto trajectory =
          run_simulation(mesh, problem, config.bdf_order, tau, config.end_time);
      const ErrorPair errs = final_time_errors(mesh, problem, trajectory);
      points.push_back({tau, errs.l2, errs.h1_semi});
    }
  } else {
    throw std::runtime_error("run_sweep needs a sweep coupling mode");
  }
  return points;
}

void emit_convergence_data(const ExperimentConfig& config,
                           const std::vector<SweepPoint>& points) {
  const bool spatial = config.mode == CouplingMode::FixTauSweepH;
  const std::string stem =
      config.out_dir + "/sweep_" + (spatial ? "spatial" : "temporal") + "_" +
      surface_name(config.surface);
  std::ofstream data(stem + ".dat");
  if (!data) throw std::runtime_error("cannot open " + stem + ".dat");
  data.precision(10);
  data << std::scientific;
  for (const SweepPoint& p : points)
    data << p.abscissa << ' ' << p.l2_error << ' ' << p.h1_error << '\n';

  std::ofstream ref(stem + "_ref.dat");
  ref.precision(10);
  ref << std::scientific;
  if (!points.empty()) {
    const int slope = spatial ? config.degree + 1 : config.bdf_order;
    const SweepPoint& anchor = points.back();
    const SweepPoint& first = points.front();
    ref << anchor.abscissa << ' ' << anchor.l2_error << '\n'
        << first.abscissa << ' '
        << anchor.l2_error * std::pow(first.abscissa / anchor.abscissa, slope) << '\n';
  }
}

}  // namespace esfem
