#pragma once

#include <string>

#include "esfem/analysis.hpp"

namespace esfem {

enum class CouplingMode { HalveBoth, FixTauSweepH, FixHSweepTau };

// One convergence study. Level numbering follows the reported tables: for
// surfaces (m = 2) level 2 is the unrefined octahedron (18 dof at k = 2) and
// each level doubles the resolution; for curves (m = 1) level 1 is the
// once-refined square (16 dof at k = 2). tau_level = tau1 * 2^(1 - level).
struct ExperimentConfig {
  SurfaceKind surface = SurfaceKind::Sphere;
  int degree = 2;
  int bdf_order = 3;
  double tau1 = 0.2;
  int level_min = 2;
  int level_max = 6;
  double end_time = 1.0;
  CouplingMode mode = CouplingMode::HalveBoth;
  std::string out_dir = ".";
};

SurfaceKind parse_surface(const std::string& name);
std::string surface_name(SurfaceKind kind);

ExperimentConfig load_config(const std::string& path);

double level_tau(const ExperimentConfig& config, int level);

// base -> refine^r -> promote_order(k), with r per the level convention above.
HighOrderMesh build_level_mesh(SurfaceKind surface, int degree, int level);

std::vector<ErrorRecord> run_experiment(const ExperimentConfig& config);

// CSV schema: level,dof,h,tau,err_LinfL2,eoc_LinfL2,err_L2H1,eoc_L2H1 with
// empty EOC cells on the first row.
void write_csv(const std::string& path, const std::vector<ErrorRecord>& records);

struct SweepPoint {
  double abscissa;  // h or tau
  double l2_error;  // at t = T
  double h1_error;  // at t = T
};

std::vector<SweepPoint> run_sweep(const ExperimentConfig& config);

// One whitespace-separated data file plus a log-log reference-slope line file
// (slope k+1 for spatial sweeps, p for temporal ones).
void emit_convergence_data(const ExperimentConfig& config,
                           const std::vector<SweepPoint>& points);

}  // namespace esfem
