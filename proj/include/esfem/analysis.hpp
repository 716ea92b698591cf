#pragma once

#include "esfem/timestep.hpp"

namespace esfem {

struct ErrorRecord {
  int level = 0;
  int dof = 0;
  double h = 0.0;
  double tau = 0.0;
  double err_linf_l2 = 0.0;
  double err_l2_h1 = 0.0;
};

struct ErrorPair {
  double l2;
  double h1_semi;
};

// Errors of the discrete solution against the exact solution evaluated at the
// lifted quadrature points, integrated with the discrete surface measure.
ErrorPair error_norms(const HighOrderMesh& mesh, const CoefVector& alpha,
                      const ManufacturedProblem& problem, double t);
ErrorPair error_norms(const HighOrderMesh& mesh, const CoefVector& alpha,
                      const ManufacturedProblem& problem, double t, const QuadTable& table);

struct CompositeNorms {
  double linf_l2;
  double l2_h1;
};

// max_{n>=1} ||e(t_n)||_L2 and (tau sum_{n>=1} |e(t_n)|_H1^2)^{1/2}; the n = 0
// term is excluded from both.
CompositeNorms composite_norms(const std::vector<TrajectoryPoint>& trajectory,
                               HighOrderMesh& mesh, const ManufacturedProblem& problem);

// EOC_k = ln(e_{k-1}/e_k)/ln 2 for consecutive factor-2 refinements.
std::vector<double> eoc(const std::vector<double>& errors);

struct GeometricDiagnostics {
  double max_distance;  // max |signed distance| over quadrature points
  double area_error;    // NaN when the exact area is unknown
};

GeometricDiagnostics geometric_diagnostics(const HighOrderMesh& mesh, double t);

}  // namespace esfem
