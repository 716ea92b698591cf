#include "esfem/analysis.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace esfem {

ErrorPair error_norms(const HighOrderMesh& mesh, const CoefVector& alpha,
                      const ManufacturedProblem& problem, double t, const QuadTable& table) {
  if (std::abs(mesh.current_time - t) > 1e-14)
    throw std::runtime_error("error_norms: mesh not advanced to t");
  const int n_loc = mesh.n_loc();
  const int nq = static_cast<int>(table.rule.points.size());
  double l2_sq = 0.0;
  double h1_sq = 0.0;
  Eigen::VectorXd local(n_loc);
  for (int e = 0; e < mesh.num_elements(); ++e) {
    const auto& conn = mesh.connectivity[e];
    for (int i = 0; i < n_loc; ++i) local[i] = alpha[conn[i]];
    for (int q = 0; q < nq; ++q) {
      const ElementFrame frame =
          element_frame(mesh, e, table.values.row(q), table.gradients[q]);
      const double w = table.rule.weights[q] * frame.measure;
      const Vec3 lifted = closest_point(mesh.surface, frame.x, t);
      const SolutionSample exact = exact_solution_eval(problem, lifted, t);
      const double diff = table.values.row(q).dot(local) - exact.value;
      l2_sq += w * diff * diff;
      const Vec3 grad_diff =
          tangential_gradient(frame, mesh.dim, table.gradients[q], local) -
          exact.surface_gradient;
      h1_sq += w * grad_diff.squaredNorm();
    }
  }
  return {std::sqrt(l2_sq), std::sqrt(h1_sq)};
}

ErrorPair error_norms(const HighOrderMesh& mesh, const CoefVector& alpha,
                      const ManufacturedProblem& problem, double t) {
  return error_norms(mesh, alpha, problem, t, default_quad_table(mesh));
}

CompositeNorms composite_norms(const std::vector<TrajectoryPoint>& trajectory,
                               HighOrderMesh& mesh, const ManufacturedProblem& problem) {
  if (trajectory.size() < 2)
    throw std::runtime_error("composite_norms: trajectory has no steps past t = 0");
  const double tau = trajectory[1].t - trajectory[0].t;
  const QuadTable table = default_quad_table(mesh);
  double linf_l2 = 0.0;
  double sum_h1_sq = 0.0;
  for (std::size_t n = 1; n < trajectory.size(); ++n) {
    advance_nodes(mesh, trajectory[n].t);
    const ErrorPair errs =
        error_norms(mesh, trajectory[n].alpha, problem, trajectory[n].t, table);
    linf_l2 = std::max(linf_l2, errs.l2);
    sum_h1_sq += errs.h1_semi * errs.h1_semi;
  }
  return {linf_l2, std::sqrt(tau * sum_h1_sq)};
}

std::vector<double> eoc(const std::vector<double>& errors) {
  std::vector<double> rates;
  for (std::size_t k = 1; k < errors.size(); ++k) {
    if (errors[k] <= 0.0 || errors[k - 1] <= 0.0)
      throw std::runtime_error("EOC undefined");
    rates.push_back(std::log(errors[k - 1] / errors[k]) / std::log(2.0));
  }
  return rates;
}

GeometricDiagnostics geometric_diagnostics(const HighOrderMesh& mesh, double t) {
  if (std::abs(mesh.current_time - t) > 1e-14)
    throw std::runtime_error("geometric_diagnostics: mesh not advanced to t");
  const QuadTable table = default_quad_table(mesh);
  const int nq = static_cast<int>(table.rule.points.size());
  double max_distance = 0.0;
  double area = 0.0;
  for (int e = 0; e < mesh.num_elements(); ++e) {
    for (int q = 0; q < nq; ++q) {
      const ElementFrame frame =
          element_frame(mesh, e, table.values.row(q), table.gradients[q]);
      max_distance =
          std::max(max_distance, std::abs(signed_distance(mesh.surface, frame.x, t)));
      area += table.rule.weights[q] * frame.measure;
    }
  }
  GeometricDiagnostics out;
  out.max_distance = max_distance;
  out.area_error = mesh.surface.has_known_area()
                       ? std::abs(area - mesh.surface.exact_area())
                       : std::numeric_limits<double>::quiet_NaN();
  return out;
}

}  // namespace esfem
