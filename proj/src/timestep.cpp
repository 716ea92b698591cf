#include "esfem/timestep.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace esfem {

std::vector<double> bdf_coefficients(int p) {
  if (p < 1 || p > 5) throw std::runtime_error("unsupported BDF order");
  std::vector<double> delta(p + 1, 0.0);
  // (1 - zeta)^l expanded with binomial coefficients.
  for (int l = 1; l <= p; ++l) {
    double binom = 1.0;
    for (int j = 0; j <= l; ++j) {
      delta[j] += (j % 2 == 0 ? 1.0 : -1.0) * binom / l;
      binom = binom * (l - j) / (j + 1);
    }
  }
  return delta;
}

CoefVector solve_spd(const SparseSymMatrix& matrix, const CoefVector& rhs, double rel_tol) {
  const int n = matrix.rows();
  const double rhs_norm = rhs.norm();
  CoefVector x = CoefVector::Zero(n);
  if (rhs_norm == 0.0) return x;

  CoefVector inv_diag = matrix.diagonal();
  for (int i = 0; i < n; ++i) {
    if (inv_diag[i] <= 0.0) throw std::runtime_error("solve_spd: nonpositive diagonal");
    inv_diag[i] = 1.0 / inv_diag[i];
  }

  CoefVector r = rhs;
  CoefVector z = inv_diag.cwiseProduct(r);
  CoefVector p = z;
  double rz = r.dot(z);
  const int max_iter = 10 * n;
  for (int it = 0; it < max_iter; ++it) {
    if (r.norm() <= rel_tol * rhs_norm) return x;
    const CoefVector ap = matrix.multiply(p);
    const double alpha = rz / p.dot(ap);
    x += alpha * p;
    r -= alpha * ap;
    z = inv_diag.cwiseProduct(r);
    const double rz_new = r.dot(z);
    p = z + (rz_new / rz) * p;
    rz = rz_new;
  }
  if (r.norm() <= rel_tol * rhs_norm) return x;
  throw std::runtime_error("solve_spd: CG did not converge, residual " +
                           std::to_string(r.norm() / rhs_norm));
}

void BdfState::push(double t, CoefVector alpha, CoefVector mass_alpha) {
  history.push_front({t, std::move(alpha), std::move(mass_alpha)});
  while (static_cast<int>(history.size()) > order) history.pop_back();
}

CoefVector bdf_step(BdfState& state, HighOrderMesh& mesh, const ManufacturedProblem& problem,
                    const QuadTable& table) {
  const int p = state.order;
  if (static_cast<int>(state.history.size()) < p)
    throw std::runtime_error("bdf_step: history not populated");
  const std::vector<double> delta = bdf_coefficients(p);
  const int n = state.step_index + 1;
  const double t = n * state.tau;

  advance_nodes(mesh, t);
  const SparseSymMatrix mass = assemble_mass(mesh, table);
  const SparseSymMatrix stiffness = assemble_stiffness(mesh, table);
  const CoefVector load = assemble_load(mesh, problem, table);

  CoefVector rhs = state.tau * load;
  for (int j = 1; j <= p; ++j) rhs -= delta[j] * state.history[j - 1].mass_alpha;

  // System matrix delta_0 M(t_n) + tau A(t_n), kept in one CSR structure.
  SparseBuilder builder(mass.rows());
  for (int i = 0; i < mass.rows(); ++i)
    for (int k = mass.row_ptr()[i]; k < mass.row_ptr()[i + 1]; ++k)
      builder.add(i, mass.col_idx()[k], delta[0] * mass.values()[k]);
  for (int i = 0; i < stiffness.rows(); ++i)
    for (int k = stiffness.row_ptr()[i]; k < stiffness.row_ptr()[i + 1]; ++k)
      builder.add(i, stiffness.col_idx()[k], state.tau * stiffness.values()[k]);
  const SparseSymMatrix system = builder.build();

  CoefVector alpha = solve_spd(system, rhs, state.cg_tol);
  state.step_index = n;
  state.push(t, alpha, mass.multiply(alpha));
  return alpha;
}

std::vector<TrajectoryPoint> run_simulation(HighOrderMesh& mesh,
                                            const ManufacturedProblem& problem, int p,
                                            double tau, double T, double cg_tol) {
  const double steps_real = T / tau;
  const int num_steps = static_cast<int>(std::llround(steps_real));
  if (std::abs(steps_real - num_steps) > 1e-9)
    throw std::runtime_error("run_simulation: T must be an integer multiple of tau");

  std::vector<TrajectoryPoint> trajectory;
  advance_nodes(mesh, 0.0);
  trajectory.push_back({0.0, interpolate_nodal(mesh, problem.u, 0.0)});
  if (num_steps == 0) return trajectory;
  if (num_steps < p) throw std::runtime_error("run_simulation: fewer steps than BDF order");

  const QuadTable table = default_quad_table(mesh);

  BdfState state;
  state.order = p;
  state.tau = tau;
  state.cg_tol = cg_tol;

  // Exact-interpolation starting values t_0 .. t_{p-1}, oldest pushed first.
  for (int i = 0; i < p; ++i) {
    const double t = i * tau;
    advance_nodes(mesh, t);
    CoefVector alpha = i == 0 ? trajectory[0].alpha : interpolate_nodal(mesh, problem.u, t);
    const SparseSymMatrix mass = assemble_mass(mesh, table);
    state.push(t, alpha, mass.multiply(alpha));
    if (i > 0) trajectory.push_back({t, std::move(alpha)});
  }

  state.step_index = p - 1;
  for (int n = p; n <= num_steps; ++n) {
    CoefVector alpha = bdf_step(state, mesh, problem, table);
    trajectory.push_back({n * tau, std::move(alpha)});
  }
  return trajectory;
}

}  // namespace esfem
