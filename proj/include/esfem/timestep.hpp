#pragma once

#include <deque>
#include <vector>

#include "esfem/assembly.hpp"

namespace esfem {

// Coefficients (delta_0, ..., delta_p) of the generating polynomial
// delta(zeta) = sum_{l=1..p} (1 - zeta)^l / l.
std::vector<double> bdf_coefficients(int p);

// Jacobi-preconditioned conjugate gradients; throws on non-convergence with
// the final residual in the message.
CoefVector solve_spd(const SparseSymMatrix& matrix, const CoefVector& rhs, double rel_tol);

struct BdfHistoryEntry {
  double t;
  CoefVector alpha;
  CoefVector mass_alpha;  // M(t) alpha, with M at the entry's own time
};

// p-step BDF state for d/dt(M(t) alpha) + A(t) alpha = b(t).
struct BdfState {
  int order = 3;
  double tau = 0.1;
  double cg_tol = 1e-10;
  std::deque<BdfHistoryEntry> history;  // most recent first
  int step_index = 0;                   // n of the latest accepted level

  void push(double t, CoefVector alpha, CoefVector mass_alpha);
};

// One BDF step to t_n = (state.step_index + 1) * tau: advances the mesh,
// assembles, solves (delta_0 M + tau A) alpha_n = -sum_j delta_j (M alpha)_{n-j}
// + tau b(t_n), and pushes the new level into the history.
CoefVector bdf_step(BdfState& state, HighOrderMesh& mesh, const ManufacturedProblem& problem,
                    const QuadTable& table);

struct TrajectoryPoint {
  double t;
  CoefVector alpha;
};

// Full run over [0, T], T = N tau. Starting values are nodal interpolants of
// the exact solution at t_0 .. t_{p-1}.
std::vector<TrajectoryPoint> run_simulation(HighOrderMesh& mesh,
                                            const ManufacturedProblem& problem, int p,
                                            double tau, double T, double cg_tol = 1e-10);

}  // namespace esfem
