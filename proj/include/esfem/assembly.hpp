#pragma once

#include <functional>

#include "esfem/mesh.hpp"
#include "esfem/sparse.hpp"

namespace esfem {

// Basis values/gradients tabulated at the quadrature points of one rule.
struct QuadTable {
  QuadratureRule rule;
  Eigen::MatrixXd values;                  // n_q x n_loc
  std::vector<Eigen::MatrixXd> gradients;  // n_q entries, n_loc x dim
};

QuadTable make_quad_table(const ReferenceElement& ref, const QuadratureRule& rule);

// Default assembly exactness 2k+2: curved-element integrands are not
// polynomial, this keeps the consistency error below the h^{k+1} budget.
int default_quad_degree(int k);

QuadTable default_quad_table(const HighOrderMesh& mesh);

SparseSymMatrix assemble_mass(const HighOrderMesh& mesh, const QuadTable& table);
SparseSymMatrix assemble_stiffness(const HighOrderMesh& mesh, const QuadTable& table);

// Load vector with f evaluated at the lifted quadrature points on Gamma(t).
CoefVector assemble_load(const HighOrderMesh& mesh, const ManufacturedProblem& problem,
                         const QuadTable& table);

SparseSymMatrix assemble_mass(const HighOrderMesh& mesh);
SparseSymMatrix assemble_stiffness(const HighOrderMesh& mesh);
CoefVector assemble_load(const HighOrderMesh& mesh, const ManufacturedProblem& problem);

// Nodal interpolant: coefficient j = g(a_j(t), t).
CoefVector interpolate_nodal(const HighOrderMesh& mesh,
                             const std::function<double(const Vec3&, double)>& g, double t);

// Tangential gradient of the finite element function with local coefficients
// on one element: J (J^T J)^{-1} (G^T alpha_loc).
Vec3 tangential_gradient(const ElementFrame& frame, int dim,
                         const Eigen::MatrixXd& basis_gradients,
                         const Eigen::VectorXd& local_coefficients);

}  // namespace esfem
