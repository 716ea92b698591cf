#include "esfem/assembly.hpp"

namespace esfem {

QuadTable make_quad_table(const ReferenceElement& ref, const QuadratureRule& rule) {
  QuadTable table;
  table.rule = rule;
  const int nq = static_cast<int>(rule.points.size());
  table.values.resize(nq, ref.n_loc());
  table.gradients.resize(nq);
  Eigen::VectorXd values;
  Eigen::MatrixXd gradients;
  for (int q = 0; q < nq; ++q) {
    ref.eval(rule.points[q], values, gradients);
    table.values.row(q) = values.transpose();
    table.gradients[q] = gradients;
  }
  return table;
}

int default_quad_degree(int k) { return 2 * k + 2; }

QuadTable default_quad_table(const HighOrderMesh& mesh) {
  return make_quad_table(*mesh.ref, simplex_rule(mesh.dim, default_quad_degree(mesh.degree)));
}

SparseSymMatrix assemble_mass(const HighOrderMesh& mesh, const QuadTable& table) {
  const int n_loc = mesh.n_loc();
  const int nq = static_cast<int>(table.rule.points.size());
  SparseBuilder builder(mesh.num_nodes());
  Eigen::MatrixXd local(n_loc, n_loc);
  for (int e = 0; e < mesh.num_elements(); ++e) {
    local.setZero();
    for (int q = 0; q < nq; ++q) {
      const ElementFrame frame =
          element_frame(mesh, e, table.values.row(q), table.gradients[q]);
      const double w = table.rule.weights[q] * frame.measure;
      local.noalias() += w * table.values.row(q).transpose() * table.values.row(q);
    }
    // Symmetrize to make M == M^T bitwise.
    local = 0.5 * (local + local.transpose()).eval();
    const auto& conn = mesh.connectivity[e];
    for (int i = 0; i < n_loc; ++i)
      for (int j = 0; j < n_loc; ++j) builder.add(conn[i], conn[j], local(i, j));
  }
  return builder.build();
}

SparseSymMatrix assemble_stiffness(const HighOrderMesh& mesh, const QuadTable& table) {
  const int n_loc = mesh.n_loc();
  const int nq = static_cast<int>(table.rule.points.size());
  const int m = mesh.dim;
  SparseBuilder builder(mesh.num_nodes());
  Eigen::MatrixXd local(n_loc, n_loc);
  for (int e = 0; e < mesh.num_elements(); ++e) {
    local.setZero();
    for (int q = 0; q < nq; ++q) {
      const ElementFrame frame =
          element_frame(mesh, e, table.values.row(q), table.gradients[q]);
      const double w = table.rule.weights[q] * frame.measure;
      // Tangential gradients: rows of G (J^T J)^{-1} J^T are grad_Gh(basis_i).
      const auto jac = frame.jacobian.leftCols(m);
      const Eigen::MatrixXd gram_inv =
          (jac.transpose() * jac).inverse();
      const Eigen::MatrixXd tangential =
          table.gradients[q] * gram_inv * jac.transpose();  // n_loc x 3
      local.noalias() += w * tangential * tangential.transpose();
    }
    local = 0.5 * (local + local.transpose()).eval();
    const auto& conn = mesh.connectivity[e];
    for (int i = 0; i < n_loc; ++i)
      for (int j = 0; j < n_loc; ++j) builder.add(conn[i], conn[j], local(i, j));
  }
  return builder.build();
}

CoefVector assemble_load(const HighOrderMesh& mesh, const ManufacturedProblem& problem,
                         const QuadTable& table) {
  const int n_loc = mesh.n_loc();
  const int nq = static_cast<int>(table.rule.points.size());
  const double t = mesh.current_time;
  CoefVector b = CoefVector::Zero(mesh.num_nodes());
  for (int e = 0; e < mesh.num_elements(); ++e) {
    Eigen::VectorXd local = Eigen::VectorXd::Zero(n_loc);
    for (int q = 0; q < nq; ++q) {
      const ElementFrame frame =
          element_frame(mesh, e, table.values.row(q), table.gradients[q]);
      const Vec3 lifted = closest_point(mesh.surface, frame.x, t);
      const double f = manufactured_forcing(problem, lifted, t);
      local += table.rule.weights[q] * frame.measure * f * table.values.row(q).transpose();
    }
    const auto& conn = mesh.connectivity[e];
    for (int i = 0; i < n_loc; ++i) b[conn[i]] += local[i];
  }
  return b;
}

SparseSymMatrix assemble_mass(const HighOrderMesh& mesh) {
  return assemble_mass(mesh, default_quad_table(mesh));
}

SparseSymMatrix assemble_stiffness(const HighOrderMesh& mesh) {
  return assemble_stiffness(mesh, default_quad_table(mesh));
}

CoefVector assemble_load(const HighOrderMesh& mesh, const ManufacturedProblem& problem) {
  return assemble_load(mesh, problem, default_quad_table(mesh));
}

CoefVector interpolate_nodal(const HighOrderMesh& mesh,
                             const std::function<double(const Vec3&, double)>& g, double t) {
  CoefVector alpha(mesh.num_nodes());
  for (int j = 0; j < mesh.num_nodes(); ++j) alpha[j] = g(mesh.nodes[j], t);
  return alpha;
}

Vec3 tangential_gradient(const ElementFrame& frame, int dim,
                         const Eigen::MatrixXd& basis_gradients,
                         const Eigen::VectorXd& local_coefficients) {
  const auto jac = frame.jacobian.leftCols(dim);
  const Eigen::VectorXd ref_grad = basis_gradients.transpose() * local_coefficients;
  return jac * (jac.transpose() * jac).inverse() * ref_grad;
}

}  // namespace esfem
