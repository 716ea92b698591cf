#pragma once

#include <Eigen/Dense>
#include <vector>

namespace esfem {

using Vec2 = Eigen::Vector2d;

// Principal-lattice Lagrange nodes on the unit simplex. Ordering contract:
// vertices first, then edge nodes (edge by edge, oriented from the lower to
// the higher local vertex of the edge list), then interior nodes.
std::vector<Vec2> lagrange_nodes(int dim, int degree);

// Degree-k Lagrange basis on the unit interval (dim 1) or unit triangle
// (dim 2), built once from the monomial Vandermonde system.
class ReferenceElement {
 public:
  ReferenceElement(int dim, int degree);

  int dim() const { return dim_; }
  int degree() const { return degree_; }
  int n_loc() const { return static_cast<int>(nodes_.size()); }
  const std::vector<Vec2>& nodes() const { return nodes_; }

  // values: n_loc; gradients: n_loc x dim.
  void eval(const Vec2& xi, Eigen::VectorXd& values, Eigen::MatrixXd& gradients) const;

 private:
  int dim_;
  int degree_;
  std::vector<Vec2> nodes_;
  std::vector<Vec2> exponents_;            // monomial powers (a, b)
  Eigen::MatrixXd coefficients_;           // column i: monomial coefficients of basis i
};

struct QuadratureRule {
  int dim = 2;
  std::vector<Vec2> points;
  std::vector<double> weights;  // sum to the reference simplex measure
  int exactness_degree = 0;
};

// Symmetric positive-weight triangle rules (Dunavant family tables).
QuadratureRule dunavant_rule(int target_degree);

// Gauss-Legendre on [0,1], n points exact up to degree 2n-1.
QuadratureRule gauss_rule(int target_degree);

// Rule of the requested exactness on the reference simplex of dimension dim.
QuadratureRule simplex_rule(int dim, int target_degree);

}  // namespace esfem
