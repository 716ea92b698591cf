#pragma once

#include <Eigen/Dense>
#include <map>
#include <vector>

namespace esfem {

using CoefVector = Eigen::VectorXd;

// CSR matrix with a symmetric pattern; assembled once, then immutable.
class SparseSymMatrix {
 public:
  SparseSymMatrix() = default;

  int rows() const { return n_; }
  CoefVector multiply(const CoefVector& x) const;
  CoefVector diagonal() const;
  double symmetry_defect() const;  // max |a_ij - a_ji|

  const std::vector<int>& row_ptr() const { return row_ptr_; }
  const std::vector<int>& col_idx() const { return col_idx_; }
  const std::vector<double>& values() const { return values_; }

  Eigen::MatrixXd dense() const;

  friend class SparseBuilder;

 private:
  int n_ = 0;
  std::vector<int> row_ptr_{0};
  std::vector<int> col_idx_;
  std::vector<double> values_;
};

// Deterministic accumulation keyed by (row, col); entries end up sorted by
// column within each row regardless of insertion order.
class SparseBuilder {
 public:
  explicit SparseBuilder(int n) : rows_(n) {}

  void add(int row, int col, double value) { rows_[row][col] += value; }
  SparseSymMatrix build() const;

 private:
  std::vector<std::map<int, double>> rows_;
};

}  // namespace esfem
