#include "esfem/sparse.hpp"

#include <cmath>

namespace esfem {

CoefVector SparseSymMatrix::multiply(const CoefVector& x) const {
  CoefVector y = CoefVector::Zero(n_);
  for (int i = 0; i < n_; ++i) {
    double s = 0.0;
    for (int k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) s += values_[k] * x[col_idx_[k]];
    y[i] = s;
  }
  return y;
}

CoefVector SparseSymMatrix::diagonal() const {
  CoefVector d = CoefVector::Zero(n_);
  for (int i = 0; i < n_; ++i)
    for (int k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k)
      if (col_idx_[k] == i) d[i] = values_[k];
  return d;
}

double SparseSymMatrix::symmetry_defect() const {
  const Eigen::MatrixXd a = dense();
  return (a - a.transpose()).lpNorm<Eigen::Infinity>();
}

Eigen::MatrixXd SparseSymMatrix::dense() const {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n_, n_);
  for (int i = 0; i < n_; ++i)
    for (int k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) a(i, col_idx_[k]) = values_[k];
  return a;
}

SparseSymMatrix SparseBuilder::build() const {
  SparseSymMatrix m;
  m.n_ = static_cast<int>(rows_.size());
  m.row_ptr_.assign(1, 0);
  for (const auto& row : rows_) {
    for (const auto& [col, value] : row) {
      m.col_idx_.push_back(col);
      m.values_.push_back(value);
    }
    m.row_ptr_.push_back(static_cast<int>(m.col_idx_.size()));
  }
  return m;
}

}  // namespace esfem
