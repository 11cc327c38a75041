#pragma once

#include <vector>

#include "brody/quadratic.hpp"
#include "brody/types.hpp"

namespace brody {

/// Dense row-major matrix over Q(sqrt(d)).
class ExactMatrix {
 public:
  ExactMatrix() = default;
  ExactMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static ExactMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  QuadNumber& operator()(int r, int c) { return data_[r * cols_ + c]; }
  const QuadNumber& operator()(int r, int c) const { return data_[r * cols_ + c]; }

  ExactMatrix operator*(const ExactMatrix& o) const;
  Eigen::MatrixXd to_double() const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<QuadNumber> data_;
};

// Reduced row echelon form; returns the pivot columns.
std::vector<int> row_reduce(ExactMatrix& m);
int rank(ExactMatrix m);
// Columns form a basis of {x : m x = 0}.
ExactMatrix nullspace(ExactMatrix m);
// Solves a x = b for square invertible a (throws InvalidInput otherwise).
ExactMatrix solve(const ExactMatrix& a, const ExactMatrix& b);

}  // namespace brody
