#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "arakelov/rational.hpp"

namespace arakelov {

// Dense matrix of exact rationals, row-major. Sized at construction; all
// operations are value-producing. A matrix may have zero columns (empty
// kernels and annihilators of the full space are legitimate results).
class QMatrix {
 public:
  QMatrix() : rows_(0), cols_(0) {}
  QMatrix(int rows, int cols);

  static QMatrix identity(int n);
  // Entries given row by row, parsed with parse_rational.
  static QMatrix parse_rows(
      const std::vector<std::vector<std::string>>& rows);
  static QMatrix from_rows(
      const std::vector<std::vector<Rational>>& rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  const Rational& operator()(int i, int j) const {
    return data_[static_cast<size_t>(i) * cols_ + j];
  }
  Rational& operator()(int i, int j) {
    return data_[static_cast<size_t>(i) * cols_ + j];
  }

  QMatrix transpose() const;
  QMatrix operator*(const QMatrix& rhs) const;
  QMatrix operator+(const QMatrix& rhs) const;
  QMatrix operator-(const QMatrix& rhs) const;
  friend QMatrix operator*(const Rational& s, const QMatrix& m);

  QMatrix column(int j) const;
  // Columns [c0, c1) as a new matrix.
  QMatrix columns(int c0, int c1) const;
  static QMatrix hconcat(const QMatrix& a, const QMatrix& b);
  friend QMatrix hconcat(const QMatrix& a, const QMatrix& b) {
    return QMatrix::hconcat(a, b);
  }

  void swap_rows(int i, int j);
  void swap_cols(int i, int j);
  void scale_col(int j, const Rational& s);
  void scale_row(int i, const Rational& s);
  // col_j += s * col_i
  void add_col(int j, int i, const Rational& s);
  // row_j += s * row_i
  void add_row(int j, int i, const Rational& s);

  bool is_zero() const;
  friend bool operator==(const QMatrix& a, const QMatrix& b) = default;

  // Compact single-line rendering, for error messages and map keys.
  std::string str() const;

 private:
  int rows_, cols_;
  std::vector<Rational> data_;
};

}  // namespace arakelov
