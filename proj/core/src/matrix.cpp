#include "arakelov/matrix.hpp"

#include <sstream>

namespace arakelov {

QMatrix::QMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0)
    throw DimensionMismatch("QMatrix: negative dimension");
  data_.assign(static_cast<size_t>(rows) * cols, Rational(0));
}

QMatrix QMatrix::identity(int n) {
  QMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

QMatrix QMatrix::parse_rows(
    const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::vector<Rational>> parsed;
  parsed.reserve(rows.size());
  for (const auto& row : rows) {
    std::vector<Rational> r;
    r.reserve(row.size());
    for (const auto& cell : row) r.push_back(parse_rational(cell));
    parsed.push_back(std::move(r));
  }
  return from_rows(parsed);
}

QMatrix QMatrix::from_rows(const std::vector<std::vector<Rational>>& rows) {
  int nr = static_cast<int>(rows.size());
  int nc = nr == 0 ? 0 : static_cast<int>(rows[0].size());
  QMatrix m(nr, nc);
  for (int i = 0; i < nr; ++i) {
    if (static_cast<int>(rows[i].size()) != nc)
      throw DimensionMismatch("QMatrix: ragged rows");
    for (int j = 0; j < nc; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

QMatrix QMatrix::transpose() const {
  QMatrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

QMatrix QMatrix::operator*(const QMatrix& rhs) const {
  if (cols_ != rhs.rows_)
    throw DimensionMismatch("QMatrix: product of " + std::to_string(rows_) +
                            "x" + std::to_string(cols_) + " with " +
                            std::to_string(rhs.rows_) + "x" +
                            std::to_string(rhs.cols_));
  QMatrix out(rows_, rhs.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Rational& a = (*this)(i, k);
      if (a == 0) continue;
      for (int j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
    }
  return out;
}

QMatrix QMatrix::operator+(const QMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
    throw DimensionMismatch("QMatrix: sum of unequal shapes");
  QMatrix out(rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out(i, j) = (*this)(i, j) + rhs(i, j);
  return out;
}

QMatrix QMatrix::operator-(const QMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
    throw DimensionMismatch("QMatrix: difference of unequal shapes");
  QMatrix out(rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out(i, j) = (*this)(i, j) - rhs(i, j);
  return out;
}

QMatrix operator*(const Rational& s, const QMatrix& m) {
  QMatrix out(m.rows_, m.cols_);
  for (int i = 0; i < m.rows_; ++i)
    for (int j = 0; j < m.cols_; ++j) out(i, j) = s * m(i, j);
  return out;
}

QMatrix QMatrix::column(int j) const { return columns(j, j + 1); }

QMatrix QMatrix::columns(int c0, int c1) const {
  if (c0 < 0 || c1 < c0 || c1 > cols_)
    throw DimensionMismatch("QMatrix: column range out of bounds");
  QMatrix out(rows_, c1 - c0);
  for (int i = 0; i < rows_; ++i)
    for (int j = c0; j < c1; ++j) out(i, j - c0) = (*this)(i, j);
  return out;
}

QMatrix QMatrix::hconcat(const QMatrix& a, const QMatrix& b) {
  if (a.cols_ == 0 && a.rows_ == 0) return b;
  if (b.cols_ == 0 && b.rows_ == 0) return a;
  if (a.rows_ != b.rows_)
    throw DimensionMismatch("QMatrix: hconcat with unequal row counts");
  QMatrix out(a.rows_, a.cols_ + b.cols_);
  for (int i = 0; i < a.rows_; ++i) {
    for (int j = 0; j < a.cols_; ++j) out(i, j) = a(i, j);
    for (int j = 0; j < b.cols_; ++j) out(i, a.cols_ + j) = b(i, j);
  }
  return out;
}

void QMatrix::swap_rows(int i, int j) {
  if (i == j) return;
  for (int c = 0; c < cols_; ++c)
    std::swap((*this)(i, c), (*this)(j, c));
}

void QMatrix::swap_cols(int i, int j) {
  if (i == j) return;
  for (int r = 0; r < rows_; ++r)
    std::swap((*this)(r, i), (*this)(r, j));
}

void QMatrix::scale_col(int j, const Rational& s) {
  for (int r = 0; r < rows_; ++r) (*this)(r, j) *= s;
}

void QMatrix::scale_row(int i, const Rational& s) {
  for (int c = 0; c < cols_; ++c) (*this)(i, c) *= s;
}

void QMatrix::add_col(int j, int i, const Rational& s) {
  for (int r = 0; r < rows_; ++r) (*this)(r, j) += s * (*this)(r, i);
}

void QMatrix::add_row(int j, int i, const Rational& s) {
  for (int c = 0; c < cols_; ++c) (*this)(j, c) += s * (*this)(i, c);
}

bool QMatrix::is_zero() const {
  for (const auto& x : data_)
    if (x != 0) return false;
  return true;
}

std::string QMatrix::str() const {
  std::ostringstream os;
  os << '[';
  for (int i = 0; i < rows_; ++i) {
    if (i) os << "; ";
    for (int j = 0; j < cols_; ++j) {
      if (j) os << ' ';
      os << format_rational((*this)(i, j));
    }
  }
  os << ']';
  return os.str();
}

}  // namespace arakelov
