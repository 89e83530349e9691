#include "arakelov/linalg.hpp"

namespace arakelov {

Echelon row_reduce(const QMatrix& m) {
  Echelon e{m, {}, 0};
  QMatrix& a = e.reduced;
  int row = 0;
  for (int col = 0; col < a.cols() && row < a.rows(); ++col) {
    int pivot = -1;
    for (int i = row; i < a.rows(); ++i)
      if (a(i, col) != 0) { pivot = i; break; }
    if (pivot < 0) continue;
    a.swap_rows(row, pivot);
    a.scale_row(row, 1 / a(row, col));
    for (int i = 0; i < a.rows(); ++i) {
      if (i == row || a(i, col) == 0) continue;
      a.add_row(i, row, -a(i, col));
    }
    e.pivot_cols.push_back(col);
    ++row;
  }
  e.rank = row;
  return e;
}

int rank(const QMatrix& m) { return row_reduce(m).rank; }

QMatrix kernel_basis(const QMatrix& m) {
  Echelon e = row_reduce(m);
  int n = m.cols();
  std::vector<int> free_cols;
  {
    size_t next = 0;
    for (int c = 0; c < n; ++c) {
      if (next < e.pivot_cols.size() && e.pivot_cols[next] == c)
        ++next;
      else
        free_cols.push_back(c);
    }
  }
  QMatrix k(n, static_cast<int>(free_cols.size()));
  for (size_t j = 0; j < free_cols.size(); ++j) {
    int f = free_cols[j];
    k(f, static_cast<int>(j)) = 1;
    for (int i = 0; i < e.rank; ++i)
      k(e.pivot_cols[i], static_cast<int>(j)) = -e.reduced(i, f);
  }
  return k;
}

QMatrix annihilator_basis(const QMatrix& subspace_basis) {
  if (rank(subspace_basis) < subspace_basis.cols())
    throw DependentColumns("annihilator_basis: columns are dependent");
  return kernel_basis(subspace_basis.transpose()).transpose();
}

Rational determinant(const QMatrix& m) {
  if (m.rows() != m.cols())
    throw NotSquare("determinant: matrix is " + std::to_string(m.rows()) +
                    "x" + std::to_string(m.cols()));
  int n = m.rows();
  QMatrix a = m;
  Rational det = 1;
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int i = col; i < n; ++i)
      if (a(i, col) != 0) { pivot = i; break; }
    if (pivot < 0) return 0;
    if (pivot != col) {
      a.swap_rows(col, pivot);
      det = -det;
    }
    det *= a(col, col);
    for (int i = col + 1; i < n; ++i) {
      if (a(i, col) == 0) continue;
      a.add_row(i, col, -a(i, col) / a(col, col));
    }
  }
  return det;
}

QMatrix inverse(const QMatrix& m) {
  if (m.rows() != m.cols()) throw NotSquare("inverse: matrix not square");
  int n = m.rows();
  Echelon e = row_reduce(QMatrix::hconcat(m, QMatrix::identity(n)));
  if (e.rank < n || (e.rank > 0 && e.pivot_cols.back() >= n))
    throw SingularMatrix("inverse: matrix is singular");
  return e.reduced.columns(n, 2 * n);
}

QMatrix solve_square(const QMatrix& a, const QMatrix& b) {
  if (a.rows() != b.rows())
    throw DimensionMismatch("solve_square: row counts differ");
  return inverse(a) * b;
}

QMatrix coords_in_span(const QMatrix& basis, const QMatrix& x) {
  if (basis.rows() != x.rows())
    throw DimensionMismatch("coords_in_span: ambient dimensions differ");
  int r = basis.cols();
  if (rank(basis) < r)
    throw RankDeficient("coords_in_span: basis columns are dependent");
  Echelon e = row_reduce(QMatrix::hconcat(basis, x));
  for (int i : e.pivot_cols)
    if (i >= r)
      throw NotInSpan("coords_in_span: column outside the span");
  QMatrix c(r, x.cols());
  for (int i = 0; i < e.rank; ++i)
    for (int j = 0; j < x.cols(); ++j)
      c(e.pivot_cols[i], j) = e.reduced(i, r + j);
  return c;
}

QMatrix intersect_spans(const QMatrix& a, const QMatrix& b) {
  if (a.rows() != b.rows())
    throw DimensionMismatch("intersect_spans: ambient dimensions differ");
  if (a.cols() == 0 || b.cols() == 0) return QMatrix(a.rows(), 0);
  QMatrix stacked = QMatrix::hconcat(a, Rational(-1) * b);
  QMatrix k = kernel_basis(stacked);
  QMatrix coeff_a(a.cols(), k.cols());
  for (int i = 0; i < a.cols(); ++i)
    for (int j = 0; j < k.cols(); ++j) coeff_a(i, j) = k(i, j);
  QMatrix raw = a * coeff_a;
  // With dependent inputs the kernel picks up self-relations, so strip the
  // result down to an independent set of columns.
  Echelon e = row_reduce(raw);
  QMatrix out(a.rows(), e.rank);
  for (int j = 0; j < e.rank; ++j)
    for (int i = 0; i < a.rows(); ++i) out(i, j) = raw(i, e.pivot_cols[j]);
  return out;
}

QMatrix extend_basis(const QMatrix& current, const QMatrix& pool, int target) {
  QMatrix out = current;
  int r = rank(out);
  if (r < current.cols())
    throw RankDeficient("extend_basis: starting columns are dependent");
  for (int j = 0; j < pool.cols() && r < target; ++j) {
    QMatrix candidate = QMatrix::hconcat(out, pool.column(j));
    if (rank(candidate) > r) {
      out = candidate;
      ++r;
    }
  }
  if (r < target)
    throw RankDeficient("extend_basis: pool does not reach target rank");
  return out;
}

bool same_span(const QMatrix& a, const QMatrix& b) {
  if (a.rows() != b.rows()) return false;
  int ra = rank(a), rb = rank(b);
  return ra == rb && rank(QMatrix::hconcat(a, b)) == ra;
}

Valuation min_entry_valuation(const QMatrix& m, const ValuationContext& ctx) {
  Valuation best = Valuation::infinity();
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      best = Valuation::min(best, valuation(m(i, j), ctx));
  return best;
}

}  // namespace arakelov
