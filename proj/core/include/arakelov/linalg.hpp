#pragma once

#include <vector>

#include "arakelov/matrix.hpp"

// Exact linear algebra over Q: echelon forms, kernels, annihilators,
// determinants, and the handful of subspace manipulations the geometric
// modules need. Everything here is characteristic-zero field arithmetic;
// nothing depends on a prime.

namespace arakelov {

struct Echelon {
  QMatrix reduced;              // reduced row echelon form
  std::vector<int> pivot_cols;  // one per nonzero row, increasing
  int rank;
};

Echelon row_reduce(const QMatrix& m);

int rank(const QMatrix& m);

// Columns span the right kernel {x : m x = 0}; shape cols(m) x nullity.
QMatrix kernel_basis(const QMatrix& m);

// Rows are a basis of the annihilator {f : f w = 0 for all columns w of
// subspace_basis}; shape (n - d) x n. The columns must be independent.
QMatrix annihilator_basis(const QMatrix& subspace_basis);

Rational determinant(const QMatrix& m);

QMatrix inverse(const QMatrix& m);

// Solves a x = b for square invertible a (b may have several columns).
QMatrix solve_square(const QMatrix& a, const QMatrix& b);

// Coordinates of the columns of x in the independent columns of basis:
// returns c with basis * c = x, throwing NotInSpan if some column of x
// lies outside the column span.
QMatrix coords_in_span(const QMatrix& basis, const QMatrix& x);

// Basis of span(a) intersect span(b); columns independent, possibly none.
QMatrix intersect_spans(const QMatrix& a, const QMatrix& b);

// Extends the independent columns of `current` by greedily appending
// columns of `pool` that grow the rank, stopping at rank `target`.
// Throws RankDeficient if the pool cannot reach the target.
QMatrix extend_basis(const QMatrix& current, const QMatrix& pool, int target);

bool same_span(const QMatrix& a, const QMatrix& b);

// Least valuation among the entries (infinite for a zero matrix).
Valuation min_entry_valuation(const QMatrix& m, const ValuationContext& ctx);

}  // namespace arakelov
