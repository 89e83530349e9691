#pragma once

#include <vector>

#include "arakelov/linalg.hpp"

// Normal forms over the localization Z_(p) (rationals with denominator
// coprime to p). Units of this ring are exactly the rationals of valuation
// zero, so "divide by the pivot" is legal whenever the pivot has minimal
// valuation; that single fact drives both eliminations below.

namespace arakelov {

// m = left * diag(p^a_1, ..., p^a_r) * right with left, right invertible
// over Z_(p) (unit determinant valuation) and a_1 <= ... <= a_r.
struct SmithDecomposition {
  QMatrix left;
  std::vector<long> exponents;
  QMatrix right;

  int rank() const { return static_cast<int>(exponents.size()); }
  // left * D * right, for checking the factorization.
  QMatrix reconstruct(int rows, int cols, const ValuationContext& ctx) const;
};

// Pivoting rule: minimal valuation over the remaining block, ties broken by
// lowest (row, col). A zero matrix yields rank 0 with identity transforms.
SmithDecomposition smith_local(const QMatrix& m, const ValuationContext& ctx);

// Column Hermite form of a full-column-rank matrix over Z_(p): column
// echelon with pivot of column j in row pivot_rows[j], pivot entries the
// exact powers p^exponents[j], and entries in a pivot row left of its pivot
// reduced to canonical residues mod the pivot power. The form is the unique
// such basis of the column span, so equality of spans over Z_(p) is
// equality of forms.
struct HermiteForm {
  QMatrix h;
  std::vector<int> pivot_rows;
  std::vector<long> exponents;
};

HermiteForm hermite_local(const QMatrix& m, const ValuationContext& ctx);

}  // namespace arakelov
