#include "arakelov/smith.hpp"

#include <cassert>

namespace arakelov {

QMatrix SmithDecomposition::reconstruct(int rows, int cols,
                                        const ValuationContext& ctx) const {
  QMatrix d(rows, cols);
  for (int k = 0; k < rank(); ++k) d(k, k) = ctx.prime_power(exponents[k]);
  return left * d * right;
}

SmithDecomposition smith_local(const QMatrix& m, const ValuationContext& ctx) {
  int nr = m.rows(), nc = m.cols();
  QMatrix a = m;
  QMatrix left = QMatrix::identity(nr);
  QMatrix right = QMatrix::identity(nc);
  std::vector<long> exps;

  int t = 0;
  while (t < nr && t < nc) {
    // Minimal-valuation pivot over the remaining block.
    int pi = -1, pj = -1;
    Valuation best = Valuation::infinity();
    for (int i = t; i < nr; ++i)
      for (int j = t; j < nc; ++j) {
        Valuation v = valuation(a(i, j), ctx);
        if (v < best) {
          best = v;
          pi = i;
          pj = j;
        }
      }
    if (pi < 0) break;  // block is zero

    if (pi != t) {
      a.swap_rows(t, pi);
      left.swap_cols(t, pi);
    }
    if (pj != t) {
      a.swap_cols(t, pj);
      right.swap_rows(t, pj);
    }
    long e = best.value();
    Rational pivot_power = ctx.prime_power(e);
    Rational unit = a(t, t) / pivot_power;
    a.scale_row(t, 1 / unit);
    left.scale_col(t, unit);

    for (int i = t + 1; i < nr; ++i) {
      if (a(i, t) == 0) continue;
      Rational f = a(i, t) / pivot_power;
      a.add_row(i, t, -f);
      left.add_col(t, i, f);
    }
    for (int j = t + 1; j < nc; ++j) {
      if (a(t, j) == 0) continue;
      Rational g = a(t, j) / pivot_power;
      a.add_col(j, t, -g);
      right.add_row(t, j, g);
    }
    exps.push_back(e);
    ++t;
  }

  for (size_t k = 1; k < exps.size(); ++k) assert(exps[k - 1] <= exps[k]);
  return SmithDecomposition{std::move(left), std::move(exps),
                            std::move(right)};
}

HermiteForm hermite_local(const QMatrix& m, const ValuationContext& ctx) {
  int n = m.rows(), r = m.cols();
  if (rank(m) < r)
    throw RankDeficient("hermite_local: columns are dependent");

  HermiteForm f{m, {}, {}};
  QMatrix& h = f.h;

  int j = 0;
  for (int i = 0; i < n && j < r; ++i) {
    int pick = -1;
    Valuation best = Valuation::infinity();
    for (int k = j; k < r; ++k) {
      Valuation v = valuation(h(i, k), ctx);
      if (v < best) {
        best = v;
        pick = k;
      }
    }
    if (pick < 0) continue;  // row is zero across the remaining columns

    h.swap_cols(j, pick);
    long e = best.value();
    Rational pivot_power = ctx.prime_power(e);
    h.scale_col(j, pivot_power / h(i, j));
    for (int k = j + 1; k < r; ++k) {
      if (h(i, k) == 0) continue;
      h.add_col(k, j, -h(i, k) / pivot_power);
    }
    f.pivot_rows.push_back(i);
    f.exponents.push_back(e);
    ++j;
  }
  assert(j == r);

  // Reduce the entries left of each pivot. Working through pivots top to
  // bottom keeps earlier reductions intact: pivot j only alters rows at or
  // below its own pivot row.
  for (j = 0; j < r; ++j) {
    int i = f.pivot_rows[j];
    long a = f.exponents[j];
    Rational pivot_power = ctx.prime_power(a);
    for (int k = 0; k < j; ++k) {
      const Rational& t = h(i, k);
      if (t == 0) continue;
      Rational rem = residue_mod_p_power(t, a, ctx);
      h.add_col(k, j, (rem - t) / pivot_power);
    }
  }
  return f;
}

}  // namespace arakelov
