#include "arakelov/lattice.hpp"

#include <algorithm>

namespace arakelov {

Lattice::Lattice(QMatrix basis, ValuationContext ctx)
    : basis_(std::move(basis)), ctx_(std::move(ctx)) {
  if (basis_.cols() == 0 || basis_.rows() == 0)
    throw RankDeficient("Lattice: empty basis");
  if (arakelov::rank(basis_) < basis_.cols())
    throw RankDeficient("Lattice: basis columns are dependent");
}

Lattice Lattice::scaled_by_prime_power(long k) const {
  return Lattice(ctx_.prime_power(k) * basis_, ctx_);
}

bool same_lattice(const Lattice& a, const Lattice& b) {
  if (a.ambient_dim() != b.ambient_dim() || a.rank() != b.rank()) return false;
  if (!(a.ctx() == b.ctx()))
    throw DimensionMismatch("same_lattice: different primes");
  QMatrix cb, ca;
  try {
    cb = coords_in_span(a.basis(), b.basis());
    ca = coords_in_span(b.basis(), a.basis());
  } catch (const NotInSpan&) {
    return false;  // different rational column spans
  }
  Valuation zero(0);
  return zero <= min_entry_valuation(cb, a.ctx()) &&
         zero <= min_entry_valuation(ca, a.ctx());
}

Lattice lattice_from_generators(const QMatrix& generators,
                                const ValuationContext& ctx) {
  // With G = U D V and V invertible over Z_(p), the column span of G equals
  // the span of the first rank(G) columns of U D.
  SmithDecomposition dec = smith_local(generators, ctx);
  if (dec.rank() == 0)
    throw RankDeficient("lattice_from_generators: all generators are zero");
  QMatrix basis = dec.left.columns(0, dec.rank());
  for (int j = 0; j < dec.rank(); ++j)
    basis.scale_col(j, ctx.prime_power(dec.exponents[j]));
  return Lattice(basis, ctx);
}

LatticeClass::LatticeClass(const Lattice& lattice)
    : canonical_(lattice) {
  const ValuationContext& ctx = lattice.ctx();
  HermiteForm first = hermite_local(lattice.basis(), ctx);
  long shift = *std::min_element(first.exponents.begin(),
                                 first.exponents.end());
  QMatrix scaled = first.h;
  if (shift != 0) scaled = ctx.prime_power(-shift) * scaled;
  // Rescaling moves entries out of their canonical residue ranges, so the
  // form is recomputed once on the shifted basis.
  canonical_ = Lattice(hermite_local(scaled, ctx).h, ctx);
}

Subspace::Subspace(QMatrix basis) : basis_(std::move(basis)) {
  if (basis_.cols() == 0 || basis_.rows() == 0)
    throw RankDeficient("Subspace: empty basis");
  if (arakelov::rank(basis_) < basis_.cols())
    throw RankDeficient("Subspace: basis columns are dependent");
}

bool same_subspace(const Subspace& a, const Subspace& b) {
  return same_span(a.basis(), b.basis());
}

}  // namespace arakelov
