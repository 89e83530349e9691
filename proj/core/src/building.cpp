#include "arakelov/building.hpp"

namespace arakelov {
namespace building {

namespace {

void require_vertex(const LatticeClass& x, const char* who) {
  if (x.rank() != x.ambient_dim())
    throw RankDeficient(std::string(who) + ": class is not full rank");
}

void require_proper_subspace(const Subspace& w, int n, const char* who) {
  if (w.ambient_dim() != n)
    throw DimensionMismatch(std::string(who) + ": ambient dimensions differ");
  if (w.dim() == 0 || w.dim() == n)
    throw DimensionMismatch(std::string(who) +
                            ": subspace must be proper and nonzero");
}

}  // namespace

InclusionBounds inclusion_bounds(const LatticeClass& x,
                                 const LatticeClass& y) {
  require_vertex(x, "inclusion_bounds");
  require_vertex(y, "inclusion_bounds");
  if (x.ambient_dim() != y.ambient_dim())
    throw DimensionMismatch("inclusion_bounds: ambient dimensions differ");
  const ValuationContext& ctx = x.canonical().ctx();
  if (!(ctx == y.canonical().ctx()))
    throw DimensionMismatch("inclusion_bounds: different primes");

  // In M-coordinates the second lattice is the column span of
  // X = M^-1 L; p^k L ⊆ M iff k + min v(X) >= 0, and M ⊆ p^k L iff
  // k <= min v(X^-1).
  QMatrix x_coords =
      solve_square(x.canonical().basis(), y.canonical().basis());
  long s = -min_entry_valuation(x_coords, ctx).value();
  long r = min_entry_valuation(inverse(x_coords), ctx).value();
  return InclusionBounds{r, s};
}

long combinatorial_distance(const LatticeClass& x, const LatticeClass& y) {
  InclusionBounds b = inclusion_bounds(x, y);
  return b.s - b.r;
}

bool adjacent(const LatticeClass& x, const LatticeClass& y) {
  return combinatorial_distance(x, y) == 1;
}

QMatrix split_basis(const Lattice& m, const Subspace& w) {
  if (m.rank() != m.ambient_dim())
    throw RankDeficient("split_basis: lattice is not full rank");
  require_proper_subspace(w, m.ambient_dim(), "split_basis");
  QMatrix t = solve_square(m.basis(), w.basis());
  SmithDecomposition dec = smith_local(t, m.ctx());
  // The first dim(W) columns of `left` span the image of t over Q, and all
  // of `left` is a unimodular change of basis of Z_(p)^n; pushing through
  // m's basis gives the adapted basis of M itself.
  return m.basis() * dec.left;
}

LatticeClass half_geodesic_vertex(const LatticeClass& x, const Subspace& w,
                                  long k) {
  require_vertex(x, "half_geodesic_vertex");
  if (k < 0)
    throw DimensionMismatch("half_geodesic_vertex: negative index");
  const Lattice& m = x.canonical();
  QMatrix adapted = split_basis(m, w);
  Rational scale = m.ctx().prime_power(k);
  for (int j = w.dim(); j < adapted.cols(); ++j)
    adapted.scale_col(j, scale);
  return LatticeClass(Lattice(adapted, m.ctx()));
}

CombinatorialGeodesic::CombinatorialGeodesic(Subspace w, Subspace w2,
                                             Lattice m_w, Lattice m_w2)
    : w_(std::move(w)),
      w2_(std::move(w2)),
      m_w_(std::move(m_w)),
      m_w2_(std::move(m_w2)),
      class_w_(m_w_),
      class_w2_(m_w2_) {
  int n = w_.ambient_dim();
  if (w2_.ambient_dim() != n || m_w_.ambient_dim() != n ||
      m_w2_.ambient_dim() != n)
    throw DimensionMismatch("CombinatorialGeodesic: ambient dims differ");
  if (!(m_w_.ctx() == m_w2_.ctx()))
    throw DimensionMismatch("CombinatorialGeodesic: different primes");
  if (w_.dim() + w2_.dim() != n ||
      rank(QMatrix::hconcat(w_.basis(), w2_.basis())) != n)
    throw NotComplementary(
        "CombinatorialGeodesic: subspaces are not complementary");
  if (m_w_.rank() != w_.dim() || !same_span(m_w_.basis(), w_.basis()))
    throw NotInSpan("CombinatorialGeodesic: first lattice does not span W");
  if (m_w2_.rank() != w2_.dim() || !same_span(m_w2_.basis(), w2_.basis()))
    throw NotInSpan("CombinatorialGeodesic: second lattice does not span W2");
}

LatticeClass CombinatorialGeodesic::vertex(long k) const {
  const ValuationContext& ctx = m_w_.ctx();
  QMatrix scaled = ctx.prime_power(k) * m_w2_.basis();
  return LatticeClass(
      Lattice(QMatrix::hconcat(m_w_.basis(), scaled), ctx));
}

CombinatorialGeodesic geodesic_between(const Subspace& w, const Subspace& w2,
                                       const Lattice& m_w,
                                       const Lattice& m_w2) {
  return CombinatorialGeodesic(w, w2, m_w, m_w2);
}

std::optional<long> on_geodesic(const CombinatorialGeodesic& gamma,
                                const LatticeClass& x, long k_min,
                                long k_max) {
  for (long k = k_min; k <= k_max; ++k)
    if (gamma.vertex(k) == x) return k;
  return std::nullopt;
}

long distor(const CombinatorialGeodesic& gamma, const LatticeClass& x,
            const LatticeClass& y, long k_min, long k_max) {
  auto kx = on_geodesic(gamma, x, k_min, k_max);
  if (!kx) throw NotOnGeodesic("distor: first vertex not on the geodesic");
  auto ky = on_geodesic(gamma, y, k_min, k_max);
  if (!ky) throw NotOnGeodesic("distor: second vertex not on the geodesic");
  // Position grows toward the W2 end, where k decreases.
  return *kx - *ky;
}

bool reduction_segment_equal(const LatticeClass& x, const Subspace& w1,
                             const Subspace& w2, long m) {
  require_vertex(x, "reduction_segment_equal");
  if (m < 0)
    throw DimensionMismatch("reduction_segment_equal: negative index");
  const Lattice& lat = x.canonical();
  const ValuationContext& ctx = lat.ctx();
  Rational scale = ctx.prime_power(m);
  auto truncated = [&](const Subspace& w) {
    QMatrix adapted = split_basis(lat, w);
    for (int j = w.dim(); j < adapted.cols(); ++j)
      adapted.scale_col(j, scale);
    return Lattice(adapted, ctx);
  };
  return same_lattice(truncated(w1), truncated(w2));
}

}  // namespace building
}  // namespace arakelov
