#include "arakelov/generator.hpp"

#include <cmath>

namespace arakelov {

std::uint64_t Rng::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

long Rng::below(long n) { return static_cast<long>(next() % static_cast<std::uint64_t>(n)); }

long Rng::range(long lo, long hi) { return lo + below(hi - lo + 1); }

bool Rng::coin() { return (next() & 1) != 0; }

double Rng::real01() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

namespace {

long small_coprime(Rng& rng, const mpz_class& p) {
  for (;;) {
    long c = rng.range(1, 9);
    if (mpz_class(c) % p != 0) return c;
  }
}

}  // namespace

Rational random_rational_with_valuation(Rng& rng, const ValuationContext& ctx,
                                        long vmin, long vmax) {
  long v = rng.range(vmin, vmax);
  long a = small_coprime(rng, ctx.prime());
  long b = small_coprime(rng, ctx.prime());
  Rational unit(a, b);
  unit.canonicalize();
  if (rng.coin()) unit = -unit;
  return unit * ctx.prime_power(v);
}

QMatrix random_unimodular(Rng& rng, int n, const ValuationContext& ctx) {
  QMatrix u = QMatrix::identity(n);
  int ops = 2 * n * n + 2;
  for (int k = 0; k < ops; ++k) {
    switch (rng.below(3)) {
      case 0: {
        int i = static_cast<int>(rng.below(n));
        int j = static_cast<int>(rng.below(n));
        if (i != j) {
          Rational c(rng.range(-4, 4));
          u.add_row(j, i, c);
        }
        break;
      }
      case 1:
        u.swap_rows(static_cast<int>(rng.below(n)),
                    static_cast<int>(rng.below(n)));
        break;
      default: {
        int i = static_cast<int>(rng.below(n));
        Rational c(small_coprime(rng, ctx.prime()));
        if (rng.coin()) c = -c;
        u.scale_row(i, c);
        break;
      }
    }
  }
  return u;
}

QMatrix random_invertible(Rng& rng, int n) {
  for (;;) {
    QMatrix m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = Rational(rng.range(-5, 5));
    if (determinant(m) != 0) return m;
  }
}

Subspace random_subspace(Rng& rng, int n, int d) {
  for (;;) {
    QMatrix m(n, d);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < d; ++j) m(i, j) = Rational(rng.range(-5, 5));
    if (rank(m) == d) return Subspace(m);
  }
}

Lattice random_full_lattice(Rng& rng, int n, const ValuationContext& ctx,
                            long vmin, long vmax) {
  QMatrix d(n, n);
  for (int i = 0; i < n; ++i) d(i, i) = ctx.prime_power(rng.range(vmin, vmax));
  QMatrix b = random_unimodular(rng, n, ctx) * d * random_unimodular(rng, n, ctx);
  return Lattice(b, ctx);
}

NonarchInstance random_nonarch_instance(Rng& rng, int n, int p,
                                        const ValuationContext& ctx,
                                        bool conjugate) {
  if (p < 1 || 2 * p > n) throw DimensionMismatch("need 1 <= p <= n - p");
  int q = n - p;
  QMatrix d_frame(n, p), c_frame(n, p), shared(n, q - p);
  for (int j = 0; j < p; ++j) d_frame(j, j) = Rational(1);
  for (int j = 0; j < p; ++j) c_frame(p + j, j) = Rational(1);
  for (int j = 0; j < q - p; ++j) shared(2 * p + j, j) = Rational(1);

  QMatrix a_basis = d_frame + c_frame;
  Rational alpha, beta;
  QMatrix b_basis(n, p);
  for (;;) {
    QMatrix u1 = random_unimodular(rng, p, ctx);
    QMatrix u2 = random_unimodular(rng, p, ctx);
    alpha = random_rational_with_valuation(rng, ctx, -2, 2);
    beta = random_rational_with_valuation(rng, ctx, -2, 2);
    b_basis = beta * (d_frame * u1) + alpha * (c_frame * u2);
    if (rank(hconcat(a_basis, b_basis)) == 2 * p) break;
  }
  QMatrix c_basis = q > p ? hconcat(c_frame, shared) : c_frame;
  QMatrix d_basis = q > p ? hconcat(d_frame, shared) : d_frame;

  QMatrix la_basis = a_basis, lb_basis = b_basis;
  if (conjugate) {
    QMatrix t = random_invertible(rng, n);
    a_basis = t * a_basis;
    b_basis = t * b_basis;
    c_basis = t * c_basis;
    d_basis = t * d_basis;
    la_basis = t * la_basis;
    lb_basis = t * lb_basis;
  }
  // Hide the adapted frame: present each subspace through a recombined
  // basis. The lattices keep their original spans.
  a_basis = a_basis * random_invertible(rng, p);
  b_basis = b_basis * random_invertible(rng, p);
  c_basis = c_basis * random_invertible(rng, q);
  d_basis = d_basis * random_invertible(rng, q);

  long av = finite_valuation(alpha, ctx);
  long bv = finite_valuation(beta, ctx);
  return NonarchInstance{
      nonarch::CycleQuadruple(Subspace(a_basis), Subspace(b_basis),
                              Subspace(c_basis), Subspace(d_basis), ctx),
      Lattice(la_basis, ctx), Lattice(lb_basis, ctx), av, bv, p * (av - bv)};
}

using symspace::CMatrix;
using symspace::Complex;

symspace::CMatrix random_complex_matrix(Rng& rng, int rows, int cols) {
  CMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      m(i, j) = Complex(2.0 * rng.real01() - 1.0, 2.0 * rng.real01() - 1.0);
  return m;
}

namespace {

CMatrix ccat(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows(), a.cols() + b.cols());
  if (a.cols() > 0) out.leftCols(a.cols()) = a;
  if (b.cols() > 0) out.rightCols(b.cols()) = b;
  return out;
}

// Invertible and not too badly conditioned for the sizes in play.
CMatrix random_nonsingular(Rng& rng, int d) {
  for (;;) {
    CMatrix m = random_complex_matrix(rng, d, d);
    if (symspace::complex_rank(m) == d && std::abs(m.determinant()) > 1e-3)
      return m;
  }
}

}  // namespace

symspace::CMatrix random_unitary(Rng& rng, int n) {
  CMatrix m = random_nonsingular(rng, n);
  Eigen::HouseholderQR<CMatrix> qr(m);
  CMatrix q = qr.householderQ();
  return q;
}

symspace::CMatrix random_special_linear(Rng& rng, int n) {
  CMatrix m = random_nonsingular(rng, n);
  Complex det = m.determinant();
  Complex root = std::exp(std::log(det) / static_cast<double>(n));
  return m / root;
}

symspace::SpacePoint random_space_point(Rng& rng, int n) {
  CMatrix g = random_special_linear(rng, n);
  CMatrix h = g * g.adjoint();
  return symspace::SpacePoint(0.5 * (h + h.adjoint()));
}

symspace::ComplexSubspace random_complex_subspace(Rng& rng, int n, int d) {
  for (;;) {
    CMatrix m = random_complex_matrix(rng, n, d);
    if (symspace::complex_rank(m) == d) return symspace::ComplexSubspace(m);
  }
}

symspace::MetricClass random_metric(Rng& rng,
                                    const symspace::ComplexSubspace& space) {
  int d = space.dim();
  CMatrix m = random_complex_matrix(rng, d, d);
  CMatrix g = m.adjoint() * m + 0.3 * CMatrix::Identity(d, d);
  return symspace::MetricClass(space, 0.5 * (g + g.adjoint()));
}

ArchInstance random_arch_instance(Rng& rng, int n, int p, bool conjugate) {
  if (p < 1 || 2 * p > n) throw DimensionMismatch("need 1 <= p <= n - p");
  const int q = n - p;
  CMatrix eye = CMatrix::Identity(n, n);
  CMatrix d_frame = eye.leftCols(p);
  CMatrix c_frame = eye.middleCols(p, p);
  CMatrix shared = eye.rightCols(q - p);

  CMatrix a_basis = d_frame + c_frame;
  double alpha = 1.0, beta = 1.0;
  CMatrix b_basis;
  for (;;) {
    CMatrix u1 = random_unitary(rng, p);
    CMatrix u2 = random_unitary(rng, p);
    alpha = std::exp(3.0 * rng.real01() - 1.5);
    beta = std::exp(3.0 * rng.real01() - 1.5);
    b_basis = beta * (d_frame * u1) + alpha * (c_frame * u2);
    if (symspace::complex_rank(ccat(a_basis, b_basis)) == 2 * p) break;
  }
  CMatrix c_basis = ccat(c_frame, shared);
  CMatrix d_basis = ccat(d_frame, shared);

  if (conjugate) {
    CMatrix t = random_special_linear(rng, n);
    a_basis = t * a_basis;
    b_basis = t * b_basis;
    c_basis = t * c_basis;
    d_basis = t * d_basis;
  }

  // The metrics start as identity Grams on the adapted presentations; a
  // change of presented basis carries the Gram along, so the metric classes
  // themselves stay put while the frame is hidden.
  CMatrix ra = random_nonsingular(rng, p);
  CMatrix rb = random_nonsingular(rng, p);
  CMatrix ga = ra.adjoint() * ra;
  CMatrix gb = rb.adjoint() * rb;
  symspace::MetricClass h_a(symspace::ComplexSubspace(a_basis * ra),
                            0.5 * (ga + ga.adjoint()));
  symspace::MetricClass h_b(symspace::ComplexSubspace(b_basis * rb),
                            0.5 * (gb + gb.adjoint()));
  c_basis = c_basis * random_nonsingular(rng, q);
  d_basis = d_basis * random_nonsingular(rng, q);

  double expected = 2.0 * p * std::log(beta / alpha);
  return ArchInstance{
      arch::ArchQuadruple(h_a.subspace(), h_b.subspace(),
                          symspace::ComplexSubspace(c_basis),
                          symspace::ComplexSubspace(d_basis)),
      h_a, h_b, alpha, beta, expected};
}

}  // namespace arakelov
