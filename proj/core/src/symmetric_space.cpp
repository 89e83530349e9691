#include "arakelov/symmetric_space.hpp"

#include <cmath>
#include <sstream>

namespace arakelov {
namespace symspace {

namespace {

double matrix_scale(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

void check_finite(const CMatrix& m, const char* what) {
  if (!m.allFinite()) throw Error(std::string(what) + ": non-finite entries");
}

// H must be Hermitian up to roundoff; returns the symmetrized copy.
CMatrix hermitize(const CMatrix& h, const char* what) {
  check_finite(h, what);
  if (h.rows() != h.cols())
    throw DimensionMismatch(std::string(what) + ": matrix is not square");
  double scale = matrix_scale(h);
  double dev = (h - h.adjoint()).cwiseAbs().maxCoeff();
  if (!(dev <= 1e-12 * (scale > 0 ? scale : 1.0)))
    throw NotHermitian(std::string(what) + ": matrix is not Hermitian");
  return 0.5 * (h + h.adjoint());
}

CMatrix cholesky_factor(const CMatrix& h, const char* what) {
  Eigen::LLT<CMatrix> llt(h);
  if (llt.info() != Eigen::Success)
    throw NotPositiveDefinite(std::string(what) +
                              ": matrix is not positive definite");
  return llt.matrixL();
}

// exp(t X) for the ray's diagonal direction, as explicit column scalings.
CMatrix frame_at(const RayParams& ray, double t) {
  CMatrix g = ray.g;
  int n = static_cast<int>(g.rows());
  for (int j = 0; j < n; ++j)
    g.col(j) *= std::exp(t * (j < ray.r ? ray.rho : ray.sigma));
  return g;
}

double rho_of(int n, int r) {
  return std::sqrt(static_cast<double>(n - r) /
                   (4.0 * r * static_cast<double>(n) * n));
}

}  // namespace

int complex_rank(const CMatrix& m, double reltol) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  int r = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > reltol * sv(0)) ++r;
  return r;
}

CMatrix complex_intersection(const CMatrix& a, const CMatrix& b,
                             double reltol) {
  if (a.rows() != b.rows())
    throw DimensionMismatch("complex_intersection: ambient dimensions differ");
  long n = a.rows();
  if (a.cols() == 0 || b.cols() == 0) return CMatrix(n, 0);
  CMatrix stacked(n, a.cols() + b.cols());
  stacked << a, -b;
  Eigen::JacobiSVD<CMatrix> svd(stacked, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  double top = sv.size() ? sv(0) : 0.0;
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (top > 0 && sv(i) > reltol * top) ++rank;
  long nullity = stacked.cols() - rank;
  if (nullity == 0) return CMatrix(n, 0);
  CMatrix raw = a * svd.matrixV().rightCols(nullity).topRows(a.cols());
  // Orthonormalize and drop the numerically dependent directions. The
  // comparison scale must include the size of the inputs: when the inputs
  // overlap only in roundoff, raw is all noise, and measuring its columns
  // against their own largest singular value would promote that noise to a
  // spurious intersection direction.
  Eigen::JacobiSVD<CMatrix> reduce(raw, Eigen::ComputeThinU);
  const auto& rs = reduce.singularValues();
  double rtop = rs.size() ? rs(0) : 0.0;
  double floor = reltol * top;
  int rr = 0;
  for (int i = 0; i < rs.size(); ++i)
    if (rtop > 0 && rs(i) > reltol * rtop && rs(i) > floor) ++rr;
  return reduce.matrixU().leftCols(rr);
}

CMatrix complex_extend_basis(const CMatrix& current, const CMatrix& pool,
                             int target, double reltol) {
  CMatrix out = current;
  if (complex_rank(out, reltol) < out.cols())
    throw RankDeficient("complex_extend_basis: starting columns dependent");
  for (long j = 0; j < pool.cols() && out.cols() < target; ++j) {
    CMatrix candidate(out.rows(), out.cols() + 1);
    candidate << out, pool.col(j);
    if (complex_rank(candidate, reltol) == candidate.cols()) out = candidate;
  }
  if (out.cols() < target)
    throw RankDeficient("complex_extend_basis: pool does not reach target");
  return out;
}

CMatrix complex_coords(const CMatrix& basis, const CMatrix& x, double reltol) {
  CMatrix c = basis.colPivHouseholderQr().solve(x);
  if ((basis * c - x).norm() > reltol * (1.0 + x.norm()))
    throw NotInSpan("complex_coords: columns leave the span");
  return c;
}

ComplexSubspace::ComplexSubspace(CMatrix basis) : basis_(std::move(basis)) {
  check_finite(basis_, "ComplexSubspace");
  if (basis_.cols() < 1 || basis_.cols() > basis_.rows())
    throw DimensionMismatch("ComplexSubspace: bad column count");
  if (complex_rank(basis_) != basis_.cols())
    throw RankDeficient("ComplexSubspace: dependent columns");
}

bool same_complex_subspace(const ComplexSubspace& a, const ComplexSubspace& b,
                           double reltol) {
  if (a.ambient_dim() != b.ambient_dim() || a.dim() != b.dim()) return false;
  CMatrix joint(a.basis().rows(), a.dim() + b.dim());
  joint << a.basis(), b.basis();
  return complex_rank(joint, reltol) == a.dim();
}

SpacePoint::SpacePoint(const CMatrix& h) : h_(hermitize(h, "SpacePoint")) {
  CMatrix l = cholesky_factor(h_, "SpacePoint");
  double logdet = 0.0;
  for (int i = 0; i < l.rows(); ++i) logdet += 2.0 * std::log(std::abs(l(i, i)));
  h_ *= std::exp(-logdet / static_cast<double>(l.rows()));
}

double distance(const SpacePoint& z1, const SpacePoint& z2) {
  if (z1.dim() != z2.dim())
    throw DimensionMismatch("distance: points of different size");
  Eigen::GeneralizedSelfAdjointEigenSolver<CMatrix> ges(z2.h(), z1.h());
  if (ges.info() != Eigen::Success)
    throw NotPositiveDefinite("distance: generalized eigensolve failed");
  double sum = 0.0;
  for (int i = 0; i < ges.eigenvalues().size(); ++i) {
    double lam = ges.eigenvalues()(i);
    if (!(lam > 0))
      throw NotPositiveDefinite("distance: nonpositive relative eigenvalue");
    double a = 0.5 * std::log(lam);
    sum += a * a;
  }
  return 2.0 * std::sqrt(static_cast<double>(z1.dim())) * std::sqrt(sum);
}

CMatrix RayParams::direction() const {
  long n = g.rows();
  CMatrix x = CMatrix::Zero(n, n);
  for (long i = 0; i < n; ++i) x(i, i) = (i < r ? rho : sigma);
  return x;
}

RayParams ray_to_boundary(const SpacePoint& x, const ComplexSubspace& w) {
  int n = x.dim();
  int r = w.dim();
  if (w.ambient_dim() != n)
    throw DimensionMismatch("ray_to_boundary: ambient dimensions differ");
  if (r <= 0 || r >= n)
    throw DimensionMismatch("ray_to_boundary: subspace must be proper");
  CMatrix f = cholesky_factor(x.h(), "ray_to_boundary");
  CMatrix pulled = f.triangularView<Eigen::Lower>().solve(w.basis());
  Eigen::HouseholderQR<CMatrix> qr(pulled);
  CMatrix k = qr.householderQ();
  CMatrix g = f * k;
  Complex det = g.determinant();
  g.col(n - 1) /= det;  // |det| = 1 up to roundoff, so this is a phase
  double rho = rho_of(n, r);
  return RayParams{std::move(g), r, rho, -(static_cast<double>(r) / (n - r)) * rho};
}

SpacePoint point_at(const RayParams& ray, double t) {
  CMatrix g = frame_at(ray, t);
  CMatrix h = g * g.adjoint();
  return SpacePoint(0.5 * (h + h.adjoint()));
}

MetricClass::MetricClass(ComplexSubspace subspace, CMatrix gram)
    : subspace_(std::move(subspace)), gram_(hermitize(gram, "MetricClass")) {
  if (gram_.rows() != subspace_.dim())
    throw DimensionMismatch("MetricClass: Gram size does not match subspace");
  cholesky_factor(gram_, "MetricClass");
}

ArchGeodesic geodesic_from_metrics(const MetricClass& first,
                                   const MetricClass& second) {
  int n = first.subspace().ambient_dim();
  int r = first.subspace().dim();
  if (second.subspace().ambient_dim() != n)
    throw DimensionMismatch("geodesic_from_metrics: ambient dimensions differ");
  if (r + second.subspace().dim() != n)
    throw NotComplementary("geodesic_from_metrics: dimensions do not add up");

  // Orthonormal bases for each metric: basis * L^{-dagger} has Gram I.
  CMatrix u1 = cholesky_factor(first.gram(), "geodesic_from_metrics").adjoint();
  CMatrix u2 = cholesky_factor(second.gram(), "geodesic_from_metrics").adjoint();
  CMatrix g(n, n);
  g << first.subspace().basis() * u1.triangularView<Eigen::Upper>().solve(
                                      CMatrix::Identity(r, r)),
      second.subspace().basis() * u2.triangularView<Eigen::Upper>().solve(
                                      CMatrix::Identity(n - r, n - r));
  Complex det = g.determinant();
  if (!(std::abs(det) > 1e-12))
    throw NotComplementary("geodesic_from_metrics: subspaces are not complementary");
  g *= std::pow(std::abs(det), -1.0 / n);
  g.col(n - 1) /= det / std::abs(det);
  double rho = rho_of(n, r);
  return ArchGeodesic{
      RayParams{std::move(g), r, rho, -(static_cast<double>(r) / (n - r)) * rho}};
}

double killing_inner(const CMatrix& x, const CMatrix& y) {
  if (x.rows() != x.cols() || y.rows() != y.cols() || x.rows() != y.rows())
    throw DimensionMismatch("killing_inner: shapes differ");
  long n = x.rows();
  for (const CMatrix* m : {&x, &y}) {
    double scale = matrix_scale(*m);
    if (!((*m - m->adjoint()).cwiseAbs().maxCoeff() <=
          1e-12 * (scale > 0 ? scale : 1.0)))
      throw NotTangent("killing_inner: matrix is not Hermitian");
    if (!(std::abs(m->trace()) <= 1e-12 * std::max(1.0, scale)))
      throw NotTangent("killing_inner: matrix has nonzero trace");
  }
  return 4.0 * static_cast<double>(n) * (x * y).trace().real();
}

double gate_orthogonality(const ArchGeodesic& geo,
                          const ComplexSubspace& target, double t) {
  CMatrix g_t = frame_at(geo.params, t);
  CMatrix h = g_t * g_t.adjoint();
  SpacePoint z(0.5 * (h + h.adjoint()));
  RayParams ray = ray_to_boundary(z, target);
  // Both frames present the same point, so k is unitary up to roundoff and
  // conjugating the ray direction by it moves it into the geodesic's frame.
  CMatrix k = g_t.partialPivLu().solve(ray.g);
  CMatrix m = k * ray.direction() * k.adjoint();
  m = 0.5 * (m + m.adjoint());
  m -= (m.trace() / static_cast<double>(m.rows())) *
       CMatrix::Identity(m.rows(), m.cols());
  return killing_inner(m, geo.params.direction());
}

GatePoint gate_point(const ArchGeodesic& geo, const ComplexSubspace& w_target,
                     std::optional<double> hint) {
  auto f = [&](double t) { return gate_orthogonality(geo, w_target, t); };

  double lo = 0.0, hi = 0.0;
  bool bracketed = false;
  if (hint) {
    double half = 1.0;
    while (half <= 64.0) {
      lo = *hint - half;
      hi = *hint + half;
      double flo = f(lo), fhi = f(hi);
      if (flo == 0.0) return GatePoint{lo, point_at(geo, lo)};
      if (fhi == 0.0) return GatePoint{hi, point_at(geo, hi)};
      if ((flo < 0) != (fhi < 0)) {
        bracketed = true;
        break;
      }
      half *= 2.0;
    }
  }
  if (!bracketed) {
    // No usable hint: scan for sign changes and insist on exactly one.
    const double kLimit = 50.0, kStep = 0.5;
    std::vector<std::pair<double, double>> brackets;
    double prev_t = -kLimit, prev_f = f(prev_t);
    for (double t = -kLimit + kStep; t <= kLimit + 1e-9; t += kStep) {
      double ft = f(t);
      if (prev_f == 0.0 || (prev_f < 0) != (ft < 0))
        brackets.emplace_back(prev_t, t);
      prev_t = t;
      prev_f = ft;
    }
    if (brackets.empty())
      throw NoRoot("gate_point: no orthogonality sign change on the scan range");
    if (brackets.size() > 1) {
      std::ostringstream msg;
      msg << "gate_point: multiple orthogonality roots; sign changes near t =";
      for (const auto& b : brackets) msg << " " << 0.5 * (b.first + b.second);
      throw HypothesesFailed("gate uniqueness", msg.str());
    }
    lo = brackets.front().first;
    hi = brackets.front().second;
  }

  double flo = f(lo);
  double t = 0.5 * (lo + hi);
  for (int iter = 0; iter < 200; ++iter) {
    t = 0.5 * (lo + hi);
    double ft = f(t);
    if (std::abs(ft) <= 1e-12 || hi - lo <= 1e-14) break;
    if ((ft < 0) == (flo < 0)) {
      lo = t;
      flo = ft;
    } else {
      hi = t;
    }
  }
  if (std::abs(f(t)) > 1e-11)
    throw NoRoot("gate_point: bisection failed to reach the residual target");
  return GatePoint{t, point_at(geo, t)};
}

}  // namespace symspace
}  // namespace arakelov
