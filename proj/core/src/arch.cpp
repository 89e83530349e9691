#include "arakelov/arch.hpp"

#include <cmath>
#include <sstream>

namespace arakelov {
namespace arch {

namespace {

using symspace::complex_coords;
using symspace::complex_extend_basis;
using symspace::complex_intersection;
using symspace::complex_rank;
using symspace::same_complex_subspace;

CMatrix cat(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows(), a.cols() + b.cols());
  if (a.cols() > 0) out.leftCols(a.cols()) = a;
  if (b.cols() > 0) out.rightCols(b.cols()) = b;
  return out;
}

CMatrix block_diag(const CMatrix& a, const CMatrix& b) {
  CMatrix out = CMatrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  if (a.size() > 0) out.topLeftCorner(a.rows(), a.cols()) = a;
  if (b.size() > 0) out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

// Projector with the given image, killing the span of the kernel columns.
CMatrix projector(const CMatrix& image, const CMatrix& kernel) {
  const long n = image.rows();
  CMatrix t = cat(image, kernel);
  if (t.cols() != n)
    throw DimensionMismatch("projector: frames do not fill the space");
  Eigen::FullPivLU<CMatrix> lu(t);
  if (!lu.isInvertible())
    throw SingularMatrix("projector: direct sum frame is singular");
  CMatrix e = CMatrix::Zero(n, n);
  for (long i = 0; i < image.cols(); ++i) e(i, i) = 1.0;
  return t * e * lu.inverse();
}

// For pencils the plane spanned by A and B meets C and D in a line each;
// the cycle degenerates exactly when those lines agree.
bool degenerate_pencil(const ArchQuadruple& quad) {
  if (quad.p() != 1) return false;
  CMatrix u = cat(quad.a().basis(), quad.b().basis());
  CMatrix uc = complex_intersection(u, quad.c().basis());
  CMatrix ud = complex_intersection(u, quad.d().basis());
  if (uc.cols() != ud.cols()) return false;
  if (uc.cols() == 0) return true;
  return same_complex_subspace(ComplexSubspace(uc), ComplexSubspace(ud));
}

void check_metric_on(const MetricClass& h, const ComplexSubspace& space,
                     const char* name) {
  if (!same_complex_subspace(h.subspace(), space)) {
    std::ostringstream msg;
    msg << "assemble_data: " << name << " is not a metric on the named subspace";
    throw DimensionMismatch(msg.str());
  }
}

}  // namespace

ArchQuadruple::ArchQuadruple(ComplexSubspace a, ComplexSubspace b,
                             ComplexSubspace c, ComplexSubspace d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
  const int n = a_.ambient_dim();
  if (b_.ambient_dim() != n || c_.ambient_dim() != n || d_.ambient_dim() != n)
    throw DimensionMismatch("ArchQuadruple: mixed ambient dimensions");
  const int p = a_.dim(), q = c_.dim();
  if (b_.dim() != p)
    throw DimensionMismatch("ArchQuadruple: A and B have different dimensions");
  if (d_.dim() != q)
    throw DimensionMismatch("ArchQuadruple: C and D have different dimensions");
  if (p + q != n)
    throw DimensionMismatch("ArchQuadruple: dimensions are not complementary");
  if (p > q)
    throw DimensionMismatch("ArchQuadruple: expected dim A <= dim C");
  auto joint_rank = [&](const ComplexSubspace& s, const ComplexSubspace& l,
                        const char* names) {
    if (complex_rank(cat(s.basis(), l.basis())) != n)
      throw ImproperIntersection(std::string("ArchQuadruple: ") + names +
                                 " meet nontrivially");
  };
  joint_rank(a_, c_, "A and C");
  joint_rank(a_, d_, "A and D");
  joint_rank(b_, c_, "B and C");
  joint_rank(b_, d_, "B and D");
}

ArchComplements construct_complements(const ArchQuadruple& quad) {
  const int n = quad.n(), q = quad.q();
  if (complex_rank(cat(quad.c().basis(), quad.d().basis())) != n)
    throw NotSpanning("construct_complements: C and D do not span the space");
  CMatrix cd = complex_intersection(quad.c().basis(), quad.d().basis());
  if (cd.cols() == 0) return ArchComplements{quad.c(), quad.d()};

  CMatrix u = cat(quad.a().basis(), quad.b().basis());
  int u_dim = complex_rank(u);
  CMatrix uc = complex_intersection(u, quad.c().basis());
  CMatrix ud = complex_intersection(u, quad.d().basis());
  CMatrix ucd = complex_intersection(uc, ud);
  if (static_cast<int>(uc.cols() + ud.cols()) != u_dim || ucd.cols() != 0) {
    std::ostringstream msg;
    msg << "the span of A and B does not split along C and D (pieces of"
        << " dimension " << uc.cols() << " and " << ud.cols()
        << " inside dimension " << u_dim << ")";
    throw HypothesesFailed("complement construction", msg.str());
  }

  CMatrix c_full = complex_extend_basis(cat(uc, cd), quad.c().basis(), q);
  CMatrix d_full = complex_extend_basis(cat(ud, cd), quad.d().basis(), q);
  long c_extra = c_full.cols() - uc.cols() - cd.cols();
  long d_extra = d_full.cols() - ud.cols() - cd.cols();
  return ArchComplements{
      ComplexSubspace(cat(uc, c_full.rightCols(c_extra))),
      ComplexSubspace(cat(ud, d_full.rightCols(d_extra)))};
}

MetricClass metric_pushforward(const MetricClass& h, const CMatrix& proj,
                               const ComplexSubspace& target) {
  const CMatrix& u = h.subspace().basis();
  if (proj.rows() != u.rows() || proj.cols() != u.rows())
    throw DimensionMismatch("metric_pushforward: projector shape is wrong");
  if (target.dim() != h.subspace().dim())
    throw DimensionMismatch(
        "metric_pushforward: source and target dimensions differ");
  CMatrix pu = proj * u;
  if (complex_rank(pu) != h.subspace().dim())
    throw SingularProjection(
        "metric_pushforward: projection collapses the subspace");
  CMatrix x;
  try {
    x = complex_coords(pu, target.basis());
  } catch (const NotInSpan&) {
    throw SingularProjection(
        "metric_pushforward: projected subspace misses the target");
  }
  CMatrix gram = x.adjoint() * h.gram() * x;
  return MetricClass(target, 0.5 * (gram + gram.adjoint()));
}

double metric_proportionality(const MetricClass& h1, const MetricClass& h2) {
  const CMatrix& b1 = h1.subspace().basis();
  const CMatrix& b2 = h2.subspace().basis();
  if (b1.rows() != b2.rows() || b1.cols() != b2.cols())
    throw DimensionMismatch("metric_proportionality: different spaces");
  double scale = std::max(1.0, b1.cwiseAbs().maxCoeff());
  if ((b1 - b2).cwiseAbs().maxCoeff() > 1e-9 * scale)
    throw DimensionMismatch(
        "metric_proportionality: gram matrices presented on different bases");
  const long d = h1.subspace().dim();
  CMatrix ratio = h1.gram().partialPivLu().solve(h2.gram());
  double c = ratio.trace().real() / static_cast<double>(d);
  if (!(c > 0.0))
    throw NotProportional("metric_proportionality: ratio is not positive");
  if ((h2.gram() - c * h1.gram()).norm() > 1e-9 * h2.gram().norm())
    throw NotProportional("metric_proportionality: metrics differ beyond scale");
  return c;
}

AssembledData assemble_data(const ArchQuadruple& quad,
                            std::optional<MetricClass> h_a,
                            std::optional<MetricClass> h_b,
                            std::optional<MetricClass> h0) {
  ArchComplements comp = construct_complements(quad);
  const int p = quad.p(), q = quad.q();

  std::optional<ComplexSubspace> shared;
  if (q > p) {
    CMatrix cd = complex_intersection(quad.c().basis(), quad.d().basis());
    if (static_cast<int>(cd.cols()) != q - p)
      throw Error("assemble_data: overlap of C and D has unexpected dimension");
    shared = ComplexSubspace(cd);
  }
  CMatrix shared_basis =
      shared ? shared->basis() : CMatrix(quad.n(), 0);

  CMatrix proj_c =
      projector(comp.c_prime.basis(), cat(shared_basis, comp.d_prime.basis()));
  CMatrix proj_d =
      projector(comp.d_prime.basis(), cat(shared_basis, comp.c_prime.basis()));

  MetricClass ha = h_a ? *h_a
                       : MetricClass(quad.a(), CMatrix::Identity(p, p));
  check_metric_on(ha, quad.a(), "h_A");

  MetricClass h_cp = metric_pushforward(ha, proj_c, comp.c_prime);
  MetricClass h_dp = metric_pushforward(ha, proj_d, comp.d_prime);

  MetricClass hb = [&]() {
    if (h_b) return *h_b;
    // Pull the metric on C' back through the projection restricted to B,
    // which makes the two metrics match exactly on the C' side.
    CMatrix pb = proj_c * quad.b().basis();
    if (complex_rank(pb) != p)
      throw SingularProjection(
          "assemble_data: projection collapses B, no default metric");
    CMatrix y = complex_coords(comp.c_prime.basis(), pb);
    CMatrix gram = y.adjoint() * h_cp.gram() * y;
    return MetricClass(quad.b(), 0.5 * (gram + gram.adjoint()));
  }();
  check_metric_on(hb, quad.b(), "h_B");

  MetricClass push_b_c = metric_pushforward(hb, proj_c, comp.c_prime);
  MetricClass push_b_d = metric_pushforward(hb, proj_d, comp.d_prime);
  double alpha = std::sqrt(metric_proportionality(push_b_c, h_cp));
  double beta = std::sqrt(metric_proportionality(push_b_d, h_dp));

  std::optional<MetricClass> h_sh;
  if (shared) {
    if (h0) {
      check_metric_on(*h0, *shared, "h0");
      h_sh = *h0;
    } else {
      h_sh = MetricClass(*shared, CMatrix::Identity(q - p, q - p));
    }
  }

  return AssembledData{comp.c_prime, comp.d_prime, shared, ha,   hb,
                       h_cp,         h_dp,         h_sh,   alpha, beta};
}

double intersection_closed_form(const ArchQuadruple& quad,
                                std::optional<MetricClass> h_a,
                                std::optional<MetricClass> h_b) {
  if (degenerate_pencil(quad)) return 0.0;
  AssembledData data =
      assemble_data(quad, std::move(h_a), std::move(h_b), std::nullopt);
  return 2.0 * quad.p() * std::log(data.beta / data.alpha);
}

ArchResult intersection_geometric_detailed(const ArchQuadruple& quad,
                                           std::optional<MetricClass> h_a,
                                           std::optional<MetricClass> h_b,
                                           std::optional<MetricClass> h0) {
  if (degenerate_pencil(quad))
    return ArchResult{0.0, true, std::nullopt, std::nullopt,
                      std::nullopt, std::nullopt, std::nullopt};

  AssembledData data =
      assemble_data(quad, std::move(h_a), std::move(h_b), std::move(h0));
  const double p = quad.p(), q = quad.q();

  // The connecting geodesic joins C (carrying the overlap metric summed
  // orthogonally with the one on C') to D'. The frame orientation runs
  // toward the first argument, while gate bookkeeping is done in the
  // opposite, C-to-D' direction; hence the sign flips below.
  MetricClass on_w = [&]() {
    if (!data.shared) return data.h_cprime;
    CMatrix basis = cat(data.h_shared->subspace().basis(),
                        data.c_prime.basis());
    CMatrix gram = block_diag(data.h_shared->gram(), data.h_cprime.gram());
    return MetricClass(ComplexSubspace(basis), gram);
  }();
  symspace::ArchGeodesic geo =
      symspace::geodesic_from_metrics(on_w, data.h_dprime);

  const double spq = std::sqrt(p * q);
  double hint_a = spq * std::log(q / p);
  double hint_b =
      spq * std::log(q * data.beta * data.beta / (p * data.alpha * data.alpha));
  symspace::GatePoint ga = symspace::gate_point(geo, quad.a(), -hint_a);
  symspace::GatePoint gb = symspace::gate_point(geo, quad.b(), -hint_b);

  double s_a = -ga.t_star, s_b = -gb.t_star;
  double distor = s_b - s_a;
  double value = std::sqrt(p / q) * distor;
  return ArchResult{value, false, data.alpha, data.beta, s_a, s_b, distor};
}

double intersection_geometric(const ArchQuadruple& quad,
                              std::optional<MetricClass> h_a,
                              std::optional<MetricClass> h_b,
                              std::optional<MetricClass> h0) {
  return intersection_geometric_detailed(quad, std::move(h_a), std::move(h_b),
                                         std::move(h0))
      .value;
}

double levine_pairing_p1(const ArchQuadruple& quad,
                         std::optional<CMatrix> ambient) {
  if (quad.p() != 1)
    throw WrongCodimension(
        "levine_pairing_p1: only point cycles pair against hyperplanes");
  const int n = quad.n();

  CMatrix g = CMatrix::Identity(n, n);
  if (ambient) {
    if (ambient->rows() != n || ambient->cols() != n)
      throw DimensionMismatch("levine_pairing_p1: ambient metric shape");
    double scale = std::max(1.0, ambient->cwiseAbs().maxCoeff());
    if ((*ambient - ambient->adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale)
      throw NotHermitian("levine_pairing_p1: ambient metric is not Hermitian");
    g = 0.5 * (*ambient + ambient->adjoint());
  }
  Eigen::LLT<CMatrix> llt(g);
  if (llt.info() != Eigen::Success)
    throw NotPositiveDefinite(
        "levine_pairing_p1: ambient metric is not positive definite");

  // Green's function of the hyperplane P(W): log of the metric norm squared
  // minus log of the squared modulus of the annihilating linear form,
  // normalized to unit dual norm.
  auto green = [&](const ComplexSubspace& w, const Eigen::VectorXcd& x) {
    Eigen::JacobiSVD<CMatrix> svd(w.basis(), Eigen::ComputeFullU);
    Eigen::VectorXcd u = svd.matrixU().col(n - 1);
    Complex zx = u.dot(x);
    if (std::norm(zx) == 0.0)
      throw ImproperIntersection(
          "levine_pairing_p1: evaluation point lies on the hyperplane");
    double dual = u.dot(llt.solve(u)).real();
    double norm_sq = x.dot(g * x).real();
    return std::log(norm_sq) - std::log(std::norm(zx) / dual);
  };

  Eigen::VectorXcd a = quad.a().basis().col(0);
  Eigen::VectorXcd b = quad.b().basis().col(0);
  return (green(quad.c(), a) - green(quad.d(), a)) -
         (green(quad.c(), b) - green(quad.d(), b));
}

}  // namespace arch
}  // namespace arakelov
