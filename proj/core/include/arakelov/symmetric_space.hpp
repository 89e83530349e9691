#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "arakelov/errors.hpp"

// Numerical geometry of the symmetric space of SL(n, C): points are
// determinant-one positive definite Hermitian matrices H = g g^dagger, the
// metric comes from the Killing form 4n Re Tr(XY) on Hermitian trace-free
// tangent matrices, and boundary points at infinity correspond to proper
// nonzero subspaces of C^n. Everything is double precision; the exactness
// lives on the finite-place side of the library.

namespace arakelov {
namespace symspace {

using CMatrix = Eigen::MatrixXcd;
using Complex = std::complex<double>;

// Numerical rank with singular values compared against reltol times the
// largest one.
int complex_rank(const CMatrix& m, double reltol = 1e-9);

// Columns span the intersection of the two column spans.
CMatrix complex_intersection(const CMatrix& a, const CMatrix& b,
                             double reltol = 1e-9);

// Appends columns of pool that keep the collection at full numerical rank
// until `target` columns are reached.
CMatrix complex_extend_basis(const CMatrix& current, const CMatrix& pool,
                             int target, double reltol = 1e-9);

// Least squares coordinates of x in the full-column-rank basis; throws
// NotInSpan if the residual is above reltol relative to the column norms.
CMatrix complex_coords(const CMatrix& basis, const CMatrix& x,
                       double reltol = 1e-9);

class ComplexSubspace {
 public:
  explicit ComplexSubspace(CMatrix basis);

  int ambient_dim() const { return static_cast<int>(basis_.rows()); }
  int dim() const { return static_cast<int>(basis_.cols()); }
  const CMatrix& basis() const { return basis_; }

 private:
  CMatrix basis_;
};

bool same_complex_subspace(const ComplexSubspace& a, const ComplexSubspace& b,
                           double reltol = 1e-9);

// A point H of the space. The constructor checks Hermitian symmetry and
// positive definiteness, then rescales to determinant one (the scaling
// identifies the intended coset).
class SpacePoint {
 public:
  explicit SpacePoint(const CMatrix& h);

  int dim() const { return static_cast<int>(h_.rows()); }
  const CMatrix& h() const { return h_; }

 private:
  CMatrix h_;
};

double distance(const SpacePoint& z1, const SpacePoint& z2);

// Unit-speed ray data: point(t) = (g e^{tX}) (g e^{tX})^dagger for
// X = diag(rho repeated r times, sigma repeated n-r times), which leaves
// the base point at t = 0 and heads to the boundary point of the subspace
// spanned by the first r columns of g as t grows.
struct RayParams {
  CMatrix g;  // determinant one
  int r;
  double rho, sigma;

  CMatrix direction() const;  // the diagonal X as a matrix
};

RayParams ray_to_boundary(const SpacePoint& x, const ComplexSubspace& w);

SpacePoint point_at(const RayParams& ray, double t);

// Hermitian positive definite Gram matrix on the given basis of a
// subspace; two metrics are in the same class when the Gram matrices are
// positive real multiples of one another.
class MetricClass {
 public:
  MetricClass(ComplexSubspace subspace, CMatrix gram);

  const ComplexSubspace& subspace() const { return subspace_; }
  const CMatrix& gram() const { return gram_; }

 private:
  ComplexSubspace subspace_;
  CMatrix gram_;
};

// The bi-infinite geodesic determined by metric classes on two
// complementary subspaces. Increasing t runs toward the boundary point of
// the FIRST metric's subspace.
struct ArchGeodesic {
  RayParams params;
};

ArchGeodesic geodesic_from_metrics(const MetricClass& first,
                                   const MetricClass& second);

inline SpacePoint point_at(const ArchGeodesic& geo, double t) {
  return point_at(geo.params, t);
}

// Killing form on Hermitian trace-free matrices.
double killing_inner(const CMatrix& x, const CMatrix& y);

// Killing inner product, at the geodesic point of parameter t, between the
// geodesic's direction and the initial direction of the ray toward the
// target boundary subspace. Vanishes exactly at the gate.
double gate_orthogonality(const ArchGeodesic& geo,
                          const ComplexSubspace& target, double t);

struct GatePoint {
  double t_star;
  SpacePoint z;
};

// Parameter where the ray from geo's point toward the boundary point of
// w_target is Killing-orthogonal to geo, found by bisection. A hint (from
// a closed form, when the caller has one) seeds the bracket; otherwise the
// interval [-50, 50] is scanned. If several sign changes show up in a scan
// the function refuses to guess and reports them all.
GatePoint gate_point(const ArchGeodesic& geo, const ComplexSubspace& w_target,
                     std::optional<double> hint = std::nullopt);

}  // namespace symspace
}  // namespace arakelov
