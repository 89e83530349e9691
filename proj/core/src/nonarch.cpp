#include "arakelov/nonarch.hpp"

#include <unordered_set>
#include <utility>
#include <vector>

#include "arakelov/errors.hpp"
#include "arakelov/linalg.hpp"

namespace arakelov {
namespace nonarch {

namespace {

// Projector of Q^n with the given image and kernel (their bases must
// together form a basis of the whole space).
QMatrix projector(const QMatrix& image, const QMatrix& kernel) {
  int n = image.rows();
  QMatrix t = hconcat(image, kernel);
  if (t.cols() != n) throw DimensionMismatch("projector blocks do not fill the space");
  QMatrix selector(n, n);
  for (int j = 0; j < image.cols(); ++j) selector(j, j) = Rational(1);
  return t * selector * inverse(t);
}

QMatrix subspace_intersection(const Subspace& a, const Subspace& b) {
  return intersect_spans(a.basis(), b.basis());
}

// Rebuild a caller-supplied lattice against the quadruple's context and
// check it is a full-rank lattice inside the expected subspace.
Lattice adopt_lattice(const Lattice& given, const Subspace& home,
                      const ValuationContext& ctx, const char* what) {
  if (given.ambient_dim() != home.ambient_dim() || given.rank() != home.dim())
    throw DimensionMismatch(std::string(what) + " lattice has the wrong shape");
  coords_in_span(home.basis(), given.basis());  // throws NotInSpan
  return Lattice(given.basis(), ctx);
}

long homothety_valuation(const QMatrix& reference, const QMatrix& other,
                         const ValuationContext& ctx, const char* what) {
  QMatrix z = solve_square(reference, other);
  Valuation c = min_entry_valuation(z, ctx);
  Valuation det_val = valuation(determinant(z), ctx);
  if (!(det_val == Valuation(c.value() * z.cols())))
    throw LatticesNotEquivalent(std::string("projected lattices on ") + what +
                                " are not homothetic");
  return c.value();
}

// Largest absolute elementary exponent of the coordinates of the columns
// of m in the frame g0; used to size the gate search window.
long exponent_spread(const QMatrix& g0, const QMatrix& m,
                     const ValuationContext& ctx) {
  SmithDecomposition dec = smith_local(solve_square(g0, m), ctx);
  long best = 0;
  for (long e : dec.exponents) {
    if (e > best) best = e;
    if (-e > best) best = -e;
  }
  return best;
}

}  // namespace

CycleQuadruple::CycleQuadruple(Subspace a, Subspace b, Subspace c, Subspace d,
                               ValuationContext ctx)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)),
      ctx_(std::move(ctx)) {
  int n = a_.ambient_dim();
  if (b_.ambient_dim() != n || c_.ambient_dim() != n || d_.ambient_dim() != n)
    throw DimensionMismatch("cycle supports live in different ambient spaces");
  if (a_.dim() != b_.dim() || c_.dim() != d_.dim())
    throw DimensionMismatch("cycle pairs must have equal dimensions");
  if (a_.dim() + c_.dim() != n)
    throw DimensionMismatch("supports are not of complementary dimension");
  if (a_.dim() > c_.dim())
    throw DimensionMismatch("expected dim A <= dim C");
  const Subspace* small[2] = {&a_, &b_};
  const Subspace* large[2] = {&c_, &d_};
  const char* names[4] = {"A and C", "A and D", "B and C", "B and D"};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      if (rank(hconcat(small[i]->basis(), large[j]->basis())) != n)
        throw ImproperIntersection(std::string(names[2 * i + j]) +
                                   " meet nontrivially");
}

long intersection_algebraic(const CycleQuadruple& q) {
  QMatrix f = annihilator_basis(q.c().basis());
  QMatrix g = annihilator_basis(q.d().basis());
  Rational fa = determinant(f * q.a().basis());
  Rational fb = determinant(f * q.b().basis());
  Rational ga = determinant(g * q.a().basis());
  Rational gb = determinant(g * q.b().basis());
  return finite_valuation(fa * gb / (fb * ga), q.ctx());
}

Complements construct_complements(const CycleQuadruple& q) {
  int n = q.n();
  if (rank(hconcat(q.c().basis(), q.d().basis())) != n)
    throw NotSpanning("C + D is not the whole space");
  QMatrix cd = subspace_intersection(q.c(), q.d());
  if (cd.cols() == 0) return Complements{q.c(), q.d()};

  QMatrix u = hconcat(q.a().basis(), q.b().basis());
  int u_dim = rank(u);
  QMatrix uc = intersect_spans(u, q.c().basis());
  QMatrix ud = intersect_spans(u, q.d().basis());
  if (uc.cols() + ud.cols() != u_dim || intersect_spans(uc, ud).cols() != 0)
    throw HypothesesFailed(
        "complement construction",
        "<A, B> does not split as (<A,B> ∩ C) ⊕ (<A,B> ∩ D)");

  // Complete U ∩ C (next to C ∩ D) to a basis of C; the added vectors
  // together with U ∩ C form a complement of C ∩ D containing U ∩ C.
  QMatrix c_ext = extend_basis(hconcat(uc, cd), q.c().basis(), q.q());
  QMatrix c_prime = uc;
  for (int j = uc.cols() + cd.cols(); j < c_ext.cols(); ++j)
    c_prime = hconcat(c_prime, c_ext.column(j));
  QMatrix d_ext = extend_basis(hconcat(ud, cd), q.d().basis(), q.q());
  QMatrix d_prime = ud;
  for (int j = ud.cols() + cd.cols(); j < d_ext.cols(); ++j)
    d_prime = hconcat(d_prime, d_ext.column(j));
  return Complements{Subspace(c_prime), Subspace(d_prime)};
}

AssembledData assemble_data(const CycleQuadruple& q,
                            std::optional<Lattice> l_a,
                            std::optional<Lattice> l_b) {
  Complements comp = construct_complements(q);
  QMatrix cd = subspace_intersection(q.c(), q.d());
  std::optional<Subspace> shared;
  if (cd.cols() > 0) shared.emplace(cd);

  Lattice la = l_a ? adopt_lattice(*l_a, q.a(), q.ctx(), "A")
                   : Lattice(q.a().basis(), q.ctx());

  QMatrix c_kernel = shared ? hconcat(shared->basis(), comp.d_prime.basis())
                            : comp.d_prime.basis();
  QMatrix d_kernel = shared ? hconcat(shared->basis(), comp.c_prime.basis())
                            : comp.c_prime.basis();
  QMatrix proj_c = projector(comp.c_prime.basis(), c_kernel);
  QMatrix proj_d = projector(comp.d_prime.basis(), d_kernel);
  Lattice m_cprime(proj_c * la.basis(), q.ctx());
  Lattice m_dprime(proj_d * la.basis(), q.ctx());

  Lattice lb = l_b ? adopt_lattice(*l_b, q.b(), q.ctx(), "B")
                   : Lattice(q.b().basis() * coords_in_span(
                                 proj_c * q.b().basis(), m_cprime.basis()),
                             q.ctx());

  std::optional<Lattice> m_shared;
  if (shared) m_shared.emplace(shared->basis(), q.ctx());

  return AssembledData{comp.c_prime, comp.d_prime, std::move(shared),
                       std::move(la), std::move(lb), std::move(m_cprime),
                       std::move(m_dprime), std::move(m_shared)};
}

ScalarValuations scalar_valuations(const CycleQuadruple& q,
                                   const AssembledData& data) {
  QMatrix c_kernel = data.shared
                         ? hconcat(data.shared->basis(), data.d_prime.basis())
                         : data.d_prime.basis();
  QMatrix d_kernel = data.shared
                         ? hconcat(data.shared->basis(), data.c_prime.basis())
                         : data.c_prime.basis();
  QMatrix proj_c = projector(data.c_prime.basis(), c_kernel);
  QMatrix proj_d = projector(data.d_prime.basis(), d_kernel);

  QMatrix ya = coords_in_span(data.c_prime.basis(), data.m_cprime.basis());
  QMatrix yb = coords_in_span(data.c_prime.basis(), proj_c * data.l_b.basis());
  long alpha = homothety_valuation(ya, yb, q.ctx(), "C'");

  QMatrix za = coords_in_span(data.d_prime.basis(), data.m_dprime.basis());
  QMatrix zb = coords_in_span(data.d_prime.basis(), proj_d * data.l_b.basis());
  long beta = homothety_valuation(za, zb, q.ctx(), "D'");
  return ScalarValuations{alpha, beta};
}

building::CombinatorialGeodesic connecting_geodesic(const AssembledData& data) {
  QMatrix w_basis = data.shared
                        ? hconcat(data.m_shared->basis(), data.m_cprime.basis())
                        : data.m_cprime.basis();
  Lattice m_w(w_basis, data.l_a.ctx());
  return building::geodesic_between(Subspace(w_basis), data.d_prime, m_w,
                                    data.m_dprime);
}

LatticeClass gate_vertex_constructive(const AssembledData& data,
                                      const ScalarValuations& v, bool b_side) {
  long shift = b_side ? v.beta_val - v.alpha_val : 0;
  QMatrix gens = hconcat(
      data.m_dprime.scaled_by_prime_power(shift).basis(),
      data.shared ? hconcat(data.m_cprime.basis(), data.m_shared->basis())
                  : data.m_cprime.basis());
  return LatticeClass(Lattice(gens, data.l_a.ctx()));
}

GateSearchResult gate_vertex_search(const building::CombinatorialGeodesic& gamma,
                                    const Subspace& target, long k_min,
                                    long k_max) {
  std::vector<LatticeClass> verts;
  std::unordered_set<std::string> keys;
  verts.reserve(static_cast<size_t>(k_max - k_min + 3));
  for (long k = k_min - 1; k <= k_max + 1; ++k) {
    verts.push_back(gamma.vertex(k));
    keys.insert(verts.back().key());
  }
  for (long k = k_max; k >= k_min; --k) {
    const LatticeClass& x = verts[static_cast<size_t>(k - (k_min - 1))];
    LatticeClass next = building::half_geodesic_vertex(x, target, 1);
    if (keys.find(next.key()) == keys.end()) return GateSearchResult{x, k};
  }
  throw GateNotFound("no gate vertex in the searched window");
}

GeometricResult intersection_geometric_detailed(const CycleQuadruple& q,
                                                std::optional<Lattice> l_a,
                                                std::optional<Lattice> l_b) {
  if (q.p() == 1) {
    // A pencil through <A, B> that meets C and D in the same point (or in
    // none, when A = B) pairs to zero; no geodesic is needed.
    QMatrix u = hconcat(q.a().basis(), q.b().basis());
    QMatrix uc = intersect_spans(u, q.c().basis());
    QMatrix ud = intersect_spans(u, q.d().basis());
    bool same = uc.cols() == ud.cols() &&
                (uc.cols() == 0 || same_span(uc, ud));
    if (same)
      return GeometricResult{0, true, std::nullopt, std::nullopt,
                             std::nullopt, std::nullopt, std::nullopt, 0};
  }

  AssembledData data = assemble_data(q, std::move(l_a), std::move(l_b));
  ScalarValuations vals = scalar_valuations(q, data);
  building::CombinatorialGeodesic gamma = connecting_geodesic(data);

  QMatrix g0 = hconcat(gamma.m_w().basis(), gamma.m_w2().basis());
  long spread = exponent_spread(g0, data.l_a.basis(), q.ctx());
  long spread_b = exponent_spread(g0, data.l_b.basis(), q.ctx());
  if (spread_b > spread) spread = spread_b;
  long gap = vals.beta_val - vals.alpha_val;
  if (gap < 0) gap = -gap;
  long window = (gap > spread ? gap : spread) + 2;

  GateSearchResult ga = gate_vertex_search(gamma, q.a(), -window, window);
  GateSearchResult gb = gate_vertex_search(gamma, q.b(), -window, window);
  long dist_or = ga.index - gb.index;

  return GeometricResult{q.p() * dist_or,
                         false,
                         vals,
                         dist_or,
                         std::move(ga.vertex),
                         std::move(gb.vertex),
                         Complements{data.c_prime, data.d_prime},
                         window};
}

long intersection_geometric(const CycleQuadruple& q, std::optional<Lattice> l_a,
                            std::optional<Lattice> l_b) {
  return intersection_geometric_detailed(q, std::move(l_a), std::move(l_b))
      .value;
}

}  // namespace nonarch
}  // namespace arakelov
