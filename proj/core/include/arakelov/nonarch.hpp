#pragma once

#include "arakelov/building.hpp"

// Local intersection numbers of homologically trivial linear cycles at a
// finite prime. The cycle pair is (P(A) - P(B), P(C) - P(D)) with
// dim A = dim B = p, dim C = dim D = q, p + q = n, and each of A, B meeting
// each of C, D only in 0.
//
// Two independent routes to the number are provided: a determinant formula
// built from annihilators, and a geodesic construction in the building
// (complements C', D' of C ∩ D, scalars alpha and beta comparing projected
// lattices, a connecting geodesic, and the oriented distance between the
// gates of A and B on it). They must agree; the self-tests insist on it.

namespace arakelov {
namespace nonarch {

class CycleQuadruple {
 public:
  CycleQuadruple(Subspace a, Subspace b, Subspace c, Subspace d,
                 ValuationContext ctx);

  const Subspace& a() const { return a_; }
  const Subspace& b() const { return b_; }
  const Subspace& c() const { return c_; }
  const Subspace& d() const { return d_; }
  const ValuationContext& ctx() const { return ctx_; }
  int n() const { return a_.ambient_dim(); }
  int p() const { return a_.dim(); }
  int q() const { return c_.dim(); }

 private:
  Subspace a_, b_, c_, d_;
  ValuationContext ctx_;
};

// v_p of det(f_j(a_i)) det(g_j(b_i)) / (det(f_j(b_i)) det(g_j(a_i))) for
// annihilator bases f of C and g of D. Independent of every basis choice.
long intersection_algebraic(const CycleQuadruple& q);

struct Complements {
  Subspace c_prime;  // complement of C ∩ D inside C
  Subspace d_prime;  // complement of C ∩ D inside D
};

// When C ∩ D = 0 the complements are C and D themselves. Otherwise,
// requires U = <A, B> to decompose as (U ∩ C) ⊕ (U ∩ D); the complements
// then contain the respective pieces. Throws NotSpanning if C + D is not
// everything and HypothesesFailed if the decomposition fails. The
// condition is sufficient for the geodesic route, not claimed necessary.
Complements construct_complements(const CycleQuadruple& q);

// Inputs of the geodesic route, assembled around a choice of full-rank
// lattices L_A in A and L_B in B.
struct AssembledData {
  Subspace c_prime, d_prime;
  std::optional<Subspace> shared;  // C ∩ D when nonzero (p < q)
  Lattice l_a, l_b;
  Lattice m_cprime, m_dprime;      // projections of L_A onto C', D'
  std::optional<Lattice> m_shared; // chosen lattice in C ∩ D
};

// Defaults: L_A is spanned by the given basis of A; L_B is the preimage
// under the C'-projection of M_C' = p_C'(L_A), which satisfies the C'
// equivalence on the nose and leaves the D' equivalence as the genuine
// hypothesis to check.
AssembledData assemble_data(const CycleQuadruple& q,
                            std::optional<Lattice> l_a = std::nullopt,
                            std::optional<Lattice> l_b = std::nullopt);

struct ScalarValuations {
  long alpha_val;  // p_C'(L_B) = p^alpha * (unit) * p_C'(L_A)
  long beta_val;   // p_D'(L_B) = p^beta * (unit) * p_D'(L_A)
};

// Throws LatticesNotEquivalent when a projected pair is not homothetic,
// which is exactly the failure of the route's lattice hypothesis.
ScalarValuations scalar_valuations(const CycleQuadruple& q,
                                   const AssembledData& data);

// The geodesic connecting C and D' built from (M_shared ⊕ M_C', M_D').
building::CombinatorialGeodesic connecting_geodesic(const AssembledData& data);

// Gate of A at index 0 and of B at index beta - alpha, written down
// directly from the lattice sums in the proof of the gate formula.
LatticeClass gate_vertex_constructive(const AssembledData& data,
                                      const ScalarValuations& v, bool b_side);

struct GateSearchResult {
  LatticeClass vertex;
  long index;
};

// First vertex x of gamma, walking from the W end toward the W2 end, whose
// half geodesic toward `target` leaves gamma immediately after x.
GateSearchResult gate_vertex_search(const building::CombinatorialGeodesic& gamma,
                                    const Subspace& target, long k_min,
                                    long k_max);

struct GeometricResult {
  long value;
  // Set when p = 1 and <A, B> meets C and D in the same line (or A = B);
  // the value is then 0 and the geodesic fields stay empty.
  bool degenerate;
  std::optional<ScalarValuations> scalars;
  std::optional<long> distor;  // oriented gate distance: index(A) - index(B)
  std::optional<LatticeClass> gate_a, gate_b;
  std::optional<Complements> complements;
  long window;  // half width of the search range used
};

GeometricResult intersection_geometric_detailed(
    const CycleQuadruple& q, std::optional<Lattice> l_a = std::nullopt,
    std::optional<Lattice> l_b = std::nullopt);

long intersection_geometric(const CycleQuadruple& q,
                            std::optional<Lattice> l_a = std::nullopt,
                            std::optional<Lattice> l_b = std::nullopt);

}  // namespace nonarch
}  // namespace arakelov
