#pragma once

#include "arakelov/symmetric_space.hpp"

// The Archimedean local intersection number of (P(A) - P(B), P(C) - P(D)),
// computed three independent ways: a closed form 2p log(beta/alpha) from
// comparing pushforward metrics, the gate-distance formula along a
// geodesic of the symmetric space, and (for pencils, p = 1) the evaluation
// of Levine-form differences at the two points.
//
// Conventions mirror the finite place: complements C', D' of the overlap
// C ∩ D, metrics on A and B in place of lattices, and scalars alpha, beta
// read off from projections of those metrics.

namespace arakelov {
namespace arch {

using symspace::CMatrix;
using symspace::Complex;
using symspace::ComplexSubspace;
using symspace::MetricClass;

class ArchQuadruple {
 public:
  ArchQuadruple(ComplexSubspace a, ComplexSubspace b, ComplexSubspace c,
                ComplexSubspace d);

  const ComplexSubspace& a() const { return a_; }
  const ComplexSubspace& b() const { return b_; }
  const ComplexSubspace& c() const { return c_; }
  const ComplexSubspace& d() const { return d_; }
  int n() const { return a_.ambient_dim(); }
  int p() const { return a_.dim(); }
  int q() const { return c_.dim(); }

 private:
  ComplexSubspace a_, b_, c_, d_;
};

struct ArchComplements {
  ComplexSubspace c_prime, d_prime;
};

// Same construction as at the finite place, with rank decisions made at
// numerical tolerance.
ArchComplements construct_complements(const ArchQuadruple& q);

// Gram matrix of h composed with the inverse of proj (restricted to h's
// subspace, which proj must carry bijectively onto target's span),
// expressed on target's basis.
MetricClass metric_pushforward(const MetricClass& h, const CMatrix& proj,
                               const ComplexSubspace& target);

// The positive c with gram2 = c * gram1, if there is one.
double metric_proportionality(const MetricClass& h1, const MetricClass& h2);

struct AssembledData {
  ComplexSubspace c_prime, d_prime;
  std::optional<ComplexSubspace> shared;  // C ∩ D when p < q
  MetricClass h_a, h_b;
  MetricClass h_cprime, h_dprime;         // pushforwards of h_a
  std::optional<MetricClass> h_shared;    // metric on C ∩ D, when p < q
  double alpha, beta;
};

// Defaults mirror the finite side: h_A is the metric with Gram identity on
// the presented basis of A, h_B the pullback of p_{C'*}(h_A) through the
// C' projection (making alpha exactly 1), h0 the identity Gram on the
// computed basis of C ∩ D.
AssembledData assemble_data(const ArchQuadruple& q,
                            std::optional<MetricClass> h_a = std::nullopt,
                            std::optional<MetricClass> h_b = std::nullopt,
                            std::optional<MetricClass> h0 = std::nullopt);

struct ArchResult {
  double value;
  bool degenerate;  // p = 1 with <A, B> meeting C and D in the same line
  std::optional<double> alpha, beta;
  // Gate parameters in the orientation running from C toward D', and their
  // oriented difference s_b - s_a; value = sqrt(p/q) * distor.
  std::optional<double> s_a, s_b, distor;
};

double intersection_closed_form(const ArchQuadruple& q,
                                std::optional<MetricClass> h_a = std::nullopt,
                                std::optional<MetricClass> h_b = std::nullopt);

ArchResult intersection_geometric_detailed(
    const ArchQuadruple& q, std::optional<MetricClass> h_a = std::nullopt,
    std::optional<MetricClass> h_b = std::nullopt,
    std::optional<MetricClass> h0 = std::nullopt);

double intersection_geometric(const ArchQuadruple& q,
                              std::optional<MetricClass> h_a = std::nullopt,
                              std::optional<MetricClass> h_b = std::nullopt,
                              std::optional<MetricClass> h0 = std::nullopt);

// Neron-style evaluation for pencils: the Levine function of a hyperplane
// cycle is log of the metric norm squared minus log of the squared modulus
// of the (dual-unit) annihilating form, and the pairing is the alternating
// sum of its values at generators of A and B. The ambient Hermitian metric
// drops out of the result; callers may pass one to exercise that.
double levine_pairing_p1(const ArchQuadruple& q,
                         std::optional<CMatrix> ambient = std::nullopt);

}  // namespace arch
}  // namespace arakelov
