#pragma once

#include <cstdint>

#include "arakelov/arch.hpp"
#include "arakelov/nonarch.hpp"

// Deterministic randomness for self-tests and instance generation. The
// engine is splitmix64 driven directly (no std distribution objects, whose
// output the standard leaves implementation-defined), so a fixed seed
// produces identical streams on every platform.

namespace arakelov {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();
  long below(long n);            // uniform in [0, n)
  long range(long lo, long hi);  // uniform in [lo, hi]
  bool coin();
  double real01();               // 53-bit mantissa in [0, 1)

 private:
  // splitmix64; tiny, fully specified, and free of std library variance.
  std::uint64_t state_;
};

// Nonzero rational p^v * (a/b) with v uniform in [vmin, vmax] and unit part
// a/b built from small integers coprime to p, random sign.
Rational random_rational_with_valuation(Rng& rng, const ValuationContext& ctx,
                                        long vmin, long vmax);

// Unit-determinant matrix over Z_(p): a product of elementary row
// operations with Z_(p) coefficients and unit row scalings.
QMatrix random_unimodular(Rng& rng, int n, const ValuationContext& ctx);

// Invertible over Q with small integer entries; determinant need not be a
// unit at p.
QMatrix random_invertible(Rng& rng, int n);

Subspace random_subspace(Rng& rng, int n, int d);

// Full-rank lattice whose invariant factors (relative to the standard
// lattice) have exponents within [vmin, vmax].
Lattice random_full_lattice(Rng& rng, int n, const ValuationContext& ctx,
                            long vmin, long vmax);

// A cycle quadruple with known intersection number, built in an adapted
// frame: D' = <e_1..e_p>, C' = <e_p+1..e_2p>, C ∩ D = <e_2p+1..e_n>,
// a_i = e_i + e_p+i, and b_i = beta w_i + alpha w_p+i for unimodularly
// recombined frames w of D' and C' and random scalars alpha, beta. The
// pairing is then p (v(alpha) - v(beta)). Optionally the whole picture is
// conjugated by a random invertible matrix and the exposed bases are
// recombined, neither of which moves the value.
struct NonarchInstance {
  nonarch::CycleQuadruple quad;
  Lattice l_a, l_b;
  long alpha_val, beta_val;
  long expected;
};

NonarchInstance random_nonarch_instance(Rng& rng, int n, int p,
                                        const ValuationContext& ctx,
                                        bool conjugate);

// Complex helpers mirroring the rational ones.

symspace::CMatrix random_complex_matrix(Rng& rng, int rows, int cols);

// Haar-ish unitary from the QR of a random complex matrix.
symspace::CMatrix random_unitary(Rng& rng, int n);

// Determinant-one invertible complex matrix.
symspace::CMatrix random_special_linear(Rng& rng, int n);

symspace::SpacePoint random_space_point(Rng& rng, int n);

symspace::ComplexSubspace random_complex_subspace(Rng& rng, int n, int d);

// Random positive definite Gram on the subspace's presented basis.
symspace::MetricClass random_metric(Rng& rng,
                                    const symspace::ComplexSubspace& space);

// The Archimedean analogue of the adapted-frame construction: the frames
// of C' and D' are recombined unitarily, so with identity Gram matrices on
// the presented bases of A and B the comparison scalars come out exactly
// alpha and beta, and the pairing is 2 p log(beta / alpha).
struct ArchInstance {
  arch::ArchQuadruple quad;
  symspace::MetricClass h_a, h_b;
  double alpha, beta;
  double expected;
};

ArchInstance random_arch_instance(Rng& rng, int n, int p, bool conjugate);

}  // namespace arakelov
