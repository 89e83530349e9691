#pragma once

#include "arakelov/smith.hpp"

namespace arakelov {

// Finitely generated free Z_(p)-submodule of Q^n, possibly of partial rank,
// held as an independent column basis.
class Lattice {
 public:
  Lattice(QMatrix basis, ValuationContext ctx);

  int ambient_dim() const { return basis_.rows(); }
  int rank() const { return basis_.cols(); }
  const QMatrix& basis() const { return basis_; }
  const ValuationContext& ctx() const { return ctx_; }

  Lattice scaled_by_prime_power(long k) const;

 private:
  QMatrix basis_;
  ValuationContext ctx_;
};

// Two lattices are equal (as submodules, not merely homothetic) iff each
// basis is a Z_(p)-combination of the other.
bool same_lattice(const Lattice& a, const Lattice& b);

// The lattice spanned by a possibly redundant set of generators (columns),
// with a proper basis extracted via a Smith decomposition.
Lattice lattice_from_generators(const QMatrix& generators,
                                const ValuationContext& ctx);

// Homothety class of a lattice, i.e. a vertex of the building when the rank
// is full. The stored representative is canonical: the column Hermite form
// of any basis, rescaled by the global power of p that brings the minimal
// pivot exponent to zero. Classes are equal iff the canonical bases are
// equal entry by entry.
class LatticeClass {
 public:
  explicit LatticeClass(const Lattice& lattice);

  const Lattice& canonical() const { return canonical_; }
  int ambient_dim() const { return canonical_.ambient_dim(); }
  int rank() const { return canonical_.rank(); }

  friend bool operator==(const LatticeClass& a, const LatticeClass& b) {
    return a.canonical_.basis() == b.canonical_.basis();
  }

  // Stable rendering of the canonical basis, usable as a hash key.
  std::string key() const { return canonical_.basis().str(); }

 private:
  Lattice canonical_;
};

class Subspace {
 public:
  Subspace(QMatrix basis);

  int ambient_dim() const { return basis_.rows(); }
  int dim() const { return basis_.cols(); }
  const QMatrix& basis() const { return basis_; }

 private:
  QMatrix basis_;
};

bool same_subspace(const Subspace& a, const Subspace& b);

}  // namespace arakelov
