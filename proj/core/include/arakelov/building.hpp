#pragma once

#include <optional>

#include "arakelov/lattice.hpp"

// Vertex combinatorics of the affine building attached to PGL(n) over Q at
// a prime p. Vertices are homothety classes of full-rank lattices; the
// graph distance between classes {M} and {L} is s - r, where s is the least
// k with p^k L inside M and r the greatest k with M inside p^k L.
//
// A combinatorial geodesic here is the two-ended family of classes
// {M + p^k M2} indexed by k, for lattices M, M2 spanning complementary
// subspaces W, W2. Moving toward the W2 end means decreasing k.

namespace arakelov {
namespace building {

struct InclusionBounds {
  long r;  // greatest k with M ⊆ p^k L
  long s;  // least k with p^k L ⊆ M
};

// Computed on the canonical representatives; other representative choices
// shift r and s together, leaving s - r alone meaningful.
InclusionBounds inclusion_bounds(const LatticeClass& x, const LatticeClass& y);

long combinatorial_distance(const LatticeClass& x, const LatticeClass& y);

bool adjacent(const LatticeClass& x, const LatticeClass& y);

// Basis w_1..w_n of the full-rank lattice M whose first dim(W) vectors are
// a basis of the sublattice M ∩ W. Obtained from a Smith decomposition of
// W expressed in M-coordinates.
QMatrix split_basis(const Lattice& m, const Subspace& w);

// k-th vertex of the half geodesic from x toward the boundary point given
// by the proper nonzero subspace W: the class of (W ∩ M) + p^k M for the
// canonical representative M. k = 0 gives x back.
LatticeClass half_geodesic_vertex(const LatticeClass& x, const Subspace& w,
                                  long k);

class CombinatorialGeodesic {
 public:
  // Requires W ⊕ W2 = Q^n with m_w spanning W and m_w2 spanning W2 over Q.
  CombinatorialGeodesic(Subspace w, Subspace w2, Lattice m_w, Lattice m_w2);

  const Subspace& w() const { return w_; }
  const Subspace& w2() const { return w2_; }
  const Lattice& m_w() const { return m_w_; }
  const Lattice& m_w2() const { return m_w2_; }
  const LatticeClass& class_w() const { return class_w_; }
  const LatticeClass& class_w2() const { return class_w2_; }

  // Class of M + p^k M2 for the stored lattices. Homothetic replacements
  // of the lattices give the same family up to an index shift.
  LatticeClass vertex(long k) const;

 private:
  Subspace w_, w2_;
  Lattice m_w_, m_w2_;
  LatticeClass class_w_, class_w2_;
};

CombinatorialGeodesic geodesic_between(const Subspace& w, const Subspace& w2,
                                       const Lattice& m_w,
                                       const Lattice& m_w2);

// Index k with gamma.vertex(k) == x, scanned over [k_min, k_max].
std::optional<long> on_geodesic(const CombinatorialGeodesic& gamma,
                                const LatticeClass& x, long k_min, long k_max);

// Oriented position difference of two vertices on gamma: position of y
// minus position of x, where position increases toward the W2 end (i.e.
// distor = k_x - k_y). Throws NotOnGeodesic if either misses the window.
long distor(const CombinatorialGeodesic& gamma, const LatticeClass& x,
            const LatticeClass& y, long k_min = -32, long k_max = 32);

// Whether (W1 ∩ M) + p^m M and (W2 ∩ M) + p^m M agree as sublattices of
// the canonical representative M of x. This is the criterion for the half
// geodesics toward W1 and W2 to share their first m+1 vertices.
bool reduction_segment_equal(const LatticeClass& x, const Subspace& w1,
                             const Subspace& w2, long m);

}  // namespace building
}  // namespace arakelov
