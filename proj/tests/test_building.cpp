#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "arakelov/building.hpp"
#include "arakelov/generator.hpp"
#include "oracles.hpp"

using namespace arakelov;
using namespace arakelov::building;

namespace {

LatticeClass standard_class(int n, const ValuationContext& ctx) {
  return LatticeClass(Lattice(QMatrix::identity(n), ctx));
}

LatticeClass diag_class(const std::vector<long>& exps,
                        const ValuationContext& ctx) {
  int n = static_cast<int>(exps.size());
  QMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = ctx.prime_power(exps[i]);
  return LatticeClass(Lattice(m, ctx));
}

}  // namespace

TEST_CASE("canonical representative pinned forms") {
  ValuationContext ctx(5);
  QMatrix diag(2, 2);
  diag(0, 0) = 1;
  diag(1, 1) = ctx.prime_power(2);
  LatticeClass cls(Lattice(diag, ctx));
  CHECK(cls.canonical().basis() == diag);

  // scaling by p (or any power) leaves the class unchanged
  LatticeClass scaled(Lattice(ctx.prime_power(1) * diag, ctx));
  CHECK(scaled == cls);
  LatticeClass scaled_down(Lattice(ctx.prime_power(-3) * diag, ctx));
  CHECK(scaled_down == cls);
}

TEST_CASE("canonical representative is basis independent") {
  for (long prime : {2L, 3L, 13L}) {
    ValuationContext ctx(prime);
    Rng rng(40 + prime);
    for (int trial = 0; trial < 60; ++trial) {
      int n = static_cast<int>(rng.range(1, 4));
      Lattice l = random_full_lattice(rng, n, ctx, -3, 3);
      LatticeClass cls(l);
      QMatrix recombined = l.basis() * random_unimodular(rng, n, ctx);
      long shift = rng.range(-2, 2);
      LatticeClass cls2(
          Lattice(ctx.prime_power(shift) * recombined, ctx));
      CHECK(cls == cls2);
    }
  }
}

TEST_CASE("class equality matches lattice equality up to scaling") {
  ValuationContext ctx(3);
  Rng rng(91);
  int agree = 0;
  for (int trial = 0; trial < 80; ++trial) {
    int n = static_cast<int>(rng.range(2, 3));
    Lattice a = random_full_lattice(rng, n, ctx, -2, 2);
    Lattice b = random_full_lattice(rng, n, ctx, -2, 2);
    bool classes_equal = LatticeClass(a) == LatticeClass(b);
    bool homothetic = false;
    for (long k = -4; k <= 4; ++k)
      if (same_lattice(a.scaled_by_prime_power(k), b)) homothetic = true;
    CHECK(classes_equal == homothetic);
    if (classes_equal) ++agree;
  }
  CHECK(agree < 80);  // the sample is not degenerate
}

TEST_CASE("distance pinned values") {
  ValuationContext ctx(5);
  CHECK(combinatorial_distance(standard_class(2, ctx),
                               diag_class({0, 2}, ctx)) == 2);
  CHECK(combinatorial_distance(standard_class(3, ctx),
                               diag_class({0, 1, 2}, ctx)) == 2);
  CHECK(combinatorial_distance(standard_class(2, ctx),
                               standard_class(2, ctx)) == 0);
  InclusionBounds b = inclusion_bounds(standard_class(2, ctx),
                                       diag_class({0, 2}, ctx));
  CHECK(b.s - b.r == 2);
}

TEST_CASE("distance is a metric and invariant under unimodular maps") {
  for (long prime : {2L, 5L}) {
    ValuationContext ctx(prime);
    Rng rng(700 + prime);
    for (int trial = 0; trial < 60; ++trial) {
      int n = static_cast<int>(rng.range(2, 4));
      LatticeClass x(random_full_lattice(rng, n, ctx, -3, 3));
      LatticeClass y(random_full_lattice(rng, n, ctx, -3, 3));
      LatticeClass z(random_full_lattice(rng, n, ctx, -3, 3));
      long dxy = combinatorial_distance(x, y);
      CHECK(dxy >= 0);
      CHECK((dxy == 0) == (x == y));
      CHECK(dxy == combinatorial_distance(y, x));
      CHECK(dxy <= combinatorial_distance(x, z) +
                       combinatorial_distance(z, y));

      // transport by a common basis change with unit determinant
      QMatrix u = random_unimodular(rng, n, ctx);
      LatticeClass ux(Lattice(u * x.canonical().basis(), ctx));
      LatticeClass uy(Lattice(u * y.canonical().basis(), ctx));
      CHECK(combinatorial_distance(ux, uy) == dxy);
    }
  }
}

TEST_CASE("adjacency") {
  ValuationContext ctx(2);
  CHECK(adjacent(standard_class(2, ctx), diag_class({0, 1}, ctx)));
  CHECK(!adjacent(standard_class(2, ctx), standard_class(2, ctx)));
  CHECK(!adjacent(standard_class(2, ctx), diag_class({0, 2}, ctx)));
}

TEST_CASE("split basis adapts to the subspace") {
  Rng rng(55);
  for (long prime : {2L, 3L}) {
    ValuationContext ctx(prime);
    for (int trial = 0; trial < 50; ++trial) {
      int n = static_cast<int>(rng.range(2, 4));
      int d = static_cast<int>(rng.range(1, n - 1));
      Lattice m = random_full_lattice(rng, n, ctx, -2, 2);
      Subspace w = random_subspace(rng, n, d);
      QMatrix adapted = split_basis(m, w);
      // still a basis of the same lattice
      CHECK(same_lattice(Lattice(adapted, ctx), m));
      // leading columns live in W and span a lattice of full rank in it
      QMatrix head = adapted.columns(0, d);
      CHECK(same_span(head, w.basis()));
    }
  }
}

TEST_CASE("half geodesic pinned vertices") {
  ValuationContext ctx(3);
  LatticeClass x = standard_class(2, ctx);

  Subspace e1(QMatrix::parse_rows({{"1"}, {"0"}}));
  CHECK(half_geodesic_vertex(x, e1, 3) == diag_class({0, 3}, ctx));

  Subspace diag_line(QMatrix::parse_rows({{"1"}, {"1"}}));
  QMatrix expected = QMatrix::parse_rows({{"1", "0"}, {"1", "3"}});
  CHECK(half_geodesic_vertex(x, diag_line, 1) ==
        LatticeClass(Lattice(expected, ctx)));

  CHECK(half_geodesic_vertex(x, e1, 0) == x);
}

TEST_CASE("half geodesic walks away at unit speed") {
  Rng rng(66);
  for (long prime : {2L, 5L}) {
    ValuationContext ctx(prime);
    for (int trial = 0; trial < 40; ++trial) {
      int n = static_cast<int>(rng.range(2, 4));
      int d = static_cast<int>(rng.range(1, n - 1));
      LatticeClass x(random_full_lattice(rng, n, ctx, -2, 2));
      Subspace w = random_subspace(rng, n, d);
      LatticeClass prev = x;
      for (long k = 1; k <= 5; ++k) {
        LatticeClass v = half_geodesic_vertex(x, w, k);
        CHECK(combinatorial_distance(x, v) == k);
        CHECK(adjacent(prev, v));
        prev = v;
      }
    }
  }
}

TEST_CASE("two ended geodesic pinned fixture") {
  ValuationContext ctx(5);
  Subspace w(QMatrix::parse_rows({{"1"}, {"0"}}));
  Subspace w2(QMatrix::parse_rows({{"0"}, {"1"}}));
  Lattice mw(w.basis(), ctx), mw2(w2.basis(), ctx);
  CombinatorialGeodesic g = geodesic_between(w, w2, mw, mw2);

  CHECK(g.vertex(0) == standard_class(2, ctx));
  CHECK(g.vertex(1) == diag_class({0, 1}, ctx));
  CHECK(distor(g, g.vertex(0), g.vertex(1)) == -1);
  CHECK(distor(g, g.vertex(1), g.vertex(0)) == 1);

  CHECK(on_geodesic(g, g.vertex(2), -6, 6) == 2);
  LatticeClass off(Lattice(QMatrix::parse_rows({{"1", "0"}, {"1", "5"}}), ctx));
  CHECK(!on_geodesic(g, off, -6, 6).has_value());
  CHECK_THROWS_AS(distor(g, off, g.vertex(0)), NotOnGeodesic);

  CHECK_THROWS_AS(geodesic_between(w, w, mw, mw), NotComplementary);
}

TEST_CASE("geodesic vertices are distinct, adjacent in sequence") {
  Rng rng(12);
  for (long prime : {2L, 3L}) {
    ValuationContext ctx(prime);
    for (int trial = 0; trial < 30; ++trial) {
      int n = static_cast<int>(rng.range(2, 4));
      int d = static_cast<int>(rng.range(1, n - 1));
      Subspace w = random_subspace(rng, n, d);
      // complementary subspace through exact extension
      QMatrix full = extend_basis(w.basis(), QMatrix::identity(n), n);
      Subspace w2(full.columns(d, n));
      Lattice mw(w.basis(), ctx), mw2(w2.basis(), ctx);
      CombinatorialGeodesic g = geodesic_between(w, w2, mw, mw2);
      std::vector<LatticeClass> verts;
      for (long k = -4; k <= 4; ++k) verts.push_back(g.vertex(k));
      for (size_t i = 0; i < verts.size(); ++i)
        for (size_t j = i + 1; j < verts.size(); ++j) {
          CHECK(!(verts[i] == verts[j]));
          CHECK(combinatorial_distance(verts[i], verts[j]) ==
                static_cast<long>(j - i));
        }
    }
  }
}

TEST_CASE("homothetic lattices shift the geodesic index") {
  Rng rng(13);
  ValuationContext ctx(3);
  for (int trial = 0; trial < 20; ++trial) {
    int n = static_cast<int>(rng.range(2, 4));
    int d = static_cast<int>(rng.range(1, n - 1));
    Subspace w = random_subspace(rng, n, d);
    QMatrix full = extend_basis(w.basis(), QMatrix::identity(n), n);
    Subspace w2(full.columns(d, n));
    Lattice mw(w.basis(), ctx), mw2(w2.basis(), ctx);
    long a = rng.range(-2, 2), b = rng.range(-2, 2);
    CombinatorialGeodesic g = geodesic_between(w, w2, mw, mw2);
    CombinatorialGeodesic shifted = geodesic_between(
        w, w2, mw.scaled_by_prime_power(a), mw2.scaled_by_prime_power(b));
    for (long k = -2; k <= 2; ++k)
      CHECK(shifted.vertex(k) == g.vertex(k + b - a));
  }
}

TEST_CASE("reduction segment pinned fixture") {
  ValuationContext ctx(5);
  LatticeClass x = standard_class(2, ctx);
  Subspace w1(QMatrix::parse_rows({{"1"}, {"0"}}));
  Subspace w2(QMatrix::parse_rows({{"1"}, {"5"}}));
  CHECK(reduction_segment_equal(x, w1, w2, 1));
  CHECK(!reduction_segment_equal(x, w1, w2, 2));
}

TEST_CASE("reduction segment equality matches shared half geodesic prefix") {
  Rng rng(14);
  for (long prime : {2L, 3L}) {
    ValuationContext ctx(prime);
    for (int trial = 0; trial < 40; ++trial) {
      int n = static_cast<int>(rng.range(2, 4));
      int d = static_cast<int>(rng.range(1, n - 1));
      LatticeClass x(random_full_lattice(rng, n, ctx, -2, 2));
      Subspace w1 = random_subspace(rng, n, d);
      Subspace w2 = [&] {
        if (rng.coin()) return random_subspace(rng, n, d);
        // perturb w1 at depth m to manufacture equal prefixes
        QMatrix b = w1.basis();
        QMatrix noise(n, d);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < d; ++j)
            noise(i, j) = Rational(rng.range(-3, 3));
        QMatrix perturbed = b + ctx.prime_power(3) * noise;
        if (rank(perturbed) < d) return w1;
        return Subspace(perturbed);
      }();
      for (long m = 1; m <= 4; ++m) {
        bool same_prefix = true;
        for (long k = 0; k <= m; ++k)
          if (!(half_geodesic_vertex(x, w1, k) ==
                half_geodesic_vertex(x, w2, k)))
            same_prefix = false;
        CHECK(reduction_segment_equal(x, w1, w2, m) == same_prefix);
      }
    }
  }
}

TEST_CASE("distance agrees with breadth first search, rank two") {
  for (long prime : {2L, 3L}) {
    ValuationContext ctx(prime);
    oracle::BuildingGraph g = oracle::enumerate_family_graph(2, ctx, 3);
    REQUIRE(g.verts.size() > 4);
    for (size_t a = 0; a < g.verts.size(); ++a)
      for (size_t b = a; b < g.verts.size(); ++b) {
        long d = combinatorial_distance(g.verts[a], g.verts[b]);
        CHECK(d == oracle::bfs_distance(g, static_cast<int>(a),
                                        static_cast<int>(b)));
      }
  }
}

TEST_CASE("distance agrees with breadth first search, rank three sample") {
  ValuationContext ctx(2);
  oracle::BuildingGraph g = oracle::enumerate_family_graph(3, ctx, 2);
  Rng rng(21);
  for (int trial = 0; trial < 60; ++trial) {
    int a = static_cast<int>(rng.below(static_cast<long>(g.verts.size())));
    int b = static_cast<int>(rng.below(static_cast<long>(g.verts.size())));
    CHECK(combinatorial_distance(g.verts[a], g.verts[b]) ==
          oracle::bfs_distance(g, a, b));
  }
}
