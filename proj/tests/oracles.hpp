#pragma once

// Independent reference implementations used only to pin expected values in
// the test suites. Deliberately naive: repeated division instead of
// mpz_remove, cofactor expansion instead of elimination, breadth-first
// search over an explicitly enumerated graph instead of inclusion bounds.

#include <deque>
#include <string>
#include <unordered_map>
#include <vector>

#include "arakelov/building.hpp"
#include "arakelov/generator.hpp"

namespace oracle {

// v_p by repeated exact division of numerator and denominator.
inline long valuation_by_division(arakelov::Rational x, long p) {
  if (x == 0) throw std::logic_error("valuation_by_division: zero");
  long v = 0;
  mpz_class num = x.get_num(), den = x.get_den(), q, r;
  for (;;) {
    mpz_fdiv_qr_ui(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), p);
    if (r != 0) break;
    num = q;
    ++v;
  }
  for (;;) {
    mpz_fdiv_qr_ui(q.get_mpz_t(), r.get_mpz_t(), den.get_mpz_t(), p);
    if (r != 0) break;
    den = q;
    --v;
  }
  return v;
}

inline arakelov::Rational determinant_by_expansion(const arakelov::QMatrix& m) {
  int n = m.rows();
  if (n == 1) return m(0, 0);
  arakelov::Rational det = 0;
  for (int i = 0; i < n; ++i) {
    if (m(i, 0) == 0) continue;
    arakelov::QMatrix minor(n - 1, n - 1);
    for (int r = 0, rr = 0; r < n; ++r) {
      if (r == i) continue;
      for (int c = 1; c < n; ++c) minor(rr, c - 1) = m(r, c);
      ++rr;
    }
    arakelov::Rational term = m(i, 0) * determinant_by_expansion(minor);
    det += (i % 2 == 0) ? term : -term;
  }
  return det;
}

// All d-dimensional subspaces of F_p^n, each as an integer matrix whose d
// columns are lifts of a reduced-echelon basis.
inline std::vector<arakelov::QMatrix> subspaces_mod_p(int n, int d, long p) {
  using arakelov::QMatrix;
  std::vector<arakelov::QMatrix> out;
  std::vector<int> pivots(d);
  // iterate over increasing pivot-column subsets
  auto emit = [&]() {
    std::vector<int> free_cells;  // (row, col) flattened
    std::vector<std::pair<int, int>> cells;
    for (int i = 0; i < d; ++i)
      for (int c = pivots[i] + 1; c < n; ++c) {
        bool is_pivot = false;
        for (int j = 0; j < d; ++j)
          if (pivots[j] == c) is_pivot = true;
        if (!is_pivot) cells.push_back({i, c});
      }
    std::vector<long> digits(cells.size(), 0);
    for (;;) {
      QMatrix rows(d, n);
      for (int i = 0; i < d; ++i) rows(i, pivots[i]) = 1;
      for (size_t t = 0; t < cells.size(); ++t)
        rows(cells[t].first, cells[t].second) = arakelov::Rational(digits[t]);
      out.push_back(rows.transpose());
      size_t t = 0;
      while (t < digits.size() && ++digits[t] == p) digits[t++] = 0;
      if (t == digits.size()) break;
    }
  };
  // next_combination over pivot columns
  for (int i = 0; i < d; ++i) pivots[i] = i;
  for (;;) {
    emit();
    int i = d - 1;
    while (i >= 0 && pivots[i] == n - d + i) --i;
    if (i < 0) break;
    ++pivots[i];
    for (int j = i + 1; j < d; ++j) pivots[j] = pivots[j - 1] + 1;
  }
  return out;
}

// The finite graph whose vertices are the homothety classes of lattices L
// with p^depth M ⊆ L ⊆ M (M the standard lattice) and whose edges join
// classes with representatives pN ⊂ L ⊂ N. This family is convex for the
// combinatorial metric, so breadth-first search inside it measures true
// distances between its members.
struct BuildingGraph {
  std::vector<arakelov::LatticeClass> verts;
  std::unordered_map<std::string, int> index;
  std::vector<std::vector<int>> adj;
};

inline BuildingGraph enumerate_family_graph(int n,
                                            const arakelov::ValuationContext& ctx,
                                            int depth) {
  using namespace arakelov;
  long p = ctx.prime().get_si();
  BuildingGraph g;

  // Sublattices of M containing p^depth M, via lower-triangular Hermite
  // bases: diagonal p^{a_i}, below-diagonal entries in [0, p^{a_i}).
  std::vector<long> prof(n, 0);
  Rational pd = ctx.prime_power(depth);
  for (;;) {
    // odometer over below-diagonal digits for this profile
    std::vector<std::pair<int, int>> cells;
    for (int i = 1; i < n; ++i)
      for (int j = 0; j < i; ++j) cells.push_back({i, j});
    std::vector<long> digits(cells.size(), 0);
    std::vector<long> caps(cells.size());
    for (size_t t = 0; t < cells.size(); ++t) {
      long cap = 1;
      for (long e = 0; e < prof[cells[t].first]; ++e) cap *= p;
      caps[t] = cap;
    }
    for (;;) {
      QMatrix h(n, n);
      for (int i = 0; i < n; ++i) h(i, i) = ctx.prime_power(prof[i]);
      for (size_t t = 0; t < cells.size(); ++t)
        h(cells[t].first, cells[t].second) = Rational(digits[t]);
      // keep only lattices containing p^depth M
      QMatrix coords = solve_square(h, pd * QMatrix::identity(n));
      if (Valuation(0) <= min_entry_valuation(coords, ctx)) {
        LatticeClass cls(Lattice(h, ctx));
        if (!g.index.count(cls.key())) {
          g.index.emplace(cls.key(), static_cast<int>(g.verts.size()));
          g.verts.push_back(cls);
        }
      }
      size_t t = 0;
      while (t < digits.size() && ++digits[t] == caps[t]) digits[t++] = 0;
      if (t == digits.size()) break;
    }
    int i = 0;
    while (i < n && ++prof[i] > depth) prof[i++] = 0;
    if (i == n) break;
  }

  // Edges: neighbors of {L} are the classes of L + p^-1 S~ for S a proper
  // nonzero subspace of L/pL, enumerated explicitly.
  std::vector<std::vector<QMatrix>> subs;
  for (int d = 1; d < n; ++d) subs.push_back(subspaces_mod_p(n, d, p));
  g.adj.resize(g.verts.size());
  Rational pinv = ctx.prime_power(-1);
  for (size_t v = 0; v < g.verts.size(); ++v) {
    const QMatrix& basis = g.verts[v].canonical().basis();
    for (const auto& family : subs)
      for (const QMatrix& s : family) {
        QMatrix lift = pinv * (basis * s);
        Lattice bigger = lattice_from_generators(
            QMatrix::hconcat(basis, lift), ctx);
        auto it = g.index.find(LatticeClass(bigger).key());
        if (it != g.index.end() && it->second != static_cast<int>(v))
          g.adj[v].push_back(it->second);
      }
  }
  return g;
}

inline int bfs_distance(const BuildingGraph& g, int a, int b) {
  if (a == b) return 0;
  std::vector<int> dist(g.verts.size(), -1);
  std::deque<int> queue{a};
  dist[a] = 0;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (int w : g.adj[v]) {
      if (dist[w] >= 0) continue;
      dist[w] = dist[v] + 1;
      if (w == b) return dist[w];
      queue.push_back(w);
    }
  }
  return -1;
}

}  // namespace oracle
