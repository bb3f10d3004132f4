#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "pgrass/base.hpp"
#include "pgrass/graph.hpp"
#include "pgrass/polar.hpp"

namespace pgrass {

struct RelationLabel {
  int i = 0, j = 0;
  bool operator==(const RelationLabel& o) const { return i == o.i && j == o.j; }
  bool operator!=(const RelationLabel& o) const { return !(*this == o); }
  bool operator<(const RelationLabel& o) const { return i != o.i ? i < o.i : j < o.j; }
  std::string str() const { return "(" + std::to_string(i) + "," + std::to_string(j) + ")"; }
};

namespace detail {

// Rank of a small matrix held in a flat row-major buffer; destroys the
// buffer.  Plain Gaussian elimination, no pivot scaling needed.
inline int rank_raw(uint8_t* a, int rows, int cols, const Field& F) {
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int sel = -1;
    for (int i = r; i < rows; ++i)
      if (a[i * cols + c]) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    if (sel != r)
      for (int j = c; j < cols; ++j) std::swap(a[sel * cols + j], a[r * cols + j]);
    uint8_t pinv = F.inv(a[r * cols + c]);
    for (int i = r + 1; i < rows; ++i) {
      uint8_t f = F.mul(a[i * cols + c], pinv);
      if (!f) continue;
      for (int j = c; j < cols; ++j)
        a[i * cols + j] = F.sub(a[i * cols + j], F.mul(f, a[r * cols + j]));
    }
    ++r;
  }
  return r;
}

}  // namespace detail

// The relation R_{i,j} of a pair of totally isotropic m-spaces:
//   i = m - dim(perp(X) cap Y),   j = m - dim(X cap Y).
inline RelationLabel classify(const PolarSpace& ps, const Subspace& X, const Subspace& Y) {
  require(X.dim() == Y.dim(), ErrorCode::LevelMismatch,
          "pair classification needs equal dimensions");
  require(ps.is_singular(X) && ps.is_singular(Y), ErrorCode::PreconditionFailed,
          "pair classification needs totally isotropic subspaces");
  int m = X.dim();
  int i = m - meet(ps.perp(X), Y).dim();
  int j = m - meet(X, Y).dim();
  return RelationLabel{i, j};
}

// All pairs of one level classified, with per-label valencies and the
// regularity guarantee (identical counts from every base vertex).
struct RelationTable {
  const PolarSpace* ps = nullptr;
  int m = 0;
  int V = 0;
  std::vector<uint8_t> lab;           // V*V packed label codes i*(m+1)+j
  std::vector<RelationLabel> labels;  // the distinct labels, sorted
  std::vector<long long> valency;     // aligned with labels; count from any base vertex

  uint8_t code(int a, int b) const { return lab[size_t(a) * V + b]; }
  RelationLabel label(int a, int b) const {
    uint8_t c = code(a, b);
    return RelationLabel{c / (m + 1), c % (m + 1)};
  }
  long long valency_of(RelationLabel L) const {
    for (size_t k = 0; k < labels.size(); ++k)
      if (labels[k] == L) return valency[k];
    return 0;
  }
};

// Exhaustive pair classification over N_m.  The two defining dimensions are
// computed without forming perp(X) explicitly:
//   dim(perp(X) cap Y) = m - rank( X.basis * G * sigma(Y.basis)^T )
//   dim(X cap Y)       = 2m - rank( [X.basis; Y.basis] )
inline RelationTable relation_table(const PolarSpace& ps, int m) {
  const IsotropicLevel& lv = ps.level(m);
  const Field& F = ps.field();
  const int V = lv.size();
  const int n = ps.n_amb;
  require(V > 0, ErrorCode::DimensionOutOfRange, "empty level");

  RelationTable t;
  t.ps = &ps;
  t.m = m;
  t.V = V;
  t.lab.assign(size_t(V) * V, 0);

  // flat per-element data: basis rows, basis * gram, sigma(basis)
  std::vector<uint8_t> bas(size_t(V) * m * n), bg(size_t(V) * m * n), sg(size_t(V) * m * n);
  for (int a = 0; a < V; ++a) {
    const Matrix& B = lv.items[a].basis;
    Matrix BG = B.mul(ps.gram());
    for (int r = 0; r < m; ++r)
      for (int c = 0; c < n; ++c) {
        bas[(size_t(a) * m + r) * n + c] = B.at(r, c);
        bg[(size_t(a) * m + r) * n + c] = BG.at(r, c);
        sg[(size_t(a) * m + r) * n + c] = F.sigma(B.at(r, c));
      }
  }

  std::vector<uint8_t> mbuf(size_t(m) * m), stack(size_t(2 * m) * n);
  for (int a = 0; a < V; ++a) {
    t.lab[size_t(a) * V + a] = 0;  // (0,0)
    const uint8_t* xg = &bg[size_t(a) * m * n];
    const uint8_t* xb = &bas[size_t(a) * m * n];
    for (int b = a + 1; b < V; ++b) {
      const uint8_t* ys = &sg[size_t(b) * m * n];
      const uint8_t* yb = &bas[size_t(b) * m * n];
      for (int r = 0; r < m; ++r)
        for (int s = 0; s < m; ++s) {
          uint8_t acc = 0;
          const uint8_t* xr = xg + size_t(r) * n;
          const uint8_t* yr = ys + size_t(s) * n;
          for (int c = 0; c < n; ++c)
            if (xr[c] && yr[c]) acc = F.add(acc, F.mul(xr[c], yr[c]));
          mbuf[size_t(r) * m + s] = acc;
        }
      int i = detail::rank_raw(mbuf.data(), m, m, F);
      std::copy(xb, xb + size_t(m) * n, stack.begin());
      std::copy(yb, yb + size_t(m) * n, stack.begin() + size_t(m) * n);
      int j = detail::rank_raw(stack.data(), 2 * m, n, F) - m;
      uint8_t code = uint8_t(i * (m + 1) + j);
      t.lab[size_t(a) * V + b] = code;
      t.lab[size_t(b) * V + a] = code;
    }
  }

  // collect labels, then verify regularity: every base vertex sees the same
  // per-label counts
  const int K = (m + 1) * (m + 1);
  std::vector<long long> ref(K, 0), cur(K, 0);
  for (int b = 0; b < V; ++b) ++ref[t.lab[b]];
  for (int a = 1; a < V; ++a) {
    std::fill(cur.begin(), cur.end(), 0);
    const uint8_t* rowa = &t.lab[size_t(a) * V];
    for (int b = 0; b < V; ++b) ++cur[rowa[b]];
    require(cur == ref, ErrorCode::TheoremViolation,
            "relation table is not regular at vertex " + std::to_string(a));
  }
  for (int c = 0; c < K; ++c) {
    if (!ref[c]) continue;
    t.labels.push_back(RelationLabel{c / (m + 1), c % (m + 1)});
    t.valency.push_back(c == 0 ? ref[c] - 1 : ref[c]);  // exclude the base vertex itself
  }
  // the (0,0) count must be exactly the base vertex
  require(ref[0] == 1, ErrorCode::TheoremViolation, "(0,0) is not the identity relation");
  return t;
}

// Graph on the level with edges given by a set of labels.
inline Graph build_graph(const RelationTable& t, const std::vector<RelationLabel>& labels) {
  std::set<uint8_t> want;
  for (const RelationLabel& L : labels) {
    require(0 <= L.i && L.i <= L.j && L.j <= t.m, ErrorCode::BadParameters,
            "label out of range for this level");
    if (L.i == 0 && L.j == 0) continue;  // identity never contributes edges
    want.insert(uint8_t(L.i * (t.m + 1) + L.j));
  }
  Graph g(t.V);
  for (int a = 0; a < t.V; ++a) {
    const uint8_t* rowa = &t.lab[size_t(a) * t.V];
    for (int b = a + 1; b < t.V; ++b)
      if (want.count(rowa[b])) g.add_edge(a, b);
  }
  g.finalize();
  return g;
}

inline Graph gamma_graph(const RelationTable& t) { return build_graph(t, {{0, 1}}); }
inline Graph gamma_prime_graph(const RelationTable& t) { return build_graph(t, {{1, 1}}); }
inline Graph gamma_dprime_graph(const RelationTable& t, int tt) {
  return build_graph(t, {{0, tt}});
}
inline Graph weak_graph(const RelationTable& t) { return build_graph(t, {{0, 1}, {1, 1}}); }

// Association-scheme audit: (a) (0,0) is the identity, (b) symmetry,
// (c) intersection numbers p^L_{L1,L2} well defined (constant over all pairs
// with label L).  Reports the full intersection-number array.
struct SchemeAuditReport {
  bool identity_ok = false;
  bool symmetry_ok = false;
  bool constant_ok = false;
  int num_classes = 0;
  // (L, L1, L2) -> p^L_{L1,L2}
  std::map<std::tuple<int, int, int>, long long> p_numbers;
  std::string witness;

  bool pass() const { return identity_ok && symmetry_ok && constant_ok; }
};

inline SchemeAuditReport scheme_audit(const RelationTable& t) {
  SchemeAuditReport rep;
  const int V = t.V;
  const int K = (t.m + 1) * (t.m + 1);
  rep.num_classes = int(t.labels.size());

  rep.identity_ok = true;
  for (int a = 0; a < V && rep.identity_ok; ++a) {
    if (t.code(a, a) != 0) {
      rep.identity_ok = false;
      rep.witness = "identity: vertex " + std::to_string(a);
    }
    const uint8_t* rowa = &t.lab[size_t(a) * V];
    for (int b = 0; b < V; ++b)
      if (rowa[b] == 0 && a != b) {
        rep.identity_ok = false;
        rep.witness = "identity: distinct pair with label (0,0)";
        break;
      }
  }

  rep.symmetry_ok = true;
  for (int a = 0; a < V && rep.symmetry_ok; ++a)
    for (int b = a + 1; b < V; ++b)
      if (t.code(a, b) != t.code(b, a)) {
        rep.symmetry_ok = false;
        rep.witness = "symmetry: pair " + std::to_string(a) + "," + std::to_string(b);
        break;
      }

  // intersection numbers: profile per base pair, compared to the first pair
  // seen with the same label
  rep.constant_ok = true;
  std::vector<std::vector<long long>> first(K);  // label code -> K*K profile
  std::vector<long long> prof(size_t(K) * K, 0);
  std::vector<int> touched;
  for (int a = 0; a < V && rep.constant_ok; ++a) {
    const uint8_t* rowa = &t.lab[size_t(a) * V];
    for (int b = 0; b < V; ++b) {
      uint8_t L = rowa[b];
      const uint8_t* rowb = &t.lab[size_t(b) * V];
      for (int c = 0; c < V; ++c) {
        int idx = rowa[c] * K + rowb[c];
        if (!prof[idx]) touched.push_back(idx);
        ++prof[idx];
      }
      if (first[L].empty()) {
        first[L].assign(prof.begin(), prof.end());
      } else if (!std::equal(prof.begin(), prof.end(), first[L].begin())) {
        rep.constant_ok = false;
        rep.witness = "intersection numbers differ at pair " + std::to_string(a) + "," +
                      std::to_string(b) + " (label " + t.label(a, b).str() + ")";
      }
      for (int idx : touched) prof[idx] = 0;
      touched.clear();
      if (!rep.constant_ok) break;
    }
  }
  if (rep.constant_ok) {
    for (int L = 0; L < K; ++L) {
      if (first[L].empty()) continue;
      for (int c1 = 0; c1 < K; ++c1)
        for (int c2 = 0; c2 < K; ++c2) {
          long long v = first[L][size_t(c1) * K + c2];
          if (v) rep.p_numbers[{L, c1, c2}] = v;
        }
    }
  }
  return rep;
}

// Distance-2 pairs of the Grassmann graph Gamma are exactly the pairs whose
// label is (1,1), (0,2), or (1,2) — whichever of those occur at the level.
// R_{1,1} and R_{0,2} pairs at distance 2 is classical; R_{1,2} pairs are at
// distance 2 as well: with x in (X cap perp(Y)) \ (X cap Y) and
// y in (Y cap perp(X)) \ (X cap Y), the subspace (X cap Y) + <x,y> is totally
// isotropic (x perp y since y in perp(x)) and Gamma-adjacent to both X and Y.
struct DistanceCheckReport {
  bool pass = false;
  long long distance2_pairs = 0;
  std::vector<RelationLabel> labels_at_distance2;
  std::string witness;
};

inline DistanceCheckReport graph_distance_check(const RelationTable& t) {
  const PolarSpace& ps = *t.ps;
  require(1 <= t.m && t.m <= ps.d - 1, ErrorCode::DimensionOutOfRange,
          "distance check needs 1 <= m <= d-1");
  DistanceCheckReport rep;
  rep.pass = true;
  Graph g = gamma_graph(t);
  for (RelationLabel L : {RelationLabel{0, 2}, RelationLabel{1, 1}, RelationLabel{1, 2}})
    if (t.valency_of(L) > 0) rep.labels_at_distance2.push_back(L);
  auto expected = [&](RelationLabel L) {
    for (RelationLabel E : rep.labels_at_distance2)
      if (L == E) return true;
    return false;
  };
  std::vector<char> mark(t.V, 0);  // 1 = distance <= 1, 2 = distance 2
  for (int s = 0; s < t.V; ++s) {
    mark[s] = 1;
    for (int u : g.adj[s]) mark[u] = 1;
    std::vector<int> d2;
    for (int u : g.adj[s])
      for (int w : g.adj[u])
        if (!mark[w]) {
          mark[w] = 2;
          d2.push_back(w);
        }
    for (int w = 0; w < t.V; ++w) {
      bool is_d2 = mark[w] == 2;
      bool want = expected(t.label(s, w)) && s != w;
      if (is_d2 != want) {
        rep.pass = false;
        if (rep.witness.empty())
          rep.witness = "pair " + std::to_string(s) + "," + std::to_string(w) + " label " +
                        t.label(s, w).str() + (is_d2 ? " at distance 2" : " not at distance 2");
      }
    }
    rep.distance2_pairs += (long long)d2.size();
    mark[s] = 0;
    for (int u : g.adj[s]) mark[u] = 0;
    for (int w : d2) mark[w] = 0;
    if (!rep.pass) break;
  }
  return rep;
}

}  // namespace pgrass
