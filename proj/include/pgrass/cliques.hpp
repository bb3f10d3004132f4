#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "pgrass/base.hpp"
#include "pgrass/graph.hpp"
#include "pgrass/relations.hpp"

namespace pgrass {

namespace detail {

inline int popcount_words(const std::vector<uint64_t>& w) {
  int c = 0;
  for (uint64_t x : w) c += __builtin_popcountll(x);
  return c;
}

inline void bk_recurse(const Graph& g, std::vector<int>& R, std::vector<uint64_t> P,
                       std::vector<uint64_t> X, std::vector<std::vector<int>>& out) {
  bool p_empty = true, x_empty = true;
  for (uint64_t w : P)
    if (w) {
      p_empty = false;
      break;
    }
  for (uint64_t w : X)
    if (w) {
      x_empty = false;
      break;
    }
  if (p_empty && x_empty) {
    out.push_back(R);
    return;
  }
  if (p_empty) return;

  // pivot: vertex of P u X with the most neighbors inside P
  int pivot = -1, best = -1;
  for (int wi = 0; wi < g.W; ++wi) {
    uint64_t w = P[wi] | X[wi];
    while (w) {
      int u = wi * 64 + __builtin_ctzll(w);
      w &= w - 1;
      const uint64_t* nu = g.row(u);
      int cnt = 0;
      for (int k = 0; k < g.W; ++k) cnt += __builtin_popcountll(P[k] & nu[k]);
      if (cnt > best) {
        best = cnt;
        pivot = u;
      }
    }
  }

  const uint64_t* np = g.row(pivot);
  std::vector<int> cand;
  for (int wi = 0; wi < g.W; ++wi) {
    uint64_t w = P[wi] & ~np[wi];
    while (w) {
      cand.push_back(wi * 64 + __builtin_ctzll(w));
      w &= w - 1;
    }
  }
  std::vector<uint64_t> P2(g.W), X2(g.W);
  for (int v : cand) {
    const uint64_t* nv = g.row(v);
    for (int k = 0; k < g.W; ++k) {
      P2[k] = P[k] & nv[k];
      X2[k] = X[k] & nv[k];
    }
    R.push_back(v);
    bk_recurse(g, R, P2, X2, out);
    R.pop_back();
    P[v >> 6] &= ~(uint64_t(1) << (v & 63));
    X[v >> 6] |= uint64_t(1) << (v & 63);
  }
}

}  // namespace detail

// All maximal cliques (Bron-Kerbosch with pivoting).  Each clique sorted
// ascending; the list sorted lexicographically.
inline std::vector<std::vector<int>> maximal_cliques(const Graph& g) {
  std::vector<std::vector<int>> out;
  std::vector<uint64_t> P(g.W, 0), X(g.W, 0);
  for (int v = 0; v < g.V; ++v) P[v >> 6] |= uint64_t(1) << (v & 63);
  // clear padding bits beyond V
  if (g.V % 64 && g.W > 0) P[g.W - 1] &= (uint64_t(1) << (g.V % 64)) - 1;
  std::vector<int> R;
  detail::bk_recurse(g, R, std::move(P), std::move(X), out);
  for (auto& c : out) std::sort(c.begin(), c.end());
  std::sort(out.begin(), out.end());
  return out;
}

// Classification of a vertex set of one level into the clique families:
//   star    [N, M] : all m-spaces between a fixed (m-1)-space N and a fixed
//                    maximal singular M
//   big star [N>   : all m-spaces containing a fixed (m-1)-space N
//   top     <M]    : all m-spaces inside a fixed singular (m+1)-space M
// Checked most-specific first (a full star inside a rank-boundary space is
// preferred over its coincidental descriptions).
struct CliqueClass {
  enum class Tag { star, big_star, top, other } tag = Tag::other;
  Subspace N, M;

  std::string str() const {
    switch (tag) {
      case Tag::star: return "star";
      case Tag::big_star: return "big_star";
      case Tag::top: return "top";
      default: return "other";
    }
  }
};

inline CliqueClass classify_clique(const PolarSpace& ps, int m, const std::vector<int>& verts) {
  const IsotropicLevel& lv = ps.level(m);
  require(!verts.empty(), ErrorCode::BadParameters, "empty vertex set");
  for (int v : verts)
    require(0 <= v && v < lv.size(), ErrorCode::BadParameters, "vertex out of range");
  const int q = ps.field().q;

  Subspace N = lv.items[verts[0]];
  Subspace M = lv.items[verts[0]];
  for (size_t k = 1; k < verts.size(); ++k) {
    auto [mt, jn] = meet_join(N, lv.items[verts[k]]);
    N = mt;
    M = join(M, lv.items[verts[k]]);
  }
  CliqueClass out;
  out.N = N;
  out.M = M;

  auto count_points = [&](int dim_quot) {
    long long p = 1, tot = 0;
    for (int k = 0; k < dim_quot; ++k) {
      tot += p;
      p *= q;
    }
    return tot;  // (q^dim_quot - 1)/(q - 1)
  };

  if (N.dim() == m - 1) {
    if (M.dim() == ps.d && ps.is_singular(M) &&
        (long long)verts.size() == count_points(ps.d - m + 1)) {
      // members between N and M are determined by points of M/N
      bool all_between = true;
      for (int v : verts)
        if (!M.contains(lv.items[v])) {
          all_between = false;
          break;
        }
      if (all_between) {
        out.tag = CliqueClass::Tag::star;
        return out;
      }
    }
    long long full = 0;
    for (const Subspace& S : lv.items)
      if (S.contains(N)) ++full;
    if ((long long)verts.size() == full) {
      out.tag = CliqueClass::Tag::big_star;
      return out;
    }
  }
  if (M.dim() == m + 1 && ps.is_singular(M) &&
      (long long)verts.size() == count_subspaces(m + 1, m, q)) {
    out.tag = CliqueClass::Tag::top;
    return out;
  }
  out.tag = CliqueClass::Tag::other;
  return out;
}

// Proposition: every clique of Gamma' lies in a big star.  Lemma: inside a
// big star [N>, Gamma'-adjacency is exactly non-collinearity in the residue
// space Pi_N.  Also: no top of size >= 2 is a Gamma'-clique.
struct GammaPrimeCliqueReport {
  bool cliques_in_big_star = false;
  bool residue_adjacency_ok = false;
  bool tops_independent = false;
  long long num_maximal_cliques = 0;
  std::map<std::string, long long> tag_counts;
  std::string witness;

  bool pass() const { return cliques_in_big_star && residue_adjacency_ok && tops_independent; }
};

inline GammaPrimeCliqueReport verify_gamma_prime_cliques(const RelationTable& tbl) {
  const PolarSpace& ps = *tbl.ps;
  const int m = tbl.m;
  require(1 <= m && m <= ps.d - 1, ErrorCode::DimensionOutOfRange,
          "the Gamma' propositions concern 1 <= m <= d-1");
  const IsotropicLevel& lv = ps.level(m);
  GammaPrimeCliqueReport rep;
  const RelationLabel adj{1, 1};

  // (a) every maximal clique is contained in a big star: the common
  // intersection of its members is an (m-1)-space
  Graph g = gamma_prime_graph(tbl);
  auto cliques = maximal_cliques(g);
  rep.num_maximal_cliques = (long long)cliques.size();
  rep.cliques_in_big_star = true;
  for (const auto& c : cliques) {
    CliqueClass cc = classify_clique(ps, m, c);
    ++rep.tag_counts[cc.str()];
    if (c.size() >= 2 && cc.N.dim() != m - 1) {
      rep.cliques_in_big_star = false;
      if (rep.witness.empty())
        rep.witness = "maximal clique of size " + std::to_string(c.size()) +
                      " with common intersection of dimension " + std::to_string(cc.N.dim());
    }
  }

  // (b) big-star adjacency lemma, for every big star
  rep.residue_adjacency_ok = true;
  const IsotropicLevel& below = ps.level(m - 1);
  for (const Subspace& N : below.items) {
    std::vector<int> members;
    for (int i = 0; i < lv.size(); ++i)
      if (lv.items[i].contains(N)) members.push_back(i);
    // residue collinearity, via the residue space when it exists (m >= 2);
    // the big star over the zero subspace is the point set of Pi itself
    std::unique_ptr<ResidueSpace> rs;
    std::map<int, int> rs_pos;
    if (m >= 2) {
      rs = std::make_unique<ResidueSpace>(residue_space(ps, N));
      for (size_t k = 0; k < rs->point_ids.size(); ++k) rs_pos[rs->point_ids[k]] = int(k);
    }
    for (size_t a = 0; a < members.size() && rep.residue_adjacency_ok; ++a)
      for (size_t b = a + 1; b < members.size(); ++b) {
        bool edge = tbl.label(members[a], members[b]) == adj;
        bool coll = m >= 2 ? rs->collinear(rs_pos.at(members[a]), rs_pos.at(members[b]))
                           : ps.collinear(lv.items[members[a]], lv.items[members[b]]);
        if (edge == coll) {
          rep.residue_adjacency_ok = false;
          if (rep.witness.empty())
            rep.witness = "big-star pair " + std::to_string(members[a]) + "," +
                          std::to_string(members[b]) + ": adjacency " +
                          (edge ? "set" : "clear") + " but residue collinearity " +
                          (coll ? "set" : "clear");
          break;
        }
      }
    if (!rep.residue_adjacency_ok) break;
  }

  // (c) any two distinct elements of a top are non-adjacent
  rep.tops_independent = true;
  if (m + 1 <= ps.d) {
    const IsotropicLevel& above = ps.level(m + 1);
    for (const Subspace& M : above.items) {
      std::vector<int> members;
      for (int i = 0; i < lv.size(); ++i)
        if (M.contains(lv.items[i])) members.push_back(i);
      for (size_t a = 0; a < members.size() && rep.tops_independent; ++a)
        for (size_t b = a + 1; b < members.size(); ++b)
          if (tbl.label(members[a], members[b]) == adj) {
            rep.tops_independent = false;
            if (rep.witness.empty())
              rep.witness = "top pair " + std::to_string(members[a]) + "," +
                            std::to_string(members[b]) + " is Gamma'-adjacent";
            break;
          }
      if (!rep.tops_independent) break;
    }
  }
  return rep;
}

// One Gamma''-edge (S, U) checked against the proposition: their span M is a
// maximal singular subspace and every clique containing the edge lies in the
// top <M].  Since {S, U, W} is a clique for every common neighbor W, the
// sharp form is: every common neighbor is inside M.
struct GammaDPrimeEdgeCheck {
  bool span_maximal = false;
  bool neighbors_in_top = false;
  int common_neighbors = 0;
  long long cliques_through_edge = 0;
  std::string witness;

  bool pass() const { return span_maximal && neighbors_in_top; }
};

inline GammaDPrimeEdgeCheck check_gamma_dprime_edge(const RelationTable& tbl, const Graph& g,
                                                    int a, int b) {
  require(a != b && g.adjacent(a, b), ErrorCode::NotAnEdge,
          "pair is not an edge of Gamma''");
  const PolarSpace& ps = *tbl.ps;
  const IsotropicLevel& lv = ps.level(tbl.m);
  GammaDPrimeEdgeCheck chk;

  Subspace M = join(lv.items[a], lv.items[b]);
  chk.span_maximal = (M.dim() == ps.d) && ps.is_singular(M);
  if (!chk.span_maximal) {
    chk.witness = "span of edge " + std::to_string(a) + "," + std::to_string(b) +
                  " has dimension " + std::to_string(M.dim());
    return chk;
  }

  std::vector<int> cn;
  for (int wi = 0; wi < g.W; ++wi) {
    uint64_t w = g.row(a)[wi] & g.row(b)[wi];
    while (w) {
      cn.push_back(wi * 64 + __builtin_ctzll(w));
      w &= w - 1;
    }
  }
  chk.common_neighbors = int(cn.size());
  chk.neighbors_in_top = true;
  for (int w : cn)
    if (!M.contains(lv.items[w])) {
      chk.neighbors_in_top = false;
      chk.witness = "common neighbor " + std::to_string(w) + " of edge " + std::to_string(a) +
                    "," + std::to_string(b) + " lies outside the span";
      return chk;
    }

  // maximal cliques containing the edge = maximal cliques of the subgraph
  // induced on the common neighborhood (the edge alone when it is empty)
  if (cn.empty()) {
    chk.cliques_through_edge = 1;
  } else {
    Graph sub(int(cn.size()));
    for (size_t x = 0; x < cn.size(); ++x)
      for (size_t y = x + 1; y < cn.size(); ++y)
        if (g.adjacent(cn[x], cn[y])) sub.add_edge(int(x), int(y));
    sub.finalize();
    chk.cliques_through_edge = (long long)maximal_cliques(sub).size();
  }
  return chk;
}

struct GammaDPrimeCliqueReport {
  long long edges_checked = 0;
  bool span_maximal_ok = false;
  bool neighbors_in_top_ok = false;
  long long total_cliques = 0;
  std::string witness;

  bool pass() const { return span_maximal_ok && neighbors_in_top_ok && edges_checked > 0; }
};

// Sample distinct Gamma''-edges with a seeded generator and check each one.
inline GammaDPrimeCliqueReport verify_gamma_dprime_cliques(const RelationTable& tbl, int t,
                                                           long long samples, uint64_t seed) {
  const PolarSpace& ps = *tbl.ps;
  require(t >= 2 && ps.d >= 2 * t, ErrorCode::PreconditionFailed,
          "the Gamma'' proposition needs rank d >= 2t >= 4");
  require(tbl.m == ps.d - t, ErrorCode::LevelMismatch,
          "Gamma'' lives on the level m = d - t");
  Graph g = gamma_dprime_graph(tbl, t);
  require(g.E > 0, ErrorCode::PreconditionFailed, "Gamma'' has no edges here");

  GammaDPrimeCliqueReport rep;
  rep.span_maximal_ok = true;
  rep.neighbors_in_top_ok = true;
  std::mt19937_64 rng(seed);
  std::set<std::pair<int, int>> seen;
  long long attempts = 0, budget = samples * 200;
  long long want = std::min<long long>(samples, g.E);
  while ((long long)seen.size() < want && attempts++ < budget) {
    int a = int(rng() % uint64_t(g.V));
    if (g.adj[a].empty()) continue;
    int b = g.adj[a][rng() % g.adj[a].size()];
    auto key = std::minmax(a, b);
    if (!seen.insert({key.first, key.second}).second) continue;
    GammaDPrimeEdgeCheck chk = check_gamma_dprime_edge(tbl, g, a, b);
    ++rep.edges_checked;
    rep.total_cliques += chk.cliques_through_edge;
    if (!chk.span_maximal) {
      rep.span_maximal_ok = false;
      if (rep.witness.empty()) rep.witness = chk.witness;
    }
    if (!chk.neighbors_in_top) {
      rep.neighbors_in_top_ok = false;
      if (rep.witness.empty()) rep.witness = chk.witness;
    }
  }
  require(rep.edges_checked >= want, ErrorCode::PreconditionFailed,
          "edge sampling failed to reach the requested count");
  return rep;
}

}  // namespace pgrass
