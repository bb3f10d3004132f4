#include "pgrass/cliques.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <vector>

namespace pgrass {
namespace {

// Bitmask reference implementation for small graphs.
std::vector<std::vector<int>> brute_maximal_cliques(const Graph& g) {
  const int n = g.V;
  std::vector<std::vector<int>> out;
  for (uint32_t s = 1; s < (1u << n); ++s) {
    bool clique = true;
    for (int a = 0; a < n && clique; ++a)
      if (s >> a & 1)
        for (int b = a + 1; b < n && clique; ++b)
          if ((s >> b & 1) && !g.adjacent(a, b)) clique = false;
    if (!clique) continue;
    bool maximal = true;
    for (int v = 0; v < n && maximal; ++v) {
      if (s >> v & 1) continue;
      bool joins = true;
      for (int a = 0; a < n && joins; ++a)
        if ((s >> a & 1) && !g.adjacent(v, a)) joins = false;
      if (joins) maximal = false;
    }
    if (!maximal) continue;
    std::vector<int> c;
    for (int v = 0; v < n; ++v)
      if (s >> v & 1) c.push_back(v);
    out.push_back(c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Graph petersen() {
  Graph g(10);
  for (int i = 0; i < 5; ++i) {
    g.add_edge(i, (i + 1) % 5);          // outer cycle
    g.add_edge(i, i + 5);                // spokes
    g.add_edge(5 + i, 5 + (i + 2) % 5);  // inner pentagram
  }
  g.finalize();
  return g;
}

TEST(MaximalCliques, ToyGraphs) {
  Graph k4(4);
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) k4.add_edge(a, b);
  k4.finalize();
  auto ck4 = maximal_cliques(k4);
  ASSERT_EQ(ck4.size(), 1u);
  EXPECT_EQ(ck4[0], (std::vector<int>{0, 1, 2, 3}));

  Graph c5(5);
  for (int i = 0; i < 5; ++i) c5.add_edge(i, (i + 1) % 5);
  c5.finalize();
  EXPECT_EQ(maximal_cliques(c5).size(), 5u);  // the edges

  Graph p3(3);
  p3.add_edge(0, 1);
  p3.add_edge(1, 2);
  p3.finalize();
  auto cp3 = maximal_cliques(p3);
  ASSERT_EQ(cp3.size(), 2u);
  EXPECT_EQ(cp3[0], (std::vector<int>{0, 1}));
  EXPECT_EQ(cp3[1], (std::vector<int>{1, 2}));

  // triangle-free Petersen: 15 edges are the maximal cliques
  EXPECT_EQ(maximal_cliques(petersen()).size(), 15u);

  // no edges: each vertex is its own maximal clique
  Graph bare(3);
  bare.finalize();
  auto cb = maximal_cliques(bare);
  ASSERT_EQ(cb.size(), 3u);
  EXPECT_EQ(cb[2], (std::vector<int>{2}));
}

TEST(MaximalCliques, MatchesBruteForceOnRandomGraphs) {
  std::mt19937_64 rng(20240915);
  for (int trial = 0; trial < 25; ++trial) {
    int n = 4 + int(rng() % 9);  // 4..12 vertices
    Graph g(n);
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        if (rng() & 1) g.add_edge(a, b);
    g.finalize();
    EXPECT_EQ(maximal_cliques(g), brute_maximal_cliques(g)) << "trial " << trial;
  }
}

TEST(ClassifyClique, ConstructedFamilies) {
  const Field& F2 = Field::get_q(2);
  PolarSpace sy = PolarSpace::standard(Kind::symplectic, F2, 3);
  const IsotropicLevel& lv = sy.level(2);

  // a star [N, M]: the 3 lines through a point N inside a fixed plane M
  Subspace M = sy.level(3).items[0];
  Subspace N = enumerate_subspaces(M, 1)[0];
  std::vector<int> star_verts, big_star_verts, top_verts;
  for (int i = 0; i < lv.size(); ++i) {
    if (lv.items[i].contains(N)) {
      big_star_verts.push_back(i);
      if (M.contains(lv.items[i])) star_verts.push_back(i);
    }
    if (M.contains(lv.items[i])) top_verts.push_back(i);
  }
  ASSERT_EQ(star_verts.size(), 3u);
  ASSERT_EQ(big_star_verts.size(), 15u);
  ASSERT_EQ(top_verts.size(), 7u);

  CliqueClass cs = classify_clique(sy, 2, star_verts);
  EXPECT_EQ(cs.tag, CliqueClass::Tag::star);
  EXPECT_EQ(cs.N, N);
  EXPECT_EQ(cs.M, M);

  CliqueClass cb = classify_clique(sy, 2, big_star_verts);
  EXPECT_EQ(cb.tag, CliqueClass::Tag::big_star);
  EXPECT_EQ(cb.N, N);

  CliqueClass ct = classify_clique(sy, 2, top_verts);
  EXPECT_EQ(ct.tag, CliqueClass::Tag::top);
  EXPECT_EQ(ct.M, M);
  EXPECT_EQ(ct.str(), "top");

  // a non-structured set: two disjoint lines spanning a non-singular subspace
  RelationTable t = relation_table(sy, 2);
  int other_b = -1;
  for (int b = 1; b < t.V; ++b)
    if (t.label(0, b) == (RelationLabel{2, 2})) {
      other_b = b;
      break;
    }
  ASSERT_GE(other_b, 0);
  EXPECT_EQ(classify_clique(sy, 2, {0, other_b}).tag, CliqueClass::Tag::other);
  EXPECT_EQ(classify_clique(sy, 2, {0}).tag, CliqueClass::Tag::other);

  EXPECT_THROW(classify_clique(sy, 2, {}), Error);
  EXPECT_THROW(classify_clique(sy, 2, {lv.size()}), Error);

  // an isometry (hyperbolic block swap) maps each family to one of the same tag
  Matrix A(F2, 6, 6);
  int perm[6] = {2, 3, 0, 1, 4, 5};
  for (int r = 0; r < 6; ++r) A.at(r, perm[r]) = 1;
  auto map_verts = [&](const std::vector<int>& verts) {
    std::vector<int> out;
    for (int v : verts) {
      int id = lv.index_of(Subspace::from_rows(lv.items[v].basis.mul(A)));
      EXPECT_GE(id, 0);
      out.push_back(id);
    }
    return out;
  };
  EXPECT_EQ(classify_clique(sy, 2, map_verts(star_verts)).tag, CliqueClass::Tag::star);
  EXPECT_EQ(classify_clique(sy, 2, map_verts(big_star_verts)).tag, CliqueClass::Tag::big_star);
  EXPECT_EQ(classify_clique(sy, 2, map_verts(top_verts)).tag, CliqueClass::Tag::top);
}

TEST(ClassifyClique, FrozenFamiliesOfWholeGraphs) {
  const Field& F2 = Field::get_q(2);
  PolarSpace sy = PolarSpace::standard(Kind::symplectic, F2, 3);
  RelationTable t2 = relation_table(sy, 2);

  // maximal cliques of Gamma on N_2 are exactly the 135 tops, each of size 7
  auto gcliques = maximal_cliques(gamma_graph(t2));
  EXPECT_EQ(gcliques.size(), 135u);
  for (const auto& c : gcliques) {
    EXPECT_EQ(c.size(), 7u);
    EXPECT_EQ(classify_clique(sy, 2, c).tag, CliqueClass::Tag::top);
  }

  // the weak graph adds the 63 big stars (one per point) to the tops
  auto wcliques = maximal_cliques(weak_graph(t2));
  EXPECT_EQ(wcliques.size(), 198u);
  long long stars = 0, tops = 0;
  for (const auto& c : wcliques) {
    CliqueClass cc = classify_clique(sy, 2, c);
    if (cc.tag == CliqueClass::Tag::big_star) {
      ++stars;
      EXPECT_EQ(c.size(), 15u);
    } else {
      ASSERT_EQ(cc.tag, CliqueClass::Tag::top);
      ++tops;
    }
  }
  EXPECT_EQ(stars, 63);
  EXPECT_EQ(tops, 135);

  // on the point level of W(3,2), Gamma-cliques are the 15 lines (stars over
  // the zero subspace) and the weak graph is complete: one big star
  PolarSpace w32 = PolarSpace::standard(Kind::symplectic, F2, 2);
  RelationTable tw = relation_table(w32, 1);
  auto wg = maximal_cliques(gamma_graph(tw));
  EXPECT_EQ(wg.size(), 15u);
  for (const auto& c : wg) {
    EXPECT_EQ(c.size(), 3u);
    EXPECT_EQ(classify_clique(w32, 1, c).tag, CliqueClass::Tag::star);
  }
  auto ww = maximal_cliques(weak_graph(tw));
  ASSERT_EQ(ww.size(), 1u);
  EXPECT_EQ(ww[0].size(), 15u);
  EXPECT_EQ(classify_clique(w32, 1, ww[0]).tag, CliqueClass::Tag::big_star);

  // generalized quadrangle O^-(6,2): collinearity cliques are the 45 lines
  PolarSpace om = PolarSpace::standard(Kind::orthogonal_minus, F2, 2);
  RelationTable tom = relation_table(om, 1);
  auto omc = maximal_cliques(gamma_graph(tom));
  EXPECT_EQ(omc.size(), 45u);
  for (const auto& c : omc) {
    EXPECT_EQ(c.size(), 3u);
    EXPECT_EQ(classify_clique(om, 1, c).tag, CliqueClass::Tag::star);
  }
}

TEST(GammaPrimeCliques, ExhaustiveRankThree) {
  const Field& F2 = Field::get_q(2);

  PolarSpace sy = PolarSpace::standard(Kind::symplectic, F2, 3);
  RelationTable t2 = relation_table(sy, 2);
  GammaPrimeCliqueReport rep = verify_gamma_prime_cliques(t2);
  EXPECT_TRUE(rep.pass()) << rep.witness;
  EXPECT_TRUE(rep.cliques_in_big_star);
  EXPECT_TRUE(rep.residue_adjacency_ok);
  EXPECT_TRUE(rep.tops_independent);
  EXPECT_EQ(rep.num_maximal_cliques, 1638);
  EXPECT_EQ(rep.tag_counts.at("other"), 1638);
  EXPECT_EQ(rep.tag_counts.size(), 1u);

  PolarSpace op = PolarSpace::standard(Kind::orthogonal_plus, F2, 3);
  RelationTable o2 = relation_table(op, 2);
  GammaPrimeCliqueReport rop = verify_gamma_prime_cliques(o2);
  EXPECT_TRUE(rop.pass()) << rop.witness;
  EXPECT_EQ(rop.num_maximal_cliques, 210);
  EXPECT_EQ(rop.tag_counts.at("other"), 210);

  // the point level works through plain collinearity instead of a residue
  PolarSpace w32 = PolarSpace::standard(Kind::symplectic, F2, 2);
  RelationTable tw = relation_table(w32, 1);
  GammaPrimeCliqueReport rw = verify_gamma_prime_cliques(tw);
  EXPECT_TRUE(rw.pass()) << rw.witness;

  // the propositions concern 1 <= m <= d-1: the dual polar level is refused
  RelationTable t3 = relation_table(sy, 3);
  EXPECT_THROW(verify_gamma_prime_cliques(t3), Error);
}

TEST(GammaDPrimeCliques, SymplecticRankFour) {
  const Field& F2 = Field::get_q(2);
  PolarSpace sy4 = PolarSpace::standard(Kind::symplectic, F2, 4);
  RelationTable t = relation_table(sy4, 2);
  Graph g = gamma_dprime_graph(t, 2);

  // every edge spans a maximal singular subspace; its 6 common neighbors
  // (graphs of the invertible maps between the two sides) stay in the top,
  // and exactly 2 maximal cliques pass through the edge
  for (int k = 0; k < 3; ++k) {
    int b = g.adj[0][k];
    GammaDPrimeEdgeCheck chk = check_gamma_dprime_edge(t, g, 0, b);
    EXPECT_TRUE(chk.pass()) << chk.witness;
    EXPECT_TRUE(chk.span_maximal);
    EXPECT_TRUE(chk.neighbors_in_top);
    EXPECT_EQ(chk.common_neighbors, 6);
    EXPECT_EQ(chk.cliques_through_edge, 2);
  }
  EXPECT_THROW(check_gamma_dprime_edge(t, g, 0, 0), Error);
  // a (2,2)-pair is not a Gamma''-edge
  int nonedge = -1;
  for (int b = 1; b < t.V; ++b)
    if (t.label(0, b) == (RelationLabel{2, 2})) {
      nonedge = b;
      break;
    }
  ASSERT_GE(nonedge, 0);
  EXPECT_THROW(check_gamma_dprime_edge(t, g, 0, nonedge), Error);

  GammaDPrimeCliqueReport rep = verify_gamma_dprime_cliques(t, 2, 60, 20240915);
  EXPECT_TRUE(rep.pass()) << rep.witness;
  EXPECT_EQ(rep.edges_checked, 60);
  EXPECT_TRUE(rep.span_maximal_ok);
  EXPECT_TRUE(rep.neighbors_in_top_ok);
  EXPECT_EQ(rep.total_cliques, 120);  // 2 per edge

  // deterministic under a fixed seed
  GammaDPrimeCliqueReport again = verify_gamma_dprime_cliques(t, 2, 60, 20240915);
  EXPECT_EQ(again.edges_checked, rep.edges_checked);
  EXPECT_EQ(again.total_cliques, rep.total_cliques);

  // precondition failures: wrong level, rank too small, t too large
  RelationTable t1 = relation_table(sy4, 1);
  EXPECT_THROW(verify_gamma_dprime_cliques(t1, 2, 10, 1), Error);  // m != d - t
  PolarSpace sy3 = PolarSpace::standard(Kind::symplectic, F2, 3);
  RelationTable s2 = relation_table(sy3, 2);
  EXPECT_THROW(verify_gamma_dprime_cliques(s2, 2, 10, 1), Error);  // d < 2t
  EXPECT_THROW(verify_gamma_dprime_cliques(t, 1, 10, 1), Error);   // t < 2
}

}  // namespace
}  // namespace pgrass
