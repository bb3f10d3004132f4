#include "pgrass/relations.hpp"

#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "pgrass/valency.hpp"

namespace pgrass {
namespace {

Subspace coord_subspace(const Field& F, int n, std::initializer_list<int> coords) {
  Matrix m(F, int(coords.size()), n);
  int r = 0;
  for (int c : coords) m.at(r++, c) = 1;
  return Subspace::from_rows(std::move(m));
}

long long edge_count_expected(const RelationTable& t, std::vector<RelationLabel> labels) {
  long long sum = 0;
  for (RelationLabel L : labels) sum += t.valency_of(L);
  return t.V * sum / 2;
}

TEST(Classify, PointPairsAndErrors) {
  const Field& F2 = Field::get_q(2);
  PolarSpace sy = PolarSpace::standard(Kind::symplectic, F2, 3);
  const IsotropicLevel& pts = sy.level(1);

  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < pts.size(); ++b) {
      RelationLabel L = classify(sy, pts.items[a], pts.items[b]);
      if (a == b) {
        EXPECT_EQ(L, (RelationLabel{0, 0}));
      } else if (sy.collinear(pts.items[a], pts.items[b])) {
        EXPECT_EQ(L, (RelationLabel{0, 1}));
      } else {
        EXPECT_EQ(L, (RelationLabel{1, 1}));
      }
      // the relation is symmetric
      EXPECT_EQ(L, classify(sy, pts.items[b], pts.items[a]));
    }

  EXPECT_THROW(classify(sy, pts.items[0], sy.level(2).items[0]), Error);    // dim mismatch
  EXPECT_THROW(classify(sy, coord_subspace(F2, 6, {0, 1}), sy.level(2).items[0]),
               Error);  // not singular
}

TEST(Classify, LabelBoundsOnLevelTwo) {
  const Field& F2 = Field::get_q(2);
  PolarSpace sy = PolarSpace::standard(Kind::symplectic, F2, 3);
  const IsotropicLevel& lv = sy.level(2);
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> pick(0, lv.size() - 1);
  for (int trial = 0; trial < 300; ++trial) {
    const Subspace& X = lv.items[pick(rng)];
    const Subspace& Y = lv.items[pick(rng)];
    RelationLabel L = classify(sy, X, Y);
    EXPECT_GE(L.i, 0);
    EXPECT_LE(L.i, L.j);
    EXPECT_LE(L.j, 2);
    // i and j read off the two defining dimensions
    EXPECT_EQ(L.j, 2 - meet(X, Y).dim());
    EXPECT_EQ(L.i, 2 - meet(sy.perp(X), Y).dim());
  }
}

TEST(RelationTable, FrozenSymplecticTables) {
  const Field& F2 = Field::get_q(2);
  PolarSpace sy = PolarSpace::standard(Kind::symplectic, F2, 3);

  RelationTable t1 = relation_table(sy, 1);
  EXPECT_EQ(t1.V, 63);
  std::vector<RelationLabel> want1 = {{0, 0}, {0, 1}, {1, 1}};
  EXPECT_EQ(t1.labels, want1);
  EXPECT_EQ(t1.valency_of({0, 0}), 0);  // the base vertex itself is excluded
  EXPECT_EQ(t1.valency_of({0, 1}), 30);
  EXPECT_EQ(t1.valency_of({1, 1}), 32);

  RelationTable t2 = relation_table(sy, 2);
  EXPECT_EQ(t2.V, 315);
  std::vector<RelationLabel> want2 = {{0, 0}, {0, 1}, {1, 1}, {1, 2}, {2, 2}};
  EXPECT_EQ(t2.labels, want2);
  EXPECT_EQ(t2.valency_of({0, 1}), 18);
  EXPECT_EQ(t2.valency_of({1, 1}), 24);
  EXPECT_EQ(t2.valency_of({1, 2}), 144);
  EXPECT_EQ(t2.valency_of({2, 2}), 128);
  // (0,2) is infeasible at m = d - 1: absent from the table entirely
  EXPECT_EQ(t2.valency_of({0, 2}), 0);
  EXPECT_FALSE(label_feasible(sy.params(), 2, 0, 2));

  // dual polar level: only diagonal labels occur
  RelationTable t3 = relation_table(sy, 3);
  std::vector<RelationLabel> want3 = {{0, 0}, {1, 1}, {2, 2}, {3, 3}};
  EXPECT_EQ(t3.labels, want3);
  EXPECT_EQ(t3.valency_of({1, 1}), 14);
  EXPECT_EQ(t3.valency_of({2, 2}), 56);
  EXPECT_EQ(t3.valency_of({3, 3}), 64);

  // table entries agree with one-off classification on sampled pairs
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> pick(0, t2.V - 1);
  const IsotropicLevel& lv = sy.level(2);
  for (int trial = 0; trial < 200; ++trial) {
    int a = pick(rng), b = pick(rng);
    EXPECT_EQ(t2.label(a, b), classify(sy, lv.items[a], lv.items[b]));
    EXPECT_EQ(t2.code(a, b), t2.code(b, a));
  }
}

TEST(RelationTable, ValenciesMatchStantonEverywhere) {
  struct Cell {
    Kind kind;
    int q, d;
  };
  Cell cells[] = {
      {Kind::symplectic, 2, 2},      {Kind::symplectic, 2, 3},
      {Kind::orthogonal_plus, 2, 3}, {Kind::orthogonal_minus, 2, 2},
      {Kind::orthogonal_odd, 3, 2},  {Kind::hermitian, 4, 2},
  };
  for (const Cell& c : cells) {
    PolarSpace ps = PolarSpace::standard(c.kind, Field::get_q(c.q), c.d);
    for (int m = 1; m <= c.d; ++m) {
      RelationTable t = relation_table(ps, m);
      long long total = 0;
      for (size_t k = 0; k < t.labels.size(); ++k) {
        RelationLabel L = t.labels[k];
        if (L.i == 0 && L.j == 0) continue;
        EXPECT_EQ(t.valency[k], stanton_valency(ps.params(), m, L.i, L.j).eval_at_q(c.q))
            << "kind " << int(c.kind) << " m " << m << " label " << L.str();
        total += t.valency[k];
      }
      EXPECT_EQ(total + 1, ps.level_count(m));
      // conversely, feasible labels all occur
      for (int j = 0; j <= m; ++j)
        for (int i = 0; i <= j; ++i)
          EXPECT_EQ(label_feasible(ps.params(), m, i, j) && !(i == 0 && j == 0),
                    t.valency_of({i, j}) > 0);
    }
  }
}

TEST(RelationTable, IsometryPreservesLabels) {
  // swapping the two hyperbolic blocks is an isometry of the standard
  // symplectic form; relation labels must be invariant under it
  const Field& F2 = Field::get_q(2);
  PolarSpace sy = PolarSpace::standard(Kind::symplectic, F2, 3);
  Matrix A(F2, 6, 6);
  int perm[6] = {2, 3, 0, 1, 4, 5};
  for (int r = 0; r < 6; ++r) A.at(r, perm[r]) = 1;

  const IsotropicLevel& lv = sy.level(2);
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<int> pick(0, lv.size() - 1);
  for (int trial = 0; trial < 150; ++trial) {
    const Subspace& X = lv.items[pick(rng)];
    const Subspace& Y = lv.items[pick(rng)];
    Subspace AX = Subspace::from_rows(X.basis.mul(A));
    Subspace AY = Subspace::from_rows(Y.basis.mul(A));
    ASSERT_TRUE(sy.is_singular(AX));
    EXPECT_EQ(classify(sy, X, Y), classify(sy, AX, AY));
  }
}

TEST(Graphs, EdgeCountsFromValencies) {
  const Field& F2 = Field::get_q(2);
  PolarSpace sy = PolarSpace::standard(Kind::symplectic, F2, 3);
  RelationTable t2 = relation_table(sy, 2);

  Graph g = gamma_graph(t2);
  Graph gp = gamma_prime_graph(t2);
  Graph w = weak_graph(t2);
  EXPECT_EQ(g.E, 2835);
  EXPECT_EQ(gp.E, 3780);
  EXPECT_EQ(w.E, 6615);
  EXPECT_EQ(g.E, edge_count_expected(t2, {{0, 1}}));
  EXPECT_EQ(gp.E, edge_count_expected(t2, {{1, 1}}));
  EXPECT_EQ(w.E, g.E + gp.E);
  EXPECT_TRUE(g.is_regular());
  EXPECT_EQ(g.degree(0), 18);
  EXPECT_EQ(gp.degree(0), 24);

  // the weak graph on W(3,2) points is complete (every pair is (0,1) or (1,1))
  PolarSpace w32 = PolarSpace::standard(Kind::symplectic, F2, 2);
  RelationTable tw = relation_table(w32, 1);
  EXPECT_EQ(weak_graph(tw).E, 15 * 14 / 2);
  EXPECT_EQ(gamma_graph(tw).E, 45);
  EXPECT_EQ(gamma_prime_graph(tw).E, 60);

  // identity label contributes no edges; out-of-range labels are rejected
  EXPECT_EQ(build_graph(t2, {{0, 0}}).E, 0);
  EXPECT_THROW(build_graph(t2, {{0, 3}}), Error);
  EXPECT_THROW(build_graph(t2, {{2, 1}}), Error);
}

TEST(Graphs, GammaDoublePrimeEdgeCount) {
  const Field& F2 = Field::get_q(2);
  PolarSpace sy4 = PolarSpace::standard(Kind::symplectic, F2, 4);
  RelationTable t = relation_table(sy4, 2);
  EXPECT_EQ(t.V, 5355);
  Graph gpp = gamma_dprime_graph(t, 2);
  EXPECT_EQ(gpp.E, 642600);
  EXPECT_EQ(gpp.E, edge_count_expected(t, {{0, 2}}));
  EXPECT_TRUE(gpp.is_regular());
}

TEST(SchemeAudit, SymplecticLevels) {
  const Field& F2 = Field::get_q(2);
  PolarSpace sy = PolarSpace::standard(Kind::symplectic, F2, 3);

  RelationTable t2 = relation_table(sy, 2);
  SchemeAuditReport rep = scheme_audit(t2);
  EXPECT_TRUE(rep.pass()) << rep.witness;
  EXPECT_TRUE(rep.identity_ok);
  EXPECT_TRUE(rep.symmetry_ok);
  EXPECT_TRUE(rep.constant_ok);
  EXPECT_EQ(rep.num_classes, 5);
  EXPECT_EQ(rep.p_numbers.size(), 65u);
  // p^{(0,1)}_{(0,1),(0,1)} = 5: code of (0,1) at m = 2 is 1
  EXPECT_EQ((rep.p_numbers.at({1, 1, 1})), 5);

  // row sums: for each base label L and first coordinate L1, the p-numbers
  // sum to the valency of L1 (the identity class contributes exactly 1)
  const int K = (t2.m + 1) * (t2.m + 1);
  std::map<std::pair<int, int>, long long> row_sum;
  for (auto& [key, v] : rep.p_numbers) {
    auto [L, c1, c2] = key;
    row_sum[{L, c1}] += v;
  }
  for (auto& [key, sum] : row_sum) {
    auto [L, c1] = key;
    RelationLabel L1{c1 / (t2.m + 1), c1 % (t2.m + 1)};
    long long expect = (c1 == 0) ? 1 : t2.valency_of(L1);
    EXPECT_EQ(sum, expect) << "L code " << L << " L1 " << L1.str();
  }
  (void)K;

  RelationTable t3 = relation_table(sy, 3);
  SchemeAuditReport rep3 = scheme_audit(t3);
  EXPECT_TRUE(rep3.pass()) << rep3.witness;
  EXPECT_EQ(rep3.num_classes, 4);

  // the point scheme of a generalized quadrangle is strongly regular
  PolarSpace w32 = PolarSpace::standard(Kind::symplectic, F2, 2);
  SchemeAuditReport repw = scheme_audit(relation_table(w32, 1));
  EXPECT_TRUE(repw.pass());
  EXPECT_EQ(repw.num_classes, 3);
}

TEST(DistanceCheck, FrozenDistanceTwoLabels) {
  const Field& F2 = Field::get_q(2);
  PolarSpace sy = PolarSpace::standard(Kind::symplectic, F2, 3);

  RelationTable t1 = relation_table(sy, 1);
  DistanceCheckReport r1 = graph_distance_check(t1);
  EXPECT_TRUE(r1.pass) << r1.witness;
  std::vector<RelationLabel> want1 = {{1, 1}};
  EXPECT_EQ(r1.labels_at_distance2, want1);
  EXPECT_EQ(r1.distance2_pairs, 63LL * 32);

  RelationTable t2 = relation_table(sy, 2);
  DistanceCheckReport r2 = graph_distance_check(t2);
  EXPECT_TRUE(r2.pass) << r2.witness;
  std::vector<RelationLabel> want2 = {{1, 1}, {1, 2}};
  EXPECT_EQ(r2.labels_at_distance2, want2);
  EXPECT_EQ(r2.distance2_pairs, 315LL * (24 + 144));

  PolarSpace op = PolarSpace::standard(Kind::orthogonal_plus, F2, 3);
  DistanceCheckReport rop = graph_distance_check(relation_table(op, 2));
  EXPECT_TRUE(rop.pass) << rop.witness;
  EXPECT_EQ(rop.labels_at_distance2, want2);

  const Field& F4 = Field::get_q(4);
  PolarSpace he = PolarSpace::standard(Kind::hermitian, F4, 2);
  DistanceCheckReport rhe = graph_distance_check(relation_table(he, 1));
  EXPECT_TRUE(rhe.pass) << rhe.witness;
  EXPECT_EQ(rhe.labels_at_distance2, want1);

  // the dual polar level has no Gamma edges at all; the check refuses m = d
  EXPECT_THROW(graph_distance_check(relation_table(sy, 3)), Error);
}

TEST(DistanceCheck, ZeroTwoLabelAppearsBelowTopLevels) {
  // at symplectic d = 4, m = 2 the label (0,2) is feasible and joins the
  // distance-2 shell alongside (1,1) and (1,2)
  const Field& F2 = Field::get_q(2);
  PolarSpace sy4 = PolarSpace::standard(Kind::symplectic, F2, 4);
  RelationTable t = relation_table(sy4, 2);
  DistanceCheckReport rep = graph_distance_check(t);
  EXPECT_TRUE(rep.pass) << rep.witness;
  std::vector<RelationLabel> want = {{0, 2}, {1, 1}, {1, 2}};
  EXPECT_EQ(rep.labels_at_distance2, want);
}

}  // namespace
}  // namespace pgrass
