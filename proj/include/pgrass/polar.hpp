#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "pgrass/base.hpp"
#include "pgrass/field.hpp"
#include "pgrass/subspace.hpp"
#include "pgrass/valency.hpp"

namespace pgrass {

// One level N_m: all totally isotropic (singular) m-subspaces, sorted by the
// canonical subspace order, with an index for O(log) lookup.
struct IsotropicLevel {
  int m = 0;
  std::vector<Subspace> items;
  std::map<std::string, int> index;

  int size() const { return int(items.size()); }
  // Position of S in the level, or -1 when S does not belong to it.
  int index_of(const Subspace& S) const {
    if (S.dim() != m) return -1;
    auto it = index.find(S.encode());
    return it == index.end() ? -1 : it->second;
  }
};

// A classical polar space: ambient F^n with a nondegenerate reflexive form.
// Orthogonal kinds carry a quadratic form Q as an upper-triangular
// coefficient matrix `quad`; `gram` is always the (polarized) bilinear form,
// so collinearity is uniform across kinds and characteristics.
class PolarSpace {
 public:
  Kind kind;
  int n_amb = 0;
  int d = 0;  // Witt index = rank of the space

  const Field& field() const { return *F_; }
  const Matrix& gram() const { return gram_; }
  const Matrix& quad() const { return quad_; }
  bool is_standard_model() const { return standard_model_; }

  SpaceParams params() const { return SpaceParams{kind, n_amb, d}; }
  int mu2() const { return params().mu2(); }
  int nu2() const { return params().nu2(); }

  PolarSpace(PolarSpace&&) = default;
  PolarSpace& operator=(PolarSpace&&) = default;
  PolarSpace(const PolarSpace&) = delete;
  PolarSpace& operator=(const PolarSpace&) = delete;

  // The standard model:
  //   symplectic        n = 2d,   B = blockdiag [[0,1],[-1,0]]
  //   hermitian         n = 2d    B = blockdiag [[0,1],[1,0]]
  //                     n = 2d+1  ... plus an identity 1x1 tail
  //   orthogonal_plus   n = 2d,   Q = x0 x1 + x2 x3 + ...
  //   orthogonal_minus  n = 2d+2, Q = ... + x_{2d}^2 + x_{2d} x_{2d+1} + c x_{2d+1}^2
  //                     with c making t^2 + t + c irreducible over F
  //   orthogonal_odd    n = 2d+1, Q = ... + x_{2d}^2 (odd q only)
  // Construction verifies nondegeneracy, the designated singular d-space,
  // and anisotropy of the tail, which pins the Witt index to exactly d.
  static PolarSpace standard(Kind kind, const Field& F, int d, int n_amb = -1) {
    require(d >= 2, ErrorCode::BadParameters, "Witt index must be >= 2");
    if (n_amb < 0) n_amb = default_n_amb(kind, d);
    SpaceParams::make(kind, d, n_amb);  // validates the (kind, d, n_amb) combination
    if (kind == Kind::hermitian)
      require(F.has_involution(), ErrorCode::NoInvolution,
              "hermitian form needs a square field order");
    if (kind == Kind::orthogonal_odd)
      require(F.p != 2, ErrorCode::UnsupportedDegenerate,
              "odd-dimensional quadric over even q has a radical; use symplectic");

    PolarSpace ps(kind, F, n_amb, d);
    Matrix& G = ps.gram_;
    Matrix& U = ps.quad_;
    switch (kind) {
      case Kind::symplectic:
        for (int r = 0; r < d; ++r) {
          G.at(2 * r, 2 * r + 1) = 1;
          G.at(2 * r + 1, 2 * r) = F.neg(1);
        }
        break;
      case Kind::hermitian:
        for (int r = 0; r < d; ++r) {
          G.at(2 * r, 2 * r + 1) = 1;
          G.at(2 * r + 1, 2 * r) = 1;
        }
        if (n_amb == 2 * d + 1) G.at(2 * d, 2 * d) = 1;
        break;
      case Kind::orthogonal_plus:
      case Kind::orthogonal_minus:
      case Kind::orthogonal_odd: {
        U = Matrix(F, n_amb, n_amb);
        for (int r = 0; r < d; ++r) U.at(2 * r, 2 * r + 1) = 1;
        if (kind == Kind::orthogonal_odd) U.at(2 * d, 2 * d) = 1;
        if (kind == Kind::orthogonal_minus) {
          uint8_t c = irreducible_tail_coeff(F);
          U.at(2 * d, 2 * d) = 1;
          U.at(2 * d, 2 * d + 1) = 1;
          U.at(2 * d + 1, 2 * d + 1) = c;
        }
        // polarize: G = U + U^T
        for (int i = 0; i < n_amb; ++i)
          for (int j = 0; j < n_amb; ++j)
            G.at(i, j) = F.add(U.at(i, j), U.at(j, i));
        break;
      }
    }
    ps.standard_model_ = true;
    ps.validate_standard();
    return ps;
  }

  // Escape hatch for test fixtures (e.g. deliberately degenerate forms) and
  // for quotient models, where the caller vouches for the parameters.
  static PolarSpace unchecked(Kind kind, const Field& F, int n_amb, int d, Matrix gram,
                              Matrix quad = Matrix()) {
    PolarSpace ps(kind, F, n_amb, d);
    require(gram.rows == n_amb && gram.cols == n_amb, ErrorCode::BadParameters,
            "gram matrix shape");
    ps.gram_ = std::move(gram);
    if (is_orthogonal(kind)) {
      require(quad.rows == n_amb && quad.cols == n_amb, ErrorCode::BadParameters,
              "quadratic form shape");
      ps.quad_ = std::move(quad);
    }
    return ps;
  }

  // B(x, y) = x G sigma(y)^T; sigma is conjugation for hermitian spaces and
  // the identity otherwise.
  uint8_t bform(const uint8_t* x, const uint8_t* y) const {
    const Field& F = *F_;
    uint8_t acc = 0;
    for (int i = 0; i < n_amb; ++i) {
      if (!x[i]) continue;
      uint8_t row = 0;
      for (int j = 0; j < n_amb; ++j) {
        uint8_t g = gram_.at(i, j);
        if (g) row = F.add(row, F.mul(g, F.sigma(y[j])));
      }
      acc = F.add(acc, F.mul(x[i], row));
    }
    return acc;
  }
  uint8_t bform(const std::vector<uint8_t>& x, const std::vector<uint8_t>& y) const {
    return bform(x.data(), y.data());
  }

  // Q(x) = sum_{i<=j} U[i][j] x_i x_j (orthogonal kinds only).
  uint8_t qform(const uint8_t* x) const {
    require(is_orthogonal(kind), ErrorCode::Unsupported,
            "quadratic form only exists for orthogonal kinds");
    const Field& F = *F_;
    uint8_t acc = 0;
    for (int i = 0; i < n_amb; ++i) {
      if (!x[i]) continue;
      for (int j = i; j < n_amb; ++j) {
        uint8_t u = quad_.at(i, j);
        if (u && x[j]) acc = F.add(acc, F.mul(u, F.mul(x[i], x[j])));
      }
    }
    return acc;
  }
  uint8_t qform(const std::vector<uint8_t>& x) const { return qform(x.data()); }

  // A vector spans a point of the polar space iff it is nonzero and the form
  // vanishes on it (the quadratic form for orthogonal kinds).
  bool is_isotropic_vector(const uint8_t* v) const {
    if (is_orthogonal(kind)) return qform(v) == 0;
    return bform(v, v) == 0;
  }

  // Totally isotropic / totally singular test.  Vanishing on a basis plus
  // pairwise polar-form vanishing pins the form down on the whole span, in
  // every characteristic.
  bool is_singular(const Subspace& S) const {
    check_ambient(S);
    const Matrix& b = S.basis;
    for (int r = 0; r < b.rows; ++r) {
      if (is_orthogonal(kind)) {
        if (qform(b.row(r)) != 0) return false;
      }
      // hermitian diagonal B(v,v) is not automatic; symplectic/orthogonal
      // diagonal vanishes by construction but is cheap to include
      if (bform(b.row(r), b.row(r)) != 0) return false;
      for (int s = r + 1; s < b.rows; ++s)
        if (bform(b.row(r), b.row(s)) != 0) return false;
    }
    return true;
  }

  // Linear perp: all y with B(s, y) = 0 for s in S.  For hermitian forms the
  // condition is linear in sigma(y), so the kernel gets conjugated back.
  Subspace perp(const Subspace& S) const {
    check_ambient(S);
    if (S.dim() == 0) return Subspace::full(*F_, n_amb);
    Matrix M = S.basis.mul(gram_);
    Matrix K = kernel(M);
    return Subspace::from_rows(K.sigma());
  }

  // Collinearity of polar-space points (1-subspaces known to be isotropic).
  bool collinear(const Subspace& p, const Subspace& q) const {
    return bform(p.basis.row(0), q.basis.row(0)) == 0;
  }

  // N_m, computed by extending each element of N_{m-1} by the isotropic
  // points of its perp, with canonical-form deduplication.  Cached.
  const IsotropicLevel& level(int m) const {
    require(m >= 0, ErrorCode::DimensionOutOfRange, "negative level");
    auto it = levels_.find(m);
    if (it != levels_.end()) return *it->second;
    auto lv = std::make_unique<IsotropicLevel>();
    lv->m = m;
    if (m == 0) {
      lv->items.push_back(Subspace::zero(*F_, n_amb));
    } else if (m == 1) {
      enumerate_points(lv->items);
    } else {
      const IsotropicLevel& below = level(m - 1);
      const IsotropicLevel& pts = level(1);
      std::set<Subspace> acc;
      for (const Subspace& S : below.items) {
        Subspace P = perp(S);
        for (const Subspace& pt : pts.items) {
          std::vector<uint8_t> v(pt.basis.row(0), pt.basis.row(0) + n_amb);
          if (!P.contains_vector(v) || S.contains_vector(v)) continue;
          acc.insert(join(S, pt));
        }
      }
      lv->items.assign(acc.begin(), acc.end());
    }
    std::sort(lv->items.begin(), lv->items.end());
    for (int i = 0; i < int(lv->items.size()); ++i)
      lv->index[lv->items[i].encode()] = i;
    if (standard_model_) {
      // cross-check against the classical counting formula
      long long expect = level_count_factors(params(), m).expand().eval_at_q(F_->q);
      require(expect == (long long)lv->items.size(), ErrorCode::TheoremViolation,
              "level size disagrees with the counting formula at m = " + std::to_string(m));
    }
    auto [pos, inserted] = levels_.emplace(m, std::move(lv));
    (void)inserted;
    return *pos->second;
  }

  // Exact |N_m| from the counting formula (standard models).
  long long level_count(int m) const {
    return level_count_factors(params(), m).expand().eval_at_q(F_->q);
  }

 private:
  const Field* F_;
  Matrix gram_;
  Matrix quad_;
  bool standard_model_ = false;
  mutable std::map<int, std::unique_ptr<IsotropicLevel>> levels_;

  PolarSpace(Kind k, const Field& F, int n, int dd)
      : kind(k), n_amb(n), d(dd), F_(&F), gram_(F, n, n) {}

  void check_ambient(const Subspace& S) const {
    require(S.ambient == n_amb && S.basis.F == F_, ErrorCode::AmbientMismatch,
            "subspace does not live in this polar space");
  }

  // Smallest c (in element-code order) with t^2 + t + c irreducible over F.
  static uint8_t irreducible_tail_coeff(const Field& F) {
    for (uint8_t c : F.elements()) {
      bool has_root = false;
      for (uint8_t t : F.elements()) {
        uint8_t v = F.add(F.add(F.mul(t, t), t), c);
        if (v == 0) {
          has_root = true;
          break;
        }
      }
      if (!has_root) return c;
    }
    fail(ErrorCode::BadParameters, "no irreducible quadratic tail found");
  }

  void enumerate_points(std::vector<Subspace>& out) const {
    const Field& F = *F_;
    std::vector<uint8_t> v(n_amb, 0);
    // odometer over all q^n vectors; keep those whose first nonzero entry is
    // 1, the canonical representative of the projective point
    for (;;) {
      int k = 0;
      while (k < n_amb && v[k] == F.q - 1) v[k++] = 0;
      if (k == n_amb) break;
      ++v[k];
      int lead = 0;
      while (lead < n_amb && v[lead] == 0) ++lead;
      if (v[lead] != 1) continue;
      if (!is_isotropic_vector(v.data())) continue;
      Matrix m(F, 1, n_amb);
      for (int i = 0; i < n_amb; ++i) m.at(0, i) = v[i];
      out.push_back(Subspace{n_amb, std::move(m)});
    }
  }

  void validate_standard() const {
    const Field& F = *F_;
    // nondegenerate bilinear form
    Matrix g = gram_;
    require(rref_in_place(g) == n_amb, ErrorCode::BadParameters,
            "standard form is degenerate");
    // hermitian Gram actually hermitian
    if (kind == Kind::hermitian) {
      Matrix h = gram_.transpose().sigma();
      require(h == gram_, ErrorCode::BadParameters, "gram not hermitian");
    }
    // the designated d-space spanned by e_0, e_2, ..., e_{2(d-1)} is singular
    Matrix w(F, d, n_amb);
    for (int r = 0; r < d; ++r) w.at(r, 2 * r) = 1;
    require(is_singular(Subspace::from_rows(w)), ErrorCode::BadParameters,
            "hyperbolic half is not singular");
    // the anisotropic tail (coordinates past 2d) has no isotropic vector, so
    // the Witt index is exactly d
    int tail = n_amb - 2 * d;
    if (tail > 0) {
      std::vector<uint8_t> v(n_amb, 0);
      std::vector<uint8_t> t(tail, 0);
      for (;;) {
        size_t k = 0;
        while (k < t.size() && t[k] == F.q - 1) t[k++] = 0;
        if (k == t.size()) break;
        ++t[k];
        for (int i = 0; i < tail; ++i) v[2 * d + i] = t[i];
        require(!is_isotropic_vector(v.data()), ErrorCode::BadParameters,
                "anisotropic tail has an isotropic vector");
      }
    }
  }
};

// The residue space Pi_N over a singular N of dimension c: points are the
// elements of N_{c+1} containing N, with induced collinearity.  It is a
// polar space of rank d - c, realized concretely by the quotient model: the
// form restricted to a complement C of N inside perp(N).
struct ResidueSpace {
  const PolarSpace* amb = nullptr;
  Subspace N;
  std::vector<int> point_ids;  // indices into amb->level(dim N + 1)

  // quotient model
  PolarSpace q_space;
  Matrix comp;  // rows: basis of C (ambient coordinates), zeros at pivots(N)

  ResidueSpace(const PolarSpace& space, Subspace N_in, PolarSpace q, Matrix comp_in)
      : amb(&space), N(std::move(N_in)), q_space(std::move(q)), comp(std::move(comp_in)) {}

  const Subspace& point(int i) const { return amb->level(N.dim() + 1).items[point_ids[i]]; }
  int num_points() const { return int(point_ids.size()); }

  // Induced collinearity: the join of two residue points is a singular
  // subspace of dimension dim N + 2.
  bool collinear(int i, int j) const {
    auto [mt, jn] = meet_join(point(i), point(j));
    (void)mt;
    return jn.dim() == N.dim() + 2 && amb->is_singular(jn);
  }

  // T in the quotient coordinates -> the ambient subspace containing N.
  Subspace lift(const Subspace& T) const {
    require(T.ambient == comp.rows, ErrorCode::AmbientMismatch,
            "lift expects quotient coordinates");
    if (T.dim() == 0) return N;
    Matrix rows = T.basis.mul(comp);
    return join(N, Subspace::from_rows(std::move(rows)));
  }

  // S with N <= S <= perp(N)  ->  its image in the quotient coordinates.
  // Reducing a vector of perp(N) modulo N's pivots lands in C, whose basis
  // rows have their own pivot columns, so coordinates are read off directly.
  Subspace project(const Subspace& S) const {
    const Field& F = S.field();
    std::vector<int> npiv(N.dim());
    for (int r = 0; r < N.dim(); ++r) {
      int c = 0;
      while (N.basis.at(r, c) == 0) ++c;
      npiv[r] = c;
    }
    std::vector<int> cpiv(comp.rows);
    for (int r = 0; r < comp.rows; ++r) {
      int c = 0;
      while (comp.at(r, c) == 0) ++c;
      cpiv[r] = c;
    }
    Matrix out(F, S.dim(), comp.rows);
    for (int r = 0; r < S.dim(); ++r) {
      std::vector<uint8_t> v(S.basis.row(r), S.basis.row(r) + S.ambient);
      for (int t = 0; t < N.dim(); ++t) {
        uint8_t f = v[npiv[t]];
        if (!f) continue;
        for (int j = 0; j < S.ambient; ++j) v[j] = F.sub(v[j], F.mul(f, N.basis.at(t, j)));
      }
      for (int k = 0; k < comp.rows; ++k) out.at(r, k) = v[cpiv[k]];
    }
    return Subspace::from_rows(std::move(out));
  }
};

inline ResidueSpace residue_space(const PolarSpace& ps, const Subspace& N) {
  require(ps.is_singular(N), ErrorCode::NotSingular, "residue base is not singular");
  int c = N.dim();
  require(0 < c && c < ps.d, ErrorCode::BadParameters,
          "residue base dimension must be strictly between 0 and d");
  const Field& F = ps.field();

  // complement C of N in perp(N): the RREF rows of perp(N) whose pivot
  // columns are not pivot columns of N (those rows have zeros at N's pivots)
  Subspace P = ps.perp(N);
  std::vector<char> npiv(ps.n_amb, 0);
  for (int r = 0; r < N.dim(); ++r) {
    int col = 0;
    while (N.basis.at(r, col) == 0) ++col;
    npiv[col] = 1;
  }
  int cdim = P.dim() - c;
  Matrix comp(F, cdim, ps.n_amb);
  int cr = 0;
  for (int r = 0; r < P.dim(); ++r) {
    int col = 0;
    while (P.basis.at(r, col) == 0) ++col;
    if (npiv[col]) continue;
    for (int j = 0; j < ps.n_amb; ++j) comp.at(cr, j) = P.basis.at(r, j);
    ++cr;
  }
  require(cr == cdim, ErrorCode::PreconditionFailed, "complement extraction failed");

  // restrict the forms to C
  Matrix gq(F, cdim, cdim);
  for (int i = 0; i < cdim; ++i)
    for (int j = 0; j < cdim; ++j) gq.at(i, j) = ps.bform(comp.row(i), comp.row(j));
  Matrix uq;
  if (is_orthogonal(ps.kind)) {
    uq = Matrix(F, cdim, cdim);
    for (int i = 0; i < cdim; ++i) {
      uq.at(i, i) = ps.qform(comp.row(i));
      for (int j = i + 1; j < cdim; ++j) uq.at(i, j) = ps.bform(comp.row(i), comp.row(j));
    }
  }
  PolarSpace q = PolarSpace::unchecked(ps.kind, F, cdim, ps.d - c, std::move(gq), std::move(uq));

  ResidueSpace rs(ps, N, std::move(q), std::move(comp));
  const IsotropicLevel& lv = ps.level(c + 1);
  for (int i = 0; i < lv.size(); ++i)
    if (lv.items[i].contains(N)) rs.point_ids.push_back(i);
  return rs;
}

// Report of the polar-space axioms (P1)-(P4) and Facts 1-3, checked
// exhaustively.  Any failure records the first counterexample found.
struct AxiomFactReport {
  bool p1 = false, p2 = false, p3 = false, p4 = false;
  bool fact1 = false, fact1_direction = false, fact2 = false, fact3 = false;
  long long lines_checked = 0;
  std::string counterexample;

  bool all_pass() const {
    return p1 && p2 && p3 && p4 && fact1 && fact1_direction && fact2 && fact3;
  }
};

inline std::string describe_point(const Subspace& p) {
  std::string s = "(";
  for (int j = 0; j < p.ambient; ++j) {
    if (j) s += ",";
    s += std::to_string(int(p.basis.at(0, j)));
  }
  return s + ")";
}

inline AxiomFactReport verify_axioms_and_facts(const PolarSpace& ps) {
  AxiomFactReport rep;
  const int q = ps.field().q;
  const IsotropicLevel& pts = ps.level(1);
  const IsotropicLevel& lines = ps.level(2);
  const IsotropicLevel& maxes = ps.level(ps.d);
  const int P = pts.size();

  // collinearity matrix over the points
  std::vector<char> col(size_t(P) * P, 0);
  for (int i = 0; i < P; ++i)
    for (int j = i; j < P; ++j) {
      char c = ps.collinear(pts.items[i], pts.items[j]) ? 1 : 0;
      col[size_t(i) * P + j] = c;
      col[size_t(j) * P + i] = c;
    }

  // points on each line
  std::vector<std::vector<int>> on_line(lines.size());
  for (int l = 0; l < lines.size(); ++l) {
    for (const Subspace& p : enumerate_subspaces(lines.items[l], 1)) {
      int id = pts.index_of(p);
      require(id >= 0, ErrorCode::TheoremViolation,
              "a point of a singular line is not isotropic");
      on_line[l].push_back(id);
    }
  }

  // P1: each line carries exactly q+1 >= 3 points
  rep.p1 = true;
  for (int l = 0; l < lines.size(); ++l) {
    rep.lines_checked++;
    if (int(on_line[l].size()) != q + 1 || q + 1 < 3) {
      rep.p1 = false;
      rep.counterexample = "P1: line " + std::to_string(l) + " has " +
                           std::to_string(on_line[l].size()) + " points";
      break;
    }
  }

  // P2: no point is collinear to all points
  rep.p2 = true;
  for (int i = 0; i < P && rep.p2; ++i) {
    bool all = true;
    for (int j = 0; j < P; ++j)
      if (!col[size_t(i) * P + j]) {
        all = false;
        break;
      }
    if (all) {
      rep.p2 = false;
      if (rep.counterexample.empty())
        rep.counterexample =
            "P2: point " + describe_point(pts.items[i]) + " is collinear to all points";
    }
  }

  // P3: a point off a line is collinear to one or all of its points
  rep.p3 = true;
  for (int i = 0; i < P && rep.p3; ++i)
    for (int l = 0; l < lines.size(); ++l) {
      if (lines.items[l].contains(pts.items[i])) continue;
      int c = 0;
      for (int id : on_line[l])
        if (col[size_t(i) * P + id]) ++c;
      if (c != 1 && c != int(on_line[l].size())) {
        rep.p3 = false;
        if (rep.counterexample.empty())
          rep.counterexample = "P3: point " + describe_point(pts.items[i]) + " sees " +
                               std::to_string(c) + " points of line " + std::to_string(l);
        break;
      }
    }

  // P4: flags of singular subspaces are chains of dimensions <= d, finite by
  // construction in a finite-dimensional ambient space
  rep.p4 = ps.d < ps.n_amb + 1;

  // Fact 1: a singular point collinear to all of a maximal M lies in M,
  // i.e. perp(M) contains no singular point outside M
  rep.fact1 = true;
  for (int mi = 0; mi < maxes.size() && rep.fact1; ++mi) {
    Subspace pm = ps.perp(maxes.items[mi]);
    for (const Subspace& p : enumerate_subspaces(pm, 1)) {
      std::vector<uint8_t> v(p.basis.row(0), p.basis.row(0) + ps.n_amb);
      if (!ps.is_isotropic_vector(v.data())) continue;
      if (!maxes.items[mi].contains_vector(v)) {
        rep.fact1 = false;
        if (rep.counterexample.empty())
          rep.counterexample = "Fact1: point " + describe_point(p) +
                               " collinear to all of maximal " + std::to_string(mi);
        break;
      }
    }
  }

  // Fact 1 direction used by the enumeration: S singular, p a singular point
  // of perp(S) outside S  =>  span(S, p) singular
  rep.fact1_direction = true;
  for (int m = 1; m < ps.d && rep.fact1_direction; ++m) {
    for (const Subspace& S : ps.level(m).items) {
      Subspace Pp = ps.perp(S);
      for (int i = 0; i < P; ++i) {
        std::vector<uint8_t> v(pts.items[i].basis.row(0), pts.items[i].basis.row(0) + ps.n_amb);
        if (!Pp.contains_vector(v) || S.contains_vector(v)) continue;
        if (!ps.is_singular(join(S, pts.items[i]))) {
          rep.fact1_direction = false;
          if (rep.counterexample.empty())
            rep.counterexample = "Fact1-direction: span not singular at level " +
                                 std::to_string(m);
          break;
        }
      }
      if (!rep.fact1_direction) break;
    }
  }

  // Fact 2: for p outside a maximal M, dim(perp(p) cap M) = d - 1 (linear)
  rep.fact2 = true;
  for (int mi = 0; mi < maxes.size() && rep.fact2; ++mi) {
    for (int i = 0; i < P; ++i) {
      std::vector<uint8_t> v(pts.items[i].basis.row(0), pts.items[i].basis.row(0) + ps.n_amb);
      if (maxes.items[mi].contains_vector(v)) continue;
      Subspace pp = ps.perp(pts.items[i]);
      if (meet(pp, maxes.items[mi]).dim() != ps.d - 1) {
        rep.fact2 = false;
        if (rep.counterexample.empty())
          rep.counterexample = "Fact2: point " + describe_point(pts.items[i]) +
                               " against maximal " + std::to_string(mi);
        break;
      }
    }
  }

  // Fact 3: every singular S with dim S < d is the intersection of two
  // maximal singular subspaces
  rep.fact3 = true;
  for (int m = 0; m < ps.d && rep.fact3; ++m) {
    for (const Subspace& S : ps.level(m).items) {
      std::vector<int> through;
      for (int mi = 0; mi < maxes.size(); ++mi)
        if (maxes.items[mi].contains(S)) through.push_back(mi);
      bool found = false;
      for (size_t a = 0; a < through.size() && !found; ++a)
        for (size_t b = a + 1; b < through.size() && !found; ++b)
          if (meet(maxes.items[through[a]], maxes.items[through[b]]) == S) found = true;
      if (!found) {
        rep.fact3 = false;
        if (rep.counterexample.empty())
          rep.counterexample = "Fact3: no witness pair for a level-" + std::to_string(m) +
                               " subspace";
        break;
      }
    }
  }

  return rep;
}

}  // namespace pgrass
