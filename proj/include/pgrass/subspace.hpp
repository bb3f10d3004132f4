#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "pgrass/base.hpp"
#include "pgrass/field.hpp"

namespace pgrass {

// Dense row-major matrix over a Field, entries stored as element codes.
struct Matrix {
  const Field* F = nullptr;
  int rows = 0, cols = 0;
  std::vector<uint8_t> a;

  Matrix() = default;
  Matrix(const Field& f, int r, int c) : F(&f), rows(r), cols(c), a(size_t(r) * c, 0) {}

  uint8_t& at(int r, int c) { return a[size_t(r) * cols + c]; }
  uint8_t at(int r, int c) const { return a[size_t(r) * cols + c]; }
  const uint8_t* row(int r) const { return a.data() + size_t(r) * cols; }
  uint8_t* row(int r) { return a.data() + size_t(r) * cols; }

  static Matrix identity(const Field& f, int n) {
    Matrix m(f, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  static Matrix from_rows(const Field& f, const std::vector<std::vector<int>>& rows_in) {
    int r = int(rows_in.size());
    int c = r ? int(rows_in[0].size()) : 0;
    Matrix m(f, r, c);
    for (int i = 0; i < r; ++i) {
      require(int(rows_in[i].size()) == c, ErrorCode::BadParameters, "ragged rows");
      for (int j = 0; j < c; ++j) m.at(i, j) = uint8_t(rows_in[i][j]);
    }
    return m;
  }

  Matrix mul(const Matrix& o) const {
    require(F == o.F, ErrorCode::AmbientMismatch, "field mismatch");
    require(cols == o.rows, ErrorCode::AmbientMismatch, "shape mismatch in product");
    Matrix r(*F, rows, o.cols);
    for (int i = 0; i < rows; ++i)
      for (int k = 0; k < cols; ++k) {
        uint8_t v = at(i, k);
        if (!v) continue;
        for (int j = 0; j < o.cols; ++j)
          r.at(i, j) = F->add(r.at(i, j), F->mul(v, o.at(k, j)));
      }
    return r;
  }

  Matrix transpose() const {
    Matrix r(*F, cols, rows);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) r.at(j, i) = at(i, j);
    return r;
  }

  // Apply sigma (conj when it exists, identity otherwise) entrywise.
  Matrix sigma() const {
    Matrix r = *this;
    for (auto& v : r.a) v = F->sigma(v);
    return r;
  }

  Matrix vstack(const Matrix& o) const {
    require(F == o.F && cols == o.cols, ErrorCode::AmbientMismatch, "vstack mismatch");
    Matrix r(*F, rows + o.rows, cols);
    std::copy(a.begin(), a.end(), r.a.begin());
    std::copy(o.a.begin(), o.a.end(), r.a.begin() + a.size());
    return r;
  }

  bool operator==(const Matrix& o) const {
    return F == o.F && rows == o.rows && cols == o.cols && a == o.a;
  }
};

// In-place reduced row echelon form.  Returns the rank; fills pivot column
// indices if requested.  This is the canonicalization everything else
// depends on: a subspace has exactly one RREF basis.
inline int rref_in_place(Matrix& m, std::vector<int>* pivots = nullptr) {
  const Field& F = *m.F;
  int r = 0;
  if (pivots) pivots->clear();
  for (int c = 0; c < m.cols && r < m.rows; ++c) {
    int sel = -1;
    for (int i = r; i < m.rows; ++i)
      if (m.at(i, c)) { sel = i; break; }
    if (sel < 0) continue;
    if (sel != r)
      for (int j = 0; j < m.cols; ++j) std::swap(m.at(sel, j), m.at(r, j));
    uint8_t piv = m.at(r, c);
    if (piv != 1) {
      uint8_t pi = F.inv(piv);
      for (int j = c; j < m.cols; ++j) m.at(r, j) = F.mul(m.at(r, j), pi);
    }
    for (int i = 0; i < m.rows; ++i) {
      if (i == r) continue;
      uint8_t f = m.at(i, c);
      if (!f) continue;
      for (int j = c; j < m.cols; ++j)
        m.at(i, j) = F.sub(m.at(i, j), F.mul(f, m.at(r, j)));
    }
    if (pivots) pivots->push_back(c);
    ++r;
  }
  return r;
}

inline int rank(Matrix m) { return rref_in_place(m); }

// Right kernel {x : m x^T = 0} as a canonical (RREF) basis matrix.
inline Matrix kernel(const Matrix& m_in) {
  Matrix m = m_in;
  std::vector<int> piv;
  int r = rref_in_place(m, &piv);
  const Field& F = *m.F;
  std::vector<char> is_piv(m.cols, 0);
  for (int c : piv) is_piv[c] = 1;
  Matrix k(F, m.cols - r, m.cols);
  int kr = 0;
  for (int c = 0; c < m.cols; ++c) {
    if (is_piv[c]) continue;
    k.at(kr, c) = 1;
    for (int i = 0; i < r; ++i) k.at(kr, piv[i]) = F.neg(m.at(i, c));
    ++kr;
  }
  rref_in_place(k);
  return k;
}

// A subspace of F^n held by its unique RREF basis (zero rows dropped).
struct Subspace {
  int ambient = 0;
  Matrix basis;  // dim x ambient, RREF

  int dim() const { return basis.rows; }
  const Field& field() const { return *basis.F; }

  static Subspace from_rows(Matrix m) {
    int r = rref_in_place(m);
    Matrix b(*m.F, r, m.cols);
    std::copy(m.a.begin(), m.a.begin() + size_t(r) * m.cols, b.a.begin());
    return Subspace{m.cols, std::move(b)};
  }

  static Subspace zero(const Field& F, int n) { return Subspace{n, Matrix(F, 0, n)}; }
  static Subspace full(const Field& F, int n) {
    return Subspace{n, Matrix::identity(F, n)};
  }

  bool contains_vector(const std::vector<uint8_t>& v) const {
    const Field& F = field();
    std::vector<uint8_t> w = v;
    for (int r = 0; r < basis.rows; ++r) {
      int c = 0;
      while (basis.at(r, c) == 0) ++c;  // pivot column
      uint8_t f = w[c];
      if (!f) continue;
      for (int j = c; j < ambient; ++j) w[j] = F.sub(w[j], F.mul(f, basis.at(r, j)));
    }
    for (uint8_t x : w)
      if (x) return false;
    return true;
  }

  bool contains(const Subspace& o) const {
    for (int r = 0; r < o.basis.rows; ++r) {
      std::vector<uint8_t> v(o.basis.row(r), o.basis.row(r) + ambient);
      if (!contains_vector(v)) return false;
    }
    return true;
  }

  // Coordinates of o's basis w.r.t. this (RREF) basis; o must be contained.
  // Because the basis is RREF, coordinates are read off the pivot columns.
  Matrix coords_of(const Subspace& o) const {
    require(contains(o), ErrorCode::BadParameters, "coords_of: not a subspace of ambient");
    std::vector<int> piv(dim());
    for (int r = 0; r < dim(); ++r) {
      int c = 0;
      while (basis.at(r, c) == 0) ++c;
      piv[r] = c;
    }
    Matrix co(field(), o.dim(), dim());
    for (int r = 0; r < o.dim(); ++r)
      for (int k = 0; k < dim(); ++k) co.at(r, k) = o.basis.at(r, piv[k]);
    return co;
  }

  bool operator==(const Subspace& o) const {
    return ambient == o.ambient && basis.rows == o.basis.rows && basis.a == o.basis.a;
  }
  // Order: by dimension, then lexicographic on the flattened canonical basis.
  bool operator<(const Subspace& o) const {
    if (ambient != o.ambient) return ambient < o.ambient;
    if (basis.rows != o.basis.rows) return basis.rows < o.basis.rows;
    return basis.a < o.basis.a;
  }

  std::string encode() const {
    std::string s;
    s.reserve(basis.a.size());
    for (uint8_t v : basis.a) s.push_back(char('0' + v));
    return s;
  }
};

inline void check_same_ambient(const Subspace& a, const Subspace& b) {
  require(a.ambient == b.ambient && a.basis.F == b.basis.F, ErrorCode::AmbientMismatch,
          "subspaces live in different ambient spaces");
}

// Intersection and sum in one elimination (Zassenhaus): eliminate
// [A | A; B | 0].  Rows with pivot in the left half carry the sum in their
// left halves; rows with pivot in the right half carry the intersection in
// their right halves.  Both halves come out in RREF.
inline std::pair<Subspace, Subspace> meet_join(const Subspace& A, const Subspace& B) {
  check_same_ambient(A, B);
  const Field& F = A.field();
  int n = A.ambient;
  Matrix z(F, A.dim() + B.dim(), 2 * n);
  for (int r = 0; r < A.dim(); ++r)
    for (int c = 0; c < n; ++c) {
      z.at(r, c) = A.basis.at(r, c);
      z.at(r, n + c) = A.basis.at(r, c);
    }
  for (int r = 0; r < B.dim(); ++r)
    for (int c = 0; c < n; ++c) z.at(A.dim() + r, c) = B.basis.at(r, c);
  std::vector<int> piv;
  int rk = rref_in_place(z, &piv);
  int sum_rows = 0;
  while (sum_rows < rk && piv[sum_rows] < n) ++sum_rows;
  Matrix sum(F, sum_rows, n), inter(F, rk - sum_rows, n);
  for (int r = 0; r < sum_rows; ++r)
    for (int c = 0; c < n; ++c) sum.at(r, c) = z.at(r, c);
  for (int r = sum_rows; r < rk; ++r)
    for (int c = 0; c < n; ++c) inter.at(r - sum_rows, c) = z.at(r, n + c);
  return {Subspace{n, std::move(inter)}, Subspace{n, std::move(sum)}};
}

inline Subspace meet(const Subspace& a, const Subspace& b) { return meet_join(a, b).first; }
inline Subspace join(const Subspace& a, const Subspace& b) { return meet_join(a, b).second; }

// Number of m-dim subspaces of F_q^n: the Gaussian binomial [n m]_q, as a
// plain integer (desk scale).
inline unsigned long long count_subspaces(int n, int m, int q) {
  if (m < 0 || m > n) return 0;
  // prod_{s=1..m} (q^(n-m+s)-1)/(q^s-1), computed exactly by alternating
  // multiply/divide (each prefix is an integer).
  unsigned long long r = 1;
  for (int s = 1; s <= m; ++s) {
    unsigned long long num = 1;
    for (int i = 0; i < n - m + s; ++i) num *= unsigned(q);
    unsigned long long den = 1;
    for (int i = 0; i < s; ++i) den *= unsigned(q);
    r = r * (num - 1) / (den - 1);
  }
  return r;
}

// All m-dimensional subspaces of F^n, each appearing once in canonical RREF
// form, sorted by flattened basis encoding.
inline std::vector<Subspace> enumerate_subspaces(const Field& F, int n, int m) {
  require(0 <= m && m <= n, ErrorCode::DimensionOutOfRange,
          "requested dimension " + std::to_string(m) + " in F^" + std::to_string(n));
  std::vector<Subspace> out;
  if (m == 0) {
    out.push_back(Subspace::zero(F, n));
    return out;
  }
  std::vector<int> piv(m);
  for (int i = 0; i < m; ++i) piv[i] = i;
  auto next_comb = [&]() {
    int i = m - 1;
    while (i >= 0 && piv[i] == n - m + i) --i;
    if (i < 0) return false;
    ++piv[i];
    for (int j = i + 1; j < m; ++j) piv[j] = piv[j - 1] + 1;
    return true;
  };
  do {
    std::vector<char> is_piv(n, 0);
    for (int c : piv) is_piv[c] = 1;
    // free slots: (r, c) with c > piv[r] and c not a pivot column
    std::vector<std::pair<int, int>> free_slots;
    for (int r = 0; r < m; ++r)
      for (int c = piv[r] + 1; c < n; ++c)
        if (!is_piv[c]) free_slots.emplace_back(r, c);
    Matrix base(F, m, n);
    for (int r = 0; r < m; ++r) base.at(r, piv[r]) = 1;
    std::vector<uint8_t> vals(free_slots.size(), 0);
    for (;;) {
      Matrix b = base;
      for (size_t k = 0; k < free_slots.size(); ++k)
        b.at(free_slots[k].first, free_slots[k].second) = vals[k];
      out.push_back(Subspace{n, std::move(b)});
      // odometer
      size_t k = 0;
      while (k < vals.size() && vals[k] == F.q - 1) vals[k++] = 0;
      if (k == vals.size()) break;
      ++vals[k];
    }
  } while (next_comb());
  std::sort(out.begin(), out.end());
  return out;
}

// All m-dimensional subspaces of a given ambient subspace.
inline std::vector<Subspace> enumerate_subspaces(const Subspace& S, int m) {
  require(0 <= m && m <= S.dim(), ErrorCode::DimensionOutOfRange,
          "requested dimension exceeds ambient subspace");
  std::vector<Subspace> out;
  for (const Subspace& c : enumerate_subspaces(S.field(), S.dim(), m)) {
    if (m == 0) {
      out.push_back(Subspace::zero(S.field(), S.ambient));
      continue;
    }
    out.push_back(Subspace::from_rows(c.basis.mul(S.basis)));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace pgrass
