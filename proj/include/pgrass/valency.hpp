#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "pgrass/base.hpp"

namespace pgrass {

// Integer-coefficient Laurent polynomial in x, where x^2 = q.  Working in x
// doubles every exponent of q, which keeps the half-integer exponents of the
// hermitian case exact.  Exponents may be negative in intermediate factors.
struct HalfExpLaurent {
  std::map<int, long long> c;  // x-exponent -> coefficient, zeros erased

  static HalfExpLaurent zero() { return {}; }
  static HalfExpLaurent constant(long long k) {
    HalfExpLaurent p;
    if (k) p.c[0] = k;
    return p;
  }
  static HalfExpLaurent xpow(int e, long long k = 1) {
    HalfExpLaurent p;
    if (k) p.c[e] = k;
    return p;
  }
  // x^e - 1 and x^e + 1 building blocks
  static HalfExpLaurent xpow_minus_one(int e) {
    HalfExpLaurent p = xpow(e);
    p.add_term(0, -1);
    return p;
  }
  static HalfExpLaurent xpow_plus_one(int e) {
    HalfExpLaurent p = xpow(e);
    p.add_term(0, 1);
    return p;
  }

  bool is_zero() const { return c.empty(); }

  void add_term(int e, long long k) {
    if (!k) return;
    auto it = c.find(e);
    if (it == c.end()) {
      c[e] = k;
    } else {
      it->second += k;
      if (it->second == 0) c.erase(it);
    }
  }

  HalfExpLaurent operator+(const HalfExpLaurent& o) const {
    HalfExpLaurent r = *this;
    for (auto& [e, k] : o.c) r.add_term(e, k);
    return r;
  }
  HalfExpLaurent operator-(const HalfExpLaurent& o) const {
    HalfExpLaurent r = *this;
    for (auto& [e, k] : o.c) r.add_term(e, -k);
    return r;
  }
  HalfExpLaurent operator*(const HalfExpLaurent& o) const {
    HalfExpLaurent r;
    for (auto& [e1, k1] : c)
      for (auto& [e2, k2] : o.c) r.add_term(e1 + e2, k1 * k2);
    return r;
  }
  bool operator==(const HalfExpLaurent& o) const { return c == o.c; }

  int min_exp() const { return c.empty() ? 0 : c.begin()->first; }
  int max_exp() const { return c.empty() ? 0 : c.rbegin()->first; }

  bool all_exponents_even() const {
    for (auto& [e, k] : c)
      if (e % 2 != 0) return false;
    return true;
  }

  // Exact division; the remainder must vanish.  Works on the underlying
  // ordinary polynomials after shifting out the lowest exponents.
  HalfExpLaurent div_exact(const HalfExpLaurent& den) const {
    require(!den.is_zero(), ErrorCode::DivisionByZero, "polynomial division by zero");
    if (is_zero()) return zero();
    int shift_n = min_exp(), shift_d = den.min_exp();
    int lo_n = shift_n, hi_n = max_exp();
    int lo_d = shift_d, hi_d = den.max_exp();
    int deg_n = hi_n - lo_n, deg_d = hi_d - lo_d;
    require(deg_n >= deg_d, ErrorCode::InexactDivision, "division leaves a remainder");
    std::vector<long long> N(deg_n + 1, 0), D(deg_d + 1, 0);
    for (auto& [e, k] : c) N[e - lo_n] = k;
    for (auto& [e, k] : den.c) D[e - lo_d] = k;
    long long lead = D[deg_d];
    std::vector<long long> Q(deg_n - deg_d + 1, 0);
    for (int t = deg_n - deg_d; t >= 0; --t) {
      long long cur = N[t + deg_d];
      if (cur == 0) continue;
      require(cur % lead == 0, ErrorCode::InexactDivision, "division leaves a remainder");
      long long f = cur / lead;
      Q[t] = f;
      for (int s = 0; s <= deg_d; ++s) N[t + s] -= f * D[s];
    }
    for (long long v : N)
      require(v == 0, ErrorCode::InexactDivision, "division leaves a remainder");
    HalfExpLaurent q;
    for (int t = 0; t < int(Q.size()); ++t)
      q.add_term(t + lo_n - lo_d, Q[t]);
    return q;
  }

  // Evaluate at a given q (x = sqrt(q)).  Exact integer arithmetic with an
  // overflow guard; odd exponents require q to be a perfect square.
  long long eval_at_q(long long q) const {
    long long x = 0;
    while (x * x < q) ++x;
    bool square = (x * x == q);
    const __int128 bound = __int128(1) << 62;
    __int128 total = 0;
    for (auto& [e, k] : c) {
      require(e >= 0, ErrorCode::BadParameters, "negative exponent at evaluation");
      __int128 term = k;
      auto grow = [&](long long base, int times) {
        for (int i = 0; i < times; ++i) {
          term *= base;
          require(term < bound && term > -bound, ErrorCode::BadParameters,
                  "evaluation overflow");
        }
      };
      if (e % 2 == 0) {
        grow(q, e / 2);
      } else {
        require(square, ErrorCode::BadParameters,
                "odd x-exponent needs square q, got " + std::to_string(q));
        grow(x, e);
      }
      total += term;
      require(total < bound && total > -bound, ErrorCode::BadParameters,
              "evaluation overflow");
    }
    return (long long)total;
  }

  // Sorted (exponent, coefficient) pairs, the serialization used in exports.
  std::vector<std::pair<int, long long>> terms() const {
    return {c.begin(), c.end()};
  }
};

// A product  scalar * x^xpow * prod (x^r - 1)^mult * prod (x^r + 1)^mult
// with exponents r >= 1 and integer (possibly negative) multiplicities.
// normalize() rewrites every (x^r + 1) as (x^{2r} - 1)/(x^r - 1); the
// resulting map of minus-factor multiplicities is a canonical form: two
// factor products represent the same rational function iff their normalized
// forms agree componentwise.
struct FactorMultiset {
  bool zero = false;
  long long scalar = 1;
  int xpow = 0;
  std::map<int, int> minus_;  // r -> multiplicity of (x^r - 1)
  std::map<int, int> plus_;   // r -> multiplicity of (x^r + 1)

  static FactorMultiset one() { return {}; }

  void bump(std::map<int, int>& m, int r, int mult) {
    auto it = m.find(r);
    if (it == m.end()) {
      if (mult) m[r] = mult;
    } else {
      it->second += mult;
      if (it->second == 0) m.erase(it);
    }
  }

  // (x^r - 1)^mult with arbitrary r: r = 0 kills the product (x^0 - 1 = 0
  // in a numerator; in a denominator it is a division by zero);
  // r < 0 is rewritten as -x^r * (x^{-r} - 1).
  void push_minus(int r, int mult = 1) {
    if (zero) return;
    if (r == 0) {
      require(mult >= 0, ErrorCode::DivisionByZero, "(x^0 - 1) in a denominator");
      if (mult > 0) zero = true;
      return;
    }
    if (r < 0) {
      if (mult % 2 != 0) scalar = -scalar;
      xpow += r * mult;
      r = -r;
    }
    bump(minus_, r, mult);
  }

  // (x^r + 1)^mult: r = 0 contributes 2^mult, r < 0 becomes x^r (x^{-r}+1).
  void push_plus(int r, int mult = 1) {
    if (zero) return;
    if (r == 0) {
      for (int k = 0; k < mult; ++k) scalar *= 2;
      for (int k = 0; k < -mult; ++k) {
        require(scalar % 2 == 0, ErrorCode::InexactDivision, "scalar not divisible by 2");
        scalar /= 2;
      }
      return;
    }
    if (r < 0) {
      xpow += r * mult;
      r = -r;
    }
    bump(plus_, r, mult);
  }

  void push_monomial(int e, long long k = 1) {
    if (zero) return;
    xpow += e;
    scalar *= k;
    if (scalar == 0) zero = true;
  }

  FactorMultiset operator*(const FactorMultiset& o) const {
    FactorMultiset r = *this;
    if (o.zero) r.zero = true;
    if (r.zero) return r;
    r.scalar *= o.scalar;
    r.xpow += o.xpow;
    for (auto& [e, m] : o.minus_) r.bump(r.minus_, e, m);
    for (auto& [e, m] : o.plus_) r.bump(r.plus_, e, m);
    return r;
  }

  // Rewrite all plus factors into minus factors; canonical form.
  FactorMultiset normalized() const {
    FactorMultiset r = *this;
    for (auto& [e, m] : plus_) {
      r.bump(r.minus_, 2 * e, m);
      r.bump(r.minus_, e, -m);
    }
    r.plus_.clear();
    if (r.zero) {
      r.scalar = 0;
      r.xpow = 0;
      r.minus_.clear();
    }
    return r;
  }

  bool equivalent(const FactorMultiset& o) const {
    FactorMultiset a = normalized(), b = o.normalized();
    if (a.zero || b.zero) return a.zero == b.zero;
    return a.scalar == b.scalar && a.xpow == b.xpow && a.minus_ == b.minus_;
  }

  // Multiply out: numerator factors times x^xpow, then exact division by the
  // factors with negative multiplicity.  Throws InexactDivision if the
  // represented object is not a Laurent polynomial.
  HalfExpLaurent expand() const {
    if (zero) return HalfExpLaurent::zero();
    HalfExpLaurent num = HalfExpLaurent::xpow(xpow, scalar);
    HalfExpLaurent den = HalfExpLaurent::constant(1);
    auto mul_in = [&](HalfExpLaurent base, int mult) {
      for (int k = 0; k < mult; ++k) num = num * base;
      for (int k = 0; k < -mult; ++k) den = den * base;
    };
    for (auto& [e, m] : minus_) mul_in(HalfExpLaurent::xpow_minus_one(e), m);
    for (auto& [e, m] : plus_) mul_in(HalfExpLaurent::xpow_plus_one(e), m);
    return num.div_exact(den);
  }
};

// Gaussian binomial [n k]_q as a factor product in x (q = x^2).
inline FactorMultiset gaussian_binomial_factors(int n, int k) {
  FactorMultiset f;
  if (k < 0 || k > n) {
    f.zero = true;
    return f;
  }
  for (int s = 1; s <= k; ++s) {
    f.push_minus(2 * (n - k + s), 1);
    f.push_minus(2 * s, -1);
  }
  return f;
}

inline HalfExpLaurent gaussian_binomial(int n, int k) {
  return gaussian_binomial_factors(n, k).expand();
}

// Parameters of a space family for symbolic work: ambient dimension, Witt
// index, and the doubled Stanton parameters mu2 = 2*mu = n_amb - 2d,
// nu2 = 2*nu with mu+nu = 0, 1/2, 1 for alternating/hermitian/symmetric.
struct SpaceParams {
  Kind kind;
  int n_amb;
  int d;

  int mu2() const { return n_amb - 2 * d; }
  int nu2() const { return munu_sum2(kind) - mu2(); }

  static SpaceParams make(Kind kind, int d, int n_amb = -1) {
    if (n_amb < 0) n_amb = default_n_amb(kind, d);
    SpaceParams sp{kind, n_amb, d};
    require(d >= 1, ErrorCode::BadParameters, "Witt index must be >= 1");
    require(sp.mu2() >= 0 && sp.nu2() >= 0, ErrorCode::BadParameters,
            "n_amb inconsistent with kind/d");
    switch (kind) {
      case Kind::symplectic:
        require(n_amb == 2 * d, ErrorCode::BadParameters, "symplectic needs n_amb = 2d");
        break;
      case Kind::hermitian:
        require(n_amb == 2 * d || n_amb == 2 * d + 1, ErrorCode::BadParameters,
                "hermitian needs n_amb in {2d, 2d+1}");
        break;
      case Kind::orthogonal_plus:
        require(n_amb == 2 * d, ErrorCode::BadParameters, "orthogonal_plus needs n_amb = 2d");
        break;
      case Kind::orthogonal_minus:
        require(n_amb == 2 * d + 2, ErrorCode::BadParameters,
                "orthogonal_minus needs n_amb = 2d+2");
        break;
      case Kind::orthogonal_odd:
        require(n_amb == 2 * d + 1, ErrorCode::BadParameters,
                "orthogonal_odd needs n_amb = 2d+1");
        break;
    }
    return sp;
  }
};

// The valency n_{i,j}: the number of totally isotropic m-spaces in relation
// R_{i,j} to a fixed one, as a factor product in x (x^2 = q):
//
//   q^{ j^2 + i(n - 2m - 2j + 3i/2 + 1/2 - mu - nu) }
//   * [m j]_q [j i]_q
//   * prod_{s=0}^{j-i-1} (q^{n/2-m-mu-s} - 1)(q^{n/2-m-nu-s} + 1)/(q^{s+1} - 1)
//
// May be the zero polynomial exactly when the label is infeasible
// (m + j - i > d).
inline FactorMultiset stanton_valency_factors(const SpaceParams& sp, int m, int i, int j) {
  require(0 <= i && i <= j && j <= m && m <= sp.d, ErrorCode::BadParameters,
          "label out of range");
  const int n = sp.n_amb, mu2 = sp.mu2(), nu2 = sp.nu2();
  FactorMultiset f;
  // doubled exponent of the q-power prefactor
  int e2 = 2 * j * j + i * (2 * n - 4 * m - 4 * j + 3 * i + 1 - mu2 - nu2);
  f.push_monomial(e2);
  f = f * gaussian_binomial_factors(m, j);
  f = f * gaussian_binomial_factors(j, i);
  for (int s = 0; s <= j - i - 1; ++s) {
    f.push_minus(n - 2 * m - mu2 - 2 * s, 1);
    f.push_plus(n - 2 * m - nu2 - 2 * s, 1);
    f.push_minus(2 * s + 2, -1);
  }
  return f;
}

inline HalfExpLaurent stanton_valency(const SpaceParams& sp, int m, int i, int j) {
  return stanton_valency_factors(sp, m, i, j).expand();
}

// |N_m| = [d m]_q * prod_{i=d-m+1..d} (q^{i + mu - nu} + 1).
inline FactorMultiset level_count_factors(const SpaceParams& sp, int m) {
  require(0 <= m && m <= sp.d, ErrorCode::BadParameters, "level out of range");
  FactorMultiset f = gaussian_binomial_factors(sp.d, m);
  for (int i = sp.d - m + 1; i <= sp.d; ++i)
    f.push_plus(2 * i + sp.mu2() - sp.nu2(), 1);
  return f;
}

inline HalfExpLaurent level_count_poly(const SpaceParams& sp, int m) {
  return level_count_factors(sp, m).expand();
}

// A label is realized by some pair iff m + j - i <= d; equivalently iff the
// Stanton polynomial is nonzero.
inline bool label_feasible(const SpaceParams& sp, int m, int i, int j) {
  return m + j - i <= sp.d;
}

struct DistinctnessReport {
  std::vector<std::pair<int, int>> zero_labels;
  std::vector<std::pair<std::pair<int, int>, std::pair<int, int>>> collisions;
  bool distinct = true;
};

// Pairwise distinctness of the NONZERO valency polynomials of one space at
// one level; zero labels are reported, not compared.  Comparison is done
// both on expansions and on normalized factor forms, which must agree.
inline DistinctnessReport distinctness_check(const SpaceParams& sp, int m) {
  DistinctnessReport rep;
  std::vector<std::pair<int, int>> labels;
  std::vector<HalfExpLaurent> polys;
  std::vector<FactorMultiset> forms;
  for (int j = 0; j <= m; ++j)
    for (int i = 0; i <= j; ++i) {
      FactorMultiset f = stanton_valency_factors(sp, m, i, j);
      HalfExpLaurent p = f.expand();
      if (p.is_zero()) {
        rep.zero_labels.push_back({i, j});
        continue;
      }
      labels.push_back({i, j});
      polys.push_back(p);
      forms.push_back(f);
    }
  for (size_t a = 0; a < labels.size(); ++a)
    for (size_t b = a + 1; b < labels.size(); ++b) {
      bool eq_poly = polys[a] == polys[b];
      bool eq_form = forms[a].equivalent(forms[b]);
      require(eq_poly == eq_form, ErrorCode::TheoremViolation,
              "factor normal form disagrees with expansion");
      if (eq_poly) {
        rep.collisions.push_back({labels[a], labels[b]});
        rep.distinct = false;
      }
    }
  return rep;
}

}  // namespace pgrass
