#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

#include "pgrass/base.hpp"

namespace pgrass {

// Exact arithmetic in GF(p^e), q = p^e <= 16.
//
// An element is an integer code in [0, q): the residue class
// c_0 + c_1*a + ... + c_{e-1}*a^{e-1} (a = class of x modulo a fixed
// irreducible polynomial) is encoded as sum c_i * p^i, i.e. the base-p
// digits of the code are the coefficients.  With this encoding the natural
// integer order enumerates 0 first and 1 second, and matches lexicographic
// order on (c_{e-1}, ..., c_0).
//
// All arithmetic is table-driven; a Field is built once per (p, e) and
// shared through Field::get.
class Field {
 public:
  int p, e, q;

  static const Field& get(int p, int e) {
    static std::map<std::pair<int, int>, std::unique_ptr<Field>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(p, e);
    auto it = cache.find(key);
    if (it == cache.end())
      it = cache.emplace(key, std::unique_ptr<Field>(new Field(p, e))).first;
    return *it->second;
  }

  // Convenience: q -> (p, e) by trial factorization.
  static const Field& get_q(int q) {
    require(q >= 2 && q <= 16, ErrorCode::Unsupported,
            "field size " + std::to_string(q) + " out of supported range");
    for (int pp : {2, 3, 5, 7, 11, 13}) {
      int ee = 0, t = q;
      while (t % pp == 0) t /= pp, ++ee;
      if (t == 1 && ee >= 1) return get(pp, ee);
    }
    fail(ErrorCode::Unsupported, std::to_string(q) + " is not a prime power");
  }

  uint8_t add(uint8_t a, uint8_t b) const { return add_[a * q + b]; }
  uint8_t sub(uint8_t a, uint8_t b) const { return add_[a * q + neg_[b]]; }
  uint8_t neg(uint8_t a) const { return neg_[a]; }
  uint8_t mul(uint8_t a, uint8_t b) const { return mul_[a * q + b]; }

  uint8_t inv(uint8_t a) const {
    require(a != 0, ErrorCode::DivisionByZero, "inverse of zero");
    return inv_[a];
  }
  uint8_t div(uint8_t a, uint8_t b) const { return mul(a, inv(b)); }

  bool has_involution() const { return e % 2 == 0; }

  // The involutory field automorphism x -> x^(p^(e/2)); defined iff e is even.
  uint8_t conj(uint8_t a) const {
    require(has_involution(), ErrorCode::NoInvolution,
            "GF(" + std::to_string(q) + ") has odd degree over its prime field");
    return conj_[a];
  }

  // Identity when no involution exists: the right twist for sesquilinear
  // forms that degenerate to bilinear ones.
  uint8_t sigma(uint8_t a) const { return e % 2 == 0 ? conj_[a] : a; }

  uint8_t pow(uint8_t a, long long k) const {
    if (a == 0) {
      require(k > 0, ErrorCode::DivisionByZero, "0^k with k <= 0");
      return 0;
    }
    k %= (q - 1);
    if (k < 0) k += q - 1;
    uint8_t r = 1, base = a;
    while (k) {
      if (k & 1) r = mul(r, base);
      base = mul(base, base);
      k >>= 1;
    }
    return r;
  }

  // Base-p digits of the code = coefficients of the representative.
  std::vector<int> coeffs(uint8_t a) const {
    std::vector<int> c(e);
    for (int i = 0; i < e; ++i) c[i] = a % p, a = uint8_t(a / p);
    return c;
  }

  std::vector<uint8_t> elements() const {
    std::vector<uint8_t> v(q);
    for (int i = 0; i < q; ++i) v[i] = uint8_t(i);
    return v;
  }

  // Modulus polynomial coefficients, constant term first, length e+1 (monic).
  const std::vector<int>& modulus() const { return mod_; }

 private:
  std::vector<uint8_t> add_, mul_, neg_, inv_, conj_;
  std::vector<int> mod_;

  Field(int p_, int e_) : p(p_), e(e_) {
    static const std::map<std::pair<int, int>, std::vector<int>> moduli = {
        {{2, 1}, {1, 1}},          // x + 1
        {{2, 2}, {1, 1, 1}},       // x^2 + x + 1
        {{2, 3}, {1, 1, 0, 1}},    // x^3 + x + 1
        {{2, 4}, {1, 1, 0, 0, 1}}, // x^4 + x + 1
        {{3, 1}, {1, 1}},
        {{3, 2}, {2, 2, 1}},       // x^2 + 2x + 2
        {{5, 1}, {3, 1}},
        {{7, 1}, {4, 1}},
        {{11, 1}, {9, 1}},
        {{13, 1}, {11, 1}},
    };
    auto it = moduli.find({p, e});
    require(it != moduli.end(), ErrorCode::Unsupported,
            "no modulus on file for GF(" + std::to_string(p) + "^" +
                std::to_string(e) + ")");
    mod_ = it->second;
    long long qq = 1;
    for (int i = 0; i < e; ++i) qq *= p;
    require(qq <= 16, ErrorCode::Unsupported, "q > 16");
    q = int(qq);

    add_.assign(q * q, 0);
    mul_.assign(q * q, 0);
    neg_.assign(q, 0);
    inv_.assign(q, 0);
    for (int a = 0; a < q; ++a)
      for (int b = 0; b < q; ++b) {
        add_[a * q + b] = encode(add_digits(digits(a), digits(b)));
        mul_[a * q + b] = encode(mul_digits(digits(a), digits(b)));
      }
    for (int a = 0; a < q; ++a) {
      for (int b = 0; b < q; ++b)
        if (add_[a * q + b] == 0) neg_[a] = uint8_t(b);
      for (int b = 1; b < q; ++b)
        if (mul_[a * q + b] == 1) inv_[a] = uint8_t(b);
    }
    if (e % 2 == 0) {
      conj_.assign(q, 0);
      long long k = 1;
      for (int i = 0; i < e / 2; ++i) k *= p;  // p^(e/2)
      for (int a = 0; a < q; ++a) conj_[a] = pow_raw(uint8_t(a), k);
    }
  }

  std::vector<int> digits(int a) const {
    std::vector<int> c(e);
    for (int i = 0; i < e; ++i) c[i] = a % p, a /= p;
    return c;
  }
  uint8_t encode(const std::vector<int>& c) const {
    int v = 0;
    for (int i = e - 1; i >= 0; --i) v = v * p + c[i];
    return uint8_t(v);
  }
  std::vector<int> add_digits(std::vector<int> a, const std::vector<int>& b) const {
    for (int i = 0; i < e; ++i) a[i] = (a[i] + b[i]) % p;
    return a;
  }
  std::vector<int> mul_digits(const std::vector<int>& a, const std::vector<int>& b) const {
    std::vector<int> prod(2 * e - 1, 0);
    for (int i = 0; i < e; ++i)
      for (int j = 0; j < e; ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
    // reduce modulo the monic modulus of degree e
    for (int deg = 2 * e - 2; deg >= e; --deg) {
      int c = prod[deg];
      if (c == 0) continue;
      prod[deg] = 0;
      for (int i = 0; i < e; ++i) {
        int& t = prod[deg - e + i];
        t = ((t - c * mod_[i]) % p + p) % p;
      }
    }
    prod.resize(e);
    return prod;
  }
  uint8_t pow_raw(uint8_t a, long long k) const {
    uint8_t r = 1;
    while (k) {
      if (k & 1) r = mul_[r * q + a];
      a = mul_[a * q + a];
      k >>= 1;
    }
    return r;
  }
};

}  // namespace pgrass
