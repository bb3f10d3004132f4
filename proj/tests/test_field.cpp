#include "pgrass/field.hpp"

#include <gtest/gtest.h>

#include <set>

namespace pgrass {
namespace {

const int kSupportedQ[] = {2, 3, 4, 5, 7, 8, 9, 11, 13, 16};

TEST(Field, GetQResolvesPrimePowers) {
  EXPECT_EQ(Field::get_q(2).p, 2);
  EXPECT_EQ(Field::get_q(2).e, 1);
  EXPECT_EQ(Field::get_q(8).p, 2);
  EXPECT_EQ(Field::get_q(8).e, 3);
  EXPECT_EQ(Field::get_q(9).p, 3);
  EXPECT_EQ(Field::get_q(9).e, 2);
  EXPECT_EQ(Field::get_q(16).e, 4);
  EXPECT_EQ(&Field::get_q(4), &Field::get(2, 2));  // shared instance
}

TEST(Field, RejectsNonPrimePowerAndOversize) {
  EXPECT_THROW(Field::get_q(6), Error);
  EXPECT_THROW(Field::get_q(12), Error);
  EXPECT_THROW(Field::get_q(17), Error);
  EXPECT_THROW(Field::get(5, 2), Error);  // 25 > 16
}

TEST(Field, AxiomsHoldInEverySupportedField) {
  for (int q : kSupportedQ) {
    const Field& F = Field::get_q(q);
    ASSERT_EQ(F.q, q);
    for (int a = 0; a < q; ++a) {
      EXPECT_EQ(F.add(uint8_t(a), 0), a);
      EXPECT_EQ(F.mul(uint8_t(a), 1), a);
      EXPECT_EQ(F.add(uint8_t(a), F.neg(uint8_t(a))), 0);
      if (a) EXPECT_EQ(F.mul(uint8_t(a), F.inv(uint8_t(a))), 1);
      for (int b = 0; b < q; ++b) {
        EXPECT_EQ(F.add(uint8_t(a), uint8_t(b)), F.add(uint8_t(b), uint8_t(a)));
        EXPECT_EQ(F.mul(uint8_t(a), uint8_t(b)), F.mul(uint8_t(b), uint8_t(a)));
        for (int c = 0; c < q; ++c) {
          EXPECT_EQ(F.add(F.add(a, b), uint8_t(c)), F.add(uint8_t(a), F.add(b, c)));
          EXPECT_EQ(F.mul(F.mul(a, b), uint8_t(c)), F.mul(uint8_t(a), F.mul(b, c)));
          EXPECT_EQ(F.mul(uint8_t(a), F.add(b, c)), F.add(F.mul(a, b), F.mul(a, c)));
        }
      }
    }
  }
}

TEST(Field, MultiplicationIsInvertibleOnUnits) {
  for (int q : kSupportedQ) {
    const Field& F = Field::get_q(q);
    for (int a = 1; a < q; ++a) {
      std::set<uint8_t> row;
      for (int b = 1; b < q; ++b) row.insert(F.mul(uint8_t(a), uint8_t(b)));
      EXPECT_EQ(int(row.size()), q - 1);  // a * (units) is a bijection
      EXPECT_EQ(row.count(0), 0u);
    }
  }
}

// GF(4) with modulus x^2 + x + 1; code 2 is the class of x, code 3 is x + 1.
TEST(Field, Gf4KnownTable) {
  const Field& F = Field::get(2, 2);
  EXPECT_EQ(F.mul(2, 2), 3);  // x * x = x + 1
  EXPECT_EQ(F.mul(2, 3), 1);  // x * (x + 1) = x^2 + x = 1
  EXPECT_EQ(F.add(2, 3), 1);
  EXPECT_EQ(F.inv(2), 3);
  EXPECT_EQ(F.conj(2), 3);  // x -> x^2
  EXPECT_EQ(F.conj(3), 2);
  EXPECT_EQ(F.conj(0), 0);
  EXPECT_EQ(F.conj(1), 1);
}

// GF(8) with modulus x^3 + x + 1; codes follow base-2 digit encoding.
TEST(Field, Gf8KnownProducts) {
  const Field& F = Field::get(2, 3);
  EXPECT_EQ(F.mul(2, 4), 3);      // x * x^2 = x + 1
  EXPECT_EQ(F.pow(2, 3), 3);      // same identity through pow
  EXPECT_EQ(F.pow(2, 7), 1);      // multiplicative order divides q - 1
  EXPECT_FALSE(F.has_involution());
  EXPECT_THROW(F.conj(2), Error);
  EXPECT_EQ(F.sigma(5), 5);  // sigma degenerates to the identity
}

// GF(9) with modulus x^2 + 2x + 2; code 3 is the class of x.
TEST(Field, Gf9KnownTable) {
  const Field& F = Field::get(3, 2);
  EXPECT_EQ(F.mul(3, 3), 4);  // x^2 = x + 1 -> digits (1,1) -> code 4
  EXPECT_EQ(F.conj(3), 7);    // x^3 = 2x + 1 -> digits (1,2) -> code 7
  EXPECT_EQ(F.conj(F.conj(3)), 3);
}

TEST(Field, ConjIsAnInvolutoryAutomorphism) {
  for (int q : {4, 9, 16}) {
    const Field& F = Field::get_q(q);
    ASSERT_TRUE(F.has_involution());
    int fixed = 0;
    for (int a = 0; a < q; ++a) {
      EXPECT_EQ(F.conj(F.conj(uint8_t(a))), a);
      if (F.conj(uint8_t(a)) == a) ++fixed;
      for (int b = 0; b < q; ++b) {
        EXPECT_EQ(F.conj(F.add(a, b)), F.add(F.conj(uint8_t(a)), F.conj(uint8_t(b))));
        EXPECT_EQ(F.conj(F.mul(a, b)), F.mul(F.conj(uint8_t(a)), F.conj(uint8_t(b))));
      }
    }
    // the fixed field is the subfield of index 2
    int q0 = 1;
    for (int i = 0; i < F.e / 2; ++i) q0 *= F.p;
    EXPECT_EQ(fixed, q0);
  }
}

TEST(Field, PowEdgeCases) {
  const Field& F = Field::get(3, 1);
  EXPECT_EQ(F.pow(2, 0), 1);
  EXPECT_EQ(F.pow(2, -1), F.inv(2));
  EXPECT_EQ(F.pow(0, 5), 0);
  EXPECT_THROW(F.pow(0, 0), Error);
  EXPECT_THROW(F.pow(0, -2), Error);
  EXPECT_THROW(F.inv(0), Error);
  EXPECT_THROW(F.div(1, 0), Error);
}

TEST(Field, CoeffsMatchDigitEncoding) {
  const Field& F = Field::get(2, 4);
  std::vector<int> c = F.coeffs(11);  // 11 = 1 + 2 + 8 -> digits 1,1,0,1
  ASSERT_EQ(int(c.size()), 4);
  EXPECT_EQ(c[0], 1);
  EXPECT_EQ(c[1], 1);
  EXPECT_EQ(c[2], 0);
  EXPECT_EQ(c[3], 1);
  // the modulus is monic of degree e with constant term stored first
  const std::vector<int>& mod = F.modulus();
  ASSERT_EQ(int(mod.size()), 5);
  EXPECT_EQ(mod[4], 1);
}

}  // namespace
}  // namespace pgrass
