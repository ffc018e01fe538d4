#include <random>

#include "doctest.h"
#include "dlcoh/rings.hpp"

using namespace dlcoh;

TEST_CASE("algebraic integers") {
  AlgInt r2 = AlgInt::sqrt2(), r3 = AlgInt::sqrt3();
  CHECK(r2 * r2 == AlgInt(2));
  CHECK(r3 * r3 == AlgInt(3));
  CHECK(r2 * r3 == AlgInt::sqrt6());
  // (1 + sqrt2)(1 - sqrt2) = -1
  CHECK((AlgInt(1) + r2) * (AlgInt(1) - r2) == AlgInt(-1));
  CHECK((AlgInt(0, 2, 0, 4)).div_sqrt2() == AlgInt(2, 0, 4, 0));
  CHECK((AlgInt(0, 0, 3, 3)).div_sqrt3() == AlgInt(3, 3, 0, 0));
  CHECK_THROWS_AS(AlgInt(1).div_sqrt2(), ring_error);
}

TEST_CASE("conjugation is a ring automorphism and norms multiply") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<long long> d(-4, 4);
  for (int i = 0; i < 200; i++) {
    AlgInt a(d(rng), d(rng), d(rng), d(rng));
    AlgInt b(d(rng), d(rng), d(rng), d(rng));
    CHECK((a * b).conj_sqrt2() == a.conj_sqrt2() * b.conj_sqrt2());
    CHECK((a + b).conj_sqrt3() == a.conj_sqrt3() + b.conj_sqrt3());
    CHECK((a * b).norm() == a.norm() * b.norm());
  }
}

TEST_CASE("laurent polynomial arithmetic") {
  LaurentPoly half = LaurentPoly::x(1);  // x^(1/2)
  CHECK(half * half == LaurentPoly::x());
  LaurentPoly p = LaurentPoly::x() + LaurentPoly(1);
  CHECK(p.str() == "1 + x");
  CHECK(p.bar() == LaurentPoly::x(-2) + LaurentPoly(1));
  CHECK((LaurentPoly::x(6)).negate_x() == -LaurentPoly::x(6));
  CHECK_THROWS_AS(half.negate_x(), ring_error);
  CHECK(p.eval_one() == AlgInt(2));
}

TEST_CASE("ring axioms on random inputs") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> e(-3, 3), c(-3, 3);
  auto rand_poly = [&]() {
    LaurentPoly p;
    for (int i = 0; i < 3; i++)
      p = p + LaurentPoly::monomial(AlgInt(c(rng), c(rng), 0, 0), e(rng));
    return p;
  };
  for (int i = 0; i < 100; i++) {
    LaurentPoly a = rand_poly(), b = rand_poly(), z = rand_poly();
    CHECK((a * b) * z == a * (b * z));
    CHECK(a * (b + z) == a * b + a * z);
    CHECK(a * b == b * a);
  }
}

TEST_CASE("substitutions") {
  // x -> h^2 t
  CHECK(substitute_h2t(LaurentPoly::x() + LaurentPoly(1)) ==
        parse_bipoly("h^2*t + 1"));
  CHECK(substitute_h2t(LaurentPoly::x(6)) == parse_bipoly("h^6*t^3"));
  // x -> -h t on integral exponents: the trace -x becomes ht
  CHECK(substitute_minus_ht(-LaurentPoly::x()) == parse_bipoly("h*t"));
  CHECK_THROWS_AS(substitute_minus_ht(LaurentPoly::x(1)), ring_error);
  // x -> t along h = -1 flips odd half-powers
  CHECK(substitute_t_hm1(LaurentPoly::x(1)) == -LaurentPoly::x(1));
  CHECK(substitute_t_hm1(LaurentPoly::x(2)) == LaurentPoly::x(2));
}

TEST_CASE("bipoly specialization at h = -1 is a ring morphism") {
  std::mt19937 rng(13);
  std::uniform_int_distribution<int> e(0, 3), c(-3, 3);
  auto rand_poly = [&]() {
    BiPoly p;
    for (int i = 0; i < 3; i++)
      p = p + BiPoly::monomial(c(rng), 2 * e(rng), e(rng));
    return p;
  };
  for (int i = 0; i < 100; i++) {
    BiPoly a = rand_poly(), b = rand_poly();
    auto [ab0, ab1] = (a * b).specialize_h_minus1();
    CHECK(ab0 == a.specialize_h_minus1().first * b.specialize_h_minus1().first);
    CHECK(ab1.is_zero());
    auto [s0, s1] = (a + b).specialize_h_minus1();
    CHECK(s0 == a.specialize_h_minus1().first + b.specialize_h_minus1().first);
  }
}

TEST_CASE("polynomial parsing round-trips") {
  const char* samples[] = {"0",
                           "2",
                           "h^2*t + h",
                           "h*t^(1/2)",
                           "2*h^4*t^(3/2)",
                           "eps*h^3*t^(3/2) + eps*h^4*t^(3/2)",
                           "h^8*t^3"};
  for (const char* s : samples) {
    BiPoly p = parse_bipoly(s);
    CHECK(parse_bipoly(p.str()) == p);
  }
  const char* xs[] = {"1 + x", "x^(1/2)", "sqrt2*x^(3/2)", "-1 + x",
                      "x^3 + 2*sqrt3*x"};
  for (const char* s : xs) {
    LaurentPoly p = parse_laurent(s);
    CHECK(parse_laurent(p.str()) == p);
  }
}

TEST_CASE("matrices") {
  LaurentPoly x = LaurentPoly::x();
  Matrix m(LaurentPoly(-1), LaurentPoly(), LaurentPoly::x(1), x);
  CHECK(m.trace() == x - LaurentPoly(1));
  Matrix sq = m * m;
  CHECK(sq.dim == 2);
  CHECK_FALSE(m.is_scalar());
  CHECK(Matrix::identity(2).is_scalar());
}
