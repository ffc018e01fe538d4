#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

// Exact coefficient arithmetic: the ring Z[sqrt2,sqrt3], Laurent polynomials
// in one variable with half-integer exponents, bivariate polynomials in
// t^(1/2) and h (optionally linear in a formal eps), and small matrices.
//
// Half-integer exponents are stored doubled, as plain ints.

namespace dlcoh {

struct ring_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// a + b*sqrt2 + c*sqrt3 + d*sqrt6
struct AlgInt {
  long long a = 0, b = 0, c = 0, d = 0;

  AlgInt() = default;
  AlgInt(long long n) : a(n) {}
  AlgInt(long long a_, long long b_, long long c_, long long d_)
      : a(a_), b(b_), c(c_), d(d_) {}

  static AlgInt sqrt2() { return {0, 1, 0, 0}; }
  static AlgInt sqrt3() { return {0, 0, 1, 0}; }
  static AlgInt sqrt6() { return {0, 0, 0, 1}; }

  bool is_zero() const { return a == 0 && b == 0 && c == 0 && d == 0; }
  bool is_rational() const { return b == 0 && c == 0 && d == 0; }

  AlgInt operator-() const { return {-a, -b, -c, -d}; }
  AlgInt operator+(const AlgInt& o) const {
    return {a + o.a, b + o.b, c + o.c, d + o.d};
  }
  AlgInt operator-(const AlgInt& o) const {
    return {a - o.a, b - o.b, c - o.c, d - o.d};
  }
  AlgInt operator*(const AlgInt& o) const {
    // basis products: sqrt2*sqrt3=sqrt6, sqrt2*sqrt6=2sqrt3, sqrt3*sqrt6=3sqrt2
    return {a * o.a + 2 * b * o.b + 3 * c * o.c + 6 * d * o.d,
            a * o.b + b * o.a + 3 * (c * o.d + d * o.c),
            a * o.c + c * o.a + 2 * (b * o.d + d * o.b),
            a * o.d + d * o.a + b * o.c + c * o.b};
  }
  bool operator==(const AlgInt& o) const {
    return a == o.a && b == o.b && c == o.c && d == o.d;
  }
  bool operator!=(const AlgInt& o) const { return !(*this == o); }

  // Galois conjugations.
  AlgInt conj_sqrt2() const { return {a, -b, c, -d}; }  // sqrt2 -> -sqrt2
  AlgInt conj_sqrt3() const { return {a, b, -c, -d}; }  // sqrt3 -> -sqrt3
  // field norm down to Z (product of the four conjugates)
  long long norm() const;

  AlgInt div_exact(long long n) const;
  AlgInt div_sqrt2() const;  // exact division by sqrt2
  AlgInt div_sqrt3() const;

  std::string str() const;
};

// Integer-coefficient polynomial in one variable with integer exponents.
// Used for Kazhdan-Lusztig and R-polynomials.
struct ZPoly {
  std::map<int, long long> c;  // exponent -> coefficient, no zeros stored

  ZPoly() = default;
  ZPoly(long long n) {
    if (n) c[0] = n;
  }
  static ZPoly monomial(long long k, int e) {
    ZPoly p;
    if (k) p.c[e] = k;
    return p;
  }

  bool is_zero() const { return c.empty(); }
  bool is_one() const { return c.size() == 1 && c.count(0) && c.at(0) == 1; }
  long long coeff(int e) const {
    auto it = c.find(e);
    return it == c.end() ? 0 : it->second;
  }
  int degree() const { return c.empty() ? -1 : c.rbegin()->first; }

  ZPoly operator+(const ZPoly& o) const;
  ZPoly operator-(const ZPoly& o) const;
  ZPoly operator*(const ZPoly& o) const;
  bool operator==(const ZPoly& o) const { return c == o.c; }
  bool operator!=(const ZPoly& o) const { return c != o.c; }

  std::string str(const std::string& var = "x") const;
};

// Laurent polynomial over AlgInt, exponents are half-integers stored doubled.
struct LaurentPoly {
  std::map<int, AlgInt> c;  // doubled exponent -> coefficient

  LaurentPoly() = default;
  LaurentPoly(long long n) {
    if (n) c[0] = AlgInt(n);
  }
  LaurentPoly(const AlgInt& a) {
    if (!a.is_zero()) c[0] = a;
  }
  static LaurentPoly monomial(const AlgInt& k, int half_exp) {
    LaurentPoly p;
    if (!k.is_zero()) p.c[half_exp] = k;
    return p;
  }
  static LaurentPoly x(int half_exp = 2) { return monomial(AlgInt(1), half_exp); }

  bool is_zero() const { return c.empty(); }
  AlgInt coeff(int half_exp) const {
    auto it = c.find(half_exp);
    return it == c.end() ? AlgInt() : it->second;
  }
  bool integral_exponents() const;

  LaurentPoly operator-() const;
  LaurentPoly operator+(const LaurentPoly& o) const;
  LaurentPoly operator-(const LaurentPoly& o) const;
  LaurentPoly operator*(const LaurentPoly& o) const;
  bool operator==(const LaurentPoly& o) const { return c == o.c; }
  bool operator!=(const LaurentPoly& o) const { return c != o.c; }

  LaurentPoly div_exact(long long n) const;
  LaurentPoly div_sqrt2() const;
  LaurentPoly div_sqrt3() const;

  // the bar involution x^(1/2) -> x^(-1/2)
  LaurentPoly bar() const;
  // substitute x^(1/2) -> 1 (evaluation at x=1)
  AlgInt eval_one() const;
  // substitute x -> -x, i.e. x^(p/2) -> (-1)^p x^(p/2) is NOT well defined on
  // half powers; only integral exponents allowed: x^k -> (-1)^k x^k.
  LaurentPoly negate_x() const;

  static LaurentPoly from_zpoly(const ZPoly& p);
  // requires all coefficients rational and all exponents integral
  ZPoly to_zpoly() const;

  std::string str(const std::string& var = "x") const;
};

// Polynomial in t^(1/2) (doubled exponents) and h, with an optional eps
// factor of degree <= 1. Integer coefficients.
struct BiPoly {
  // (doubled t-exponent, h-exponent, eps-degree) -> coefficient
  std::map<std::tuple<int, int, int>, long long> c;

  BiPoly() = default;
  BiPoly(long long n) {
    if (n) c[{0, 0, 0}] = n;
  }
  static BiPoly monomial(long long k, int t_half, int h_exp, int eps = 0) {
    BiPoly p;
    if (k) p.c[{t_half, h_exp, eps}] = k;
    return p;
  }
  static BiPoly t(int half = 2) { return monomial(1, half, 0); }
  static BiPoly h(int e = 1) { return monomial(1, 0, e); }

  bool is_zero() const { return c.empty(); }
  bool has_eps() const;
  long long coeff(int t_half, int h_exp, int eps = 0) const {
    auto it = c.find({t_half, h_exp, eps});
    return it == c.end() ? 0 : it->second;
  }

  BiPoly operator-() const;
  BiPoly operator+(const BiPoly& o) const;
  BiPoly operator-(const BiPoly& o) const;
  BiPoly operator*(const BiPoly& o) const;
  bool operator==(const BiPoly& o) const { return c == o.c; }
  bool operator!=(const BiPoly& o) const { return c != o.c; }

  BiPoly pow(int n) const;

  // h -> -1. Result is a Laurent polynomial in t^(1/2); eps parts must be
  // carried along, so the result maps eps-degree -> poly. Rule: the eps-free
  // part lands in [0], the eps-linear part in [1].
  std::pair<LaurentPoly, LaurentPoly> specialize_h_minus1() const;

  // extract coefficient of h^e as a polynomial in t (eps must be absent)
  LaurentPoly h_coefficient(int e) const;

  std::string str() const;
};

// substitution x -> h^2 t, i.e. x^(p/2) -> h^p t^(p/2); coefficients must be
// rational integers (all sqrt parts must have cancelled).
BiPoly substitute_h2t(const LaurentPoly& p);
// substitution x -> -h t on a polynomial with integral exponents only:
// x^k -> (-1)^k h^k t^k.
BiPoly substitute_minus_ht(const LaurentPoly& p);
// substitution x^(p/2) -> (-1)^p t^(p/2); this is "x -> t along h = -1",
// matching the convention x^(1/2) = h t^(1/2).
LaurentPoly substitute_t_hm1(const LaurentPoly& p);

// Square matrix of dimension 1 or 2 over LaurentPoly.
struct Matrix {
  int dim = 1;
  LaurentPoly e[2][2];

  static Matrix identity(int d);
  static Matrix zero(int d);

  Matrix() = default;
  explicit Matrix(int d) : dim(d) {}
  Matrix(const LaurentPoly& a) : dim(1) { e[0][0] = a; }
  Matrix(const LaurentPoly& a, const LaurentPoly& b, const LaurentPoly& c,
         const LaurentPoly& d)
      : dim(2) {
    e[0][0] = a, e[0][1] = b, e[1][0] = c, e[1][1] = d;
  }

  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix operator*(const Matrix& o) const;
  Matrix scaled(const LaurentPoly& k) const;
  bool operator==(const Matrix& o) const;
  LaurentPoly trace() const;
  bool is_scalar() const;
  bool is_zero() const;
};

// --- string formats ------------------------------------------------------
//
// Univariate terms:  [+|-] c [* sqrt2|sqrt3|sqrt6] [* x^e | * x^(p/2)]
// Bivariate terms:   [+|-] c [* t^e | * t^(p/2)] [* h^e] [* eps]
// Factors may come in any order; bare "x", "t", "h" mean exponent 1.

LaurentPoly parse_laurent(const std::string& s, const std::string& var = "x");
BiPoly parse_bipoly(const std::string& s);

}  // namespace dlcoh
