#include "dlcoh/rings.hpp"

#include <cctype>
#include <cstdlib>
#include <sstream>

namespace dlcoh {

long long AlgInt::norm() const {
  AlgInt p = (*this) * conj_sqrt2();
  AlgInt q = conj_sqrt3() * conj_sqrt2().conj_sqrt3();
  AlgInt n = p * q;
  if (!n.is_rational()) throw ring_error("norm not rational");
  return n.a;
}

AlgInt AlgInt::div_exact(long long n) const {
  if (n == 0) throw ring_error("division by zero");
  if (a % n || b % n || c % n || d % n)
    throw ring_error("inexact integer division in Z[sqrt2,sqrt3]");
  return {a / n, b / n, c / n, d / n};
}

AlgInt AlgInt::div_sqrt2() const {
  // (a + b r2 + c r3 + d r6)/r2 = b + (a/2) r2 + d r3 + (c/2) r6
  if (a % 2 || c % 2) throw ring_error("inexact division by sqrt2");
  return {b, a / 2, d, c / 2};
}

AlgInt AlgInt::div_sqrt3() const {
  // (a + b r2 + c r3 + d r6)/r3 = c + d r2 + (a/3) r3 + (b/3) r6
  if (a % 3 || b % 3) throw ring_error("inexact division by sqrt3");
  return {c, d, a / 3, b / 3};
}

std::string AlgInt::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  auto part = [&](long long k, const char* tag) {
    if (!k) return;
    if (first) {
      if (k < 0) os << "-";
      first = false;
    } else {
      os << (k < 0 ? " - " : " + ");
    }
    long long m = std::llabs(k);
    if (m != 1 || !*tag) os << m;
    if (*tag) {
      if (m != 1) os << "*";
      os << tag;
    }
  };
  part(a, "");
  part(b, "sqrt2");
  part(c, "sqrt3");
  part(d, "sqrt6");
  return os.str();
}

// --- ZPoly ---------------------------------------------------------------

ZPoly ZPoly::operator+(const ZPoly& o) const {
  ZPoly r = *this;
  for (auto& [e, k] : o.c) {
    auto& v = r.c[e];
    v += k;
    if (!v) r.c.erase(e);
  }
  return r;
}

ZPoly ZPoly::operator-(const ZPoly& o) const {
  ZPoly r = *this;
  for (auto& [e, k] : o.c) {
    auto& v = r.c[e];
    v -= k;
    if (!v) r.c.erase(e);
  }
  return r;
}

ZPoly ZPoly::operator*(const ZPoly& o) const {
  ZPoly r;
  for (auto& [e1, k1] : c)
    for (auto& [e2, k2] : o.c) {
      auto& v = r.c[e1 + e2];
      v += k1 * k2;
      if (!v) r.c.erase(e1 + e2);
    }
  return r;
}

std::string ZPoly::str(const std::string& var) const {
  if (c.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [e, k] : c) {
    if (first) {
      if (k < 0) os << "-";
      first = false;
    } else {
      os << (k < 0 ? " - " : " + ");
    }
    long long m = std::llabs(k);
    if (m != 1 || e == 0) os << m;
    if (e != 0) {
      if (m != 1) os << "*";
      os << var;
      if (e != 1) os << "^" << e;
    }
  }
  return os.str();
}

// --- LaurentPoly ---------------------------------------------------------

bool LaurentPoly::integral_exponents() const {
  for (auto& [e, k] : c)
    if (e % 2) return false;
  return true;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r;
  for (auto& [e, k] : c) r.c[e] = -k;
  return r;
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
  LaurentPoly r = *this;
  for (auto& [e, k] : o.c) {
    AlgInt v = r.coeff(e) + k;
    if (v.is_zero())
      r.c.erase(e);
    else
      r.c[e] = v;
  }
  return r;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const {
  return *this + (-o);
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
  LaurentPoly r;
  for (auto& [e1, k1] : c)
    for (auto& [e2, k2] : o.c) {
      AlgInt v = r.coeff(e1 + e2) + k1 * k2;
      if (v.is_zero())
        r.c.erase(e1 + e2);
      else
        r.c[e1 + e2] = v;
    }
  return r;
}

LaurentPoly LaurentPoly::div_exact(long long n) const {
  LaurentPoly r;
  for (auto& [e, k] : c) r.c[e] = k.div_exact(n);
  return r;
}

LaurentPoly LaurentPoly::div_sqrt2() const {
  LaurentPoly r;
  for (auto& [e, k] : c) r.c[e] = k.div_sqrt2();
  return r;
}

LaurentPoly LaurentPoly::div_sqrt3() const {
  LaurentPoly r;
  for (auto& [e, k] : c) r.c[e] = k.div_sqrt3();
  return r;
}

LaurentPoly LaurentPoly::bar() const {
  LaurentPoly r;
  for (auto& [e, k] : c) r.c[-e] = k;
  return r;
}

AlgInt LaurentPoly::eval_one() const {
  AlgInt v;
  for (auto& [e, k] : c) v = v + k;
  return v;
}

LaurentPoly LaurentPoly::negate_x() const {
  LaurentPoly r;
  for (auto& [e, k] : c) {
    if (e % 2) throw ring_error("negate_x on half-integer exponent");
    r.c[e] = (e / 2) % 2 ? -k : k;
  }
  return r;
}

LaurentPoly LaurentPoly::from_zpoly(const ZPoly& p) {
  LaurentPoly r;
  for (auto& [e, k] : p.c) r.c[2 * e] = AlgInt(k);
  return r;
}

ZPoly LaurentPoly::to_zpoly() const {
  ZPoly r;
  for (auto& [e, k] : c) {
    if (e % 2) throw ring_error("to_zpoly: half-integer exponent");
    if (!k.is_rational()) throw ring_error("to_zpoly: irrational coefficient");
    r.c[e / 2] = k.a;
  }
  return r;
}

std::string LaurentPoly::str(const std::string& var) const {
  if (c.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [e, k] : c) {
    // render coefficient; multi-term AlgInt gets wrapped sign-wise per part,
    // so emit each basis part as its own term
    struct Part {
      long long v;
      const char* tag;
    } parts[4] = {{k.a, ""}, {k.b, "sqrt2"}, {k.c, "sqrt3"}, {k.d, "sqrt6"}};
    for (auto& p : parts) {
      if (!p.v) continue;
      if (first) {
        if (p.v < 0) os << "-";
        first = false;
      } else {
        os << (p.v < 0 ? " - " : " + ");
      }
      long long m = std::llabs(p.v);
      bool printed = false;
      if (m != 1 || (e == 0 && !*p.tag)) {
        os << m;
        printed = true;
      }
      if (*p.tag) {
        if (printed) os << "*";
        os << p.tag;
        printed = true;
      }
      if (e != 0) {
        if (printed) os << "*";
        os << var;
        if (e != 2) {
          if (e % 2 == 0)
            os << "^" << e / 2;
          else
            os << "^(" << e << "/2)";
        }
      }
    }
  }
  return os.str();
}

// --- BiPoly ----------------------------------------------------------------

bool BiPoly::has_eps() const {
  for (auto& [k, v] : c)
    if (std::get<2>(k)) return true;
  return false;
}

BiPoly BiPoly::operator-() const {
  BiPoly r;
  for (auto& [k, v] : c) r.c[k] = -v;
  return r;
}

BiPoly BiPoly::operator+(const BiPoly& o) const {
  BiPoly r = *this;
  for (auto& [k, v] : o.c) {
    auto& w = r.c[k];
    w += v;
    if (!w) r.c.erase(k);
  }
  return r;
}

BiPoly BiPoly::operator-(const BiPoly& o) const { return *this + (-o); }

BiPoly BiPoly::operator*(const BiPoly& o) const {
  BiPoly r;
  for (auto& [k1, v1] : c)
    for (auto& [k2, v2] : o.c) {
      int eps = std::get<2>(k1) + std::get<2>(k2);
      if (eps > 1) throw ring_error("eps-degree exceeds 1 in product");
      std::tuple<int, int, int> k{std::get<0>(k1) + std::get<0>(k2),
                                  std::get<1>(k1) + std::get<1>(k2), eps};
      auto& w = r.c[k];
      w += v1 * v2;
      if (!w) r.c.erase(k);
    }
  return r;
}

BiPoly BiPoly::pow(int n) const {
  BiPoly r(1);
  for (int i = 0; i < n; i++) r = r * (*this);
  return r;
}

std::pair<LaurentPoly, LaurentPoly> BiPoly::specialize_h_minus1() const {
  LaurentPoly r0, r1;
  for (auto& [k, v] : c) {
    auto [th, he, eps] = k;
    long long s = (he % 2) ? -v : v;
    LaurentPoly& r = eps ? r1 : r0;
    AlgInt w = r.coeff(th) + AlgInt(s);
    if (w.is_zero())
      r.c.erase(th);
    else
      r.c[th] = w;
  }
  return {r0, r1};
}

LaurentPoly BiPoly::h_coefficient(int e) const {
  LaurentPoly r;
  for (auto& [k, v] : c) {
    auto [th, he, eps] = k;
    if (eps) throw ring_error("h_coefficient with eps present");
    if (he != e) continue;
    r.c[th] = AlgInt(v);
  }
  return r;
}

std::string BiPoly::str() const {
  if (c.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [k, v] : c) {
    auto [th, he, eps] = k;
    if (first) {
      if (v < 0) os << "-";
      first = false;
    } else {
      os << (v < 0 ? " - " : " + ");
    }
    long long m = std::llabs(v);
    bool printed = false;
    if (m != 1 || (th == 0 && he == 0 && !eps)) {
      os << m;
      printed = true;
    }
    if (eps) {
      if (printed) os << "*";
      os << "eps";
      printed = true;
    }
    if (he != 0) {
      if (printed) os << "*";
      os << "h";
      if (he != 1) os << "^" << he;
      printed = true;
    }
    if (th != 0) {
      if (printed) os << "*";
      os << "t";
      if (th != 2) {
        if (th % 2 == 0)
          os << "^" << th / 2;
        else
          os << "^(" << th << "/2)";
      }
    }
  }
  return os.str();
}

BiPoly substitute_h2t(const LaurentPoly& p) {
  BiPoly r;
  for (auto& [e, k] : p.c) {
    if (!k.is_rational())
      throw ring_error("substitute_h2t: sqrt coefficient survived");
    r.c[{e, e, 0}] = k.a;
  }
  return r;
}

BiPoly substitute_minus_ht(const LaurentPoly& p) {
  BiPoly r;
  for (auto& [e, k] : p.c) {
    if (e % 2) throw ring_error("substitute_minus_ht: half power of x");
    if (!k.is_rational())
      throw ring_error("substitute_minus_ht: sqrt coefficient survived");
    int n = e / 2;
    r.c[{e, n, 0}] = (n % 2) ? -k.a : k.a;
  }
  return r;
}

LaurentPoly substitute_t_hm1(const LaurentPoly& p) {
  LaurentPoly r;
  for (auto& [e, k] : p.c) {
    AlgInt v = (e % 2) ? -k : k;
    AlgInt w = r.coeff(e) + v;
    if (w.is_zero())
      r.c.erase(e);
    else
      r.c[e] = w;
  }
  return r;
}

// --- Matrix ----------------------------------------------------------------

Matrix Matrix::identity(int d) {
  Matrix m(d);
  for (int i = 0; i < d; i++) m.e[i][i] = LaurentPoly(1);
  return m;
}

Matrix Matrix::zero(int d) { return Matrix(d); }

Matrix Matrix::operator+(const Matrix& o) const {
  if (dim != o.dim) throw ring_error("dimension mismatch");
  Matrix r(dim);
  for (int i = 0; i < dim; i++)
    for (int j = 0; j < dim; j++) r.e[i][j] = e[i][j] + o.e[i][j];
  return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
  if (dim != o.dim) throw ring_error("dimension mismatch");
  Matrix r(dim);
  for (int i = 0; i < dim; i++)
    for (int j = 0; j < dim; j++) r.e[i][j] = e[i][j] - o.e[i][j];
  return r;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (dim != o.dim) throw ring_error("dimension mismatch");
  Matrix r(dim);
  for (int i = 0; i < dim; i++)
    for (int j = 0; j < dim; j++) {
      LaurentPoly s;
      for (int k = 0; k < dim; k++) s = s + e[i][k] * o.e[k][j];
      r.e[i][j] = s;
    }
  return r;
}

Matrix Matrix::scaled(const LaurentPoly& k) const {
  Matrix r(dim);
  for (int i = 0; i < dim; i++)
    for (int j = 0; j < dim; j++) r.e[i][j] = e[i][j] * k;
  return r;
}

bool Matrix::operator==(const Matrix& o) const {
  if (dim != o.dim) return false;
  for (int i = 0; i < dim; i++)
    for (int j = 0; j < dim; j++)
      if (e[i][j] != o.e[i][j]) return false;
  return true;
}

LaurentPoly Matrix::trace() const {
  LaurentPoly s;
  for (int i = 0; i < dim; i++) s = s + e[i][i];
  return s;
}

bool Matrix::is_scalar() const {
  if (dim == 1) return true;
  return e[0][1].is_zero() && e[1][0].is_zero() && e[0][0] == e[1][1];
}

bool Matrix::is_zero() const {
  for (int i = 0; i < dim; i++)
    for (int j = 0; j < dim; j++)
      if (!e[i][j].is_zero()) return false;
  return true;
}

// --- parsing -----------------------------------------------------------------

namespace {

struct Cursor {
  const std::string& s;
  size_t i = 0;
  void skip() {
    while (i < s.size() && std::isspace((unsigned char)s[i])) i++;
  }
  bool done() {
    skip();
    return i >= s.size();
  }
  char peek() {
    skip();
    return i < s.size() ? s[i] : '\0';
  }
  bool eat(char ch) {
    skip();
    if (i < s.size() && s[i] == ch) {
      i++;
      return true;
    }
    return false;
  }
  bool eat_word(const char* w) {
    skip();
    size_t n = std::string(w).size();
    if (s.compare(i, n, w) == 0) {
      // must not be followed by an identifier char
      if (i + n < s.size() && (std::isalnum((unsigned char)s[i + n])))
        return false;
      i += n;
      return true;
    }
    return false;
  }
  long long integer() {
    skip();
    size_t j = i;
    if (j < s.size() && (s[j] == '+' || s[j] == '-')) j++;
    size_t k = j;
    while (k < s.size() && std::isdigit((unsigned char)s[k])) k++;
    if (k == j) throw ring_error("expected integer at '" + s.substr(i) + "'");
    long long v = std::stoll(s.substr(i, k - i));
    i = k;
    return v;
  }
};

// exponent: e | (p/2)  -> doubled value
int parse_exponent_doubled(Cursor& cur) {
  if (cur.eat('(')) {
    long long p = cur.integer();
    if (!cur.eat('/')) throw ring_error("expected / in exponent");
    long long q = cur.integer();
    if (!cur.eat(')')) throw ring_error("expected ) in exponent");
    if (q == 2) return (int)p;
    if (q == 1) return (int)(2 * p);
    throw ring_error("exponent denominator must be 1 or 2");
  }
  return (int)(2 * cur.integer());
}

struct Term {
  long long coeff = 1;
  int sq = 1;       // 1, 2, 3 or 6
  int xe = 0;       // doubled
  int te = 0;       // doubled
  int he = 0;
  int eps = 0;
  bool saw_num = false;
};

Term parse_term(Cursor& cur, const std::string& var, bool bivariate) {
  Term t;
  bool expect_factor = true;
  while (expect_factor) {
    cur.skip();
    char ch = cur.peek();
    if (std::isdigit((unsigned char)ch)) {
      t.coeff *= cur.integer();
      t.saw_num = true;
    } else if (cur.eat_word("sqrt2")) {
      t.sq = t.sq == 3 ? 6 : 2;
    } else if (cur.eat_word("sqrt3")) {
      t.sq = t.sq == 2 ? 6 : 3;
    } else if (cur.eat_word("sqrt6")) {
      t.sq = 6;
    } else if (bivariate && cur.eat_word("eps")) {
      t.eps = 1;
    } else if (bivariate && cur.eat_word("t")) {
      t.te += cur.eat('^') ? parse_exponent_doubled(cur) : 2;
    } else if (bivariate && cur.eat_word("h")) {
      t.he += cur.eat('^') ? parse_exponent_doubled(cur) / 2 : 1;
    } else if (!bivariate && cur.eat_word(var.c_str())) {
      t.xe += cur.eat('^') ? parse_exponent_doubled(cur) : 2;
    } else {
      throw ring_error("unexpected factor at '" + cur.s.substr(cur.i) + "'");
    }
    expect_factor = cur.eat('*');
  }
  return t;
}

}  // namespace

LaurentPoly parse_laurent(const std::string& s, const std::string& var) {
  Cursor cur{s};
  LaurentPoly r;
  bool first = true;
  while (!cur.done()) {
    long long sign = 1;
    if (cur.eat('-'))
      sign = -1;
    else if (cur.eat('+'))
      sign = 1;
    else if (!first)
      throw ring_error("expected + or - between terms");
    first = false;
    Term t = parse_term(cur, var, false);
    AlgInt k(sign * t.coeff);
    if (t.sq == 2) k = k * AlgInt::sqrt2();
    if (t.sq == 3) k = k * AlgInt::sqrt3();
    if (t.sq == 6) k = k * AlgInt::sqrt6();
    r = r + LaurentPoly::monomial(k, t.xe);
  }
  return r;
}

BiPoly parse_bipoly(const std::string& s) {
  Cursor cur{s};
  BiPoly r;
  bool first = true;
  while (!cur.done()) {
    long long sign = 1;
    if (cur.eat('-'))
      sign = -1;
    else if (cur.eat('+'))
      sign = 1;
    else if (!first)
      throw ring_error("expected + or - between terms");
    first = false;
    Term t = parse_term(cur, "x", true);
    if (t.sq != 1) throw ring_error("sqrt factor in bivariate polynomial");
    r = r + BiPoly::monomial(sign * t.coeff, t.te, t.he, t.eps);
  }
  return r;
}

}  // namespace dlcoh
