#pragma once

#include <deque>
#include <map>
#include <set>
#include <vector>

#include "dlcoh/coxeter.hpp"
#include "dlcoh/rings.hpp"

// Test-only oracles, independent of the library's computation paths.
//
// - braid divisibility via the rewriting closure of positive words
// - Kazhdan-Lusztig polynomials via R-polynomials and the inversion identity
// - Bruhat order via exhaustive subword enumeration over all reduced words

namespace dlcoh::oracles {

// all positive words equivalent to w under braid moves alone (no deletion:
// positive braid words of equal braids are connected by braid moves)
inline std::set<Word> braid_word_class(const CoxeterSystem& sys, const Word& w) {
  std::set<Word> seen{w};
  std::deque<Word> queue{w};
  while (!queue.empty()) {
    Word u = queue.front();
    queue.pop_front();
    for (size_t i = 0; i + 1 < u.size(); i++) {
      uint8_t a = u[i], b = u[i + 1];
      if (a == b) continue;
      int m = sys.order(a, b);
      if ((size_t)m > u.size() - i) continue;
      bool alt = true;
      for (int k = 0; k < m; k++)
        if (u[i + k] != (k % 2 == 0 ? a : b)) {
          alt = false;
          break;
        }
      if (!alt) continue;
      Word v = u;
      for (int k = 0; k < m; k++) v[i + k] = (k % 2 == 0 ? b : a);
      if (seen.insert(v).second) queue.push_back(v);
    }
  }
  return seen;
}

// does the braid of word `a` left-divide the braid of word `b`?
// exhaustive: some braid-equivalent word of b starts with a word of the
// class of a
inline bool oracle_left_divides(const CoxeterSystem& sys, const Word& a,
                                const Word& b) {
  if (a.size() > b.size()) return false;
  auto cb = braid_word_class(sys, b);
  auto ca = braid_word_class(sys, a);
  for (const Word& w : cb) {
    Word prefix(w.begin(), w.begin() + a.size());
    if (ca.count(prefix)) return true;
  }
  return false;
}

// maximal W-element left-dividing the braid of the given word; this is the
// brute-force alpha
inline WeylElt oracle_alpha(const CoxeterSystem& sys, const Word& b) {
  WeylElt best = sys.identity();
  for (size_t i = 1; i < sys.size(); i++) {
    WeylElt v{(int)i};
    if ((size_t)sys.length(v) > b.size()) continue;
    if (sys.length(v) <= sys.length(best)) continue;
    if (oracle_left_divides(sys, sys.word(v), b)) best = v;
  }
  return best;
}

// Bruhat order by exhaustive subwords over every reduced word of w
inline bool oracle_bruhat_leq(const CoxeterSystem& sys, WeylElt v, WeylElt w) {
  if (v.id == 0) return true;
  const Word& vw = sys.word(v);
  size_t k = vw.size();
  for (const Word& red : braid_word_class(sys, sys.word(w))) {
    size_t n = red.size();
    if (k > n) continue;
    std::vector<size_t> idx(k);
    for (size_t i = 0; i < k; i++) idx[i] = i;
    for (;;) {
      Word sub(k);
      for (size_t i = 0; i < k; i++) sub[i] = red[idx[i]];
      if (sys.reduce(sub).size() == k && sys.from_word(sub) == v) return true;
      size_t i = k;
      bool advanced = false;
      while (i > 0) {
        i--;
        if (idx[i] != i + n - k) {
          idx[i]++;
          for (size_t j = i + 1; j < k; j++) idx[j] = idx[j - 1] + 1;
          advanced = true;
          break;
        }
      }
      if (!advanced) break;
    }
  }
  return false;
}

// --- R-polynomial route to Kazhdan-Lusztig polynomials ------------------------

class RPolyOracle {
 public:
  explicit RPolyOracle(const CoxeterSystem& sys) : sys_(&sys) {
    size_t n = sys.size();
    r_.assign(n * n, ZPoly());
    for (size_t w = 0; w < n; w++) compute_col((int)w);
  }

  const ZPoly& R(WeylElt x, WeylElt w) const {
    return r_[(size_t)x.id * sys_->size() + w.id];
  }

  // P_{y,w} via downward induction on the identity
  //   q^{l(w)-l(y)} bar(P_{y,w}) - P_{y,w} = sum_{y<z<=w} R_{y,z} P_{z,w}
  ZPoly P(WeylElt y, WeylElt w) const {
    if (!sys_->bruhat_leq(y, w)) return ZPoly();
    std::map<int, ZPoly> memo;
    return p_rec(y, w, memo);
  }

 private:
  const CoxeterSystem* sys_ = nullptr;
  std::vector<ZPoly> r_;

  void compute_col(int wid) {
    WeylElt w{wid};
    size_t n = sys_->size();
    if (wid == 0) {
      r_[0] = ZPoly(1);
      return;
    }
    int s = __builtin_ctz(sys_->left_descents(w));
    WeylElt sw = sys_->lmult(s, w);
    for (size_t x = 0; x < n; x++) {
      if (!sys_->bruhat_leq({(int)x}, w)) continue;
      WeylElt sx = sys_->lmult(s, {(int)x});
      ZPoly val;
      if (sys_->length(sx) < sys_->length({(int)x})) {
        val = r_[(size_t)sx.id * n + sw.id];
      } else {
        val = (ZPoly::monomial(1, 1) - ZPoly(1)) * r_[x * n + sw.id] +
              ZPoly::monomial(1, 1) * r_[(size_t)sx.id * n + sw.id];
      }
      r_[x * n + wid] = val;
    }
  }

  ZPoly p_rec(WeylElt y, WeylElt w, std::map<int, ZPoly>& memo) const {
    if (y == w) return ZPoly(1);
    auto it = memo.find(y.id);
    if (it != memo.end()) return it->second;
    int l = sys_->length(w) - sys_->length(y);
    ZPoly rhs;
    for (int z : sys_->bruhat_interval(w)) {
      if (z == y.id || !sys_->bruhat_leq(y, {z})) continue;
      rhs = rhs + R(y, {z}) * p_rec({z}, w, memo);
    }
    // read the coefficients off the high half: bar(P) q^l - P = rhs
    ZPoly p;
    for (int i = 0; 2 * i <= l - 1; i++) {
      long long a = rhs.coeff(l - i);
      if (a) p = p + ZPoly::monomial(a, i);
    }
    // consistency: the low half must match -P
    ZPoly check;
    for (auto& [e, k] : p.c) check = check + ZPoly::monomial(k, l - e);
    if (!(check - p == rhs))
      throw std::runtime_error("R-oracle inversion inconsistent");
    memo[y.id] = p;
    return p;
  }
};

}  // namespace dlcoh::oracles
