#include "dlcoh/braid.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <sstream>

namespace dlcoh {

// --- BraidElt ----------------------------------------------------------------

BraidElt::BraidElt(const CoxeterSystem& sys, std::vector<WeylElt> factors)
    : sys_(&sys), factors_(std::move(factors)) {
  normalize();
}

BraidElt BraidElt::of_word(const CoxeterSystem& sys, const Word& letters) {
  std::vector<WeylElt> fs;
  fs.reserve(letters.size());
  for (uint8_t s : letters) fs.push_back(sys.generator(s));
  return BraidElt(sys, std::move(fs));
}

BraidElt BraidElt::of_atom(const CoxeterSystem& sys, WeylElt w) {
  return BraidElt(sys, {w});
}

BraidElt BraidElt::w0(const CoxeterSystem& sys) {
  return BraidElt(sys, {sys.w0()});
}

BraidElt BraidElt::pi(const CoxeterSystem& sys) {
  return BraidElt(sys, {sys.w0(), sys.w0()});
}

void BraidElt::normalize() {
  auto& fs = factors_;
  fs.erase(std::remove_if(fs.begin(), fs.end(),
                          [](WeylElt w) { return w.id == 0; }),
           fs.end());
  if (fs.size() < 2) return;
  // left-weighted pairs: (u, v) is normal iff every left descent of v is a
  // right descent of u; otherwise slide a letter across and repeat
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i + 1 < fs.size(); i++) {
      WeylElt u = fs[i], v = fs[i + 1];
      GenSet bad = sys_->left_descents(v) & ~sys_->right_descents(u);
      while (bad) {
        int s = __builtin_ctz(bad);
        u = sys_->rmult(u, s);
        v = sys_->lmult(s, v);
        changed = true;
        bad = v.id == 0 ? 0 : sys_->left_descents(v) & ~sys_->right_descents(u);
      }
      fs[i] = u;
      fs[i + 1] = v;
      if (v.id == 0) {
        fs.erase(fs.begin() + i + 1);
        break;
      }
    }
  }
}

int BraidElt::length() const {
  int n = 0;
  for (WeylElt w : factors_) n += sys_->length(w);
  return n;
}

Word BraidElt::letters() const {
  Word w;
  for (WeylElt f : factors_) {
    const Word& fw = sys_->word(f);
    w.insert(w.end(), fw.begin(), fw.end());
  }
  return w;
}

std::string BraidElt::str() const {
  if (factors_.empty()) return "1";
  std::string s;
  for (size_t i = 0; i < factors_.size(); i++) {
    if (i) s += ".";
    s += sys_->word_str(factors_[i]);
  }
  return s;
}

BraidElt BraidElt::operator*(const BraidElt& o) const {
  const CoxeterSystem* sys = sys_ ? sys_ : o.sys_;
  if (!sys) return {};
  std::vector<WeylElt> fs = factors_;
  fs.insert(fs.end(), o.factors_.begin(), o.factors_.end());
  return BraidElt(*sys, std::move(fs));
}

BraidElt BraidElt::pow(int n) const {
  BraidElt r(*sys_);
  for (int i = 0; i < n; i++) r = r * (*this);
  return r;
}

bool BraidElt::operator==(const BraidElt& o) const {
  return factors_ == o.factors_;
}

bool BraidElt::operator<(const BraidElt& o) const {
  if (factors_.size() != o.factors_.size())
    return factors_.size() < o.factors_.size();
  for (size_t i = 0; i < factors_.size(); i++)
    if (factors_[i] != o.factors_[i]) return factors_[i] < o.factors_[i];
  return false;
}

WeylElt BraidElt::alpha() const {
  return factors_.empty() ? sys_->identity() : factors_.front();
}

BraidElt BraidElt::omega() const {
  if (factors_.empty()) return *this;
  return BraidElt(*sys_,
                  std::vector<WeylElt>(factors_.begin() + 1, factors_.end()));
}

bool BraidElt::divided_by(WeylElt w) const {
  // w (as an element of W) left-divides b iff w is below alpha(b) in the
  // left weak order: alpha(b) = w * (w^{-1} alpha(b)) with lengths adding
  if (w.id == 0) return true;
  if (factors_.empty()) return false;
  WeylElt a = factors_.front();
  WeylElt rest = sys_->mult(sys_->inverse(w), a);
  return sys_->length(w) + sys_->length(rest) == sys_->length(a);
}

BraidElt BraidElt::lquo(WeylElt w) const {
  if (!divided_by(w)) throw braid_error("NotDivisor: lquo");
  if (w.id == 0) return *this;
  std::vector<WeylElt> fs = factors_;
  fs[0] = sys_->mult(sys_->inverse(w), fs[0]);
  return BraidElt(*sys_, std::move(fs));
}

BraidElt BraidElt::reversed() const {
  std::vector<WeylElt> fs;
  fs.reserve(factors_.size());
  for (auto it = factors_.rbegin(); it != factors_.rend(); ++it)
    fs.push_back(sys_->inverse(*it));
  return BraidElt(*sys_, std::move(fs));
}

bool left_divides(const BraidElt& a, const BraidElt& b) {
  if (a.is_unit()) return true;
  BraidElt rest = b;
  for (WeylElt f : a.factors()) {
    // peel the factor letter by letter
    for (uint8_t s : a.system().word(f)) {
      WeylElt g = a.system().generator(s);
      if (!rest.divided_by(g)) return false;
      rest = rest.lquo(g);
    }
  }
  return true;
}

BraidElt left_quotient(const BraidElt& a, const BraidElt& b) {
  BraidElt rest = b;
  for (uint8_t s : a.letters()) {
    WeylElt g = a.system().generator(s);
    if (!rest.divided_by(g)) throw braid_error("NotDivisor: left_quotient");
    rest = rest.lquo(g);
  }
  return rest;
}

BraidElt alpha_I(const BraidElt& b, GenSet I) {
  const CoxeterSystem& sys = b.system();
  BraidElt head(sys), rest = b;
  bool moved = true;
  while (moved) {
    moved = false;
    for (int s = 0; s < sys.rank(); s++) {
      if (!(I & (1u << s))) continue;
      WeylElt g = sys.generator(s);
      if (rest.divided_by(g)) {
        head = head * BraidElt::of_atom(sys, g);
        rest = rest.lquo(g);
        moved = true;
      }
    }
  }
  return head;
}

BraidElt omega_I(const BraidElt& b, GenSet I) {
  return left_quotient(alpha_I(b, I), b);
}

BraidElt f_action(const Automorphism& F, const BraidElt& b) {
  std::vector<WeylElt> fs;
  fs.reserve(b.factors().size());
  for (WeylElt w : b.factors()) fs.push_back(F(w));
  return BraidElt(b.system(), std::move(fs));
}

std::vector<BraidElt> fixed_submonoid_generators(const CoxeterSystem& sys,
                                                 const Automorphism& F) {
  std::vector<BraidElt> out;
  for (GenSet I : F.orbits())
    out.push_back(BraidElt::of_atom(sys, sys.longest_element(I)));
  return out;
}

BraidElt conj_elementary(const BraidElt& w, WeylElt y, const Automorphism& F) {
  if (!w.divided_by(y)) throw braid_error("NotDivisor: conj_elementary");
  return w.lquo(y) * BraidElt::of_atom(w.system(), F(y));
}

std::set<BraidElt> explore_D_plus(const BraidElt& w, const Automorphism& F,
                                  int depth) {
  std::set<BraidElt> seen{w};
  std::deque<std::pair<BraidElt, int>> queue{{w, 0}};
  const CoxeterSystem& sys = w.system();
  while (!queue.empty()) {
    auto [cur, d] = queue.front();
    queue.pop_front();
    if (d >= depth) continue;
    for (size_t i = 1; i < sys.size(); i++) {
      WeylElt y{(int)i};
      if (!cur.divided_by(y)) continue;
      BraidElt next = conj_elementary(cur, y, F);
      if (seen.insert(next).second) queue.emplace_back(next, d + 1);
    }
  }
  return seen;
}

// --- CompletedBraidElt ---------------------------------------------------------

CompletedBraidElt::CompletedBraidElt(const CoxeterSystem& sys,
                                     std::vector<CompletedToken> toks)
    : sys_(&sys) {
  toks_.reserve(toks.size());
  for (auto& t : toks)
    if (t.w.id != 0) toks_.push_back(t);  // y(1) = y(1 underlined) = 1
}

bool CompletedBraidElt::all_underlined() const {
  for (auto& t : toks_)
    if (!t.underlined) return false;
  return true;
}

bool CompletedBraidElt::has_underlined() const {
  for (auto& t : toks_)
    if (t.underlined) return true;
  return false;
}

int CompletedBraidElt::length() const {
  int n = 0;
  for (auto& t : toks_) n += sys_->length(t.w);
  return n;
}

CompletedBraidElt CompletedBraidElt::operator*(const CompletedBraidElt& o) const {
  const CoxeterSystem* sys = sys_ ? sys_ : o.sys_;
  std::vector<CompletedToken> toks = toks_;
  toks.insert(toks.end(), o.toks_.begin(), o.toks_.end());
  return CompletedBraidElt(*sys, std::move(toks));
}

std::string CompletedBraidElt::str() const {
  if (toks_.empty()) return "1";
  std::string s;
  for (size_t i = 0; i < toks_.size(); i++) {
    if (i) s += " ";
    if (toks_[i].underlined) s += "_";
    s += sys_->word_str(toks_[i].w);
  }
  return s;
}

BraidElt rho(const CompletedBraidElt& c) {
  std::vector<WeylElt> fs;
  for (auto& t : c.tokens()) fs.push_back(t.w);
  return BraidElt(c.system(), std::move(fs));
}

CompletedBraidElt f_action(const Automorphism& F, const CompletedBraidElt& c) {
  std::vector<CompletedToken> toks;
  for (auto& t : c.tokens()) toks.push_back({t.underlined, F(t.w)});
  return CompletedBraidElt(c.system(), std::move(toks));
}

CompletedBraidElt completed_of_braid(const BraidElt& b) {
  std::vector<CompletedToken> toks;
  for (WeylElt f : b.factors()) toks.push_back({false, f});
  return CompletedBraidElt(b.system(), std::move(toks));
}

CompletedBraidElt from_tokens(const CoxeterSystem& sys,
                              std::vector<CompletedToken> toks) {
  return CompletedBraidElt(sys, std::move(toks));
}

std::vector<CompletedToken> canonical_tokens(const CompletedBraidElt& c) {
  const CoxeterSystem& sys = c.system();
  std::vector<CompletedToken> out;
  size_t i = 0;
  auto& toks = c.tokens();
  while (i < toks.size()) {
    if (!toks[i].underlined) {
      std::vector<WeylElt> run;
      while (i < toks.size() && !toks[i].underlined) run.push_back(toks[i++].w);
      BraidElt b(sys, std::move(run));
      for (WeylElt f : b.factors()) out.push_back({false, f});
    } else {
      out.push_back(toks[i++]);
    }
  }
  // merge adjacent underlined tokens with disjoint supports
  bool merged = true;
  while (merged) {
    merged = false;
    for (size_t k = 0; k + 1 < out.size(); k++) {
      if (out[k].underlined && out[k + 1].underlined &&
          (sys.support(out[k].w) & sys.support(out[k + 1].w)) == 0) {
        out[k].w = sys.mult(out[k].w, out[k + 1].w);
        out.erase(out.begin() + k + 1);
        merged = true;
        break;
      }
    }
  }
  return out;
}

std::string canonical_key(const CompletedBraidElt& c) {
  auto toks = canonical_tokens(c);
  if (toks.empty()) return "1";
  const CoxeterSystem& sys = c.system();
  std::string s;
  for (size_t i = 0; i < toks.size(); i++) {
    if (i) s += " ";
    if (toks[i].underlined) s += "_";
    s += sys.word_str(toks[i].w);
  }
  return s;
}

std::vector<CompletedToken> expanded_tokens(const CompletedBraidElt& c) {
  const CoxeterSystem& sys = c.system();
  std::vector<CompletedToken> out;
  for (auto& t : c.tokens()) {
    if (!t.underlined) {
      for (uint8_t s : sys.word(t.w)) out.push_back({false, sys.generator(s)});
    } else {
      // split w into single letters when its support letters all commute
      // pairwise and lengths add (disjoint single-letter supports)
      const Word& w = sys.word(t.w);
      GenSet seen = 0;
      bool splittable = true;
      for (uint8_t s : w) {
        if (seen & (1u << s)) {
          splittable = false;
          break;
        }
        seen |= (1u << s);
      }
      if (splittable && w.size() > 1) {
        // all letters distinct; valid split iff the letters generate a
        // product of A1 factors inside the support (orders all 2)
        for (size_t a = 0; a < w.size() && splittable; a++)
          for (size_t b = a + 1; b < w.size() && splittable; b++)
            if (sys.order(w[a], w[b]) != 2) splittable = false;
      }
      if (splittable) {
        for (uint8_t s : w) out.push_back({true, sys.generator(s)});
      } else {
        out.push_back(t);
      }
    }
  }
  return out;
}

// --- ZBraidElt -------------------------------------------------------------------

ZBraidElt ZBraidElt::operator+(const ZBraidElt& o) const {
  ZBraidElt r = *this;
  for (auto& [b, k] : o.terms_) {
    auto& v = r.terms_[b];
    v += k;
    if (!v) r.terms_.erase(b);
  }
  return r;
}

ZBraidElt ZBraidElt::operator*(const ZBraidElt& o) const {
  ZBraidElt r;
  for (auto& [b1, k1] : terms_)
    for (auto& [b2, k2] : o.terms_) {
      BraidElt p = b1 * b2;
      auto& v = r.terms_[p];
      v += k1 * k2;
      if (!v) r.terms_.erase(p);
    }
  return r;
}

std::string ZBraidElt::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [b, k] : terms_) {
    if (first) {
      if (k < 0) os << "-";
      first = false;
    } else {
      os << (k < 0 ? " - " : " + ");
    }
    long long m = std::llabs(k);
    if (m != 1) os << m << "*";
    os << b.str();
  }
  return os.str();
}

ZBraidElt zb_image(const CompletedBraidElt& c) {
  const CoxeterSystem& sys = c.system();
  ZBraidElt r{BraidElt(sys)};
  for (auto& t : c.tokens()) {
    ZBraidElt factor;
    if (!t.underlined) {
      factor = ZBraidElt(BraidElt::of_atom(sys, t.w));
    } else {
      for (int v : sys.bruhat_interval(t.w))
        factor = factor + ZBraidElt(BraidElt::of_atom(sys, WeylElt{v}));
    }
    r = r * factor;
  }
  return r;
}

bool completed_equal(const CompletedBraidElt& a, const CompletedBraidElt& b) {
  return zb_image(a) == zb_image(b);
}

// --- A2 classification --------------------------------------------------------

std::set<BraidElt> a2_conjugacy_orbit(const BraidElt& b, size_t cap) {
  const CoxeterSystem& sys = b.system();
  Automorphism swap(sys, {1, 0});
  std::set<BraidElt> seen{b};
  std::deque<BraidElt> queue{b};
  while (!queue.empty()) {
    BraidElt cur = queue.front();
    queue.pop_front();
    std::vector<BraidElt> nexts;
    // circular permutation by one atom
    for (int s = 0; s < sys.rank(); s++) {
      WeylElt g = sys.generator(s);
      if (cur.divided_by(g))
        nexts.push_back(cur.lquo(g) * BraidElt::of_atom(sys, g));
    }
    // conjugation by w0 realizes the letter swap on B+
    nexts.push_back(f_action(swap, cur));
    for (auto& n : nexts) {
      if (seen.insert(n).second) {
        if (seen.size() > cap) throw braid_error("conjugacy orbit exceeds cap");
        queue.push_back(n);
      }
    }
  }
  return seen;
}

namespace {

// parse a rigid block word s^{a1} t^{a2} ... into (first letter, exponents)
std::pair<int, std::vector<int>> block_form(const Word& w) {
  std::vector<int> blocks;
  int first = w.empty() ? -1 : w[0];
  size_t i = 0;
  while (i < w.size()) {
    size_t j = i;
    while (j < w.size() && w[j] == w[i]) j++;
    blocks.push_back((int)(j - i));
    if (i > 0 && w[i] == w[i - 1]) return {-1, {}};  // cannot happen
    i = j;
  }
  // verify alternation
  for (size_t k = 0; k + 1 < blocks.size(); k++) {
    // adjacent blocks are distinct letters by construction
  }
  return {first, blocks};
}

bool lex_max_among_cyclic(const std::vector<int>& a) {
  size_t n = a.size();
  for (size_t d = 1; d < n; d++) {
    std::vector<int> rot(n);
    for (size_t i = 0; i < n; i++) rot[i] = a[(i + d) % n];
    if (rot > a) return false;
  }
  return true;
}

}  // namespace

std::string A2ClassDescriptor::str() const {
  std::ostringstream os;
  os << "pi^" << n << " * ";
  switch (kind) {
    case PowerOfS:
      os << "s^" << params[0];
      break;
    case ST:
      os << "st";
      break;
    case Staircase: {
      os << "staircase(";
      for (size_t i = 0; i < params.size(); i++)
        os << (i ? "," : "") << params[i];
      os << ")";
      break;
    }
    case W0Sa:
      os << "w0*s^" << params[0];
      break;
    case W0Staircase: {
      os << "w0*staircase(";
      for (size_t i = 0; i < params.size(); i++)
        os << (i ? "," : "") << params[i];
      os << ")";
      break;
    }
  }
  os << "  phi=" << phi;
  return os.str();
}

A2ClassDescriptor a2_classify(const BraidElt& b, int max_len) {
  const CoxeterSystem& sys = b.system();
  if (sys.rank() != 2 || sys.order(0, 1) != 3)
    throw braid_error("NotA2: a2_classify requires type A2");
  if (b.length() > max_len)
    throw braid_error("a2_classify: input exceeds length bound");

  std::set<BraidElt> orbit = a2_conjugacy_orbit(b);
  BraidElt w0b = BraidElt::w0(sys);

  // maximal w0-power dividing any orbit element
  int K = 0;
  for (auto& e : orbit) {
    int k = 0;
    BraidElt rest = e;
    while (left_divides(w0b, rest)) {
      rest = left_quotient(w0b, rest);
      k++;
    }
    K = std::max(K, k);
  }
  BraidElt w0K = w0b.pow(K);

  A2ClassDescriptor best;
  bool found = false;
  auto consider = [&](const A2ClassDescriptor& d) {
    if (!found || d < best) {
      best = d;
      found = true;
    }
  };

  for (auto& e : orbit) {
    if (!left_divides(w0K, e)) continue;
    Word x = left_quotient(w0K, e).letters();
    auto [first, blocks] = block_form(x);
    A2ClassDescriptor d;
    d.n = K / 2;
    if (K % 2 == 0) {
      if (blocks.empty()) {
        d.kind = A2ClassDescriptor::PowerOfS;
        d.params = {0};
        d.phi = d.n;
        consider(d);
      } else if (blocks.size() == 1 && first == 0) {
        d.kind = A2ClassDescriptor::PowerOfS;
        d.params = {blocks[0]};
        d.phi = d.n;
        consider(d);
      } else if (x.size() == 2 && first == 0 && blocks.size() == 2) {
        d.kind = A2ClassDescriptor::ST;
        d.params = {};
        d.phi = d.n;
        consider(d);
      } else if (first == 0 && blocks.size() % 2 == 0 &&
                 std::all_of(blocks.begin(), blocks.end(),
                             [](int a) { return a >= 2; }) &&
                 lex_max_among_cyclic(blocks)) {
        d.kind = A2ClassDescriptor::Staircase;
        d.params = blocks;
        d.phi = d.n + (long long)(blocks.size() / 2);
        consider(d);
      }
    } else {
      if (blocks.empty()) {
        d.kind = A2ClassDescriptor::W0Sa;
        d.params = {0};
        d.phi = d.n;
        consider(d);
      } else if (blocks.size() == 1 && first == 0 && blocks[0] == 1) {
        d.kind = A2ClassDescriptor::W0Sa;
        d.params = {1};
        d.phi = d.n + 1;
        consider(d);
      } else if (first == 0 && blocks.size() % 2 == 1 &&
                 std::all_of(blocks.begin(), blocks.end(),
                             [](int a) { return a >= 2; }) &&
                 lex_max_among_cyclic(blocks)) {
        d.kind = A2ClassDescriptor::W0Staircase;
        d.params = blocks;
        d.phi = d.n + (long long)((blocks.size() + 1) / 2);
        consider(d);
      }
    }
  }
  if (!found) throw braid_error("a2_classify: no canonical form matched");
  return best;
}

// --- grammar ---------------------------------------------------------------------

CompletedBraidElt parse_completed(const CoxeterSystem& sys,
                                  const std::string& s) {
  std::vector<CompletedToken> toks;
  std::istringstream is(s);
  std::string tok;
  while (is >> tok) {
    bool underlined = false;
    std::string body = tok;
    if (!body.empty() && body[0] == '_') {
      underlined = true;
      body = body.substr(1);
    }
    if (body == "1") {
      if (underlined) continue;  // _1 = 1
      continue;
    }
    if (body == "pi") {
      if (underlined) throw braid_error("pi cannot be underlined");
      toks.push_back({false, sys.w0()});
      toks.push_back({false, sys.w0()});
      continue;
    }
    if (body == "w0") {
      toks.push_back({underlined, sys.w0()});
      continue;
    }
    // a string of generator letters; must be length-additive in W
    Word w;
    for (char ch : body) w.push_back((uint8_t)sys.gen_index(ch));
    WeylElt e = sys.from_word(w);
    if ((size_t)sys.length(e) != w.size())
      throw braid_error("token '" + tok + "' is not length-additive in W");
    toks.push_back({underlined, e});
  }
  return CompletedBraidElt(sys, std::move(toks));
}

BraidElt parse_braid(const CoxeterSystem& sys, const std::string& s) {
  CompletedBraidElt c = parse_completed(sys, s);
  if (c.has_underlined())
    throw braid_error("underlined token in plain braid context");
  return rho(c);
}

}  // namespace dlcoh
