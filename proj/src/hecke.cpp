#include "dlcoh/hecke.hpp"

#include <algorithm>
#include <memory>
#include <mutex>
#include <sstream>

namespace dlcoh {

// --- HeckeElt ------------------------------------------------------------------

HeckeElt HeckeElt::unit(const CoxeterSystem& sys) {
  HeckeElt h(sys);
  h.c_[0] = LaurentPoly(1);
  return h;
}

HeckeElt HeckeElt::t_basis(const CoxeterSystem& sys, WeylElt w,
                           LaurentPoly coeff) {
  HeckeElt h(sys);
  if (!coeff.is_zero()) h.c_[w.id] = std::move(coeff);
  return h;
}

LaurentPoly HeckeElt::coeff(WeylElt w) const {
  auto it = c_.find(w.id);
  return it == c_.end() ? LaurentPoly() : it->second;
}

void HeckeElt::set(int id, const LaurentPoly& v) {
  if (v.is_zero())
    c_.erase(id);
  else
    c_[id] = v;
}

HeckeElt HeckeElt::operator+(const HeckeElt& o) const {
  HeckeElt r = *this;
  if (!r.sys_) r.sys_ = o.sys_;
  for (auto& [id, v] : o.c_) r.set(id, r.coeff({id}) + v);
  return r;
}

HeckeElt HeckeElt::operator-(const HeckeElt& o) const {
  HeckeElt r = *this;
  if (!r.sys_) r.sys_ = o.sys_;
  for (auto& [id, v] : o.c_) r.set(id, r.coeff({id}) - v);
  return r;
}

HeckeElt HeckeElt::scaled(const LaurentPoly& k) const {
  HeckeElt r(*sys_);
  for (auto& [id, v] : c_) r.set(id, v * k);
  return r;
}

HeckeElt HeckeElt::times_Ts(int s) const {
  HeckeElt r(*sys_);
  const LaurentPoly x = LaurentPoly::x();
  const LaurentPoly xm1 = x - LaurentPoly(1);
  for (auto& [id, v] : c_) {
    WeylElt w{id};
    WeylElt ws = sys_->rmult(w, s);
    if (sys_->length(ws) > sys_->length(w)) {
      r.set(ws.id, r.coeff(ws) + v);
    } else {
      r.set(id, r.coeff(w) + v * xm1);
      r.set(ws.id, r.coeff(ws) + v * x);
    }
  }
  return r;
}

HeckeElt HeckeElt::operator*(const HeckeElt& o) const {
  HeckeElt r(*sys_);
  for (auto& [id, v] : o.c_) {
    HeckeElt part = this->scaled(v);
    for (uint8_t s : sys_->word({id})) part = part.times_Ts(s);
    r = r + part;
  }
  return r;
}

std::map<int, AlgInt> HeckeElt::specialize_one() const {
  std::map<int, AlgInt> r;
  for (auto& [id, v] : c_) {
    AlgInt a = v.eval_one();
    if (!a.is_zero()) r[id] = a;
  }
  return r;
}

std::string HeckeElt::str() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [id, v] : c_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << v.str() << ")*T[" << sys_->word_str({id}) << "]";
  }
  return os.str();
}

HeckeElt t_of_word(const CoxeterSystem& sys, const Word& w) {
  HeckeElt r = HeckeElt::unit(sys);
  for (uint8_t s : w) r = r.times_Ts(s);
  return r;
}

HeckeElt t_of_braid(const BraidElt& b) {
  return t_of_word(b.system(), b.letters());
}

HeckeElt t_bar(const CoxeterSystem& sys, WeylElt w) {
  HeckeElt r(sys);
  for (int v : sys.bruhat_interval(w))
    r = r + HeckeElt::t_basis(sys, {v});
  return r;
}

HeckeElt eval_completed(const CompletedBraidElt& c) {
  const CoxeterSystem& sys = c.system();
  HeckeElt r = HeckeElt::unit(sys);
  for (auto& t : c.tokens()) {
    if (t.underlined)
      r = r * t_bar(sys, t.w);
    else
      for (uint8_t s : sys.word(t.w)) r = r.times_Ts(s);
  }
  return r;
}

HeckeElt invert_Ts(const CoxeterSystem& sys, int s) {
  const LaurentPoly xinv = LaurentPoly::x(-2);
  HeckeElt r = HeckeElt::t_basis(sys, sys.generator(s), xinv);
  return r + HeckeElt::t_basis(sys, sys.identity(), xinv - LaurentPoly(1));
}

HeckeElt t_inverse_of_word(const CoxeterSystem& sys, const Word& w) {
  HeckeElt r = HeckeElt::unit(sys);
  for (auto it = w.rbegin(); it != w.rend(); ++it)
    r = r * invert_Ts(sys, *it);
  return r;
}

// --- KLTable ---------------------------------------------------------------------

KLTable::KLTable(const CoxeterSystem& sys) : sys_(&sys) { compute(); }

void KLTable::compute() {
  size_t n = sys_->size();
  table_.assign(n * n, ZPoly());
  // order elements by length; ids from the ShortLex BFS are already sorted
  // by length, so a plain id sweep is increasing in l(w)
  for (size_t wid = 0; wid < n; wid++) {
    WeylElt w{(int)wid};
    if (wid == 0) {
      at(0, 0) = ZPoly(1);
      continue;
    }
    int s = __builtin_ctz(sys_->left_descents(w));
    WeylElt v = sys_->lmult(s, w);  // w = s v with l(v) = l(w) - 1
    for (int yid : sys_->bruhat_interval(w)) {
      WeylElt y{yid};
      if (yid == (int)wid) {
        at(yid, wid) = ZPoly(1);
        continue;
      }
      WeylElt sy = sys_->lmult(s, y);
      bool sy_down = sys_->length(sy) < sys_->length(y);
      int cexp = sy_down ? 1 : 0;
      ZPoly p = ZPoly::monomial(1, 1 - cexp) * at(sy.id, v.id) +
                ZPoly::monomial(1, cexp) * at(y.id, v.id);
      for (int zid : sys_->bruhat_interval(v)) {
        WeylElt z{zid};
        if (!(sys_->left_descents(z) & (1u << s))) continue;
        if (!sys_->bruhat_leq(y, z)) continue;
        long long m = mu(z, v);
        if (!m) continue;
        int e2 = sys_->length(w) - sys_->length(z);
        if (e2 % 2) throw hecke_error("KL recursion: odd exponent");
        p = p - ZPoly(m) * ZPoly::monomial(1, e2 / 2) * at(yid, zid);
      }
      // degree bound check
      int bound = sys_->length(w) - sys_->length(y) - 1;
      if (2 * p.degree() > bound)
        throw hecke_error("KL polynomial exceeds degree bound");
      at(yid, wid) = p;
    }
  }
}

const ZPoly& KLTable::P(WeylElt y, WeylElt w) const { return at(y.id, w.id); }

long long KLTable::mu(WeylElt y, WeylElt w) const {
  int d = sys_->length(w) - sys_->length(y) - 1;
  if (d < 0 || d % 2) return 0;
  return at(y.id, w.id).coeff(d / 2);
}

bool KLTable::rationally_smooth(WeylElt w) const {
  return at(0, w.id).is_one();
}

HeckeElt KLTable::D(WeylElt w) const {
  HeckeElt r(*sys_);
  for (int yid : sys_->bruhat_interval(w))
    r = r + HeckeElt::t_basis(*sys_, {yid},
                              LaurentPoly::from_zpoly(at(yid, w.id)));
  return r;
}

std::vector<WeylElt> KLTable::non_smooth_elements() const {
  std::vector<WeylElt> out;
  for (size_t i = 0; i < sys_->size(); i++)
    if (!rationally_smooth({(int)i})) out.push_back({(int)i});
  return out;
}

const KLTable& kl_table(const CoxeterSystem& sys) {
  static std::mutex mu;
  static std::map<const CoxeterSystem*, std::unique_ptr<KLTable>> cache;
  std::lock_guard<std::mutex> lk(mu);
  auto it = cache.find(&sys);
  if (it == cache.end())
    it = cache.emplace(&sys, std::make_unique<KLTable>(sys)).first;
  return *it->second;
}

LemmaTCase lemma_T_case(const CoxeterSystem& sys, WeylElt w, int s) {
  const KLTable& kl = kl_table(sys);
  if (!kl.rationally_smooth(w))
    throw hecke_error("NotSmooth: the closed cell of w is not rationally smooth");
  LemmaTCase out;
  WeylElt ws = sys.rmult(w, s);
  HeckeElt lhs = t_bar(sys, w) * t_bar(sys, sys.generator(s));
  const LaurentPoly x = LaurentPoly::x();
  if (sys.length(ws) < sys.length(w)) {
    out.case_id = 1;
    out.lhs = lhs;
    out.rhs = t_bar(sys, w).scaled(x + LaurentPoly(1));
    out.identity = "T[w_]T[s_] = (x+1)T[w_]";
    return out;
  }
  if (!sys.bruhat_leq(sys.generator(s), w)) {
    out.case_id = 2;
    out.lhs = lhs;
    out.rhs = t_bar(sys, ws);
    out.identity = "T[w_]T[s_] = T[ws_]";
    return out;
  }
  // s <= w and ws > w: look for the unique maximal y with ys < y < w of
  // colength 1
  std::optional<WeylElt> y;
  for (int vid : sys.bruhat_interval(w)) {
    WeylElt v{vid};
    if (vid == w.id) continue;
    if (sys.length(v) != sys.length(w) - 1) continue;
    if (!(sys.right_descents(v) & (1u << s))) continue;
    if (y) throw hecke_error("lemma T: colength-1 witness not unique");
    y = v;
  }
  if (y) {
    // maximality among {v | vs < v < w}
    for (int vid : sys.bruhat_interval(w)) {
      WeylElt v{vid};
      if (vid == w.id) continue;
      if (!(sys.right_descents(v) & (1u << s))) continue;
      if (!sys.bruhat_leq(v, *y))
        throw hecke_error("lemma T: witness not maximal");
    }
    out.case_id = 3;
    out.y = y;
    out.lhs = lhs;
    out.rhs = t_bar(sys, ws) + t_bar(sys, *y).scaled(x);
    out.identity = "T[w_]T[s_] = T[ws_] + x*T[y_]";
    return out;
  }
  out.case_id = 4;
  out.identity = "cell of ws not rationally smooth";
  return out;
}

// --- CharSpec --------------------------------------------------------------------

void CharSpec::validate() const {
  const LaurentPoly x = LaurentPoly::x();
  Matrix id = Matrix::identity(degree);
  for (auto& m : gens) {
    // (M + 1)(M - x) = 0
    Matrix q = (m + id) * (m - id.scaled(x));
    if (!q.is_zero())
      throw hecke_error("CharSpec " + name + ": quadratic relation fails");
  }
  // braid relation per pair
  for (size_t i = 0; i < gens.size(); i++)
    for (size_t j = i + 1; j < gens.size(); j++) {
      int m = sys->order((int)i, (int)j);
      Matrix a = id, b = id;
      for (int k = 0; k < m; k++) {
        a = a * (k % 2 == 0 ? gens[i] : gens[j]);
        b = b * (k % 2 == 0 ? gens[j] : gens[i]);
      }
      if (!(a == b))
        throw hecke_error("CharSpec " + name + ": braid relation fails");
    }
  // F must conjugate T_s to T_{F(s)}; for the shipped reps F is the identity
  // or the antidiagonal swap, and F^2 = 1
  if (!((F * F) == id))
    throw hecke_error("CharSpec " + name + ": F^2 != 1");
  for (size_t i = 0; i < gens.size(); i++) {
    size_t j = twisted ? gens.size() - 1 - i : i;
    if (!((F * gens[i]) == (gens[j] * F)))
      throw hecke_error("CharSpec " + name + ": F does not intertwine");
  }
}

namespace {

Matrix one_dim(const LaurentPoly& v) { return Matrix(v); }

// the 2x2 pattern [[-1, 0], [k sqrt(x), x]], [[x, k sqrt(x)], [0, -1]]
std::pair<Matrix, Matrix> two_dim_pair(const AlgInt& k) {
  const LaurentPoly x = LaurentPoly::x();
  LaurentPoly off = LaurentPoly::monomial(k, 1);
  Matrix ms(LaurentPoly(-1), LaurentPoly(), off, x);
  Matrix mt(x, off, LaurentPoly(), LaurentPoly(-1));
  return {ms, mt};
}

std::vector<CharSpec> build_specs(const std::string& type) {
  bool twisted = type.size() > 1 && type[0] == '2';
  std::string base = twisted ? type.substr(1) : type;
  const CoxeterSystem& sys = CoxeterSystem::preset(base);
  const LaurentPoly x = LaurentPoly::x();
  const LaurentPoly one(1), mone(-1);
  Matrix f2 = twisted ? Matrix(LaurentPoly(), one, one, LaurentPoly())
                      : Matrix::identity(2);
  Matrix f1 = Matrix::identity(1);

  std::vector<CharSpec> out;
  auto push1 = [&](const std::string& name, const LaurentPoly& vs,
                   const LaurentPoly& vt) {
    CharSpec c;
    c.name = name;
    c.degree = 1;
    c.sys = &sys;
    c.gens = {one_dim(vs), one_dim(vt)};
    c.F = f1;
    c.twisted = twisted;
    c.validate();
    out.push_back(std::move(c));
  };
  auto push2 = [&](const std::string& name, const AlgInt& k) {
    CharSpec c;
    c.name = name;
    c.degree = 2;
    c.sys = &sys;
    auto [ms, mt] = two_dim_pair(k);
    c.gens = {ms, mt};
    c.F = f2;
    c.twisted = twisted;
    c.validate();
    out.push_back(std::move(c));
  };

  // only F-stable characters extend to the twisted algebra, so sigma and
  // tau (swapped by F) are shipped for the split forms only
  push1("id", x, x);
  push1("sign", mone, mone);
  if (base == "A2") {
    push2("rho", AlgInt(1));
  } else if (base == "B2") {
    if (!twisted) {
      push1("sigma", x, mone);  // s -> 1, t -> -1
      push1("tau", mone, x);
    }
    push2("rho", AlgInt::sqrt2());
  } else if (base == "G2") {
    if (!twisted) {
      push1("sigma", mone, x);  // s -> -1, t -> 1
      push1("tau", x, mone);
    }
    push2("A", AlgInt::sqrt3());
    push2("B", AlgInt(1));
  } else {
    throw hecke_error("no character data for type " + type);
  }
  return out;
}

}  // namespace

std::vector<CharSpec> char_specs(const std::string& type) {
  return build_specs(type);
}

const CharSpec& char_spec(const std::string& type, const std::string& name) {
  static std::mutex mu;
  static std::map<std::string, std::vector<CharSpec>> cache;
  std::lock_guard<std::mutex> lk(mu);
  auto it = cache.find(type);
  if (it == cache.end()) it = cache.emplace(type, build_specs(type)).first;
  for (auto& c : it->second)
    if (c.name == name) return c;
  throw hecke_error("unknown character " + name + " for type " + type);
}

Matrix rep_of_word(const CharSpec& spec, const Word& w) {
  Matrix m = Matrix::identity(spec.degree);
  for (uint8_t s : w) m = m * spec.gens[s];
  return m;
}

Matrix rep_of_hecke(const CharSpec& spec, const HeckeElt& h, bool with_F) {
  Matrix r = Matrix::zero(spec.degree);
  for (auto& [id, v] : h.coeffs()) {
    Matrix m = rep_of_word(spec, spec.sys->word({id}));
    r = r + m.scaled(v);
  }
  if (with_F) r = r * spec.F;
  return r;
}

LaurentPoly char_trace(const CharSpec& spec, const HeckeElt& h, bool with_F) {
  return rep_of_hecke(spec, h, with_F).trace();
}

Matrix central_char_w0(const CharSpec& spec) {
  return rep_of_word(spec, spec.sys->word(spec.sys->w0()));
}

LaurentPoly central_char_pi(const CharSpec& spec) {
  Matrix m = central_char_w0(spec);
  Matrix p = m * m;
  if (!p.is_scalar())
    throw hecke_error("NotScalar: T_pi does not act by a scalar");
  return p.e[0][0];
}

}  // namespace dlcoh
