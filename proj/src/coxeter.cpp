#include "dlcoh/coxeter.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <set>
#include <sstream>

namespace dlcoh {

namespace {

bool shortlex_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

}  // namespace

CoxeterSystem::CoxeterSystem(std::vector<std::vector<int>> matrix,
                             std::string names, size_t cap)
    : rank_((int)matrix.size()), matrix_(std::move(matrix)),
      names_(std::move(names)) {
  if (rank_ == 0 || (int)names_.size() != rank_)
    throw coxeter_error("BadMatrix: rank/name mismatch");
  for (int i = 0; i < rank_; i++) {
    if ((int)matrix_[i].size() != rank_) throw coxeter_error("BadMatrix: not square");
    if (matrix_[i][i] != 1) throw coxeter_error("BadMatrix: diagonal must be 1");
    for (int j = 0; j < rank_; j++) {
      if (matrix_[i][j] != matrix_[j][i])
        throw coxeter_error("BadMatrix: not symmetric");
      if (i != j && matrix_[i][j] < 2)
        throw coxeter_error("BadMatrix: off-diagonal must be >= 2");
    }
  }
  enumerate(cap);
}

Word CoxeterSystem::reduce(Word w) const {
  // Tits: the equivalence class of a word under braid moves contains a word
  // with a repeated adjacent letter iff the word is not reduced; reduced
  // words of an element form a single braid-move class.
  for (;;) {
    std::set<Word> seen;
    std::deque<Word> queue;
    seen.insert(w);
    queue.push_back(w);
    Word best = w;
    bool deleted = false;
    while (!queue.empty()) {
      Word u = queue.front();
      queue.pop_front();
      // deletion?
      for (size_t i = 0; i + 1 < u.size(); i++) {
        if (u[i] == u[i + 1]) {
          Word v(u.begin(), u.begin() + i);
          v.insert(v.end(), u.begin() + i + 2, u.end());
          w = v;
          deleted = true;
          break;
        }
      }
      if (deleted) break;
      if (shortlex_less(u, best)) best = u;
      // braid moves
      for (size_t i = 0; i + 1 < u.size(); i++) {
        uint8_t a = u[i];
        uint8_t b = u[i + 1];
        if (a == b) continue;
        int m = matrix_[a][b];
        if ((size_t)m > u.size() - i) continue;
        bool alt = true;
        for (int k = 0; k < m; k++) {
          uint8_t expect = (k % 2 == 0) ? a : b;
          if (u[i + k] != expect) {
            alt = false;
            break;
          }
        }
        if (!alt) continue;
        Word v = u;
        for (int k = 0; k < m; k++) v[i + k] = (k % 2 == 0) ? b : a;
        if (seen.insert(v).second) queue.push_back(v);
      }
    }
    if (!deleted) return best;
  }
}

void CoxeterSystem::enumerate(size_t cap) {
  elems_.push_back(Elem{});
  index_[Word{}] = 0;
  rmult_.assign(rank_, -1);
  // BFS in ShortLex order: repeatedly extend by one generator on the right.
  for (size_t i = 0; i < elems_.size(); i++) {
    for (int s = 0; s < rank_; s++) {
      Word cand = elems_[i].word;
      cand.push_back((uint8_t)s);
      Word red = reduce(cand);
      auto it = index_.find(red);
      int id;
      if (it == index_.end()) {
        if (elems_.size() >= cap)
          throw coxeter_error("NotFinite: enumeration exceeded cap");
        id = (int)elems_.size();
        Elem e;
        e.word = red;
        elems_.push_back(std::move(e));
        index_[red] = id;
        rmult_.resize(elems_.size() * rank_, -1);
      } else {
        id = it->second;
      }
      rmult_[i * rank_ + s] = id;
    }
  }
  size_t n = elems_.size();
  // left multiplication, inverses, descents, support
  lmult_.assign(n * rank_, -1);
  for (size_t i = 0; i < n; i++) {
    const Word& u = elems_[i].word;
    for (int s = 0; s < rank_; s++) {
      Word cand;
      cand.push_back((uint8_t)s);
      cand.insert(cand.end(), u.begin(), u.end());
      lmult_[i * rank_ + s] = index_.at(reduce(cand));
    }
    Word rev(u.rbegin(), u.rend());
    elems_[i].inverse = index_.at(reduce(rev));
    GenSet sup = 0, ld = 0, rd = 0;
    for (uint8_t ch : u) sup |= (1u << ch);
    for (int s = 0; s < rank_; s++) {
      if (elems_[lmult_[i * rank_ + s]].word.size() < u.size()) ld |= (1u << s);
      if (elems_[rmult_[i * rank_ + s]].word.size() < u.size()) rd |= (1u << s);
    }
    elems_[i].support = sup;
    elems_[i].ldesc = ld;
    elems_[i].rdesc = rd;
  }
  // longest element: unique element of maximal length
  size_t best = 0;
  for (size_t i = 0; i < n; i++)
    if (elems_[i].word.size() > elems_[best].word.size()) best = i;
  w0_ = {(int)best};
  gen_ids_.resize(rank_);
  for (int s = 0; s < rank_; s++) gen_ids_[s] = rmult_[s];
  intervals_.assign(n, {});
  for (size_t w = 0; w < n; w++)
    for (size_t v = 0; v < n; v++)
      if (bruhat_leq({(int)v}, {(int)w})) intervals_[w].push_back((int)v);
}

WeylElt CoxeterSystem::generator(int i) const {
  if (i < 0 || i >= rank_) throw coxeter_error("generator index out of range");
  return {gen_ids_[i]};
}

std::string CoxeterSystem::word_str(WeylElt w) const {
  std::string s;
  for (uint8_t ch : elems_[w.id].word) s += names_[ch];
  return s.empty() ? "1" : s;
}

int CoxeterSystem::gen_index(char name) const {
  auto p = names_.find(name);
  if (p == std::string::npos)
    throw coxeter_error(std::string("unknown generator '") + name + "'");
  return (int)p;
}

WeylElt CoxeterSystem::from_word(const Word& w) const {
  return {index_.at(reduce(w))};
}

WeylElt CoxeterSystem::from_string(const std::string& s) const {
  Word w;
  for (char ch : s) {
    if (std::isspace((unsigned char)ch)) continue;
    w.push_back((uint8_t)gen_index(ch));
  }
  return from_word(w);
}

WeylElt CoxeterSystem::mult(WeylElt u, WeylElt v) const {
  WeylElt r = u;
  for (uint8_t s : elems_[v.id].word) r = rmult(r, s);
  return r;
}

bool CoxeterSystem::bruhat_leq(WeylElt v, WeylElt w) const {
  // subword property on the fixed canonical reduced word of w
  const Word& ww = elems_[w.id].word;
  const Word& vw = elems_[v.id].word;
  size_t k = vw.size(), n = ww.size();
  if (k > n) return false;
  if (k == 0) return true;
  // enumerate k-subsequences of ww; groups here are tiny
  std::vector<size_t> idx(k);
  for (size_t i = 0; i < k; i++) idx[i] = i;
  for (;;) {
    Word sub(k);
    for (size_t i = 0; i < k; i++) sub[i] = ww[idx[i]];
    Word red = reduce(sub);
    if (red.size() == k && index_.at(red) == v.id) return true;
    // next combination
    size_t i = k;
    while (i > 0) {
      i--;
      if (idx[i] != i + n - k) {
        idx[i]++;
        for (size_t j = i + 1; j < k; j++) idx[j] = idx[j - 1] + 1;
        i = 1;
        goto next;
      }
    }
    return false;
  next:;
  }
}

WeylElt CoxeterSystem::longest_element(GenSet I) const {
  // longest element supported on I: greedily extend within W_I
  WeylElt w = identity();
  for (;;) {
    bool moved = false;
    for (int s = 0; s < rank_; s++) {
      if (!(I & (1u << s))) continue;
      if (!(right_descents(w) & (1u << s))) {
        w = rmult(w, s);
        moved = true;
      }
    }
    if (!moved) return w;
  }
}

bool CoxeterSystem::is_I_reduced(WeylElt w, GenSet I) const {
  return (left_descents(w) & I) == 0;
}

bool CoxeterSystem::is_reduced_I(WeylElt w, GenSet I) const {
  return (right_descents(w) & I) == 0;
}

std::string CoxeterSystem::gen_set_str(GenSet I) const {
  std::string s;
  for (int i = 0; i < rank_; i++)
    if (I & (1u << i)) s += names_[i];
  return s.empty() ? "{}" : s;
}

CoxeterSystem CoxeterSystem::from_config(const std::string& config, size_t cap) {
  // format: rank=2; m(s,t)=3; names=st
  int rank = -1;
  std::string names;
  std::vector<std::tuple<char, char, int>> orders;
  std::stringstream ss(config);
  std::string item;
  while (std::getline(ss, item, ';')) {
    item.erase(std::remove_if(item.begin(), item.end(),
                              [](unsigned char c) { return std::isspace(c); }),
               item.end());
    if (item.empty()) continue;
    if (item.rfind("rank=", 0) == 0) {
      rank = std::stoi(item.substr(5));
    } else if (item.rfind("names=", 0) == 0) {
      names = item.substr(6);
    } else if (item.rfind("m(", 0) == 0) {
      auto close = item.find(')');
      auto eq = item.find('=', close);
      if (close == std::string::npos || eq == std::string::npos || close != 5 ||
          item[3] != ',')
        throw coxeter_error("bad config entry: " + item);
      orders.emplace_back(item[2], item[4], std::stoi(item.substr(eq + 1)));
    } else {
      throw coxeter_error("bad config entry: " + item);
    }
  }
  if (rank <= 0 || (int)names.size() != rank)
    throw coxeter_error("config needs rank and matching names");
  std::vector<std::vector<int>> m(rank, std::vector<int>(rank, 2));
  for (int i = 0; i < rank; i++) m[i][i] = 1;
  for (auto& [a, b, k] : orders) {
    auto ia = names.find(a), ib = names.find(b);
    if (ia == std::string::npos || ib == std::string::npos)
      throw coxeter_error("config order names unknown");
    m[ia][ib] = m[ib][ia] = k;
  }
  return CoxeterSystem(std::move(m), names, cap);
}

const CoxeterSystem& CoxeterSystem::preset(const std::string& name) {
  static std::mutex mu;
  static std::map<std::string, std::unique_ptr<CoxeterSystem>> cache;
  std::lock_guard<std::mutex> lk(mu);
  auto it = cache.find(name);
  if (it != cache.end()) return *it->second;
  std::unique_ptr<CoxeterSystem> sys;
  if (name == "A1") {
    sys = std::make_unique<CoxeterSystem>(
        std::vector<std::vector<int>>{{1}}, "s");
  } else if (name == "A2") {
    sys = std::make_unique<CoxeterSystem>(
        std::vector<std::vector<int>>{{1, 3}, {3, 1}}, "st");
  } else if (name == "B2") {
    sys = std::make_unique<CoxeterSystem>(
        std::vector<std::vector<int>>{{1, 4}, {4, 1}}, "st");
  } else if (name == "G2") {
    sys = std::make_unique<CoxeterSystem>(
        std::vector<std::vector<int>>{{1, 6}, {6, 1}}, "st");
  } else if (name == "I8") {
    sys = std::make_unique<CoxeterSystem>(
        std::vector<std::vector<int>>{{1, 8}, {8, 1}}, "st");
  } else if (name == "A1xA1") {
    sys = std::make_unique<CoxeterSystem>(
        std::vector<std::vector<int>>{{1, 2}, {2, 1}}, "st");
  } else if (name == "A3") {
    sys = std::make_unique<CoxeterSystem>(
        std::vector<std::vector<int>>{{1, 3, 2}, {3, 1, 3}, {2, 3, 1}}, "123");
  } else {
    throw coxeter_error("unknown preset: " + name);
  }
  auto& ref = *sys;
  cache[name] = std::move(sys);
  return ref;
}

// --- Automorphism ----------------------------------------------------------

Automorphism::Automorphism(const CoxeterSystem& sys, std::vector<int> perm)
    : sys_(&sys), perm_(std::move(perm)) {
  if ((int)perm_.size() != sys.rank())
    throw coxeter_error("NotAutomorphism: wrong permutation size");
  std::vector<bool> hit(sys.rank(), false);
  for (int v : perm_) {
    if (v < 0 || v >= sys.rank() || hit[v])
      throw coxeter_error("NotAutomorphism: not a permutation");
    hit[v] = true;
  }
  for (int i = 0; i < sys.rank(); i++)
    for (int j = 0; j < sys.rank(); j++)
      if (sys.order(i, j) != sys.order(perm_[i], perm_[j]))
        throw coxeter_error("NotAutomorphism: Coxeter matrix not preserved");
}

Automorphism Automorphism::identity(const CoxeterSystem& sys) {
  std::vector<int> p(sys.rank());
  for (int i = 0; i < sys.rank(); i++) p[i] = i;
  return Automorphism(sys, std::move(p));
}

WeylElt Automorphism::operator()(WeylElt w) const {
  if (!sys_ || perm_.empty()) return w;
  Word u = sys_->word(w);
  for (auto& ch : u) ch = (uint8_t)perm_[ch];
  return sys_->from_word(u);
}

bool Automorphism::is_identity() const {
  for (size_t i = 0; i < perm_.size(); i++)
    if (perm_[i] != (int)i) return false;
  return true;
}

std::vector<GenSet> Automorphism::orbits() const {
  std::vector<GenSet> out;
  int n = sys_ ? sys_->rank() : 0;
  std::vector<bool> seen(n, false);
  for (int i = 0; i < n; i++) {
    if (seen[i]) continue;
    GenSet o = 0;
    int j = i;
    while (!seen[j]) {
      seen[j] = true;
      o |= (1u << j);
      j = map_gen(j);
    }
    out.push_back(o);
  }
  return out;
}

}  // namespace dlcoh
