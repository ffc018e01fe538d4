// Acceptance suite: runs every criterion at its stated tolerance and prints
// one pass/fail line per criterion. Exit code 0 iff all criteria pass.

#include <chrono>
#include <cstdio>
#include <random>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "dlcoh/cohomology.hpp"
#include "dlcoh/parallel.hpp"
#include "oracles.hpp"

using namespace dlcoh;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

struct Criterion {
  int number;
  Clock::time_point start = Clock::now();
  bool ok = true;
  std::string detail;

  explicit Criterion(int n) : number(n) {}
  void check(bool cond, const std::string& why) {
    if (!cond) {
      ok = false;
      if (!detail.empty()) detail += "; ";
      detail += why;
    }
  }
  void done(const std::string& summary) {
    double secs =
        std::chrono::duration<double>(Clock::now() - start).count();
    printf("criterion %2d: %s (%.2fs) %s%s%s\n", number,
           ok ? "PASS" : "FAIL", secs, summary.c_str(),
           detail.empty() ? "" : " -- ", detail.c_str());
    if (!ok) failures++;
  }
};

std::vector<Word> all_words(int rank, int len) {
  std::vector<Word> out{{}};
  size_t lo = 0;
  for (int l = 0; l < len; l++) {
    size_t hi = out.size();
    for (size_t i = lo; i < hi; i++)
      for (int s = 0; s < rank; s++) {
        Word v = out[i];
        v.push_back((uint8_t)s);
        out.push_back(v);
      }
    lo = hi;
  }
  return out;
}

// 1. Garside oracle equivalence over all words of length <= 6 in A2 and B2
void criterion1() {
  Criterion c(1);
  int alpha_checked = 0, div_checked = 0;
  for (const char* name : {"A2", "B2"}) {
    const auto& sys = CoxeterSystem::preset(name);
    auto words = all_words(2, 6);
    // memoize the rewriting classes once
    std::vector<std::set<Word>> classes(words.size());
    parallel_for(words.size(), [&](size_t i) {
      classes[i] = oracles::braid_word_class(sys, words[i]);
    }, 0);
    std::vector<char> alpha_bad(words.size(), 0);
    parallel_for(words.size(), [&](size_t i) {
      BraidElt b = BraidElt::of_word(sys, words[i]);
      WeylElt best = sys.identity();
      for (size_t v = 1; v < sys.size(); v++) {
        WeylElt cand{(int)v};
        if ((size_t)sys.length(cand) > words[i].size()) continue;
        if (sys.length(cand) <= sys.length(best)) continue;
        const Word& cw = sys.word(cand);
        for (const Word& rep : classes[i]) {
          if (rep.size() >= cw.size() &&
              std::equal(cw.begin(), cw.end(), rep.begin())) {
            best = cand;
            break;
          }
        }
      }
      if (!(b.alpha() == best)) alpha_bad[i] = 1;
    }, 0);
    for (size_t i = 0; i < words.size(); i++) {
      alpha_checked++;
      if (alpha_bad[i])
        c.check(false, std::string(name) + ": alpha mismatch at word " +
                           std::to_string(i));
    }
    // divisibility against exhaustive prefix search
    std::vector<char> div_bad(words.size(), 0);
    parallel_for(words.size(), [&](size_t i) {
      const Word& a = words[i];
      BraidElt ba = BraidElt::of_word(sys, a);
      for (size_t j = 0; j < words.size(); j++) {
        const Word& b = words[j];
        if (a.size() > b.size()) continue;
        bool oracle = false;
        for (const Word& rep : classes[j]) {
          Word prefix(rep.begin(), rep.begin() + a.size());
          if (classes[i].count(prefix)) {
            oracle = true;
            break;
          }
        }
        if (left_divides(ba, BraidElt::of_word(sys, b)) != oracle) {
          div_bad[i] = 1;
          return;
        }
      }
    }, 0);
    for (size_t i = 0; i < words.size(); i++) {
      div_checked += (int)words.size();
      if (div_bad[i])
        c.check(false, std::string(name) + ": divisibility mismatch from word " +
                           std::to_string(i));
    }
  }
  c.done("alpha on " + std::to_string(alpha_checked) + " words, " +
         std::to_string(div_checked) + " divisibility pairs");
}

// 2. KL suite: trivial in the dihedral types; the A3 singular locus
void criterion2() {
  Criterion c(2);
  for (const char* name : {"A2", "B2", "G2", "I8"}) {
    const auto& sys = CoxeterSystem::preset(name);
    const KLTable& kl = kl_table(sys);
    for (size_t y = 0; y < sys.size(); y++)
      for (size_t w = 0; w < sys.size(); w++)
        if (sys.bruhat_leq({(int)y}, {(int)w}) &&
            !kl.P({(int)y}, {(int)w}).is_one())
          c.check(false, std::string("nontrivial P in ") + name);
  }
  const auto& a3 = CoxeterSystem::preset("A3");
  const KLTable& kl = kl_table(a3);
  WeylElt w2132 = a3.from_string("2132");
  c.check(kl.P(a3.identity(), w2132) == ZPoly(1) + ZPoly::monomial(1, 1),
          "P_{e,2132} != 1+x");
  oracles::RPolyOracle rp(a3);
  for (size_t y = 0; y < a3.size(); y++)
    for (size_t w = 0; w < a3.size(); w++)
      if (a3.bruhat_leq({(int)y}, {(int)w}) &&
          !(kl.P({(int)y}, {(int)w}) == rp.P({(int)y}, {(int)w})))
        c.check(false, "KL recursion disagrees with the R-polynomial oracle");
  auto ns = kl.non_smooth_elements();
  std::string found;
  for (auto w : ns) found += " " + a3.word_str(w);
  // Known failing check, kept as written: it asserts a unique non-smooth
  // class in A3, but the computation finds two (2132 and 12321, both with
  // P_{e,w} = 1 + x, confirmed by the R-polynomial oracle above and by the
  // case analysis of the closed-cell multiplication lemma).
  c.check(ns.size() == 1,
          "A3 has " + std::to_string(ns.size()) +
              " non-smooth classes, not one:" + found);
  c.done("dihedral tables trivial, A3 oracle-checked");
}

// 3. lemma-T case analysis against plain multiplication, exhaustively
void criterion3() {
  Criterion c(3);
  int pairs = 0;
  for (const char* name : {"B2", "G2"}) {
    const auto& sys = CoxeterSystem::preset(name);
    for (size_t w = 0; w < sys.size(); w++)
      for (int s = 0; s < sys.rank(); s++) {
        pairs++;
        LemmaTCase lc = lemma_T_case(sys, {(int)w}, s);
        if (lc.case_id == 4) {
          c.check(false, std::string(name) + ": unexpected case (iv)");
          continue;
        }
        if (!(lc.lhs == lc.rhs))
          c.check(false, std::string(name) + ": identity fails at (" +
                             sys.word_str({(int)w}) + "," +
                             std::string(1, sys.names()[s]) + ")");
      }
  }
  c.done(std::to_string(pairs) + " (w,s) pairs in B2 and G2");
}

// 4. the shipped identity suites, with the required counts and rule coverage
void criterion4() {
  Criterion c(4);
  struct Need {
    const char* type;
    int min_count;
    std::vector<std::string> rules;
  };
  std::vector<Need> needs = {
      {"A2", 25, {"rappel.i", "rappel.ii", "rappel.iii", "rappel.iv",
                  "rappel.v", "rappelA2.i", "rappelA2.ii", "rappelA2.iii",
                  "rappelA2.iv", "rappelA2.v"}},
      {"2A2", 15, {}},
      {"B2", 20, {"rappelB2.i", "rappelB2.ii", "rappelB2.iii"}},
      {"2B2", 10, {"rappelB2.v"}},
      {"G2", 20, {}},
      {"2G2", 10, {}},
  };
  int total = 0;
  for (auto& need : needs) {
    std::string lower = need.type;
    for (auto& ch : lower) ch = (char)tolower(ch);
    auto suite = load_suite(data_dir() + "/suites/" + lower + ".ids");
    total += (int)suite.size();
    c.check((int)suite.size() >= need.min_count,
            std::string(need.type) + ": fewer than " +
                std::to_string(need.min_count) + " instances");
    std::set<std::string> rules;
    for (auto& ins : suite) rules.insert(ins.rule);
    for (auto& r : need.rules)
      c.check(rules.count(r) == 1,
              std::string(need.type) + ": rule " + r + " not exercised");
    auto rep = verify_suite(GroupType::get(need.type), suite, 0);
    for (auto& res : rep.results)
      if (!res.pass)
        c.check(false, std::string(need.type) + " [" + res.rule + "] " +
                           res.detail);
  }
  c.done(std::to_string(total) + " instances across the six suites");
}

// 5. the h = -1 specialization of every table row equals the trace formula
void criterion5() {
  Criterion c(5);
  int keys = 0;
  for (auto& name : GroupType::all_names()) {
    const GroupType& gt = GroupType::get(name);
    for (auto& [key, val] : gt.table()) {
      keys++;
      CompletedBraidElt cb = parse_completed(*gt.sys, key);
      auto rhs = gt.trace_formula_hm1(cb);
      for (auto& sym : gt.symbols) {
        auto [p0, p1] = val.coeff(sym).specialize_h_minus1();
        c.check(p1.is_zero(), name + " " + key + ": eps survives h=-1");
        LaurentPoly want = rhs.count(sym) ? rhs.at(sym) : LaurentPoly();
        if (p0 != want)
          c.check(false, name + " " + key + " [" + sym + "]: " +
                             p0.str("t") + " != " + want.str("t"));
      }
    }
  }
  c.done(std::to_string(keys) + " table rows");
}

// 6. closed form vs table on the fully underlined keys
void criterion6() {
  Criterion c(6);
  int keys = 0;
  for (auto& name : GroupType::all_names()) {
    const GroupType& gt = GroupType::get(name);
    for (auto& [key, val] : gt.table()) {
      CompletedBraidElt cb = parse_completed(*gt.sys, key);
      if (!cb.all_underlined()) continue;
      keys++;
      GradedChar cf = gt.closed_form_H(cb);
      if (!(cf == val))
        c.check(false, name + " " + key + ": closed [" + cf.str() +
                           "] != table [" + val.str() + "]");
    }
  }
  c.done(std::to_string(keys) + " fully underlined keys");
}

// 7. conjecture conj A2 on every plain table row and pi-translates to n = 2
void criterion7() {
  Criterion c(7);
  const GroupType& a2 = GroupType::get("A2");
  int cases = 0;
  for (auto& [key, val] : a2.table()) {
    CompletedBraidElt cb = parse_completed(*a2.sys, key);
    if (cb.has_underlined()) continue;
    BraidElt b = rho(cb);
    for (int n = 0; n <= 2; n++) {
      cases++;
      auto r = check_conjA2(BraidElt::pi(*a2.sys).pow(n) * b);
      if (!r.pass)
        c.check(false, key + " * pi^" + std::to_string(n) + ": [" +
                           r.lhs.str() + "] != [" + r.rhs.str() + "]");
    }
  }
  c.done(std::to_string(cases) + " plain rows with pi-translates");
}

// 8. central character exponents
void criterion8() {
  Criterion c(8);
  std::string exps;
  try {
    c.check(central_char_pi(char_spec("A2", "rho")) == LaurentPoly::x(6),
            "A2 rho: T_pi != x^3");
    for (auto& [type, nm] : std::vector<std::pair<std::string, std::string>>{
             {"B2", "rho"}, {"G2", "A"}, {"G2", "B"}}) {
      int k = check_conjA_hm1(char_spec(type, nm));
      exps += " " + type + "." + nm + ":" + std::to_string(k);
    }
  } catch (const std::exception& e) {
    c.check(false, e.what());
  }
  for (auto& type : GroupType::all_names()) {
    for (auto& spec : GroupType::get(type).trace_specs()) {
      Matrix m = central_char_w0(spec);
      Matrix sq = m * m;
      if (!sq.is_scalar() || !(sq.e[0][0] == central_char_pi(spec)))
        c.check(false, type + " " + spec.name + ": w0 image squared != pi image");
    }
  }
  c.done("A2 rho pi-exponent 3; scalar exponents" + exps);
}

// 9. the A2 classification separates and is constant on conjugacy orbits
void criterion9() {
  Criterion c(9);
  const auto& sys = CoxeterSystem::preset("A2");
  auto words = all_words(2, 6);
  std::set<BraidElt> seen;
  std::map<std::string, BraidElt> rep_of_descriptor;
  int orbits = 0;
  for (auto& w : words) {
    BraidElt b = BraidElt::of_word(sys, w);
    if (seen.count(b)) continue;
    orbits++;
    auto orbit = a2_conjugacy_orbit(b);
    A2ClassDescriptor d = a2_classify(b);
    for (auto& e : orbit) {
      seen.insert(e);
      if (!(a2_classify(e) == d)) {
        c.check(false, "descriptor not constant on the orbit of " + b.str());
        break;
      }
    }
    auto [it, fresh] = rep_of_descriptor.emplace(d.str(), b);
    if (!fresh && !orbit.count(it->second))
      c.check(false, "descriptor " + d.str() + " does not separate " +
                         b.str() + " from " + it->second.str());
  }
  // phi(pi b) = 1 + phi(b) on random words of length <= 8
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> len(1, 8), g(0, 1);
  for (int i = 0; i < 50; i++) {
    Word w;
    int n = len(rng);
    for (int j = 0; j < n; j++) w.push_back((uint8_t)g(rng));
    BraidElt b = BraidElt::of_word(sys, w);
    if (a2_classify(BraidElt::pi(sys) * b).phi != a2_classify(b).phi + 1)
      c.check(false, "phi(pi b) != 1 + phi(b) at " + b.str());
  }
  c.done(std::to_string(orbits) + " orbits, 50 random phi shifts");
}

// 10. Id / St components against an independent evaluation
void criterion10() {
  Criterion c(10);
  std::mt19937 rng(4096);
  int cases = 0;
  for (auto& name : GroupType::all_names()) {
    const GroupType& gt = GroupType::get(name);
    std::uniform_int_distribution<int> len(0, 5), kind(0, 3);
    for (int i = 0; i < 100; i++) {
      std::vector<CompletedToken> toks;
      int n = len(rng);
      for (int j = 0; j < n; j++) {
        int k = kind(rng);
        toks.push_back({k >= 2, gt.sys->generator(k % 2)});
      }
      CompletedBraidElt cb(*gt.sys, toks);
      cases++;
      HeckeElt h = eval_completed(cb);
      BiPoly indep;
      for (auto& [wid, coef] : h.coeffs()) {
        int l = gt.sys->length({wid});
        indep = indep + substitute_h2t(coef * LaurentPoly::x(2 * l));
      }
      if (!(id_component(cb) == indep))
        c.check(false, name + ": Id mismatch at " + cb.str());
      if (cb.has_underlined() && !st_component(cb).is_zero())
        c.check(false, name + ": St not annihilated at " + cb.str());
      BiPoly eps_val;
      for (auto& [wid, coef] : h.coeffs()) {
        long long sgn = gt.sys->length({wid}) % 2 ? -1 : 1;
        eps_val = eps_val + substitute_h2t(coef) * BiPoly(sgn);
      }
      auto d = st_component(cb).specialize_h_minus1().first;
      auto e = eps_val.specialize_h_minus1().first;
      if (!(d == e)) c.check(false, name + ": St shadow mismatch at " + cb.str());
    }
  }
  c.done(std::to_string(cases) + " random completed elements");
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10();
  printf("%s: %d criterion(s) failed\n", failures ? "RESULT" : "RESULT",
         failures);
  return failures ? 1 : 0;
}
