#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "dlcoh/coxeter.hpp"

// The positive Artin-Tits monoid B+ with Garside normal forms, the completed
// monoid (underlined generators indexing closures of Bruhat cells), the
// morphism into ZB+, conjugation arrows, and the type-A2 conjugacy
// classification with the class function phi.

namespace dlcoh {

struct braid_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class BraidElt {
 public:
  BraidElt() = default;
  explicit BraidElt(const CoxeterSystem& sys) : sys_(&sys) {}
  // from W-factors (normalized on construction)
  BraidElt(const CoxeterSystem& sys, std::vector<WeylElt> factors);

  static BraidElt of_word(const CoxeterSystem& sys, const Word& letters);
  static BraidElt of_atom(const CoxeterSystem& sys, WeylElt w);
  static BraidElt w0(const CoxeterSystem& sys);
  static BraidElt pi(const CoxeterSystem& sys);  // w0^2

  const CoxeterSystem& system() const { return *sys_; }
  bool is_unit() const { return factors_.empty(); }
  int length() const;
  const std::vector<WeylElt>& factors() const { return factors_; }
  Word letters() const;  // concatenated canonical words of the factors
  std::string str() const;

  BraidElt operator*(const BraidElt& o) const;
  BraidElt pow(int n) const;
  bool operator==(const BraidElt& o) const;
  bool operator!=(const BraidElt& o) const { return !(*this == o); }
  bool operator<(const BraidElt& o) const;  // arbitrary total order for maps

  WeylElt alpha() const;  // maximal left divisor in W (identity for the unit)
  BraidElt omega() const;

  // does the lift of w in W left-divide this braid?
  bool divided_by(WeylElt w) const;
  // exact left quotient by the lift of w (requires divided_by(w))
  BraidElt lquo(WeylElt w) const;

  BraidElt reversed() const;  // the anti-automorphism fixing S

 private:
  const CoxeterSystem* sys_ = nullptr;
  std::vector<WeylElt> factors_;

  void normalize();
};

bool left_divides(const BraidElt& a, const BraidElt& b);
// exact left quotient a^{-1} b; requires left_divides(a, b)
BraidElt left_quotient(const BraidElt& a, const BraidElt& b);

// maximal left divisor of b lying in the parabolic submonoid B+_I,
// computed by greedy extraction of I-letters
BraidElt alpha_I(const BraidElt& b, GenSet I);
BraidElt omega_I(const BraidElt& b, GenSet I);

BraidElt f_action(const Automorphism& F, const BraidElt& b);

// the generators w0^I of the fixed submonoid C_{B+}(F), one per F-orbit I on S
std::vector<BraidElt> fixed_submonoid_generators(const CoxeterSystem& sys,
                                                 const Automorphism& F);

// elementary conjugation arrow of the category D+: y^{-1} w F(y),
// defined when the atom y left-divides w
BraidElt conj_elementary(const BraidElt& w, WeylElt y, const Automorphism& F);

// BFS closure of elementary conjugations up to the given depth
std::set<BraidElt> explore_D_plus(const BraidElt& w, const Automorphism& F,
                                  int depth);

// --- completed monoid -------------------------------------------------------

struct CompletedToken {
  bool underlined = false;
  WeylElt w;  // never the identity in stored form
  bool operator==(const CompletedToken& o) const {
    return underlined == o.underlined && w == o.w;
  }
  bool operator<(const CompletedToken& o) const {
    return underlined != o.underlined ? underlined < o.underlined : w < o.w;
  }
};

class CompletedBraidElt {
 public:
  CompletedBraidElt() = default;
  explicit CompletedBraidElt(const CoxeterSystem& sys) : sys_(&sys) {}
  CompletedBraidElt(const CoxeterSystem& sys, std::vector<CompletedToken> toks);

  const CoxeterSystem& system() const { return *sys_; }
  const std::vector<CompletedToken>& tokens() const { return toks_; }
  bool is_unit() const { return toks_.empty(); }
  bool all_underlined() const;
  bool has_underlined() const;
  int length() const;

  CompletedBraidElt operator*(const CompletedBraidElt& o) const;
  // structural equality of token lists (not monoid equality)
  bool same_tokens(const CompletedBraidElt& o) const { return toks_ == o.toks_; }

  std::string str() const;

 private:
  const CoxeterSystem* sys_ = nullptr;
  std::vector<CompletedToken> toks_;
};

// projection rho: underline forgotten, product taken in B+
BraidElt rho(const CompletedBraidElt& c);

CompletedBraidElt f_action(const Automorphism& F, const CompletedBraidElt& c);
CompletedBraidElt completed_of_braid(const BraidElt& b);

// canonical token sequence for table keys: plain runs merged to Garside
// factors, adjacent underlined tokens with disjoint supports merged
std::vector<CompletedToken> canonical_tokens(const CompletedBraidElt& c);
std::string canonical_key(const CompletedBraidElt& c);

// expanded view for rewrite-rule matching: plain factors split into atoms,
// underlined tokens split into single letters when supports are disjoint
std::vector<CompletedToken> expanded_tokens(const CompletedBraidElt& c);
CompletedBraidElt from_tokens(const CoxeterSystem& sys,
                              std::vector<CompletedToken> toks);

// --- formal Z-linear combinations of braids ---------------------------------

class ZBraidElt {
 public:
  ZBraidElt() = default;
  explicit ZBraidElt(const BraidElt& b) { terms_[b] = 1; }

  static ZBraidElt zero() { return {}; }
  const std::map<BraidElt, long long>& terms() const { return terms_; }

  ZBraidElt operator+(const ZBraidElt& o) const;
  ZBraidElt operator*(const ZBraidElt& o) const;
  bool operator==(const ZBraidElt& o) const { return terms_ == o.terms_; }

  std::string str() const;

 private:
  std::map<BraidElt, long long> terms_;
};

// the monoid morphism into ZB+: plain w -> w, underlined w -> sum_{v<=w} v
ZBraidElt zb_image(const CompletedBraidElt& c);
// sound equality test through ZB+ (injectivity of the morphism is an open
// question in general, so "false" means "not provably equal")
bool completed_equal(const CompletedBraidElt& a, const CompletedBraidElt& b);

// --- A2 conjugacy classification ---------------------------------------------

struct A2ClassDescriptor {
  enum Kind { PowerOfS, ST, Staircase, W0Sa, W0Staircase };
  int n = 0;  // power of pi
  Kind kind = PowerOfS;
  std::vector<int> params;  // exponent(s): a, or the staircase sequence
  long long phi = 0;

  bool operator==(const A2ClassDescriptor& o) const {
    return n == o.n && kind == o.kind && params == o.params && phi == o.phi;
  }
  bool operator<(const A2ClassDescriptor& o) const {
    return std::tie(n, kind, params) < std::tie(o.n, o.kind, o.params);
  }
  std::string str() const;
};

// conjugacy orbit under circular permutation and w0-conjugation
std::set<BraidElt> a2_conjugacy_orbit(const BraidElt& b, size_t cap = 2000000);

A2ClassDescriptor a2_classify(const BraidElt& b, int max_len = 20);

// --- textual grammar ----------------------------------------------------------
//
// whitespace-separated tokens; a token is a string of generator letters
// (must be length-additive as a W-product), prefixed by '_' for underlined;
// keywords: 1 (unit), pi (= w0^2), w0, _w0.

CompletedBraidElt parse_completed(const CoxeterSystem& sys, const std::string& s);
BraidElt parse_braid(const CoxeterSystem& sys, const std::string& s);

}  // namespace dlcoh
