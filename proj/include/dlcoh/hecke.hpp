#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dlcoh/braid.hpp"
#include "dlcoh/coxeter.hpp"
#include "dlcoh/rings.hpp"

// The Iwahori-Hecke algebra H_x(W) in the T_w basis, the elements T_wbar
// attached to closed cells, Kazhdan-Lusztig polynomials and the D_w basis,
// the T_wbar * T_sbar multiplication case analysis, and the rank-2
// irreducible character data with F-twist.

namespace dlcoh {

struct hecke_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class HeckeElt {
 public:
  HeckeElt() = default;
  explicit HeckeElt(const CoxeterSystem& sys) : sys_(&sys) {}

  static HeckeElt unit(const CoxeterSystem& sys);
  static HeckeElt t_basis(const CoxeterSystem& sys, WeylElt w,
                          LaurentPoly coeff = LaurentPoly(1));

  const CoxeterSystem& system() const { return *sys_; }
  const std::map<int, LaurentPoly>& coeffs() const { return c_; }
  LaurentPoly coeff(WeylElt w) const;
  bool is_zero() const { return c_.empty(); }

  HeckeElt operator+(const HeckeElt& o) const;
  HeckeElt operator-(const HeckeElt& o) const;
  HeckeElt operator*(const HeckeElt& o) const;
  HeckeElt scaled(const LaurentPoly& k) const;
  bool operator==(const HeckeElt& o) const { return c_ == o.c_; }
  bool operator!=(const HeckeElt& o) const { return c_ != o.c_; }

  // right multiplication by T_s: T_w T_s = T_{ws} or (x-1)T_w + x T_{ws}
  HeckeElt times_Ts(int s) const;

  // image under x^(1/2) -> 1: the group algebra ZW, as w -> integer
  std::map<int, AlgInt> specialize_one() const;

  std::string str() const;

 private:
  const CoxeterSystem* sys_ = nullptr;
  std::map<int, LaurentPoly> c_;

  void set(int id, const LaurentPoly& v);
};

// T_w for the positive lift of a reduced word (= product of T_s over letters)
HeckeElt t_of_word(const CoxeterSystem& sys, const Word& w);
HeckeElt t_of_braid(const BraidElt& b);
// T_wbar = sum over the Bruhat interval of w
HeckeElt t_bar(const CoxeterSystem& sys, WeylElt w);
// the monoid morphism from the completed monoid
HeckeElt eval_completed(const CompletedBraidElt& c);
// T_s^{-1} = x^{-1} T_s + (x^{-1}-1) T_1, extended anti-multiplicatively
HeckeElt invert_Ts(const CoxeterSystem& sys, int s);
HeckeElt t_inverse_of_word(const CoxeterSystem& sys, const Word& w);

// --- Kazhdan-Lusztig ---------------------------------------------------------

class KLTable {
 public:
  explicit KLTable(const CoxeterSystem& sys);

  const CoxeterSystem& system() const { return *sys_; }
  const ZPoly& P(WeylElt y, WeylElt w) const;
  long long mu(WeylElt y, WeylElt w) const;
  bool rationally_smooth(WeylElt w) const;  // P_{1,w} == 1
  // D_w = sum_{y<=w} P_{y,w} T_y
  HeckeElt D(WeylElt w) const;
  std::vector<WeylElt> non_smooth_elements() const;

 private:
  const CoxeterSystem* sys_ = nullptr;
  std::vector<ZPoly> table_;  // index y * n + w
  ZPoly& at(int y, int w) { return table_[(size_t)y * sys_->size() + w]; }
  const ZPoly& at(int y, int w) const {
    return table_[(size_t)y * sys_->size() + w];
  }
  void compute();
};

const KLTable& kl_table(const CoxeterSystem& sys);

// Case analysis for T_wbar * T_sbar when the closed cell of w is rationally
// smooth:
//   (i)   ws < w:              T_wbar T_sbar = (x+1) T_wbar
//   (ii)  s not<= w:           T_wbar T_sbar = T_{ws}bar
//   (iii) s<=w, ws>w, y found: T_wbar T_sbar = T_{ws}bar + x T_ybar
//   (iv)  s<=w, ws>w, no y:    the cell of ws is not rationally smooth
struct LemmaTCase {
  int case_id = 0;
  std::optional<WeylElt> y;  // the unique maximal element for case (iii)
  HeckeElt lhs, rhs;         // empty for case (iv)
  std::string identity;
};

LemmaTCase lemma_T_case(const CoxeterSystem& sys, WeylElt w, int s);

// --- rank-2 character data ------------------------------------------------------

struct CharSpec {
  std::string name;
  int degree = 1;
  const CoxeterSystem* sys = nullptr;
  std::vector<Matrix> gens;  // image of T_s per generator
  Matrix F;                  // image of the isogeny
  bool twisted = false;

  void validate() const;  // quadratic + braid relations, F intertwines
};

// shipped matrices for the rank-2 types; split == !twisted F
std::vector<CharSpec> char_specs(const std::string& type);  // A2,2A2,B2,2B2,G2,2G2
const CharSpec& char_spec(const std::string& type, const std::string& name);

Matrix rep_of_word(const CharSpec& spec, const Word& w);
Matrix rep_of_hecke(const CharSpec& spec, const HeckeElt& h, bool with_F);
LaurentPoly char_trace(const CharSpec& spec, const HeckeElt& h, bool with_F);

// image of T_pi (pi = w0^2): must be scalar; returns the scalar
LaurentPoly central_char_pi(const CharSpec& spec);
Matrix central_char_w0(const CharSpec& spec);

}  // namespace dlcoh
