#pragma once

#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dlcoh/braid.hpp"
#include "dlcoh/hecke.hpp"
#include "dlcoh/rings.hpp"

// Graded virtual characters H(y) for the rank-2 types: the published tables
// with their periodicity, closed forms for products of underlined letters,
// the rewrite-rule library, identity-suite verification, and the conjecture
// checkers.

namespace dlcoh {

struct cohomology_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// one bivariate polynomial per tracked unipotent-character symbol
struct GradedChar {
  std::map<std::string, BiPoly> v;

  bool is_zero() const;
  GradedChar operator+(const GradedChar& o) const;
  GradedChar operator-(const GradedChar& o) const;
  GradedChar scaled(const BiPoly& k) const;
  bool operator==(const GradedChar& o) const;
  bool operator!=(const GradedChar& o) const { return !(*this == o); }
  BiPoly coeff(const std::string& sym) const;
  std::string str() const;
};

class GroupType {
 public:
  static const GroupType& get(const std::string& name);  // A2 2A2 B2 2B2 G2 2G2
  static const std::vector<std::string>& all_names();

  std::string name;
  const CoxeterSystem* sys = nullptr;
  bool twisted = false;
  Automorphism F;
  std::vector<std::string> symbols;
  BraidElt period;        // pi for A2/2A2, w0 for the others
  BiPoly period_factor;   // h^8 t^3, h^5 t^2, h^7 t^3
  std::map<std::string, std::string> ennola;

  GradedChar apply_E(const GradedChar& g, int n = 1) const;

  const std::map<std::string, GradedChar>& table() const { return table_; }

  // metadata only: Frobenius-eigenvalue strings per cuspidal symbol
  std::map<std::string, std::string> eigenvalue_notes;

  // --- queries -------------------------------------------------------------

  // published-table lookup: strips central period powers from plain runs and
  // searches cyclic (F-)rotations up to the stated depth; throws NotInTable
  GradedChar table_H(const CompletedBraidElt& c, int rotation_depth = 8) const;

  // the trace closed form for products of underlined letters
  GradedChar closed_form_H(const CompletedBraidElt& c) const;

  // full resolution: table, closed form, and the rewrite-rule library
  std::optional<GradedChar> resolve_H(const CompletedBraidElt& c,
                                      int depth = 24) const;

  // the corollary at h = -1: the tracked part of the trace formula, as a
  // Laurent polynomial in t^(1/2) per symbol (x -> t along h = -1)
  std::map<std::string, LaurentPoly> trace_formula_hm1(
      const CompletedBraidElt& c) const;

  const std::vector<CharSpec>& trace_specs() const { return specs_; }

 private:
  std::vector<CharSpec> specs_;  // representations entering the closed form
  std::vector<int> prediv_;      // 0 none, 2 /sqrt2, 3 /sqrt3
  std::map<std::string, std::vector<long long>> rows_;
  long long den_ = 1;
  std::map<std::string, GradedChar> table_;
  // resolve memo, shared across suite workers
  mutable std::map<std::string, GradedChar> memo_;
  mutable std::mutex memo_mu_;

  void load_table(const std::string& path);
  std::optional<GradedChar> resolve_inner(std::vector<CompletedToken> toks,
                                          int depth, bool allow_sigma) const;
  std::optional<GradedChar> try_table(
      const std::vector<CompletedToken>& toks) const;
  std::map<std::string, LaurentPoly> trace_combination(const HeckeElt& h) const;

  friend void init_group_type(GroupType&, const std::string&);
};

// Id- and St-isotypic components (independent of the tracked symbols)
BiPoly id_component(const CompletedBraidElt& c);
BiPoly st_component(const CompletedBraidElt& c);
// rank 1: H*(X(s^n)) has Id-part (h^2 t)^n and St-part h^n
std::pair<BiPoly, BiPoly> rank1_H(int n);

// --- identity suites -----------------------------------------------------------

struct InstanceResult {
  bool pass = false;
  std::string rule;
  std::string detail;
};

struct IdentityInstance {
  std::string rule;
  std::string kind;  // eq, even, smb, id, st, hm1, closed, conja2
  std::string payload;
  int line_no = 0;

  InstanceResult evaluate(const GroupType& gt) const;
};

std::vector<IdentityInstance> load_suite(const std::string& path);

// instantiate a named rewrite rule on a concrete tail y (braid-grammar
// tokens); throws PatternMismatch-style errors for rules foreign to the type
IdentityInstance make_rule_instance(const GroupType& gt,
                                    const std::string& rule_id,
                                    const std::string& y_tokens);
// the rule ids applicable to a type, in suite order
std::vector<std::string> rule_ids(const GroupType& gt);

struct SuiteReport {
  int passed = 0, failed = 0;
  std::vector<InstanceResult> results;
  bool ok() const { return failed == 0; }
};

SuiteReport verify_suite(const GroupType& gt,
                         const std::vector<IdentityInstance>& suite,
                         int threads = 1);

// --- conjecture checks ----------------------------------------------------------

// H(b) = (-h)^{l(b)-phi(b)} Trace(T_b | R_{-ht}) for positive braids in
// split A2; throws if H(b) is not determinable
struct ConjA2Result {
  bool pass;
  A2ClassDescriptor cls;
  BiPoly lhs, rhs;
};
ConjA2Result check_conjA2(const BraidElt& b);

// central character of T_pi is a pure power x^k; checks the multiplication
// identity on all T_w F traces and returns k (= 2N - a - A)
int check_conjA_hm1(const CharSpec& spec);
// trace(T_w^{-1} F) equals the bar involution of trace(T_w F)
bool check_conjB_hm1(const CharSpec& spec, const Word& w);

// conjugacy invariance of H over the plain table keys of split A2
struct FClassReport {
  int orbits_checked = 0;
  int values_compared = 0;
  bool ok = true;
  std::string detail;
};
FClassReport fclass_invariance_suite(const GroupType& a2, int max_len = 6);

// data directory: DLCOH_DATA env var, else the compiled-in default
std::string data_dir();

}  // namespace dlcoh
