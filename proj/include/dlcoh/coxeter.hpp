#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

// Finite Coxeter systems given by a Coxeter matrix. Elements are indices
// into a full enumeration; each element stores its ShortLex-minimal reduced
// word. Group arithmetic goes through Tits' rewriting (braid moves plus
// deletion of squares), which solves the word problem without any root
// system machinery.

namespace dlcoh {

struct coxeter_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Word = std::vector<uint8_t>;  // letters are generator indices
using GenSet = uint32_t;            // bitmask of generators

struct WeylElt {
  int id = 0;
  bool operator==(const WeylElt& o) const { return id == o.id; }
  bool operator!=(const WeylElt& o) const { return id != o.id; }
  bool operator<(const WeylElt& o) const { return id < o.id; }
};

class CoxeterSystem {
 public:
  // matrix[i][j] = order of s_i s_j (1 on the diagonal, >= 2 off it)
  CoxeterSystem(std::vector<std::vector<int>> matrix, std::string names,
                size_t cap = 20000);

  static CoxeterSystem from_config(const std::string& config, size_t cap = 20000);
  // presets: A1, A2, B2, G2, A3, A1xA1
  static const CoxeterSystem& preset(const std::string& name);

  int rank() const { return rank_; }
  size_t size() const { return elems_.size(); }
  const std::string& names() const { return names_; }
  int order(int i, int j) const { return matrix_[i][j]; }

  WeylElt identity() const { return {0}; }
  WeylElt generator(int i) const;
  WeylElt w0() const { return w0_; }

  int length(WeylElt w) const { return (int)elems_[w.id].word.size(); }
  const Word& word(WeylElt w) const { return elems_[w.id].word; }
  std::string word_str(WeylElt w) const;

  int gen_index(char name) const;
  WeylElt from_word(const Word& w) const;
  WeylElt from_string(const std::string& s) const;  // e.g. "sts"

  WeylElt mult(WeylElt u, WeylElt v) const;
  WeylElt rmult(WeylElt w, int s) const { return {rmult_[w.id * rank_ + s]}; }
  WeylElt lmult(int s, WeylElt w) const { return {lmult_[w.id * rank_ + s]}; }
  WeylElt inverse(WeylElt w) const { return {elems_[w.id].inverse}; }

  GenSet left_descents(WeylElt w) const { return elems_[w.id].ldesc; }
  GenSet right_descents(WeylElt w) const { return elems_[w.id].rdesc; }
  GenSet support(WeylElt w) const { return elems_[w.id].support; }

  bool bruhat_leq(WeylElt v, WeylElt w) const;
  // all v with v <= w, by id (precomputed at construction)
  const std::vector<int>& bruhat_interval(WeylElt w) const {
    return intervals_[w.id];
  }

  // longest element of the standard parabolic W_I
  WeylElt longest_element(GenSet I) const;
  bool is_I_reduced(WeylElt w, GenSet I) const;   // no left descent in I
  bool is_reduced_I(WeylElt w, GenSet I) const;   // no right descent in I

  // canonical reduced word of the Tits-equivalence class of an arbitrary word
  Word reduce(Word w) const;

  std::string gen_set_str(GenSet I) const;

 private:
  struct Elem {
    Word word;
    int inverse = 0;
    GenSet ldesc = 0, rdesc = 0, support = 0;
  };

  int rank_;
  std::vector<std::vector<int>> matrix_;
  std::string names_;
  std::vector<Elem> elems_;
  std::vector<int> rmult_, lmult_;
  std::map<Word, int> index_;
  std::vector<int> gen_ids_;
  WeylElt w0_{0};
  std::vector<std::vector<int>> intervals_;

  void enumerate(size_t cap);
};

// A diagram automorphism: a permutation of the generators preserving the
// Coxeter matrix. Applies to elements by letter substitution.
class Automorphism {
 public:
  Automorphism() = default;  // identity on a yet-unknown system
  Automorphism(const CoxeterSystem& sys, std::vector<int> perm);
  static Automorphism identity(const CoxeterSystem& sys);

  const CoxeterSystem& system() const { return *sys_; }
  int map_gen(int s) const { return perm_.empty() ? s : perm_[s]; }
  WeylElt operator()(WeylElt w) const;
  bool is_identity() const;
  // orbits of the permutation on generators, each as a GenSet
  std::vector<GenSet> orbits() const;

 private:
  const CoxeterSystem* sys_ = nullptr;
  std::vector<int> perm_;
};

}  // namespace dlcoh
