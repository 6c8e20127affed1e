#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "relfree/fp.hpp"
#include "relfree/word.hpp"

namespace relfree {

// An element of the free unitary associative algebra F_p<x1..xn>: a finitely
// supported map from words to nonzero residues. Immutable in spirit; the
// mutating helpers are only used while a value is being assembled.
class FreePoly {
 public:
  FreePoly(PrimeField field, int n_vars);

  static FreePoly constant(PrimeField field, int n_vars, std::uint32_t c);
  static FreePoly unit(PrimeField field, int n_vars) {
    return constant(field, n_vars, 1);
  }
  static FreePoly variable(PrimeField field, int n_vars, int index);
  static FreePoly monomial(PrimeField field, int n_vars, Word w,
                           std::uint32_t c = 1);

  const PrimeField& field() const { return field_; }
  int n_vars() const { return n_vars_; }
  const std::map<Word, std::uint32_t>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int max_variable() const;
  int total_degree() const;  // max over words; 0 for the zero polynomial

  void add_term(const Word& w, std::uint32_t c);

  FreePoly operator-() const;
  FreePoly& operator+=(const FreePoly& o);
  FreePoly& operator-=(const FreePoly& o);
  friend FreePoly operator+(FreePoly a, const FreePoly& b) { return a += b; }
  friend FreePoly operator-(FreePoly a, const FreePoly& b) { return a -= b; }
  friend FreePoly operator*(const FreePoly& a, const FreePoly& b);

  FreePoly scaled(std::uint32_t c) const;
  FreePoly pow(int e) const;

  bool operator==(const FreePoly& o) const {
    return field_ == o.field_ && n_vars_ == o.n_vars_ && terms_ == o.terms_;
  }
  bool operator!=(const FreePoly& o) const { return !(*this == o); }

 private:
  void check_compatible(const FreePoly& o) const;

  PrimeField field_;
  int n_vars_;
  std::map<Word, std::uint32_t> terms_;
};

FreePoly commutator(const FreePoly& f, const FreePoly& g);
// Left-normed: [f1,f2,...,fk] = [[f1,f2],...,fk]. Empty input is an error.
FreePoly long_commutator(std::span<const FreePoly> fs);

// Image of f under the unitary-algebra endomorphism extending `images`.
// Every variable occurring in f must be assigned; all images must share a
// field and ambient variable count, which becomes the result's ambient.
FreePoly substitute(const FreePoly& f,
                    const std::map<int, FreePoly>& images);

// Multihomogeneous decomposition; no zero components are stored and the
// components sum back to f.
std::map<MultiDegree, FreePoly> components(const FreePoly& f);

// One multihomogeneous piece of a polarization, together with its degree in
// each extended variable ("slot").
struct PolarizedPart {
  FreePoly part;           // over the extended ambient
  MultiDegree slot_degree; // indexed by slot
};

struct Polarization {
  std::vector<PolarizedPart> parts;
  // slot -> original variable (1-based), ascending by (variable, slot copy)
  std::vector<int> slot_owner;
};

// Replaces each variable xi by y_{i,1}+...+y_{i,k_i} (k_i from `part_counts`,
// default 1) and splits the result into multihomogeneous components in the
// extended variables. Summing the parts reproduces the split substitution
// exactly, term for term.
Polarization polarize(const FreePoly& f, const std::map<int, int>& part_counts);

// q-polynomial family: the product of k blocks x^{p^l-1} [x,y] y^{p^l-1} in
// the variables x1..x_{2k}. l = 0 degenerates to a plain commutator product.
FreePoly q_poly(PrimeField field, int k, int l);

}  // namespace relfree
