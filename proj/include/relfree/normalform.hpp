#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <span>
#include <unordered_map>
#include <vector>

#include "relfree/freepoly.hpp"

namespace relfree {

// A canonical basis monomial of F_p<x1..xn> modulo the T-ideal generated by
// the triple commutator: a sorted commutative prefix x_{i1}^{m1}...x_{id}^{md}
// (i1 < ... < id, all exponents positive) times a product of commutators
// [x_{j1},x_{j2}]...[x_{j_{2s-1}},x_{j_{2s}}] with j1 < ... < j_{2s}.
struct NormalMonomial {
  std::vector<std::pair<VarIndex, std::uint16_t>> powers;  // ascending var
  std::vector<VarIndex> comm;  // strictly increasing, even length

  bool is_unit() const { return powers.empty() && comm.empty(); }
  int comm_pairs() const { return static_cast<int>(comm.size()) / 2; }
  int total_degree() const;
  int max_variable() const;
  MultiDegree multidegree(int n) const;
  Word prefix_word() const;  // the sorted commutative prefix as a word

  bool operator==(const NormalMonomial& o) const {
    return powers == o.powers && comm == o.comm;
  }
  bool operator!=(const NormalMonomial& o) const { return !(*this == o); }
  // Order: (total degree, comm pairs, dense exponent vector lex, comm lex).
  bool operator<(const NormalMonomial& o) const;
};

struct NormalMonomialHash {
  std::size_t operator()(const NormalMonomial& m) const;
};

// A coset of the triple-commutator T-ideal in canonical coordinates. Equality
// of NormalPoly values is equality of cosets.
class NormalPoly {
 public:
  NormalPoly(PrimeField field, int n_vars) : field_(field), n_vars_(n_vars) {}

  static NormalPoly zero(PrimeField field, int n_vars) {
    return NormalPoly(field, n_vars);
  }

  const PrimeField& field() const { return field_; }
  int n_vars() const { return n_vars_; }
  const std::map<NormalMonomial, std::uint32_t>& terms() const {
    return terms_;
  }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const NormalMonomial& m, std::uint32_t c);
  NormalPoly& operator+=(const NormalPoly& o);
  NormalPoly& operator-=(const NormalPoly& o);
  NormalPoly scaled(std::uint32_t c) const;

  bool operator==(const NormalPoly& o) const {
    return field_ == o.field_ && n_vars_ == o.n_vars_ && terms_ == o.terms_;
  }
  bool operator!=(const NormalPoly& o) const { return !(*this == o); }

 private:
  PrimeField field_;
  int n_vars_;
  std::map<NormalMonomial, std::uint32_t> terms_;
};

struct CommNormalization {
  bool zero = false;
  int sign = 1;  // +1 or -1
  std::vector<VarIndex> sorted;
};

// Normalizes a concatenated sequence of commutator slots: zero when an index
// repeats, otherwise the sign of the permutation sorting the sequence.
// Input length must be even.
CommNormalization commutator_product_normalize(std::span<const VarIndex> seq);

// Minimum number of commutator pairs over the stored terms; SIZE_MAX for the
// zero polynomial.
std::size_t min_comm_length(const NormalPoly& a);

// True iff every stored term carries at least k commutator pairs.
bool in_t3k_span(const NormalPoly& a, int k);

// The obvious preimage of a canonical monomial: prefix word times expanded
// commutator product.
FreePoly lift(const NormalMonomial& m, PrimeField field, int n_vars);
FreePoly lift(const NormalPoly& a);

// Rewrites free polynomials to canonical coordinates and carries the word
// cache that makes repeated straightening cheap. One instance per thread;
// the cache is not synchronized.
class Straightener {
 public:
  explicit Straightener(PrimeField field) : field_(field) {}

  const PrimeField& field() const { return field_; }

  NormalPoly straighten(const FreePoly& f);
  NormalPoly straighten_word(const Word& w, int n_vars);

  // Coset product / power; agrees with straightening the lifted product.
  NormalPoly mul(const NormalPoly& a, const NormalPoly& b);
  NormalPoly pow(const NormalPoly& a, int e);

  // Product of two basis monomials as a coset.
  NormalPoly mul_mono(const NormalMonomial& a, const NormalMonomial& b,
                      int n_vars);

  // Decision procedures for the infinite-dimensional Grassmann algebra:
  // f is an identity iff its normal form vanishes; f is central iff its
  // commutator with a fresh variable is an identity.
  bool is_identity_of_G(const FreePoly& f);
  bool is_central_for_G(const FreePoly& f);

  bool is_central(const NormalPoly& a);

  std::size_t cache_size() const { return cache_.size(); }

  using TermList = std::vector<std::pair<NormalMonomial, std::uint32_t>>;
  // Memoized basis-monomial product as a flat term list; the hot path of
  // span accumulation.
  const TermList& mul_mono_cached(const NormalMonomial& a,
                                  const NormalMonomial& b);

 private:
  const TermList& straighten_word_cached(const Word& w);

  struct MonoPairHash {
    std::size_t operator()(
        const std::pair<NormalMonomial, NormalMonomial>& p) const {
      NormalMonomialHash h;
      return h(p.first) * 0x9e3779b97f4a7c15ULL + h(p.second);
    }
  };

  PrimeField field_;
  std::unordered_map<Word, TermList, WordHash> cache_;
  std::unordered_map<std::pair<NormalMonomial, NormalMonomial>, TermList,
                     MonoPairHash>
      mono_cache_;
};

}  // namespace relfree
