#pragma once

#include <cstdint>
#include <map>
#include <optional>

#include "relfree/freepoly.hpp"
#include "relfree/rng.hpp"

namespace relfree {

// An element of the finite-dimensional Grassmann algebra G_s over F_p:
// a map from generator subsets (bitmasks over e1..es) to nonzero residues.
// The empty mask is the unit. s is capped at 62 so masks fit a machine word.
class GrassmannElement {
 public:
  GrassmannElement(PrimeField field, int s);

  static GrassmannElement unit(PrimeField field, int s);
  static GrassmannElement generator(PrimeField field, int s, int i);
  static GrassmannElement basis(PrimeField field, int s, std::uint64_t mask,
                                std::uint32_t c = 1);

  const PrimeField& field() const { return field_; }
  int s() const { return s_; }
  const std::map<std::uint64_t, std::uint32_t>& terms() const {
    return terms_;
  }
  bool is_zero() const { return terms_.empty(); }

  void add_term(std::uint64_t mask, std::uint32_t c);

  GrassmannElement& operator+=(const GrassmannElement& o);
  GrassmannElement& operator-=(const GrassmannElement& o);
  friend GrassmannElement operator+(GrassmannElement a,
                                    const GrassmannElement& b) {
    return a += b;
  }
  friend GrassmannElement operator-(GrassmannElement a,
                                    const GrassmannElement& b) {
    return a -= b;
  }
  GrassmannElement scaled(std::uint32_t c) const;
  GrassmannElement pow(int e) const;

  bool operator==(const GrassmannElement& o) const {
    return field_ == o.field_ && s_ == o.s_ && terms_ == o.terms_;
  }
  bool operator!=(const GrassmannElement& o) const { return !(*this == o); }

 private:
  PrimeField field_;
  int s_;
  std::map<std::uint64_t, std::uint32_t> terms_;
};

GrassmannElement g_mul(const GrassmannElement& a, const GrassmannElement& b);
GrassmannElement g_pow(const GrassmannElement& a, int e);

inline GrassmannElement operator*(const GrassmannElement& a,
                                  const GrassmannElement& b) {
  return g_mul(a, b);
}

// Image of f under a substitution into G_s. Every variable occurring in f
// must be covered and all values must share (p, s).
GrassmannElement evaluate(const FreePoly& f,
                          const std::map<int, GrassmannElement>& values);

// True iff z commutes with every generator e_i (sufficient: they generate).
bool is_central_element(const GrassmannElement& z);

enum class FalsifyMode { Identity, Central };

struct Counterexample {
  std::size_t trial;  // 0-based index of the failing trial
  std::map<int, GrassmannElement> substitution;
};

// Seeded random element with at most `max_terms` support terms.
GrassmannElement random_element(PrimeField field, int s, SplitMix64& rng,
                                int max_terms = 8);

// Probabilistic refutation: draws seeded substitutions and returns the first
// one where f fails to vanish (Identity) or fails to land in the centre
// (Central). Absence of a counterexample proves nothing.
std::optional<Counterexample> falsify(const FreePoly& f, FalsifyMode mode,
                                      int s, std::size_t trials,
                                      std::uint64_t seed);

}  // namespace relfree
