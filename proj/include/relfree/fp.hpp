#pragma once

#include <cstdint>

#include "relfree/errors.hpp"

namespace relfree {

// Arithmetic context for the prime field F_p, p an odd prime. Elements are
// canonical residues in [0, p) stored as plain uint32_t; the context is a
// small value type passed around by copy.
class PrimeField {
 public:
  explicit PrimeField(std::uint32_t p) : p_(p) {
    if (p < 3) {
      throw ConfigError("modulus " + std::to_string(p) +
                        " rejected: the coefficient field must have "
                        "characteristic > 2");
    }
    if (p % 2 == 0) {
      throw ConfigError("modulus " + std::to_string(p) +
                        " is even; characteristic > 2 is required");
    }
    for (std::uint32_t q = 3; q * q <= p; q += 2) {
      if (p % q == 0) {
        throw ConfigError("modulus " + std::to_string(p) + " is composite (" +
                          std::to_string(q) + " divides it)");
      }
    }
    p_ = p;
  }

  std::uint32_t p() const { return p_; }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }

  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const {
    return a >= b ? a - b : a + p_ - b;
  }

  std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : p_ - a; }

  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    return static_cast<std::uint32_t>(
        (static_cast<std::uint64_t>(a) * b) % p_);
  }

  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const {
    std::uint32_t r = 1;
    std::uint32_t base = a % p_;
    while (e > 0) {
      if (e & 1) r = mul(r, base);
      base = mul(base, base);
      e >>= 1;
    }
    return r;
  }

  // Inverse via Fermat; a must be nonzero.
  std::uint32_t inv(std::uint32_t a) const {
    if (a % p_ == 0) throw ArgumentError("inverse of zero in F_p");
    return pow(a, p_ - 2);
  }

  // Canonical residue of an arbitrary signed value.
  std::uint32_t reduce(long long v) const {
    long long m = v % static_cast<long long>(p_);
    if (m < 0) m += p_;
    return static_cast<std::uint32_t>(m);
  }

  bool operator==(const PrimeField& o) const { return p_ == o.p_; }
  bool operator!=(const PrimeField& o) const { return p_ != o.p_; }

 private:
  std::uint32_t p_;
};

}  // namespace relfree
