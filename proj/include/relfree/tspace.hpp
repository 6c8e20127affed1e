#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "relfree/echelon.hpp"
#include "relfree/normalform.hpp"

namespace relfree {

enum class Closure { TSpace, TIdeal };

// A subspace of F_p<x1..xn> modulo the triple-commutator T-ideal, presented
// by generators with their closure kind. All computations happen in the
// quotient; the ambient n constrains substitution values and multipliers,
// while generators themselves may use more variables.
struct GeneratorSpec {
  PrimeField field;
  int n_vars;
  std::vector<std::pair<FreePoly, Closure>> generators;
  std::string label;  // used in diagnostics and cache keys
};

// Enumeration caps. Exceeding one raises ResourceError; nothing is ever
// truncated silently.
struct Budget {
  int max_total_degree = 18;
  std::size_t max_frame = 5000;
  std::size_t max_instances = 2'000'000;
};

// All canonical basis monomials of the given multidegree, in canonical
// order. Their count is the dimension of the multidegree component of the
// quotient algebra.
std::vector<NormalMonomial> frame(const MultiDegree& d, int n_vars);

// The reduced row-echelon basis of one multidegree component of the
// subspace presented by a GeneratorSpec, in frame coordinates.
class ComponentBasis {
 public:
  ComponentBasis(MultiDegree d, std::vector<NormalMonomial> fr, Echelon rows);

  const MultiDegree& multidegree() const { return d_; }
  const std::vector<NormalMonomial>& frame() const { return frame_; }
  const Echelon& rows() const { return rows_; }
  std::size_t rank() const { return rows_.rank(); }

  // Frame coordinates of a polynomial whose terms all have this
  // multidegree.
  std::vector<std::uint32_t> coordinates(const NormalPoly& a) const;
  bool contains(const NormalPoly& a) const;

  bool operator==(const ComponentBasis& o) const {
    return d_ == o.d_ && frame_ == o.frame_ && rows_ == o.rows_;
  }
  bool operator!=(const ComponentBasis& o) const { return !(*this == o); }

 private:
  MultiDegree d_;
  std::vector<NormalMonomial> frame_;
  Echelon rows_;
};

// Span accumulation. `jobs` <= 0 uses the OpenMP default thread count.
ComponentBasis component_basis(const GeneratorSpec& spec, const MultiDegree& d,
                               const Budget& budget = {}, int jobs = 0);

// Single-threaded reference path; same contract, kept simple and used by
// tests and the benchmark as the baseline.
ComponentBasis component_basis_serial(const GeneratorSpec& spec,
                                      const MultiDegree& d,
                                      const Budget& budget = {});

bool member(const FreePoly& f, const GeneratorSpec& spec,
            const Budget& budget = {}, int jobs = 0);
std::size_t dim(const GeneratorSpec& spec, const MultiDegree& d,
                const Budget& budget = {}, int jobs = 0);
bool subspace_equal(const GeneratorSpec& a, const GeneratorSpec& b,
                    const MultiDegree& d, const Budget& budget = {},
                    int jobs = 0);

// Splits a coset by the multidegree of its terms.
std::map<MultiDegree, NormalPoly> split_components(const NormalPoly& a);

// Remaps every variable index by +offset into a wider ambient.
FreePoly shift_vars(const FreePoly& f, int offset, int new_n);

// Named generator lists.
//
//   spec_Q(k,l)    T-space of the q-polynomial q_k^(l).
//   spec_U(j)      T-space of x1^p, x1^p q_1, ..., x1^p q_j.
//   spec_T3k(k)    T-ideal of the triple commutator and the product of k
//                  commutators.
//   spec_V(l,k)    U(k-1) + q_k^(1..l) + T3k(k+1), ambient 2k.
//   spec_C(n)      central polynomials of the Grassmann algebra in n
//                  variables; for even n the q_k^(l) family is truncated at
//                  l <= lmax (membership verdicts are monotone in lmax).
//   spec_R(k)      spec_C(2k) generators + T3k(k+1) generators.
GeneratorSpec spec_Q(PrimeField field, int k, int l, int ambient = 0);
GeneratorSpec spec_U(PrimeField field, int j, int ambient = 0);
GeneratorSpec spec_T3k(PrimeField field, int k, int ambient = 0);
GeneratorSpec spec_V(PrimeField field, int l, int k, int ambient = 0);
GeneratorSpec spec_C(PrimeField field, int n, int lmax = 2, int ambient = 0);
GeneratorSpec spec_R(PrimeField field, int k, int lmax = 2, int ambient = 0);

}  // namespace relfree
