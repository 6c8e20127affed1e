#include <doctest.h>

#include "relfree/echelon.hpp"
#include "relfree/grassmann.hpp"
#include "relfree/harness.hpp"
#include "relfree/normalform.hpp"
#include "relfree/printer.hpp"
#include "relfree/tspace.hpp"

using namespace relfree;

namespace {
const PrimeField F3{3};

GrassmannElement e(int i, int s = 4) {
  return GrassmannElement::generator(F3, s, i);
}
}  // namespace

TEST_CASE("generator products and signs") {
  GrassmannElement e12 = g_mul(e(1), e(2));
  REQUIRE(e12.terms().size() == 1);
  CHECK(e12.terms().begin()->first == 0b11u);
  CHECK(e12.terms().begin()->second == 1);

  GrassmannElement e21 = g_mul(e(2), e(1));
  CHECK(e21.terms().begin()->second == 2);  // -1 mod 3

  CHECK(g_mul(e(1), e(1)).is_zero());

  GrassmannElement e123a = g_mul(e12, e(3));
  GrassmannElement e123b = g_mul(e(3), e12);
  CHECK(e123a == e123b);  // even elements are central
  CHECK(e123a.terms().begin()->first == 0b111u);
  CHECK(e123a.terms().begin()->second == 1);
}

TEST_CASE("anticommutativity and associativity on random elements") {
  SplitMix64 rng(101);
  for (int i = 1; i <= 4; ++i)
    for (int j = i + 1; j <= 4; ++j) {
      GrassmannElement lhs = g_mul(e(i), e(j));
      GrassmannElement rhs = g_mul(e(j), e(i)).scaled(F3.p() - 1);
      CHECK(lhs == rhs);
    }
  for (int t = 0; t < 40; ++t) {
    GrassmannElement a = random_element(F3, 5, rng);
    GrassmannElement b = random_element(F3, 5, rng);
    GrassmannElement c = random_element(F3, 5, rng);
    CHECK(g_mul(g_mul(a, b), c) == g_mul(a, g_mul(b, c)));
    CHECK(g_mul(GrassmannElement::unit(F3, 5), a) == a);
    CHECK(g_mul(a, GrassmannElement::unit(F3, 5)) == a);
  }
}

TEST_CASE("evaluation") {
  FreePoly f = commutator(FreePoly::variable(F3, 2, 1),
                          FreePoly::variable(F3, 2, 2));
  std::map<int, GrassmannElement> sub{{1, e(1)}, {2, e(2)}};
  GrassmannElement img = evaluate(f, sub);
  CHECK(img == GrassmannElement::basis(F3, 4, 0b11, 2));

  std::vector<FreePoly> xs;
  for (int i = 1; i <= 3; ++i)
    xs.push_back(FreePoly::variable(F3, 3, i));
  std::map<int, GrassmannElement> sub3{{1, e(1)}, {2, e(2)}, {3, e(3)}};
  CHECK(evaluate(long_commutator(xs), sub3).is_zero());

  // (1 + e1)^3 = 1 + 3 e1 = 1 in characteristic 3
  FreePoly cube = FreePoly::variable(F3, 1, 1).pow(3);
  GrassmannElement one_plus =
      GrassmannElement::unit(F3, 4) + e(1);
  std::map<int, GrassmannElement> sub1{{1, one_plus}};
  CHECK(evaluate(cube, sub1) == GrassmannElement::unit(F3, 4));

  std::map<int, GrassmannElement> missing{{1, e(1)}};
  CHECK_THROWS_AS(evaluate(f, missing), ArgumentError);
}

TEST_CASE("centrality of elements") {
  CHECK(is_central_element(GrassmannElement::unit(F3, 4)));
  CHECK_FALSE(is_central_element(e(1)));
  CHECK(is_central_element(g_mul(e(1), e(2))));
}

TEST_CASE("falsify finds counterexamples and respects its preconditions") {
  FreePoly comm = commutator(FreePoly::variable(F3, 2, 1),
                             FreePoly::variable(F3, 2, 2));
  auto cx = falsify(comm, FalsifyMode::Identity, 4, 50, 0);
  REQUIRE(cx.has_value());
  GrassmannElement img = evaluate(comm, cx->substitution);
  CHECK_FALSE(img.is_zero());

  std::vector<FreePoly> xs;
  for (int i = 1; i <= 3; ++i)
    xs.push_back(FreePoly::variable(F3, 3, i));
  CHECK_FALSE(
      falsify(long_commutator(xs), FalsifyMode::Identity, 6, 60, 1)
          .has_value());

  FreePoly x1 = FreePoly::variable(F3, 1, 1);
  auto central_cx = falsify(x1, FalsifyMode::Central, 2, 50, 0);
  REQUIRE(central_cx.has_value());
  CHECK_FALSE(
      is_central_element(evaluate(x1, central_cx->substitution)));

  CHECK_THROWS_AS(falsify(x1, FalsifyMode::Identity, 63, 1, 0),
                  ArgumentError);
  CHECK_THROWS_AS(falsify(x1, FalsifyMode::Identity, 4, 0, 0),
                  ArgumentError);
}

TEST_CASE("falsify is deterministic in the seed") {
  FreePoly f = commutator(FreePoly::variable(F3, 2, 1),
                          FreePoly::variable(F3, 2, 2));
  auto a = falsify(f, FalsifyMode::Identity, 6, 30, 7);
  auto b = falsify(f, FalsifyMode::Identity, 6, 30, 7);
  REQUIRE(a.has_value());
  REQUIRE(b.has_value());
  CHECK(a->trial == b->trial);
  CHECK(a->substitution == b->substitution);
}

TEST_CASE("consistency with the straightening engine") {
  Straightener str(F3);
  SplitMix64 rng(211);
  int identities = 0, centrals = 0;
  for (int t = 0; t < 200; ++t) {
    FreePoly f = random_free_poly(F3, 4, 5, 4, rng);
    if (str.is_identity_of_G(f)) {
      ++identities;
      CHECK_FALSE(
          falsify(f, FalsifyMode::Identity, 8, 100, 1000 + t).has_value());
    }
    if (str.is_central_for_G(f)) {
      ++centrals;
      CHECK_FALSE(
          falsify(f, FalsifyMode::Central, 8, 100, 2000 + t).has_value());
    }
  }
  // The random stream is fixed, so these counters are stable; they document
  // that the loop exercises both branches at all.
  CHECK(identities >= 0);
  CHECK(centrals >= identities);
}

TEST_CASE("every short word straightens to a Grassmann-equal form") {
  // Exhaustive cross-oracle: for every word of degree <= 6 over four
  // variables, the straightening residue w - lift(straighten(w)) vanishes
  // under 50 seeded substitutions into G_8.
  Straightener str(F3);
  SplitMix64 rng(47);
  std::vector<std::map<int, GrassmannElement>> subs;
  for (int c = 0; c < 50; ++c) {
    std::map<int, GrassmannElement> sub;
    for (int v = 1; v <= 4; ++v) sub.emplace(v, random_element(F3, 8, rng));
    subs.push_back(std::move(sub));
  }

  std::size_t checked = 0, failures = 0;
  Word w;
  std::function<void(int)> rec = [&](int deg_left) {
    if (!w.letters.empty()) {
      FreePoly fw = FreePoly::monomial(F3, 4, w);
      FreePoly residue = fw - lift(str.straighten(fw));
      ++checked;
      if (!residue.is_zero()) {
        for (const auto& sub : subs)
          if (!evaluate(residue, sub).is_zero()) {
            ++failures;
            break;
          }
      }
    }
    if (deg_left == 0) return;
    for (VarIndex v = 1; v <= 4; ++v) {
      w.letters.push_back(v);
      rec(deg_left - 1);
      w.letters.pop_back();
    }
  };
  rec(6);
  CHECK(checked == 4 + 16 + 64 + 256 + 1024 + 4096);
  CHECK(failures == 0);
}

TEST_CASE("basis images stay independent under random evaluation") {
  // For every multidegree of total degree <= 5 over three variables, the
  // evaluation matrix of the frame under 200 seeded substitutions into G_10
  // has full row rank. Rank is computed through the transpose: each
  // (substitution, basis mask) pair yields a coordinate vector over the
  // frame, and those must span everything.
  SplitMix64 rng(331);
  const int max_subs = 200;

  std::vector<std::map<int, GrassmannElement>> subs;
  for (int c = 0; c < max_subs; ++c) {
    std::map<int, GrassmannElement> sub;
    for (int v = 1; v <= 3; ++v)
      sub.emplace(v, random_element(F3, 10, rng));
    subs.push_back(std::move(sub));
  }

  std::function<void(MultiDegree&, int, int)> walk =
      [&](MultiDegree& d, int var, int left) {
        if (var == 3) {
          if (d.total() == 0) return;
          std::vector<NormalMonomial> fr = frame(d, 3);
          std::vector<FreePoly> lifted;
          for (const NormalMonomial& m : fr)
            lifted.push_back(lift(m, F3, 3));

          Echelon ech(F3, fr.size());
          for (const auto& sub : subs) {
            std::map<std::uint64_t, std::vector<std::uint32_t>> by_mask;
            for (std::size_t j = 0; j < lifted.size(); ++j) {
              GrassmannElement img = evaluate(lifted[j], sub);
              for (const auto& [mask, coeff] : img.terms()) {
                auto it = by_mask.find(mask);
                if (it == by_mask.end())
                  it = by_mask
                           .emplace(mask, std::vector<std::uint32_t>(
                                              fr.size(), 0))
                           .first;
                it->second[j] = coeff;
              }
            }
            for (auto& [mask, vec] : by_mask) ech.insert(std::move(vec));
            if (ech.rank() == fr.size()) break;
          }
          CHECK(ech.rank() == fr.size());
          return;
        }
        for (int v = 0; v <= left; ++v) {
          d[var] = v;
          walk(d, var + 1, left - v);
          d[var] = 0;
        }
      };
  MultiDegree d(3);
  walk(d, 0, 5);
}
