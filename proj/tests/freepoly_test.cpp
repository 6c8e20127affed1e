#include <doctest.h>

#include "relfree/freepoly.hpp"
#include "relfree/harness.hpp"
#include "relfree/printer.hpp"
#include "relfree/rng.hpp"

using namespace relfree;

namespace {
const PrimeField F3{3};

FreePoly x(int i, int n = 2) { return FreePoly::variable(F3, n, i); }
}  // namespace

TEST_CASE("addition drops cancelled terms") {
  FreePoly f = x(1) + x(1).scaled(2);
  CHECK(f.is_zero());

  FreePoly g = x(1) + x(2);
  CHECK(g.terms().size() == 2);
  for (const auto& [w, c] : g.terms()) CHECK(c == 1);

  FreePoly comm_exp = x(1) * x(2) - commutator(x(1), x(2));
  FreePoly h = comm_exp + (-comm_exp);
  CHECK(h.is_zero());
}

TEST_CASE("multiplication concatenates words") {
  FreePoly f = x(1) * x(2);
  REQUIRE(f.terms().size() == 1);
  CHECK(f.terms().begin()->first == Word{{1, 2}});

  CHECK(FreePoly::unit(F3, 2) * f == f);
  CHECK(f * FreePoly::unit(F3, 2) == f);

  FreePoly s = x(1) + x(2);
  FreePoly sq = s * s;
  CHECK(sq.terms().size() == 4);
  CHECK(to_string(sq) == "x1^2 + x1*x2 + x2*x1 + x2^2");
}

TEST_CASE("mismatched configurations are rejected") {
  PrimeField f5(5);
  CHECK_THROWS_AS(x(1) + FreePoly::variable(f5, 2, 1), ConfigError);
  CHECK_THROWS_AS(x(1) + FreePoly::variable(F3, 3, 1), ConfigError);
}

TEST_CASE("commutators") {
  CHECK(commutator(x(1), x(1)).is_zero());
  CHECK(to_string(commutator(x(1), x(2))) == "x1*x2 + 2*x2*x1");

  std::vector<FreePoly> xs{x(1, 3), x(2, 3), x(3, 3)};
  FreePoly left_normed = long_commutator(xs);
  CHECK(left_normed ==
        commutator(commutator(x(1, 3), x(2, 3)), x(3, 3)));
  CHECK_THROWS_AS(long_commutator(std::span<const FreePoly>{}),
                  ArgumentError);
}

TEST_CASE("substitution basics") {
  std::map<int, FreePoly> images;
  images.emplace(1, x(1));
  images.emplace(2, FreePoly::unit(F3, 2));
  CHECK(substitute(commutator(x(1), x(2)), images).is_zero());

  std::map<int, FreePoly> split;
  split.emplace(1, x(1) + x(2));
  FreePoly sq = x(1) * x(1);
  CHECK(substitute(sq, split) == (x(1) + x(2)) * (x(1) + x(2)));

  std::map<int, FreePoly> missing;
  missing.emplace(1, x(1));
  CHECK_THROWS_AS(substitute(commutator(x(1), x(2)), missing),
                  ArgumentError);

  // zero and scalar images
  std::map<int, FreePoly> zero_img;
  zero_img.emplace(1, x(1));
  zero_img.emplace(2, FreePoly(F3, 2));
  CHECK(substitute(x(1) + x(1) * x(2), zero_img) == x(1));
  std::map<int, FreePoly> two;
  two.emplace(1, FreePoly::constant(F3, 2, 2));
  CHECK(substitute(x(1) * x(1), two) == FreePoly::constant(F3, 2, 1));
}

TEST_CASE("substituting 1+x into q extracts the lower q layer") {
  FreePoly q11 = q_poly(F3, 1, 1);
  std::map<int, FreePoly> images;
  for (int v = 1; v <= 2; ++v)
    images.emplace(v, FreePoly::unit(F3, 2) + x(v));
  auto comps = components(substitute(q11, images));
  MultiDegree d{{1, 1}};
  REQUIRE(comps.count(d) == 1);
  CHECK(comps.at(d) == commutator(x(1), x(2)));
}

TEST_CASE("components partition the polynomial") {
  FreePoly f = x(1) + x(1) * x(2);
  auto comps = components(f);
  REQUIRE(comps.size() == 2);
  CHECK(comps.at(MultiDegree{{1, 0}}) == x(1));
  CHECK(comps.at(MultiDegree{{1, 1}}) == x(1) * x(2));
  CHECK(components(FreePoly(F3, 2)).empty());

  SplitMix64 rng(11);
  for (int t = 0; t < 50; ++t) {
    FreePoly g = random_free_poly(F3, 3, 5, 6, rng);
    FreePoly sum(F3, 3);
    for (const auto& [d, part] : components(g)) {
      sum += part;
      for (const auto& [w, c] : part.terms())
        CHECK(w.multidegree(3) == d);
    }
    CHECK(sum == g);
  }
}

TEST_CASE("polarization splits and recombines") {
  FreePoly sq = x(1, 1) * x(1, 1);
  Polarization pol = polarize(sq, {{1, 2}});
  REQUIRE(pol.parts.size() == 3);

  FreePoly y1 = FreePoly::variable(F3, 2, 1);
  FreePoly y2 = FreePoly::variable(F3, 2, 2);
  bool saw_mixed = false;
  for (const auto& part : pol.parts) {
    if (part.slot_degree == MultiDegree{{1, 1}}) {
      saw_mixed = true;
      CHECK(part.part == y1 * y2 + y2 * y1);
    }
  }
  CHECK(saw_mixed);

  // cube over p=3: the (2,1) slot keeps its three unit-coefficient words
  FreePoly cube = x(1, 1).pow(3);
  Polarization pol3 = polarize(cube, {{1, 2}});
  bool saw21 = false;
  for (const auto& part : pol3.parts) {
    if (part.slot_degree == MultiDegree{{2, 1}}) {
      saw21 = true;
      FreePoly expected =
          y1 * y1 * y2 + y1 * y2 * y1 + y2 * y1 * y1;
      CHECK(part.part == expected);
    }
  }
  CHECK(saw21);

  // already multilinear: a single part
  Polarization pol1 = polarize(commutator(x(1), x(2)), {{1, 1}, {2, 1}});
  REQUIRE(pol1.parts.size() == 1);
  CHECK(pol1.parts[0].part == commutator(x(1), x(2)));

  CHECK_THROWS_AS(polarize(x(1), {{1, 0}}), ArgumentError);
}

TEST_CASE("polarize round trip: parts sum to the split substitution") {
  SplitMix64 rng(7);
  for (int t = 0; t < 30; ++t) {
    FreePoly f = random_free_poly(F3, 2, 4, 4, rng);
    std::map<int, int> counts{{1, 2}, {2, 2}};
    Polarization pol = polarize(f, counts);

    int n_slots = static_cast<int>(pol.slot_owner.size());
    std::map<int, FreePoly> split;
    for (int v = 1; v <= 2; ++v) {
      FreePoly sum(F3, n_slots);
      for (int s = 0; s < n_slots; ++s)
        if (pol.slot_owner[static_cast<std::size_t>(s)] == v)
          sum += FreePoly::variable(F3, n_slots, s + 1);
      split.emplace(v, sum);
    }
    FreePoly whole = substitute(f, split);
    FreePoly total(F3, n_slots);
    for (const auto& part : pol.parts) total += part.part;
    CHECK(total == whole);
  }
}

TEST_CASE("q polynomials") {
  CHECK(q_poly(F3, 1, 0) == commutator(x(1), x(2)));
  FreePoly q11 = q_poly(F3, 1, 1);
  CHECK(q11 == x(1) * x(1) * commutator(x(1), x(2)) * x(2) * x(2));
  CHECK(to_string(q_poly(F3, 2, 0)) ==
        to_string(commutator(x(1, 4), x(2, 4)) *
                  commutator(x(3, 4), x(4, 4))));
  CHECK_THROWS_AS(q_poly(F3, 0, 1), ArgumentError);
}

TEST_CASE("ring axioms on randomized polynomials") {
  SplitMix64 rng(3);
  for (int t = 0; t < 40; ++t) {
    FreePoly a = random_free_poly(F3, 3, 3, 4, rng);
    FreePoly b = random_free_poly(F3, 3, 3, 4, rng);
    FreePoly c = random_free_poly(F3, 3, 3, 4, rng);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a + b) * c == a * c + b * c);
    CHECK(a * FreePoly::unit(F3, 3) == a);
    CHECK(FreePoly::unit(F3, 3) * a == a);
  }
}

TEST_CASE("substitution is an algebra homomorphism") {
  SplitMix64 rng(5);
  for (int t = 0; t < 30; ++t) {
    FreePoly a = random_free_poly(F3, 2, 3, 3, rng);
    FreePoly b = random_free_poly(F3, 2, 3, 3, rng);
    std::map<int, FreePoly> images;
    images.emplace(1, random_free_poly(F3, 2, 2, 2, rng));
    images.emplace(2, random_free_poly(F3, 2, 2, 2, rng));
    CHECK(substitute(a * b, images) ==
          substitute(a, images) * substitute(b, images));
    CHECK(substitute(a + b, images) ==
          substitute(a, images) + substitute(b, images));
  }
}
