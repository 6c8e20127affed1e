#include <doctest.h>

#include <functional>

#include "relfree/harness.hpp"
#include "relfree/printer.hpp"
#include "relfree/tspace.hpp"

using namespace relfree;

namespace {
const PrimeField F3{3};

FreePoly x(int i, int n) { return FreePoly::variable(F3, i <= n ? n : i, i); }

// ---------------------------------------------------------------------------
// Independent span oracle. Follows the definition head-on: polarize the
// generator for every split shape, substitute plain words (including the
// unit) into the slots, wrap T-ideal instances with word multipliers, and
// straighten. Exponential, test-only, and entirely separate from the
// production path, which substitutes interned basis monomials with marker
// bookkeeping.

void all_words_of(const MultiDegree& m, std::function<void(const Word&)> cb) {
  Word w;
  std::function<void(MultiDegree&)> rec = [&](MultiDegree& left) {
    if (left.total() == 0) {
      cb(w);
      return;
    }
    for (int v = 0; v < left.size(); ++v) {
      if (left[v] == 0) continue;
      left[v] -= 1;
      w.letters.push_back(static_cast<VarIndex>(v + 1));
      rec(left);
      w.letters.pop_back();
      left[v] += 1;
    }
  };
  MultiDegree work = m;
  rec(work);
}

void all_multidegrees_below(const MultiDegree& box,
                            std::function<void(const MultiDegree&)> cb) {
  MultiDegree m(box.size());
  std::function<void(int)> rec = [&](int i) {
    if (i == box.size()) {
      cb(m);
      return;
    }
    for (int v = 0; v <= box[i]; ++v) {
      m[i] = v;
      rec(i + 1);
    }
    m[i] = 0;
  };
  rec(0);
}

Echelon brute_span(const GeneratorSpec& spec, const MultiDegree& d) {
  std::vector<NormalMonomial> fr = frame(d, spec.n_vars);
  Echelon ech(spec.field, fr.size());
  Straightener str(spec.field);

  auto insert_normal = [&](const NormalPoly& nf) {
    if (nf.is_zero()) return;
    std::vector<std::uint32_t> row(fr.size(), 0);
    for (const auto& [mono, c] : nf.terms()) {
      auto it = std::lower_bound(fr.begin(), fr.end(), mono);
      REQUIRE(it != fr.end());
      REQUIRE(*it == mono);
      row[static_cast<std::size_t>(it - fr.begin())] = c;
    }
    ech.insert(std::move(row));
  };

  for (const auto& [gen0, closure] : spec.generators) {
    FreePoly gen(spec.field, std::max(gen0.n_vars(), gen0.max_variable()));
    for (const auto& [w, c] : gen0.terms()) gen.add_term(w, c);

    // max degree per variable
    std::vector<int> deg(static_cast<std::size_t>(gen.n_vars()) + 1, 0);
    for (const auto& [w, c] : gen.terms()) {
      MultiDegree md = w.multidegree(gen.n_vars());
      for (int v = 1; v <= gen.n_vars(); ++v)
        deg[static_cast<std::size_t>(v)] =
            std::max(deg[static_cast<std::size_t>(v)], md[v - 1]);
    }

    // every split shape
    std::map<int, int> counts;
    std::function<void(int)> split = [&](int v) {
      if (v > gen.n_vars()) {
        Polarization pol = polarize(gen, counts);
        for (const PolarizedPart& part : pol.parts) {
          int slots = static_cast<int>(pol.slot_owner.size());
          // assign words to slots
          std::map<int, FreePoly> sigma;
          MultiDegree used(spec.n_vars);
          std::function<void(int)> assign = [&](int slot) {
            if (slot > slots) {
              bool exact = used == d;
              if (closure == Closure::TSpace && !exact) return;
              FreePoly inst = substitute(part.part, sigma);
              NormalPoly nf = str.straighten(inst);
              if (closure == Closure::TSpace) {
                insert_normal(nf);
                return;
              }
              MultiDegree rem = d - used;
              all_multidegrees_below(rem, [&](const MultiDegree& du) {
                MultiDegree dv = rem - du;
                all_words_of(du, [&](const Word& uw) {
                  FreePoly u =
                      FreePoly::monomial(spec.field, spec.n_vars, uw);
                  all_words_of(dv, [&](const Word& vw) {
                    FreePoly v =
                        FreePoly::monomial(spec.field, spec.n_vars, vw);
                    insert_normal(str.straighten(u * inst * v));
                  });
                });
              });
              return;
            }
            int delta = part.slot_degree[slot - 1];
            // candidate multidegrees m with delta * m <= d - used
            MultiDegree cap(spec.n_vars);
            for (int i = 0; i < spec.n_vars; ++i)
              cap[i] = delta > 0 ? (d[i] - used[i]) / delta : 0;
            all_multidegrees_below(cap, [&](const MultiDegree& m) {
              MultiDegree contrib(spec.n_vars);
              for (int i = 0; i < spec.n_vars; ++i)
                contrib[i] = delta * m[i];
              all_words_of(m, [&](const Word& w) {
                for (int i = 0; i < spec.n_vars; ++i) used[i] += contrib[i];
                sigma.insert_or_assign(
                    slot, FreePoly::monomial(spec.field, spec.n_vars, w));
                assign(slot + 1);
                sigma.erase(slot);
                for (int i = 0; i < spec.n_vars; ++i) used[i] -= contrib[i];
              });
            });
          };
          assign(1);
        }
        return;
      }
      if (deg[static_cast<std::size_t>(v)] == 0) {
        split(v + 1);
        return;
      }
      for (int k = 1; k <= deg[static_cast<std::size_t>(v)]; ++k) {
        counts[v] = k;
        split(v + 1);
      }
      counts.erase(v);
    };
    split(1);
  }
  return ech;
}

}  // namespace

TEST_CASE("frame enumeration") {
  std::vector<NormalMonomial> f11 = frame(MultiDegree{{1, 1}}, 2);
  REQUIRE(f11.size() == 2);
  CHECK(to_string(f11[0]) == "x1*x2");
  CHECK(to_string(f11[1]) == "[x1,x2]");

  std::vector<NormalMonomial> f99 = frame(MultiDegree{{9, 9}}, 2);
  REQUIRE(f99.size() == 2);
  CHECK(to_string(f99[0]) == "x1^9*x2^9");
  CHECK(to_string(f99[1]) == "x1^8*x2^8*[x1,x2]");

  CHECK(frame(MultiDegree{{1, 0}}, 2).size() == 1);

  // multilinear in five variables: 1 + C(5,2) + C(5,4)
  CHECK(frame(MultiDegree{{1, 1, 1, 1, 1}}, 5).size() == 16);
}

TEST_CASE("frame spans exactly the straightened words") {
  Straightener str(F3);
  auto check_d = [&](const MultiDegree& d, int n) {
    std::vector<NormalMonomial> fr = frame(d, n);
    Echelon ech(F3, fr.size());
    all_words_of(d, [&](const Word& w) {
      NormalPoly nf = str.straighten_word(w, n);
      std::vector<std::uint32_t> row(fr.size(), 0);
      for (const auto& [m, c] : nf.terms()) {
        auto it = std::lower_bound(fr.begin(), fr.end(), m);
        REQUIRE(it != fr.end());
        row[static_cast<std::size_t>(it - fr.begin())] = c;
      }
      ech.insert(std::move(row));
    });
    CHECK(ech.rank() == fr.size());
  };
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; b <= 3; ++b)
      for (int c = 0; c <= 2; ++c) {
        MultiDegree d{{a, b, c}};
        if (d.total() >= 1 && d.total() <= 6) check_d(d, 3);
      }
  check_d(MultiDegree{{9, 9}}, 2);
}

TEST_CASE("production span matches the brute-force oracle") {
  struct Case {
    GeneratorSpec spec;
    MultiDegree d;
  };
  std::vector<Case> cases;

  cases.push_back({GeneratorSpec{F3, 2,
                                 {{x(1, 2), Closure::TSpace}},
                                 "TS(x1)"},
                   MultiDegree{{1, 1}}});
  cases.push_back({GeneratorSpec{F3, 2,
                                 {{x(1, 2).pow(3), Closure::TSpace}},
                                 "TS(x1^3)"},
                   MultiDegree{{3, 0}}});
  cases.push_back({GeneratorSpec{F3, 2,
                                 {{x(1, 2).pow(3), Closure::TSpace}},
                                 "TS(x1^3)"},
                   MultiDegree{{2, 1}}});
  cases.push_back({GeneratorSpec{F3, 2,
                                 {{commutator(x(1, 2), x(2, 2)),
                                   Closure::TSpace}},
                                 "TS([x1,x2])"},
                   MultiDegree{{2, 2}}});
  cases.push_back({spec_Q(F3, 1, 1, 2), MultiDegree{{1, 1}}});
  cases.push_back({spec_Q(F3, 1, 1, 2), MultiDegree{{3, 3}}});
  cases.push_back({spec_T3k(F3, 1, 2), MultiDegree{{2, 1}}});
  cases.push_back({spec_T3k(F3, 2, 3), MultiDegree{{1, 1, 1}}});
  {
    FreePoly mixed = x(1, 2) * x(2, 2) + commutator(x(1, 2), x(2, 2));
    cases.push_back({GeneratorSpec{F3, 2,
                                   {{mixed, Closure::TIdeal}},
                                   "TI(x1*x2+[x1,x2])"},
                     MultiDegree{{2, 1}}});
  }

  for (const Case& c : cases) {
    CAPTURE(c.spec.label);
    CAPTURE(to_string(c.d));
    Echelon expected = brute_span(c.spec, c.d);
    ComponentBasis got = component_basis(c.spec, c.d);
    ComponentBasis serial = component_basis_serial(c.spec, c.d);
    CHECK(got.rows() == expected);
    CHECK(serial.rows() == expected);
  }
}

TEST_CASE("component basis examples") {
  GeneratorSpec comm12{F3, 2,
                       {{commutator(x(1, 2), x(2, 2)), Closure::TSpace}},
                       "TS([x1,x2])"};
  ComponentBasis cb = component_basis(comm12, MultiDegree{{1, 1}});
  CHECK(cb.rank() == 1);
  Straightener str(F3);
  CHECK(cb.contains(str.straighten(commutator(x(1, 2), x(2, 2)))));

  GeneratorSpec gx{F3, 2, {{x(1, 2), Closure::TSpace}}, "TS(x1)"};
  CHECK(dim(gx, MultiDegree{{1, 0}}) == 1);
  CHECK(dim(gx, MultiDegree{{1, 1}}) == 2);  // the whole frame

  std::vector<FreePoly> xs{x(1, 3), x(2, 3), x(3, 3)};
  GeneratorSpec t3{F3, 3,
                   {{long_commutator(xs), Closure::TIdeal}},
                   "TI([x1,x2,x3])"};
  CHECK(dim(t3, MultiDegree{{1, 1, 1}}) == 0);
  CHECK(dim(t3, MultiDegree{{2, 1, 0}}) == 0);
}

TEST_CASE("membership examples") {
  CHECK(member(q_poly(F3, 1, 0), spec_Q(F3, 1, 1)));

  GeneratorSpec comm12{F3, 2,
                       {{commutator(x(1, 2), x(2, 2)), Closure::TSpace}},
                       "TS([x1,x2])"};
  CHECK_FALSE(member(x(1, 2), comm12));

  CHECK(member(FreePoly(F3, 2), comm12));  // zero is in everything
}

TEST_CASE("subspace comparison examples") {
  CHECK(subspace_equal(
      GeneratorSpec{F3, 2,
                    {{commutator(x(1, 2), x(2, 2)), Closure::TSpace}},
                    "TS([x1,x2])"},
      spec_Q(F3, 1, 0, 2), MultiDegree{{1, 1}}));

  // the monomial x1^2 x2^5 [x1,x2] generates the same component as q_1^(1)
  FreePoly m = x(1, 2).pow(2) * x(2, 2).pow(5) *
               commutator(x(1, 2), x(2, 2));
  GeneratorSpec lhs{F3, 2, {{m, Closure::TSpace}}, "TS(m)"};
  CHECK(subspace_equal(lhs, spec_Q(F3, 1, 1, 2), MultiDegree{{3, 3}}));
}

TEST_CASE("telescoping: lower q layers add nothing") {
  GeneratorSpec upper = spec_Q(F3, 1, 1, 2);
  GeneratorSpec sum{F3, 2, {}, "Q10+Q11"};
  sum.generators.emplace_back(q_poly(F3, 1, 0), Closure::TSpace);
  sum.generators.emplace_back(q_poly(F3, 1, 1), Closure::TSpace);
  for (MultiDegree d :
       {MultiDegree{{1, 1}}, MultiDegree{{2, 2}}, MultiDegree{{3, 3}},
        MultiDegree{{2, 1}}}) {
    CAPTURE(to_string(d));
    CHECK(subspace_equal(upper, sum, d));
  }
}

TEST_CASE("monotonicity and endomorphism closure") {
  SplitMix64 rng(97);
  GeneratorSpec base = spec_Q(F3, 1, 1, 2);
  for (int t = 0; t < 10; ++t) {
    FreePoly f = q_poly(F3, 1, 0);
    REQUIRE(member(f, base));

    GeneratorSpec extended = base;
    extended.generators.emplace_back(random_free_poly(F3, 2, 3, 2, rng),
                                     Closure::TSpace);
    CHECK(member(f, extended));

    // monomial substitution keeps membership
    std::map<int, FreePoly> sigma;
    for (int v = 1; v <= 2; ++v) {
      Word w;
      int len = static_cast<int>(rng.range(0, 2));
      for (int i = 0; i < len; ++i)
        w.letters.push_back(static_cast<VarIndex>(rng.range(1, 2)));
      sigma.emplace(v, FreePoly::monomial(F3, 2, w));
    }
    CHECK(member(substitute(f, sigma), base));
  }
}

TEST_CASE("determinism across thread counts and runs") {
  GeneratorSpec spec = spec_V(F3, 1, 1);
  MultiDegree d{{4, 4}};
  ComponentBasis serial = component_basis_serial(spec, d);
  ComponentBasis once = component_basis(spec, d, {}, 1);
  ComponentBasis twice = component_basis(spec, d, {}, 2);
  ComponentBasis again = component_basis(spec, d, {}, 2);
  CHECK(serial == once);
  CHECK(serial == twice);
  CHECK(serial == again);
}

TEST_CASE("frame sanity: rank never exceeds the frame") {
  SplitMix64 rng(55);
  for (int t = 0; t < 8; ++t) {
    GeneratorSpec spec{F3, 2, {}, "random"};
    spec.generators.emplace_back(random_free_poly(F3, 2, 3, 3, rng),
                                 Closure::TSpace);
    MultiDegree d{{static_cast<int>(rng.range(1, 3)),
                   static_cast<int>(rng.range(0, 3))}};
    ComponentBasis cb = component_basis(spec, d);
    CHECK(cb.rank() <= cb.frame().size());
  }
}

TEST_CASE("vanishing below the commutator threshold") {
  // With fewer than four variables in play, the two-commutator ideal has a
  // zero component at every multidegree.
  for (int n : {2, 3}) {
    GeneratorSpec t3 = spec_T3k(F3, 2, n);
    for (int total = 1; total <= 8; ++total) {
      MultiDegree d(n);
      d[0] = total / 2;
      d[n - 1] = total - total / 2;
      CHECK(dim(t3, d) == 0);
    }
  }
}

TEST_CASE("budget violations raise resource errors") {
  GeneratorSpec spec = spec_Q(F3, 1, 1, 2);
  Budget tiny;
  tiny.max_instances = 1;
  bool threw = false;
  try {
    component_basis(spec, MultiDegree{{3, 3}}, tiny);
  } catch (const ResourceError& e) {
    threw = true;
    std::string msg = e.what();
    CHECK(msg.find("Q:1:1") != std::string::npos);
    CHECK(msg.find("(3,3)") != std::string::npos);
  }
  CHECK(threw);

  Budget small_deg;
  small_deg.max_total_degree = 4;
  CHECK_THROWS_AS(component_basis(spec, MultiDegree{{3, 3}}, small_deg),
                  ResourceError);

  Budget small_frame;
  small_frame.max_frame = 1;
  CHECK_THROWS_AS(component_basis(spec, MultiDegree{{1, 1}}, small_frame),
                  ResourceError);
}

TEST_CASE("named spec construction") {
  GeneratorSpec u0 = spec_U(F3, 0);
  REQUIRE(u0.generators.size() == 1);
  CHECK(to_string(u0.generators[0].first) == "x1^3");

  GeneratorSpec t32 = spec_T3k(F3, 2);
  REQUIRE(t32.generators.size() == 2);
  CHECK(t32.generators[0].second == Closure::TIdeal);
  CHECK(to_string(t32.generators[1].first) ==
        to_string(commutator(x(1, 4), x(2, 4)) *
                  commutator(x(3, 4), x(4, 4))));

  GeneratorSpec q11 = spec_Q(F3, 1, 1);
  REQUIRE(q11.generators.size() == 1);
  CHECK(to_string(q11.generators[0].first) ==
        to_string(x(1, 2).pow(2) * commutator(x(1, 2), x(2, 2)) *
                  x(2, 2).pow(2)));

  // even case: T-space generator list with the truncated q family
  GeneratorSpec c2 = spec_C(F3, 2, 2);
  CHECK(c2.generators.size() == 4);  // x1[x2,x3,x4], x1^p, q_1^(1), q_1^(2)

  // odd case: finite list
  GeneratorSpec c5 = spec_C(F3, 5, 2);
  CHECK(c5.generators.size() == 4);  // x1[x2,x3,x4], x1^p, x1^p q1, x1^p q2

  GeneratorSpec v11 = spec_V(F3, 1, 1);
  CHECK(v11.generators.size() == 4);  // x1^p, q_1^(1), T3(2) pair
  CHECK(v11.n_vars == 2);

  CHECK_THROWS_AS(spec_Q(F3, 0, 1), ArgumentError);
  CHECK_THROWS_AS(spec_C(F3, 1), ArgumentError);
  CHECK_THROWS_AS(spec_V(F3, 0, 1), ArgumentError);
}

TEST_CASE("membership rejects out-of-ambient queries") {
  GeneratorSpec spec = spec_Q(F3, 1, 1, 2);
  CHECK_THROWS_AS(member(x(3, 3), spec), ArgumentError);
  PrimeField f5(5);
  CHECK_THROWS_AS(member(FreePoly::variable(f5, 2, 1), spec), ConfigError);
}
