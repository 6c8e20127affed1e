// Span accumulation for T-space / T-ideal components.
//
// The multidegree-d component of the subspace generated by f under all
// endomorphisms is spanned by the multihomogeneous-in-markers pieces of
//
//   f(g_1, ..., g_m),   g_i = t_{i,0} * 1 + sum_j t_{i,j} * v_{i,j},
//
// where the v_{i,j} range over sets of distinct canonical basis monomials
// with multidegree <= d and the t's are formal markers. Every piece is an
// instance (extract marker components one at a time over an infinite
// extension field) and every instance is a combination of pieces (expand the
// substituted elements over the basis), so the spans agree; membership of
// F_p vectors in the F_p span and in the extension span coincide. For
// T-ideal closure each piece is additionally wrapped as u * piece * v over
// basis monomials u, v filling the remaining multidegree; when the piece is
// central a single multiplier suffices.
//
// All arithmetic happens in the quotient algebra with terms truncated to the
// box {m <= d}; multiplication never lowers a multidegree, so truncation is
// exact. Pieces are accumulated into a reduced row echelon basis; the result
// is canonical whatever the enumeration or thread schedule, and enumeration
// stops early once the component is full.
//
// Enumeration order: families (value-set choices) are visited generator by
// generator within tiers of increasing total value count, so cheap
// substitutions come first. Budget accounting happens on the sequential
// merge path in enumeration order, which keeps resource errors
// deterministic.

#include "relfree/tspace.hpp"

#include <algorithm>
#include <bit>
#include <exception>
#include <functional>
#include <unordered_set>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "relfree/printer.hpp"

namespace relfree {

std::vector<NormalMonomial> frame(const MultiDegree& d, int n_vars) {
  if (d.size() != n_vars)
    throw ArgumentError("multidegree length differs from ambient");
  std::vector<int> supp;
  for (int i = 0; i < n_vars; ++i)
    if (d[i] >= 1) supp.push_back(i + 1);

  std::vector<NormalMonomial> out;
  std::size_t subsets = 1ULL << supp.size();
  for (std::size_t mask = 0; mask < subsets; ++mask) {
    if (std::popcount(mask) % 2 != 0) continue;
    NormalMonomial m;
    for (std::size_t b = 0; b < supp.size(); ++b)
      if (mask & (1ULL << b))
        m.comm.push_back(static_cast<VarIndex>(supp[b]));
    MultiDegree used(n_vars);
    for (VarIndex v : m.comm) used[v - 1] += 1;
    for (int i = 0; i < n_vars; ++i) {
      int e = d[i] - used[i];
      if (e < 0) {
        m.powers.clear();  // unreachable: comm indices come from supp
        break;
      }
      if (e > 0)
        m.powers.emplace_back(static_cast<VarIndex>(i + 1),
                              static_cast<std::uint16_t>(e));
    }
    out.push_back(std::move(m));
  }
  std::sort(out.begin(), out.end());
  return out;
}

ComponentBasis::ComponentBasis(MultiDegree d, std::vector<NormalMonomial> fr,
                               Echelon rows)
    : d_(std::move(d)), frame_(std::move(fr)), rows_(std::move(rows)) {}

std::vector<std::uint32_t> ComponentBasis::coordinates(
    const NormalPoly& a) const {
  std::vector<std::uint32_t> row(frame_.size(), 0);
  for (const auto& [m, c] : a.terms()) {
    auto it = std::lower_bound(frame_.begin(), frame_.end(), m);
    if (it == frame_.end() || *it != m)
      throw ArgumentError("term " + to_string(m) +
                          " lies outside the frame at " + to_string(d_));
    row[static_cast<std::size_t>(it - frame_.begin())] = c;
  }
  return row;
}

bool ComponentBasis::contains(const NormalPoly& a) const {
  return rows_.contains(coordinates(a));
}

std::map<MultiDegree, NormalPoly> split_components(const NormalPoly& a) {
  std::map<MultiDegree, NormalPoly> out;
  for (const auto& [m, c] : a.terms()) {
    MultiDegree d = m.multidegree(a.n_vars());
    auto it = out.find(d);
    if (it == out.end())
      it = out.emplace(d, NormalPoly(a.field(), a.n_vars())).first;
    it->second.add_term(m, c);
  }
  return out;
}

FreePoly shift_vars(const FreePoly& f, int offset, int new_n) {
  FreePoly out(f.field(), new_n);
  for (const auto& [w, c] : f.terms()) {
    Word shifted;
    shifted.letters.reserve(w.letters.size());
    for (VarIndex v : w.letters) {
      int nv = static_cast<int>(v) + offset;
      if (nv < 1 || nv > new_n)
        throw ArgumentError("variable shift leaves the ambient set");
      shifted.letters.push_back(static_cast<VarIndex>(nv));
    }
    out.add_term(shifted, c);
  }
  return out;
}

namespace {

// ---------------------------------------------------------------------------
// Marker polynomials: quotient-algebra terms tagged with marker exponents.
// Marker exponent vectors live inline; every vector of one family has the
// same active length and the tail stays zero, so whole-array comparison is
// the family order.

constexpr std::size_t kMaxMarkers = 48;

using Marks = std::array<std::uint8_t, kMaxMarkers>;

// Monomials are interned: every monomial that can appear during a truncated
// expansion has multidegree <= d and therefore lives in a fixed table
// (the unit at id 0, then every basis monomial of each multidegree in the
// box). Terms then carry plain ids and stay trivially copyable.
struct MarkerKey {
  Marks marks{};
  std::int32_t mono = 0;

  bool operator<(const MarkerKey& o) const {
    if (marks != o.marks) return marks < o.marks;
    return mono < o.mono;
  }
  bool operator==(const MarkerKey& o) const {
    return marks == o.marks && mono == o.mono;
  }
};

struct MarkerTerm {
  MarkerKey key;
  std::uint32_t coeff;
};

// Kept sorted by key with unique keys and nonzero coefficients; products
// append freely and normalize once, which beats per-insert tree updates in
// this allocation-bound loop.
using MarkerPoly = std::vector<MarkerTerm>;

constexpr int kMaxAmbient = 32;


// Read-only interning tables shared by all workers. Value ids shift by one
// against the mono table: table id 0 is the unit, value j is id j+1.
struct MonoTables {
  std::vector<NormalMonomial> table;   // id -> monomial
  std::vector<MultiDegree> mdeg;       // id -> multidegree
  std::vector<std::int32_t> frame_col; // id -> frame column or -1
  std::map<NormalMonomial, std::int32_t> id_of;
};

// Per-thread state: a straightener plus the id-level product memo.
struct Worker {
  explicit Worker(PrimeField field) : str(field) {}
  Straightener str;
  std::unordered_map<std::uint64_t,
                     std::vector<std::pair<std::int32_t, std::uint32_t>>>
      products;
};

struct ExpandContext {
  PrimeField field;
  int n_vars;
  MultiDegree d;
  const MonoTables* monos;
  const std::vector<NormalMonomial>* frame;
  // frames of every multidegree <= d, indexed by box cell; only filled when
  // some generator has T-ideal closure
  const std::vector<std::vector<NormalMonomial>>* wrap_frames;
  Worker* worker;
};

// Memoized interned product; callers check the degree bound first, which
// guarantees every product term is in the table.
const std::vector<std::pair<std::int32_t, std::uint32_t>>& mul_ids(
    std::int32_t a, std::int32_t b, const ExpandContext& ctx) {
  std::uint64_t key = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a))
                       << 32) |
                      static_cast<std::uint32_t>(b);
  auto hit = ctx.worker->products.find(key);
  if (hit != ctx.worker->products.end()) return hit->second;
  std::vector<std::pair<std::int32_t, std::uint32_t>> out;
  const auto& ta = ctx.monos->table[static_cast<std::size_t>(a)];
  const auto& tb = ctx.monos->table[static_cast<std::size_t>(b)];
  for (const auto& [m, c] : ctx.worker->str.mul_mono_cached(ta, tb)) {
    auto it = ctx.monos->id_of.find(m);
    if (it == ctx.monos->id_of.end())
      throw ArgumentError("product term escaped the interning table");
    out.emplace_back(it->second, c);
  }
  return ctx.worker->products.emplace(key, std::move(out)).first->second;
}

// Sorts, merges equal keys mod p, and drops zero coefficients.
void mp_normalize(MarkerPoly& v, const PrimeField& field) {
  std::sort(v.begin(), v.end(), [](const MarkerTerm& x, const MarkerTerm& y) {
    return x.key < y.key;
  });
  std::size_t w = 0;
  for (std::size_t r = 0; r < v.size();) {
    std::uint32_t c = v[r].coeff;
    std::size_t r2 = r + 1;
    while (r2 < v.size() && v[r2].key == v[r].key) {
      c = field.add(c, v[r2].coeff);
      ++r2;
    }
    if (c != 0) {
      if (w != r) v[w].key = std::move(v[r].key);
      v[w].coeff = c;
      ++w;
    }
    r = r2;
  }
  v.resize(w);
}

void mp_mul_into(MarkerPoly& out, const MarkerPoly& a, const MarkerPoly& b,
                 std::uint32_t scale, const ExpandContext& ctx) {
  const auto& mdeg = ctx.monos->mdeg;
  int n = ctx.n_vars;
  for (const auto& ta : a) {
    const MultiDegree& da = mdeg[static_cast<std::size_t>(ta.key.mono)];
    for (const auto& tb : b) {
      const MultiDegree& db = mdeg[static_cast<std::size_t>(tb.key.mono)];
      bool fits = true;
      for (int i = 0; i < n; ++i) {
        if (da.deg[static_cast<std::size_t>(i)] +
                db.deg[static_cast<std::size_t>(i)] >
            ctx.d.deg[static_cast<std::size_t>(i)]) {
          fits = false;
          break;
        }
      }
      if (!fits) continue;
      std::uint32_t c = ctx.field.mul(ctx.field.mul(ta.coeff, tb.coeff),
                                      scale);
      if (c == 0) continue;
      Marks marks;
      for (std::size_t i = 0; i < kMaxMarkers; ++i)
        marks[i] =
            static_cast<std::uint8_t>(ta.key.marks[i] + tb.key.marks[i]);
      for (const auto& [m, k] : mul_ids(ta.key.mono, tb.key.mono, ctx)) {
        std::uint32_t ck = ctx.field.mul(c, k);
        if (ck != 0) out.push_back({MarkerKey{marks, m}, ck});
      }
    }
  }
}

MarkerPoly mp_mul(const MarkerPoly& a, const MarkerPoly& b,
                  const ExpandContext& ctx) {
  MarkerPoly out;
  out.reserve(a.size() * b.size());
  mp_mul_into(out, a, b, 1, ctx);
  mp_normalize(out, ctx.field);
  return out;
}

MarkerPoly mp_comm(const MarkerPoly& a, const MarkerPoly& b,
                   const ExpandContext& ctx) {
  MarkerPoly out;
  out.reserve(2 * a.size() * b.size());
  mp_mul_into(out, a, b, 1, ctx);
  mp_mul_into(out, b, a, ctx.field.p() - 1, ctx);
  mp_normalize(out, ctx.field);
  return out;
}

// ---------------------------------------------------------------------------
// Prepared generators and families.

struct PreparedGen {
  std::size_t index;  // position in the spec's generator list
  Closure closure;
  NormalPoly gnorm;        // straightened generator, nonzero
  std::vector<int> vars;   // occurring variables, ascending
  std::vector<int> caps;   // max degree per entry of `vars`
};

struct Family {
  const PreparedGen* gen;
  // per entry of gen->vars: ascending value indices (table id minus one)
  std::vector<std::vector<int>> value_idx;
  MultiDegree base;  // sum of the chosen values' multidegrees
};

// Candidate rows produced by one family, in deterministic order.
using RowBatch = std::vector<std::vector<std::uint32_t>>;

std::vector<std::uint32_t> frame_coords(const NormalPoly& a,
                                        const std::vector<NormalMonomial>& fr) {
  std::vector<std::uint32_t> row(fr.size(), 0);
  for (const auto& [m, c] : a.terms()) {
    auto it = std::lower_bound(fr.begin(), fr.end(), m);
    if (it == fr.end() || *it != m)
      throw ArgumentError("instance term outside the frame");
    row[static_cast<std::size_t>(it - fr.begin())] = c;
  }
  return row;
}

// Mixed-radix index of multidegrees m <= d.
struct Box {
  MultiDegree d;
  std::vector<int> stride;
  int cells = 1;

  explicit Box(const MultiDegree& dd) : d(dd), stride(dd.size()) {
    for (int i = 0; i < d.size(); ++i) {
      stride[i] = cells;
      cells *= d[i] + 1;
    }
  }

  int index(const MultiDegree& m) const {
    int idx = 0;
    for (int i = 0; i < d.size(); ++i) {
      if (m[i] > d[i]) return -1;
      idx += stride[i] * m[i];
    }
    return idx;
  }

  MultiDegree degree(int idx) const {
    MultiDegree m(d.size());
    for (int i = 0; i < d.size(); ++i) {
      m[i] = idx % (d[i] + 1);
      idx /= d[i] + 1;
    }
    return m;
  }
};

bool tspace_feasible(const Family& fam, const ExpandContext& ctx);

// Expansion of one family into candidate rows.
RowBatch expand_family(const Family& fam, const ExpandContext& ctx) {
  const PreparedGen& gen = *fam.gen;
  if (gen.closure == Closure::TSpace && !tspace_feasible(fam, ctx))
    return {};
  const std::vector<MultiDegree>& mdeg = ctx.monos->mdeg;

  // Marker layout: per variable position a, one unit marker followed by the
  // chosen values.
  std::size_t n_markers = 0;
  std::vector<std::size_t> base(gen.vars.size());
  for (std::size_t a = 0; a < gen.vars.size(); ++a) {
    base[a] = n_markers;
    n_markers += 1 + fam.value_idx[a].size();
  }
  if (n_markers > kMaxMarkers)
    throw ResourceError("substitution family needs " +
                        std::to_string(n_markers) +
                        " markers, beyond the engine limit of " +
                        std::to_string(kMaxMarkers));

  // Substituted images g_a and their powers on demand.
  std::vector<MarkerPoly> g(gen.vars.size());
  for (std::size_t a = 0; a < gen.vars.size(); ++a) {
    MarkerKey unit;
    unit.marks[base[a]] = 1;
    g[a].push_back({unit, 1});
    for (std::size_t j = 0; j < fam.value_idx[a].size(); ++j) {
      MarkerKey key;
      key.marks[base[a] + 1 + j] = 1;
      key.mono = fam.value_idx[a][j] + 1;  // table id
      g[a].push_back({key, 1});
    }
  }

  std::vector<std::vector<MarkerPoly>> powers(gen.vars.size());
  auto g_pow = [&](std::size_t a, int e) -> const MarkerPoly& {
    auto& cache = powers[a];
    if (cache.empty()) {
      cache.emplace_back();  // e = 0: unit
      cache[0].push_back({MarkerKey{}, 1});
    }
    while (static_cast<int>(cache.size()) <= e)
      cache.push_back(mp_mul(cache.back(), g[a], ctx));
    return cache[static_cast<std::size_t>(e)];
  };
  auto var_pos = [&](VarIndex v) {
    auto it = std::lower_bound(gen.vars.begin(), gen.vars.end(),
                               static_cast<int>(v));
    return static_cast<std::size_t>(it - gen.vars.begin());
  };

  MarkerPoly acc;
  for (const auto& [mono, coeff] : gen.gnorm.terms()) {
    MarkerPoly term;
    term.push_back({MarkerKey{}, 1});
    for (const auto& [v, e] : mono.powers)
      term = mp_mul(term, g_pow(var_pos(v), e), ctx);
    for (std::size_t i = 0; i + 1 < mono.comm.size(); i += 2) {
      MarkerPoly c =
          mp_comm(g[var_pos(mono.comm[i])], g[var_pos(mono.comm[i + 1])], ctx);
      term = mp_mul(term, c, ctx);
    }
    for (MarkerTerm& t : term) {
      t.coeff = ctx.field.mul(t.coeff, coeff);
      if (t.coeff != 0) acc.push_back(std::move(t));
    }
  }
  mp_normalize(acc, ctx.field);

  // Group by marker vector (keys are sorted by marks first) and emit.
  RowBatch rows;
  Box box(ctx.d);
  const auto& frame_col = ctx.monos->frame_col;
  auto it = acc.begin();
  while (it != acc.end()) {
    const Marks& marks = it->key.marks;
    auto jt = it;
    for (; jt != acc.end() && jt->key.marks == marks; ++jt) {
    }

    // Skip pieces that a smaller family already produces.
    bool all_used = true;
    MultiDegree piece_d(ctx.n_vars);
    for (std::size_t a = 0; a < gen.vars.size() && all_used; ++a) {
      for (std::size_t j = 0; j < fam.value_idx[a].size(); ++j) {
        std::uint8_t b = marks[base[a] + 1 + j];
        if (b == 0) {
          all_used = false;
          break;
        }
        const MultiDegree& md =
            mdeg[static_cast<std::size_t>(fam.value_idx[a][j] + 1)];
        for (int i = 0; i < ctx.n_vars; ++i) piece_d[i] += b * md[i];
      }
    }
    if (!all_used) {
      it = jt;
      continue;
    }

    if (gen.closure == Closure::TSpace) {
      if (piece_d == ctx.d) {
        std::vector<std::uint32_t> row(ctx.frame->size(), 0);
        for (auto kt = it; kt != jt; ++kt)
          row[static_cast<std::size_t>(
              frame_col[static_cast<std::size_t>(kt->key.mono)])] = kt->coeff;
        rows.push_back(std::move(row));
      }
      it = jt;
      continue;
    }

    // T-ideal closure: wrap with basis-monomial multipliers.
    NormalPoly piece(ctx.field, ctx.n_vars);
    for (auto kt = it; kt != jt; ++kt)
      piece.add_term(
          ctx.monos->table[static_cast<std::size_t>(kt->key.mono)],
          kt->coeff);
    it = jt;
    if (piece.is_zero() || !piece_d.fits_in(ctx.d)) continue;
    Straightener& str = ctx.worker->str;
    MultiDegree rem = ctx.d - piece_d;
    Box rem_box(rem);
    bool central = str.is_central(piece);
    for (int cu = 0; cu < rem_box.cells; ++cu) {
      MultiDegree du = rem_box.degree(cu);
      MultiDegree dv = rem - du;
      if (central && dv.total() != 0) continue;  // u * piece covers all
      const auto& uf =
          (*ctx.wrap_frames)[static_cast<std::size_t>(box.index(du))];
      const auto& vf =
          (*ctx.wrap_frames)[static_cast<std::size_t>(box.index(dv))];
      for (const NormalMonomial& u : uf) {
        NormalPoly left(ctx.field, ctx.n_vars);
        for (const auto& [m, c] : piece.terms()) {
          for (const auto& [pm, pc] : str.mul_mono_cached(u, m))
            left.add_term(pm, ctx.field.mul(pc, c));
        }
        if (central) {
          if (!left.is_zero())
            rows.push_back(frame_coords(left, *ctx.frame));
          continue;
        }
        for (const NormalMonomial& v : vf) {
          NormalPoly full(ctx.field, ctx.n_vars);
          for (const auto& [m, c] : left.terms()) {
            for (const auto& [pm, pc] : str.mul_mono_cached(m, v))
              full.add_term(pm, ctx.field.mul(pc, c));
          }
          if (!full.is_zero())
            rows.push_back(frame_coords(full, *ctx.frame));
        }
      }
    }
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Family enumeration.

// Reachability test: can markers >= 1 on the chosen values, with per-variable
// totals capped by the generator degrees, hit the target multidegree
// exactly? Only needed for T-space closure; with an ideal wrap any
// undershoot is fixed by the multipliers. Runs on the worker side; families
// whose base already matches the target short-circuit.
bool tspace_feasible(const Family& fam, const ExpandContext& ctx) {
  MultiDegree rem = ctx.d - fam.base;
  if (rem.total() == 0) return true;

  // Backtracking over extra copies of the chosen values, bounded by the
  // per-variable slack; remainders are small, so this stays shallow.
  struct Slot {
    const MultiDegree* md;
    int var_pos;
  };
  std::vector<Slot> slots;
  std::vector<int> slack(fam.gen->vars.size());
  for (std::size_t a = 0; a < fam.gen->vars.size(); ++a) {
    slack[a] = fam.gen->caps[a] - static_cast<int>(fam.value_idx[a].size());
    if (slack[a] <= 0) continue;
    for (int idx : fam.value_idx[a])
      slots.push_back({&ctx.monos->mdeg[static_cast<std::size_t>(idx + 1)],
                       static_cast<int>(a)});
  }
  if (slots.empty()) return false;

  std::function<bool(std::size_t, MultiDegree&)> rec =
      [&](std::size_t si, MultiDegree& left) -> bool {
    if (left.total() == 0) return true;
    if (si == slots.size()) return false;
    const MultiDegree& md = *slots[si].md;
    int a = slots[si].var_pos;
    int max_mult = slack[static_cast<std::size_t>(a)];
    for (int i = 0; i < left.size() && max_mult > 0; ++i)
      if (md[i] > 0) max_mult = std::min(max_mult, left[i] / md[i]);
    for (int mult = 0; mult <= max_mult; ++mult) {
      if (mult > 0) {
        slack[static_cast<std::size_t>(a)] -= 1;
        for (int i = 0; i < left.size(); ++i) left[i] -= md[i];
      }
      if (rec(si + 1, left)) {
        for (int i = 0; i < left.size(); ++i) left[i] += mult * md[i];
        slack[static_cast<std::size_t>(a)] += mult;
        return true;
      }
    }
    for (int i = 0; i < left.size(); ++i) left[i] += max_mult * md[i];
    slack[static_cast<std::size_t>(a)] += max_mult;
    return false;
  };
  return rec(0, rem);
}

// Enumerates the families of one generator whose total value count is
// exactly `tier`, in deterministic order. Returns false when the consumer
// wants to stop.
template <typename Consumer>
bool enumerate_tier(const PreparedGen& gen, int tier,
                    const ExpandContext& ctx, Consumer&& consume) {
  const std::vector<MultiDegree>& mdeg = ctx.monos->mdeg;
  std::size_t n_values = ctx.monos->table.size() - 1;

  Family fam;
  fam.gen = &gen;
  fam.value_idx.assign(gen.vars.size(), {});
  MultiDegree used(ctx.n_vars);

  auto fits_after_add = [&](const MultiDegree& m) {
    for (int i = 0; i < ctx.n_vars; ++i)
      if (used.deg[static_cast<std::size_t>(i)] +
              m.deg[static_cast<std::size_t>(i)] >
          ctx.d.deg[static_cast<std::size_t>(i)])
        return false;
    return true;
  };

  // Recursive lambdas: pick a subset size per variable, then the subset.
  std::function<bool(std::size_t, int)> pick_var =
      [&](std::size_t a, int remaining) -> bool {
    if (a == gen.vars.size()) {
      if (remaining != 0) return true;
      fam.base = used;
      return consume(fam);
    }
    int cap_here = std::min(gen.caps[a], remaining);
    int caps_rest = 0;
    for (std::size_t b = a + 1; b < gen.vars.size(); ++b)
      caps_rest += gen.caps[b];
    std::function<bool(int, std::size_t)> pick_subset =
        [&](int k_left, std::size_t from) -> bool {
      if (k_left == 0) {
        int take = static_cast<int>(fam.value_idx[a].size());
        if (remaining - take > caps_rest) return true;  // cannot finish
        return pick_var(a + 1, remaining - take);
      }
      for (std::size_t i = from;
           i + static_cast<std::size_t>(k_left) <= n_values; ++i) {
        const MultiDegree& md = mdeg[i + 1];
        if (!fits_after_add(md)) continue;
        used += md;
        fam.value_idx[a].push_back(static_cast<int>(i));
        bool go = pick_subset(k_left - 1, i + 1);
        fam.value_idx[a].pop_back();
        used -= md;
        if (!go) return false;
      }
      return true;
    };
    for (int k = 0; k <= cap_here; ++k) {
      if (!pick_subset(k, 0)) return false;
    }
    return true;
  };
  return pick_var(0, tier);
}

struct BuildState {
  Echelon ech;
  std::unordered_set<std::uint64_t> seen;
  std::size_t instances = 0;
};

std::uint64_t row_hash(const std::vector<std::uint32_t>& row) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::uint32_t v : row) {
    h ^= v;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Sequentially folds one family's rows into the accumulator. Returns false
// once the component is full.
bool merge_rows(BuildState& st, const RowBatch& rows, const PreparedGen& gen,
                const GeneratorSpec& spec, const MultiDegree& d,
                const Budget& budget, std::size_t width) {
  for (const auto& row : rows) {
    if (++st.instances > budget.max_instances)
      throw ResourceError(
          "instance budget (" + std::to_string(budget.max_instances) +
          ") exceeded while spanning generator " +
          to_string(spec.generators[gen.index].first) + " of " +
          (spec.label.empty() ? std::string("spec") : spec.label) +
          " at multidegree " + to_string(d));
    if (!st.seen.insert(row_hash(row)).second) continue;
    st.ech.insert(row);
    if (st.ech.rank() == width) return false;
  }
  return true;
}

std::vector<PreparedGen> prepare_generators(const GeneratorSpec& spec,
                                            Straightener& str, int s_max) {
  std::vector<PreparedGen> out;
  for (std::size_t i = 0; i < spec.generators.size(); ++i) {
    const auto& [gen, closure] = spec.generators[i];
    if (gen.field() != spec.field)
      throw ConfigError("generator field differs from spec field");
    FreePoly widened(spec.field, std::max(gen.n_vars(), gen.max_variable()));
    for (const auto& [w, c] : gen.terms()) widened.add_term(w, c);
    NormalPoly gnorm = str.straighten(widened);
    if (gnorm.is_zero()) continue;
    // Every substitution instance of a term with s commutator pairs keeps at
    // least s pairs, so a generator whose terms all exceed the frame's
    // maximum contributes nothing.
    if (min_comm_length(gnorm) > static_cast<std::size_t>(s_max)) continue;

    std::map<int, int> degs;
    for (const auto& [m, c] : gnorm.terms()) {
      MultiDegree md = m.multidegree(gnorm.n_vars());
      for (int v = 0; v < md.size(); ++v)
        if (md[v] > 0) degs[v + 1] = std::max(degs[v + 1], md[v]);
    }
    PreparedGen pg{i, closure, std::move(gnorm), {}, {}};
    for (const auto& [v, cap] : degs) {
      pg.vars.push_back(v);
      pg.caps.push_back(cap);
    }
    out.push_back(std::move(pg));
  }
  return out;
}

ComponentBasis build_component(const GeneratorSpec& spec, const MultiDegree& d,
                               const Budget& budget, int jobs, bool parallel) {
  if (d.size() != spec.n_vars)
    throw ArgumentError("multidegree length differs from spec ambient");
  if (spec.n_vars > kMaxAmbient)
    throw ConfigError("ambient variable count exceeds engine limit");
  if (d.total() > budget.max_total_degree)
    throw ResourceError("total degree " + std::to_string(d.total()) +
                        " of multidegree " + to_string(d) +
                        " exceeds the configured budget (" +
                        std::to_string(budget.max_total_degree) + ")");
  for (int i = 0; i < d.size(); ++i)
    if (d[i] < 0) throw ArgumentError("negative multidegree entry");

  std::vector<NormalMonomial> fr = frame(d, spec.n_vars);
  if (fr.size() > budget.max_frame)
    throw ResourceError("frame at " + to_string(d) + " has " +
                        std::to_string(fr.size()) +
                        " elements, beyond the configured budget (" +
                        std::to_string(budget.max_frame) + ")");

  int supp = 0;
  for (int i = 0; i < d.size(); ++i)
    if (d[i] >= 1) ++supp;
  int s_max = supp / 2;

  Straightener main_str(spec.field);
  std::vector<PreparedGen> gens =
      prepare_generators(spec, main_str, s_max);

  BuildState st{Echelon(spec.field, fr.size()), {}, 0};
  if (fr.empty() || gens.empty())
    return ComponentBasis(d, std::move(fr), std::move(st.ech));

  // Shared read-only tables: the unit at id 0, then every basis monomial of
  // each multidegree in the box, in canonical monomial order.
  Box box(d);
  MonoTables monos;
  {
    std::vector<std::pair<NormalMonomial, MultiDegree>> vals;
    for (int cell = 1; cell < box.cells; ++cell) {
      MultiDegree m = box.degree(cell);
      for (NormalMonomial& nm : frame(m, spec.n_vars))
        vals.emplace_back(std::move(nm), m);
    }
    std::sort(vals.begin(), vals.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    monos.table.push_back(NormalMonomial{});
    monos.mdeg.push_back(MultiDegree(spec.n_vars));
    for (auto& [nm, m] : vals) {
      monos.table.push_back(std::move(nm));
      monos.mdeg.push_back(std::move(m));
    }
    monos.frame_col.assign(monos.table.size(), -1);
    for (std::size_t i = 0; i < monos.table.size(); ++i) {
      monos.id_of.emplace(monos.table[i], static_cast<std::int32_t>(i));
      auto it = std::lower_bound(fr.begin(), fr.end(), monos.table[i]);
      if (it != fr.end() && *it == monos.table[i])
        monos.frame_col[i] = static_cast<std::int32_t>(it - fr.begin());
    }
  }

  bool any_ideal = std::any_of(gens.begin(), gens.end(), [](const auto& g) {
    return g.closure == Closure::TIdeal;
  });
  std::vector<std::vector<NormalMonomial>> wrap_frames;
  if (any_ideal) {
    wrap_frames.resize(static_cast<std::size_t>(box.cells));
    for (int cell = 0; cell < box.cells; ++cell)
      wrap_frames[static_cast<std::size_t>(cell)] =
          frame(box.degree(cell), spec.n_vars);
  }

  int n_threads = 1;
#ifdef _OPENMP
  if (parallel) n_threads = jobs > 0 ? jobs : omp_get_max_threads();
#else
  (void)jobs;
  (void)parallel;
#endif
  std::vector<Worker> workers;
  workers.reserve(static_cast<std::size_t>(n_threads));
  for (int t = 0; t < n_threads; ++t) workers.emplace_back(spec.field);

  auto make_ctx = [&](Worker& w) {
    return ExpandContext{spec.field, spec.n_vars, d,           &monos,
                         &fr,        &wrap_frames, &w};
  };
  ExpandContext ctx0 = make_ctx(workers[0]);

  int tier_max = 0;
  for (const auto& g : gens) {
    int caps = 0;
    for (int c : g.caps) caps += c;
    tier_max = std::max(tier_max, std::min(caps, d.total()));
  }

  const std::size_t kBatch = 4096;
  std::vector<Family> batch;
  bool done = false;

  auto flush = [&]() {
    if (batch.empty() || done) {
      batch.clear();
      return;
    }
    std::vector<RowBatch> results(batch.size());
    if (n_threads > 1) {
#ifdef _OPENMP
      std::exception_ptr err;
#pragma omp parallel for schedule(dynamic, 64) num_threads(n_threads)
      for (std::size_t i = 0; i < batch.size(); ++i) {
        try {
          ExpandContext ctx =
              make_ctx(workers[static_cast<std::size_t>(
                  omp_get_thread_num() % n_threads)]);
          results[i] = expand_family(batch[i], ctx);
        } catch (...) {
#pragma omp critical
          if (!err) err = std::current_exception();
        }
      }
      if (err) std::rethrow_exception(err);
#endif
    } else {
      for (std::size_t i = 0; i < batch.size(); ++i)
        results[i] = expand_family(batch[i], ctx0);
    }
    for (std::size_t i = 0; i < batch.size() && !done; ++i) {
      if (!merge_rows(st, results[i], *batch[i].gen, spec, d, budget,
                      fr.size()))
        done = true;
    }
    batch.clear();
  };

  for (int tier = 0; tier <= tier_max && !done; ++tier) {
    for (const auto& g : gens) {
      if (done) break;
      enumerate_tier(g, tier, ctx0, [&](const Family& fam) {
        batch.push_back(fam);
        if (batch.size() >= kBatch) flush();
        return !done;
      });
    }
    flush();
  }
  flush();

  return ComponentBasis(d, std::move(fr), std::move(st.ech));
}

}  // namespace

ComponentBasis component_basis(const GeneratorSpec& spec, const MultiDegree& d,
                               const Budget& budget, int jobs) {
  return build_component(spec, d, budget, jobs, true);
}

ComponentBasis component_basis_serial(const GeneratorSpec& spec,
                                      const MultiDegree& d,
                                      const Budget& budget) {
  return build_component(spec, d, budget, 1, false);
}

bool member(const FreePoly& f, const GeneratorSpec& spec, const Budget& budget,
            int jobs) {
  if (f.field() != spec.field)
    throw ConfigError("membership query over a different field");
  if (f.max_variable() > spec.n_vars)
    throw ArgumentError("polynomial uses variables outside the spec ambient");
  FreePoly widened(spec.field, spec.n_vars);
  for (const auto& [w, c] : f.terms()) widened.add_term(w, c);
  Straightener str(spec.field);
  NormalPoly nf = str.straighten(widened);
  for (const auto& [d, part] : split_components(nf)) {
    ComponentBasis cb = component_basis(spec, d, budget, jobs);
    if (!cb.contains(part)) return false;
  }
  return true;
}

std::size_t dim(const GeneratorSpec& spec, const MultiDegree& d,
                const Budget& budget, int jobs) {
  return component_basis(spec, d, budget, jobs).rank();
}

bool subspace_equal(const GeneratorSpec& a, const GeneratorSpec& b,
                    const MultiDegree& d, const Budget& budget, int jobs) {
  if (a.field != b.field || a.n_vars != b.n_vars)
    throw ConfigError("subspace comparison over different configurations");
  return component_basis(a, d, budget, jobs) ==
         component_basis(b, d, budget, jobs);
}

// ---------------------------------------------------------------------------
// Named generator lists.

namespace {

FreePoly x_power_p(PrimeField field, int ambient) {
  return FreePoly::variable(field, ambient, 1).pow(
      static_cast<int>(field.p()));
}

// x1^p * q_j(x2, ..., x_{2j+1})
FreePoly xp_qj(PrimeField field, int j, int ambient) {
  FreePoly q = shift_vars(q_poly(field, j, 1), 1, ambient);
  return x_power_p(field, ambient) * q;
}

FreePoly triple_comm(PrimeField field, int ambient) {
  std::vector<FreePoly> xs;
  for (int i = 1; i <= 3; ++i)
    xs.push_back(FreePoly::variable(field, ambient, i));
  return long_commutator(xs);
}

FreePoly comm_product(PrimeField field, int k, int ambient) {
  FreePoly acc = FreePoly::unit(field, ambient);
  for (int i = 0; i < k; ++i)
    acc = acc * commutator(FreePoly::variable(field, ambient, 2 * i + 1),
                           FreePoly::variable(field, ambient, 2 * i + 2));
  return acc;
}

// x1 * [x2,x3,x4]; generates the triple-commutator ideal as a T-space.
FreePoly t3_tspace_gen(PrimeField field, int ambient) {
  return FreePoly::variable(field, ambient, 1) *
         shift_vars(triple_comm(field, 4), 1, ambient);
}

}  // namespace

GeneratorSpec spec_Q(PrimeField field, int k, int l, int ambient) {
  if (k < 1 || l < 0) throw ArgumentError("spec_Q requires k >= 1, l >= 0");
  int n = ambient > 0 ? ambient : 2 * k;
  GeneratorSpec s{field, n, {}, "Q:" + std::to_string(k) + ":" +
                                    std::to_string(l)};
  s.generators.emplace_back(q_poly(field, k, l), Closure::TSpace);
  return s;
}

GeneratorSpec spec_U(PrimeField field, int j, int ambient) {
  if (j < 0) throw ArgumentError("spec_U requires j >= 0");
  int n = ambient > 0 ? ambient : std::max(1, 2 * j + 1);
  GeneratorSpec s{field, n, {}, "U:" + std::to_string(j)};
  s.generators.emplace_back(x_power_p(field, n), Closure::TSpace);
  for (int i = 1; i <= j; ++i)
    s.generators.emplace_back(xp_qj(field, i, std::max(n, 2 * i + 1)),
                              Closure::TSpace);
  return s;
}

GeneratorSpec spec_T3k(PrimeField field, int k, int ambient) {
  if (k < 1) throw ArgumentError("spec_T3k requires k >= 1");
  int n = ambient > 0 ? ambient : 2 * k;
  GeneratorSpec s{field, n, {}, "T3:" + std::to_string(k)};
  s.generators.emplace_back(triple_comm(field, 3), Closure::TIdeal);
  s.generators.emplace_back(comm_product(field, k, 2 * k), Closure::TIdeal);
  return s;
}

GeneratorSpec spec_V(PrimeField field, int l, int k, int ambient) {
  if (l < 1 || k < 1) throw ArgumentError("spec_V requires l, k >= 1");
  int n = ambient > 0 ? ambient : 2 * k;
  GeneratorSpec s{field, n, {},
                  "V:" + std::to_string(l) + ":" + std::to_string(k)};
  GeneratorSpec u = spec_U(field, k - 1, n);
  for (auto& g : u.generators) s.generators.push_back(std::move(g));
  for (int i = 1; i <= l; ++i)
    s.generators.emplace_back(q_poly(field, k, i), Closure::TSpace);
  GeneratorSpec t = spec_T3k(field, k + 1, n);
  for (auto& g : t.generators) s.generators.push_back(std::move(g));
  return s;
}

GeneratorSpec spec_C(PrimeField field, int n, int lmax, int ambient) {
  if (n < 2) throw ArgumentError("spec_C requires n >= 2");
  if (lmax < 1) throw ArgumentError("spec_C requires lmax >= 1");
  int amb = ambient > 0 ? ambient : n;
  GeneratorSpec s{field, amb, {}, "C:" + std::to_string(n)};
  s.generators.emplace_back(t3_tspace_gen(field, 4), Closure::TSpace);
  s.generators.emplace_back(x_power_p(field, 1), Closure::TSpace);
  int k = n / 2;
  if (n % 2 == 0) {
    for (int i = 1; i < k; ++i)
      s.generators.emplace_back(xp_qj(field, i, 2 * i + 1), Closure::TSpace);
    for (int l = 1; l <= lmax; ++l)
      s.generators.emplace_back(q_poly(field, k, l), Closure::TSpace);
  } else {
    for (int i = 1; i <= k; ++i)
      s.generators.emplace_back(xp_qj(field, i, 2 * i + 1), Closure::TSpace);
  }
  return s;
}

GeneratorSpec spec_R(PrimeField field, int k, int lmax, int ambient) {
  if (k < 1) throw ArgumentError("spec_R requires k >= 1");
  int n = ambient > 0 ? ambient : 2 * k + 3;
  GeneratorSpec s{field, n, {}, "R:" + std::to_string(k)};
  GeneratorSpec c = spec_C(field, 2 * k, lmax, n);
  for (auto& g : c.generators) s.generators.push_back(std::move(g));
  GeneratorSpec t = spec_T3k(field, k + 1, n);
  for (auto& g : t.generators) s.generators.push_back(std::move(g));
  return s;
}

}  // namespace relfree
