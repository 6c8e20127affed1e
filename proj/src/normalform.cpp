// Straightening to the canonical basis of F_p<X> modulo the triple-commutator
// T-ideal. The rewriting scans a word for the leftmost adjacent inversion
// x_a x_b (a > b) and applies
//
//   u x_a x_b v  =  u x_b x_a v + [x_a, x_b] (u v)
//
// which is valid modulo the ideal because every commutator is central there.
// The first summand strictly reduces the inversion count at fixed length and
// the second strictly reduces length, so the process terminates with a sorted
// prefix and a pile of commutator factors. Products of commutators are then
// normalized with the alternating rule: a repeated index kills the product,
// otherwise sorting the index sequence contributes its permutation sign.

#include "relfree/normalform.hpp"

#include <algorithm>

namespace relfree {

int NormalMonomial::total_degree() const {
  int d = static_cast<int>(comm.size());
  for (const auto& [v, e] : powers) d += e;
  return d;
}

int NormalMonomial::max_variable() const {
  int m = 0;
  for (const auto& [v, e] : powers) m = std::max<int>(m, v);
  for (VarIndex v : comm) m = std::max<int>(m, v);
  return m;
}

MultiDegree NormalMonomial::multidegree(int n) const {
  MultiDegree d(n);
  for (const auto& [v, e] : powers) d[v - 1] += e;
  for (VarIndex v : comm) d[v - 1] += 1;
  return d;
}

Word NormalMonomial::prefix_word() const {
  Word w;
  for (const auto& [v, e] : powers)
    for (int i = 0; i < e; ++i) w.letters.push_back(v);
  return w;
}

namespace {

// Dense-lexicographic comparison of sparse exponent vectors.
int compare_exponents(
    const std::vector<std::pair<VarIndex, std::uint16_t>>& a,
    const std::vector<std::pair<VarIndex, std::uint16_t>>& b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].first == b[j].first) {
      if (a[i].second != b[j].second)
        return a[i].second < b[j].second ? -1 : 1;
      ++i;
      ++j;
    } else if (a[i].first < b[j].first) {
      // a has a positive exponent where b has zero
      return 1;
    } else {
      return -1;
    }
  }
  if (i < a.size()) return 1;
  if (j < b.size()) return -1;
  return 0;
}

}  // namespace

bool NormalMonomial::operator<(const NormalMonomial& o) const {
  int da = total_degree(), db = o.total_degree();
  if (da != db) return da < db;
  if (comm.size() != o.comm.size()) return comm.size() < o.comm.size();
  int c = compare_exponents(powers, o.powers);
  if (c != 0) return c < 0;
  return comm < o.comm;
}

std::size_t NormalMonomialHash::operator()(const NormalMonomial& m) const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::uint64_t v) {
    h ^= v;
    h *= 0x100000001b3ULL;
  };
  for (const auto& [v, e] : m.powers) {
    mix(v);
    mix(e);
  }
  mix(0xffff);
  for (VarIndex v : m.comm) mix(v);
  return static_cast<std::size_t>(h);
}

void NormalPoly::add_term(const NormalMonomial& m, std::uint32_t c) {
  c %= field_.p();
  if (c == 0) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
    return;
  }
  it->second = field_.add(it->second, c);
  if (it->second == 0) terms_.erase(it);
}

NormalPoly& NormalPoly::operator+=(const NormalPoly& o) {
  if (field_ != o.field_ || n_vars_ != o.n_vars_)
    throw ConfigError("normal-form operands over different configurations");
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

NormalPoly& NormalPoly::operator-=(const NormalPoly& o) {
  if (field_ != o.field_ || n_vars_ != o.n_vars_)
    throw ConfigError("normal-form operands over different configurations");
  for (const auto& [m, c] : o.terms_) add_term(m, field_.neg(c));
  return *this;
}

NormalPoly NormalPoly::scaled(std::uint32_t c) const {
  NormalPoly r(field_, n_vars_);
  c %= field_.p();
  if (c == 0) return r;
  for (const auto& [m, k] : terms_) r.add_term(m, field_.mul(k, c));
  return r;
}

CommNormalization commutator_product_normalize(
    std::span<const VarIndex> seq) {
  if (seq.size() % 2 != 0)
    throw ArgumentError("commutator index sequence must have even length");
  CommNormalization out;
  out.sorted.assign(seq.begin(), seq.end());
  // Insertion sort, counting inversions; small sequences only.
  int inversions = 0;
  for (std::size_t i = 1; i < out.sorted.size(); ++i) {
    VarIndex v = out.sorted[i];
    std::size_t j = i;
    while (j > 0 && out.sorted[j - 1] > v) {
      out.sorted[j] = out.sorted[j - 1];
      --j;
      ++inversions;
    }
    out.sorted[j] = v;
  }
  for (std::size_t i = 0; i + 1 < out.sorted.size(); ++i) {
    if (out.sorted[i] == out.sorted[i + 1]) {
      out.zero = true;
      out.sign = 1;
      out.sorted.clear();
      return out;
    }
  }
  out.sign = (inversions % 2 == 0) ? 1 : -1;
  return out;
}

std::size_t min_comm_length(const NormalPoly& a) {
  std::size_t best = std::numeric_limits<std::size_t>::max();
  for (const auto& [m, c] : a.terms())
    best = std::min(best, static_cast<std::size_t>(m.comm_pairs()));
  return best;
}

bool in_t3k_span(const NormalPoly& a, int k) {
  for (const auto& [m, c] : a.terms())
    if (m.comm_pairs() < k) return false;
  return true;
}

FreePoly lift(const NormalMonomial& m, PrimeField field, int n_vars) {
  FreePoly acc = FreePoly::monomial(field, n_vars, m.prefix_word());
  for (std::size_t i = 0; i + 1 < m.comm.size(); i += 2) {
    FreePoly a = FreePoly::variable(field, n_vars, m.comm[i]);
    FreePoly b = FreePoly::variable(field, n_vars, m.comm[i + 1]);
    acc = acc * commutator(a, b);
  }
  return acc;
}

FreePoly lift(const NormalPoly& a) {
  FreePoly out(a.field(), a.n_vars());
  for (const auto& [m, c] : a.terms())
    out += lift(m, a.field(), a.n_vars()).scaled(c);
  return out;
}

const Straightener::TermList& Straightener::straighten_word_cached(
    const Word& w) {
  auto hit = cache_.find(w);
  if (hit != cache_.end()) return hit->second;

  // Accumulate into a coefficient map keyed by monomial; n-independent.
  std::map<NormalMonomial, std::uint32_t> acc;
  auto add = [&](const NormalMonomial& m, std::uint32_t c) {
    c %= field_.p();
    if (c == 0) return;
    auto it = acc.find(m);
    if (it == acc.end()) {
      acc.emplace(m, c);
      return;
    }
    it->second = field_.add(it->second, c);
    if (it->second == 0) acc.erase(it);
  };

  Word work = w;
  while (true) {
    std::size_t t = 0;
    bool sorted = true;
    for (; t + 1 < work.letters.size(); ++t) {
      if (work.letters[t] > work.letters[t + 1]) {
        sorted = false;
        break;
      }
    }
    if (sorted) {
      NormalMonomial m;
      for (VarIndex v : work.letters) {
        if (!m.powers.empty() && m.powers.back().first == v)
          m.powers.back().second += 1;
        else
          m.powers.emplace_back(v, 1);
      }
      add(m, 1);
      break;
    }

    VarIndex a = work.letters[t], b = work.letters[t + 1];
    Word rest;
    rest.letters.reserve(work.letters.size() - 2);
    rest.letters.insert(rest.letters.end(), work.letters.begin(),
                        work.letters.begin() + static_cast<long>(t));
    rest.letters.insert(rest.letters.end(),
                        work.letters.begin() + static_cast<long>(t) + 2,
                        work.letters.end());
    // [x_a, x_b] times the straightened remainder.
    const TermList& sub = straighten_word_cached(rest);
    std::vector<VarIndex> seq;
    for (const auto& [m, c] : sub) {
      seq.assign(m.comm.begin(), m.comm.end());
      seq.push_back(a);
      seq.push_back(b);
      CommNormalization norm = commutator_product_normalize(seq);
      if (norm.zero) continue;
      NormalMonomial prod;
      prod.powers = m.powers;
      prod.comm = std::move(norm.sorted);
      add(prod, norm.sign > 0 ? c : field_.neg(c));
    }
    std::swap(work.letters[t], work.letters[t + 1]);
  }

  TermList result(acc.begin(), acc.end());
  return cache_.emplace(w, std::move(result)).first->second;
}

NormalPoly Straightener::straighten_word(const Word& w, int n_vars) {
  NormalPoly out(field_, n_vars);
  for (const auto& [m, c] : straighten_word_cached(w)) out.add_term(m, c);
  return out;
}

NormalPoly Straightener::straighten(const FreePoly& f) {
  if (f.field() != field_)
    throw ConfigError("straightener and polynomial use different fields");
  NormalPoly out(field_, f.n_vars());
  for (const auto& [w, c] : f.terms()) {
    for (const auto& [m, k] : straighten_word_cached(w))
      out.add_term(m, field_.mul(k, c));
  }
  return out;
}

const Straightener::TermList& Straightener::mul_mono_cached(
    const NormalMonomial& a, const NormalMonomial& b) {
  auto key = std::make_pair(a, b);
  auto hit = mono_cache_.find(key);
  if (hit != mono_cache_.end()) return hit->second;

  std::map<NormalMonomial, std::uint32_t> acc;
  std::vector<VarIndex> seq(a.comm.begin(), a.comm.end());
  seq.insert(seq.end(), b.comm.begin(), b.comm.end());
  CommNormalization base = commutator_product_normalize(seq);
  if (!base.zero) {
    Word concat = a.prefix_word() * b.prefix_word();
    for (const auto& [m, c] : straighten_word_cached(concat)) {
      std::vector<VarIndex> full(base.sorted.begin(), base.sorted.end());
      full.insert(full.end(), m.comm.begin(), m.comm.end());
      CommNormalization norm = commutator_product_normalize(full);
      if (norm.zero) continue;
      NormalMonomial prod;
      prod.powers = m.powers;
      prod.comm = std::move(norm.sorted);
      int sign = base.sign * norm.sign;
      std::uint32_t coeff = sign > 0 ? c : field_.neg(c);
      auto it = acc.find(prod);
      if (it == acc.end()) {
        acc.emplace(std::move(prod), coeff);
      } else {
        it->second = field_.add(it->second, coeff);
        if (it->second == 0) acc.erase(it);
      }
    }
  }
  TermList result(acc.begin(), acc.end());
  return mono_cache_.emplace(std::move(key), std::move(result)).first->second;
}

NormalPoly Straightener::mul_mono(const NormalMonomial& a,
                                  const NormalMonomial& b, int n_vars) {
  NormalPoly out(field_, n_vars);
  for (const auto& [m, c] : mul_mono_cached(a, b)) out.add_term(m, c);
  return out;
}

NormalPoly Straightener::mul(const NormalPoly& a, const NormalPoly& b) {
  if (a.field() != b.field() || a.n_vars() != b.n_vars())
    throw ConfigError("normal-form product over different configurations");
  NormalPoly out(field_, a.n_vars());
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      std::uint32_t c = field_.mul(ca, cb);
      for (const auto& [m, k] : mul_mono_cached(ma, mb))
        out.add_term(m, field_.mul(k, c));
    }
  }
  return out;
}

NormalPoly Straightener::pow(const NormalPoly& a, int e) {
  if (e < 0) throw ArgumentError("negative exponent");
  NormalPoly r(field_, a.n_vars());
  r.add_term(NormalMonomial{}, 1);
  for (int i = 0; i < e; ++i) r = mul(r, a);
  return r;
}

bool Straightener::is_identity_of_G(const FreePoly& f) {
  return straighten(f).is_zero();
}

bool Straightener::is_central_for_G(const FreePoly& f) {
  int fresh = f.max_variable() + 1;
  int n = std::max(f.n_vars(), fresh);
  FreePoly g(field_, n);
  for (const auto& [w, c] : f.terms()) g.add_term(w, c);
  return is_identity_of_G(commutator(g, FreePoly::variable(field_, n, fresh)));
}

bool Straightener::is_central(const NormalPoly& a) {
  for (int j = 1; j <= a.n_vars(); ++j) {
    NormalMonomial xj;
    xj.powers.emplace_back(static_cast<VarIndex>(j), 1);
    NormalPoly x(field_, a.n_vars());
    x.add_term(xj, 1);
    NormalPoly left = mul(a, x);
    left -= mul(x, a);
    if (!left.is_zero()) return false;
  }
  return true;
}

}  // namespace relfree
