#include "relfree/freepoly.hpp"

#include <algorithm>
#include <functional>

namespace relfree {

FreePoly::FreePoly(PrimeField field, int n_vars)
    : field_(field), n_vars_(n_vars) {
  if (n_vars < 0) throw ArgumentError("negative ambient variable count");
}

FreePoly FreePoly::constant(PrimeField field, int n_vars, std::uint32_t c) {
  FreePoly f(field, n_vars);
  f.add_term(Word{}, c % field.p());
  return f;
}

FreePoly FreePoly::variable(PrimeField field, int n_vars, int index) {
  if (index < 1 || index > n_vars)
    throw ArgumentError("variable index " + std::to_string(index) +
                        " outside ambient x1..x" + std::to_string(n_vars));
  FreePoly f(field, n_vars);
  f.add_term(Word{{static_cast<VarIndex>(index)}}, 1);
  return f;
}

FreePoly FreePoly::monomial(PrimeField field, int n_vars, Word w,
                            std::uint32_t c) {
  if (w.max_variable() > n_vars)
    throw ArgumentError("word uses a variable outside the ambient set");
  FreePoly f(field, n_vars);
  f.add_term(w, c % field.p());
  return f;
}

int FreePoly::max_variable() const {
  int m = 0;
  for (const auto& [w, c] : terms_) m = std::max(m, w.max_variable());
  return m;
}

int FreePoly::total_degree() const {
  int d = 0;
  for (const auto& [w, c] : terms_) d = std::max(d, w.degree());
  return d;
}

void FreePoly::add_term(const Word& w, std::uint32_t c) {
  c %= field_.p();
  if (c == 0) return;
  auto it = terms_.find(w);
  if (it == terms_.end()) {
    terms_.emplace(w, c);
    return;
  }
  it->second = field_.add(it->second, c);
  if (it->second == 0) terms_.erase(it);
}

void FreePoly::check_compatible(const FreePoly& o) const {
  if (field_ != o.field_)
    throw ConfigError("operands over different prime fields");
  if (n_vars_ != o.n_vars_)
    throw ConfigError("operands over different ambient variable counts");
}

FreePoly FreePoly::operator-() const {
  FreePoly r(field_, n_vars_);
  for (const auto& [w, c] : terms_) r.terms_.emplace(w, field_.neg(c));
  return r;
}

FreePoly& FreePoly::operator+=(const FreePoly& o) {
  check_compatible(o);
  for (const auto& [w, c] : o.terms_) add_term(w, c);
  return *this;
}

FreePoly& FreePoly::operator-=(const FreePoly& o) {
  check_compatible(o);
  for (const auto& [w, c] : o.terms_) add_term(w, field_.neg(c));
  return *this;
}

FreePoly operator*(const FreePoly& a, const FreePoly& b) {
  a.check_compatible(b);
  FreePoly r(a.field_, a.n_vars_);
  for (const auto& [wa, ca] : a.terms_)
    for (const auto& [wb, cb] : b.terms_)
      r.add_term(wa * wb, a.field_.mul(ca, cb));
  return r;
}

FreePoly FreePoly::scaled(std::uint32_t c) const {
  c %= field_.p();
  FreePoly r(field_, n_vars_);
  if (c == 0) return r;
  for (const auto& [w, k] : terms_) r.terms_.emplace(w, field_.mul(k, c));
  return r;
}

FreePoly FreePoly::pow(int e) const {
  if (e < 0) throw ArgumentError("negative exponent");
  FreePoly r = FreePoly::unit(field_, n_vars_);
  for (int i = 0; i < e; ++i) r = r * *this;
  return r;
}

FreePoly commutator(const FreePoly& f, const FreePoly& g) {
  return f * g - g * f;
}

FreePoly long_commutator(std::span<const FreePoly> fs) {
  if (fs.empty()) throw ArgumentError("long_commutator of an empty list");
  FreePoly acc = fs[0];
  for (std::size_t i = 1; i < fs.size(); ++i) acc = commutator(acc, fs[i]);
  return acc;
}

FreePoly substitute(const FreePoly& f, const std::map<int, FreePoly>& images) {
  const PrimeField* field = nullptr;
  int target_n = -1;
  for (const auto& [v, img] : images) {
    if (field == nullptr) {
      field = &img.field();
      target_n = img.n_vars();
    } else {
      if (*field != img.field())
        throw ConfigError("substitution images over different fields");
      if (target_n != img.n_vars())
        throw ConfigError("substitution images over different ambients");
    }
  }
  if (field == nullptr) {
    field = &f.field();
    target_n = f.n_vars();
  }
  if (*field != f.field())
    throw ConfigError("substitution images over a different field than f");

  FreePoly r(*field, target_n);
  for (const auto& [w, c] : f.terms()) {
    FreePoly prod = FreePoly::unit(*field, target_n);
    for (VarIndex v : w.letters) {
      auto it = images.find(static_cast<int>(v));
      if (it == images.end())
        throw ArgumentError("no image assigned to x" + std::to_string(v));
      prod = prod * it->second;
    }
    r += prod.scaled(c);
  }
  return r;
}

std::map<MultiDegree, FreePoly> components(const FreePoly& f) {
  std::map<MultiDegree, FreePoly> out;
  for (const auto& [w, c] : f.terms()) {
    MultiDegree d = w.multidegree(f.n_vars());
    auto it = out.find(d);
    if (it == out.end())
      it = out.emplace(d, FreePoly(f.field(), f.n_vars())).first;
    it->second.add_term(w, c);
  }
  return out;
}

Polarization polarize(const FreePoly& f,
                      const std::map<int, int>& part_counts) {
  for (const auto& [v, k] : part_counts)
    if (k < 1) throw ArgumentError("part count must be >= 1");

  int n = f.n_vars();
  Polarization pol;
  std::vector<int> first_slot(static_cast<std::size_t>(n) + 1, 0);
  for (int v = 1; v <= n; ++v) {
    auto it = part_counts.find(v);
    int k = it == part_counts.end() ? 1 : it->second;
    first_slot[static_cast<std::size_t>(v)] =
        static_cast<int>(pol.slot_owner.size()) + 1;
    for (int j = 0; j < k; ++j) pol.slot_owner.push_back(v);
  }
  int n_slots = static_cast<int>(pol.slot_owner.size());

  std::map<int, FreePoly> images;
  for (int v = 1; v <= n; ++v) {
    auto it = part_counts.find(v);
    int k = it == part_counts.end() ? 1 : it->second;
    FreePoly sum(f.field(), n_slots);
    for (int j = 0; j < k; ++j)
      sum += FreePoly::variable(f.field(), n_slots,
                                first_slot[static_cast<std::size_t>(v)] + j);
    images.emplace(v, sum);
  }

  FreePoly split = substitute(f, images);
  for (auto& [d, part] : components(split))
    pol.parts.push_back(PolarizedPart{part, d});
  return pol;
}

FreePoly q_poly(PrimeField field, int k, int l) {
  if (k < 1) throw ArgumentError("q_poly requires k >= 1");
  if (l < 0) throw ArgumentError("q_poly requires l >= 0");
  long long e = 1;
  for (int i = 0; i < l; ++i) e *= field.p();
  if (e - 1 > 1 << 20) throw ArgumentError("q_poly exponent out of range");
  int n = 2 * k;
  FreePoly acc = FreePoly::unit(field, n);
  for (int b = 0; b < k; ++b) {
    FreePoly x = FreePoly::variable(field, n, 2 * b + 1);
    FreePoly y = FreePoly::variable(field, n, 2 * b + 2);
    acc = acc * x.pow(static_cast<int>(e - 1)) * commutator(x, y) *
          y.pow(static_cast<int>(e - 1));
  }
  return acc;
}

}  // namespace relfree
