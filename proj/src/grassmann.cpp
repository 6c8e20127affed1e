#include "relfree/grassmann.hpp"

#include <bit>

namespace relfree {

GrassmannElement::GrassmannElement(PrimeField field, int s)
    : field_(field), s_(s) {
  if (s < 1 || s > 62)
    throw ConfigError("Grassmann dimension parameter s must be in 1..62");
}

GrassmannElement GrassmannElement::unit(PrimeField field, int s) {
  GrassmannElement g(field, s);
  g.add_term(0, 1);
  return g;
}

GrassmannElement GrassmannElement::generator(PrimeField field, int s, int i) {
  if (i < 1 || i > s)
    throw ArgumentError("generator index outside 1..s");
  GrassmannElement g(field, s);
  g.add_term(1ULL << (i - 1), 1);
  return g;
}

GrassmannElement GrassmannElement::basis(PrimeField field, int s,
                                         std::uint64_t mask,
                                         std::uint32_t c) {
  if (s < 62 && (mask >> s) != 0)
    throw ArgumentError("basis mask uses generators beyond s");
  GrassmannElement g(field, s);
  g.add_term(mask, c);
  return g;
}

void GrassmannElement::add_term(std::uint64_t mask, std::uint32_t c) {
  c %= field_.p();
  if (c == 0) return;
  auto it = terms_.find(mask);
  if (it == terms_.end()) {
    terms_.emplace(mask, c);
    return;
  }
  it->second = field_.add(it->second, c);
  if (it->second == 0) terms_.erase(it);
}

GrassmannElement& GrassmannElement::operator+=(const GrassmannElement& o) {
  if (field_ != o.field_ || s_ != o.s_)
    throw ConfigError("Grassmann operands over different configurations");
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

GrassmannElement& GrassmannElement::operator-=(const GrassmannElement& o) {
  if (field_ != o.field_ || s_ != o.s_)
    throw ConfigError("Grassmann operands over different configurations");
  for (const auto& [m, c] : o.terms_) add_term(m, field_.neg(c));
  return *this;
}

GrassmannElement GrassmannElement::scaled(std::uint32_t c) const {
  GrassmannElement r(field_, s_);
  c %= field_.p();
  if (c == 0) return r;
  for (const auto& [m, k] : terms_) r.terms_.emplace(m, field_.mul(k, c));
  return r;
}

namespace {

// Parity of the number of transpositions needed to interleave the sorted
// index sets a and b: for each generator in b, count the generators of a
// above it.
int merge_sign(std::uint64_t a, std::uint64_t b) {
  int crossings = 0;
  std::uint64_t rest = b;
  while (rest != 0) {
    int i = std::countr_zero(rest);
    rest &= rest - 1;
    std::uint64_t above = (i == 63) ? 0 : (a >> (i + 1));
    crossings += std::popcount(above);
  }
  return (crossings % 2 == 0) ? 1 : -1;
}

}  // namespace

GrassmannElement g_mul(const GrassmannElement& a, const GrassmannElement& b) {
  if (a.field() != b.field() || a.s() != b.s())
    throw ConfigError("Grassmann product over different configurations");
  GrassmannElement r(a.field(), a.s());
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      if ((ma & mb) != 0) continue;
      std::uint32_t c = a.field().mul(ca, cb);
      if (merge_sign(ma, mb) < 0) c = a.field().neg(c);
      r.add_term(ma | mb, c);
    }
  }
  return r;
}

GrassmannElement g_pow(const GrassmannElement& a, int e) {
  if (e < 0) throw ArgumentError("negative exponent");
  GrassmannElement r = GrassmannElement::unit(a.field(), a.s());
  for (int i = 0; i < e; ++i) r = g_mul(r, a);
  return r;
}

GrassmannElement GrassmannElement::pow(int e) const { return g_pow(*this, e); }

GrassmannElement evaluate(const FreePoly& f,
                          const std::map<int, GrassmannElement>& values) {
  const GrassmannElement* sample = nullptr;
  for (const auto& [v, g] : values) {
    if (sample == nullptr)
      sample = &g;
    else if (g.field() != sample->field() || g.s() != sample->s())
      throw ConfigError("substitution values over different configurations");
  }
  if (sample == nullptr)
    throw ArgumentError("empty Grassmann substitution");
  if (sample->field() != f.field())
    throw ConfigError("Grassmann values over a different field than f");

  GrassmannElement out(sample->field(), sample->s());
  for (const auto& [w, c] : f.terms()) {
    GrassmannElement prod = GrassmannElement::unit(sample->field(),
                                                   sample->s());
    for (VarIndex v : w.letters) {
      auto it = values.find(static_cast<int>(v));
      if (it == values.end())
        throw ArgumentError("no Grassmann value for x" + std::to_string(v));
      prod = g_mul(prod, it->second);
    }
    out += prod.scaled(c);
  }
  return out;
}

bool is_central_element(const GrassmannElement& z) {
  for (int i = 1; i <= z.s(); ++i) {
    GrassmannElement e = GrassmannElement::generator(z.field(), z.s(), i);
    if (g_mul(z, e) != g_mul(e, z)) return false;
  }
  return true;
}

GrassmannElement random_element(PrimeField field, int s, SplitMix64& rng,
                                int max_terms) {
  GrassmannElement g(field, s);
  // One dedicated scalar slot with a uniform coefficient (possibly zero):
  // without it almost no sampled element has a unit component once s is
  // large, and p-th powers of scalar-free elements collapse, starving the
  // oracle of informative values.
  std::uint32_t c0 = static_cast<std::uint32_t>(rng.below(field.p()));
  g.add_term(0, c0);
  int terms = static_cast<int>(
      rng.range(1, static_cast<std::uint64_t>(std::max(1, max_terms - 1))));
  std::uint64_t full = (s >= 62) ? ~0ULL >> 2 : ((1ULL << s) - 1);
  for (int t = 0; t < terms; ++t) {
    std::uint64_t mask = rng.next() & full;
    std::uint32_t c =
        static_cast<std::uint32_t>(rng.range(1, field.p() - 1));
    g.add_term(mask, c);
  }
  return g;
}

std::optional<Counterexample> falsify(const FreePoly& f, FalsifyMode mode,
                                      int s, std::size_t trials,
                                      std::uint64_t seed) {
  if (s < 1 || s > 62)
    throw ArgumentError("falsify requires 1 <= s <= 62");
  if (trials < 1) throw ArgumentError("falsify requires trials >= 1");

  std::vector<int> vars;
  for (int v = 1; v <= f.max_variable(); ++v) vars.push_back(v);

  SplitMix64 rng(seed);
  for (std::size_t trial = 0; trial < trials; ++trial) {
    std::map<int, GrassmannElement> sub;
    for (int v : vars) sub.emplace(v, random_element(f.field(), s, rng));
    if (sub.empty())
      sub.emplace(1, random_element(f.field(), s, rng));
    GrassmannElement img = evaluate(f, sub);
    bool bad = (mode == FalsifyMode::Identity) ? !img.is_zero()
                                               : !is_central_element(img);
    if (bad) return Counterexample{trial, std::move(sub)};
  }
  return std::nullopt;
}

}  // namespace relfree
