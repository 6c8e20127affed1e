#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

namespace relfree {

using VarIndex = std::uint16_t;

// Per-variable degree vector. Index 0 of `deg` is variable x1.
struct MultiDegree {
  std::vector<int> deg;

  MultiDegree() = default;
  explicit MultiDegree(int n) : deg(static_cast<std::size_t>(n), 0) {}
  explicit MultiDegree(std::vector<int> d) : deg(std::move(d)) {}

  int total() const { return std::accumulate(deg.begin(), deg.end(), 0); }
  int size() const { return static_cast<int>(deg.size()); }
  int operator[](int i) const { return deg[static_cast<std::size_t>(i)]; }
  int& operator[](int i) { return deg[static_cast<std::size_t>(i)]; }

  // Componentwise comparison; partial order.
  bool fits_in(const MultiDegree& box) const {
    if (deg.size() != box.deg.size()) return false;
    for (std::size_t i = 0; i < deg.size(); ++i)
      if (deg[i] > box.deg[i]) return false;
    return true;
  }

  MultiDegree& operator+=(const MultiDegree& o) {
    for (std::size_t i = 0; i < deg.size(); ++i) deg[i] += o.deg[i];
    return *this;
  }

  MultiDegree& operator-=(const MultiDegree& o) {
    for (std::size_t i = 0; i < deg.size(); ++i) deg[i] -= o.deg[i];
    return *this;
  }

  friend MultiDegree operator+(MultiDegree a, const MultiDegree& b) {
    a += b;
    return a;
  }

  friend MultiDegree operator-(const MultiDegree& a, const MultiDegree& b) {
    MultiDegree r = a;
    for (std::size_t i = 0; i < r.deg.size(); ++i) r.deg[i] -= b.deg[i];
    return r;
  }

  bool operator==(const MultiDegree& o) const { return deg == o.deg; }
  bool operator!=(const MultiDegree& o) const { return deg != o.deg; }
  bool operator<(const MultiDegree& o) const { return deg < o.deg; }
};

// A word in the free monoid on x1, x2, ...: a sequence of 1-based variable
// indices. The empty word is the unit. Total order: degree, then
// lexicographic; this is the key order of every term map.
struct Word {
  std::vector<VarIndex> letters;

  Word() = default;
  explicit Word(std::vector<VarIndex> ls) : letters(std::move(ls)) {}

  int degree() const { return static_cast<int>(letters.size()); }
  bool is_unit() const { return letters.empty(); }

  MultiDegree multidegree(int n) const {
    MultiDegree d(n);
    for (VarIndex v : letters) d[v - 1] += 1;
    return d;
  }

  int max_variable() const {
    int m = 0;
    for (VarIndex v : letters) m = std::max<int>(m, v);
    return m;
  }

  bool is_sorted() const {
    for (std::size_t i = 0; i + 1 < letters.size(); ++i)
      if (letters[i] > letters[i + 1]) return false;
    return true;
  }

  friend Word operator*(const Word& a, const Word& b) {
    Word r = a;
    r.letters.insert(r.letters.end(), b.letters.begin(), b.letters.end());
    return r;
  }

  bool operator==(const Word& o) const { return letters == o.letters; }
  bool operator!=(const Word& o) const { return letters != o.letters; }

  bool operator<(const Word& o) const {
    if (letters.size() != o.letters.size())
      return letters.size() < o.letters.size();
    return letters < o.letters;
  }
};

struct WordHash {
  std::size_t operator()(const Word& w) const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (VarIndex v : w.letters) {
      h ^= v;
      h *= 0x100000001b3ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

}  // namespace relfree
