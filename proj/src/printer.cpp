#include "relfree/printer.hpp"

#include <sstream>

namespace relfree {

namespace {

void append_power(std::ostream& os, int var, int exp, bool& first) {
  if (!first) os << "*";
  first = false;
  os << "x" << var;
  if (exp > 1) os << "^" << exp;
}

}  // namespace

std::string to_string(const Word& w) {
  if (w.is_unit()) return "1";
  std::ostringstream os;
  bool first = true;
  std::size_t i = 0;
  while (i < w.letters.size()) {
    std::size_t j = i;
    while (j < w.letters.size() && w.letters[j] == w.letters[i]) ++j;
    append_power(os, w.letters[i], static_cast<int>(j - i), first);
    i = j;
  }
  return os.str();
}

std::string to_string(const MultiDegree& d) {
  std::ostringstream os;
  os << "(";
  for (int i = 0; i < d.size(); ++i) {
    if (i > 0) os << ",";
    os << d[i];
  }
  os << ")";
  return os.str();
}

namespace {

template <typename TermMap, typename MonoPrinter>
std::string print_terms(const TermMap& terms, MonoPrinter mono) {
  if (terms.empty()) return "0";
  std::ostringstream os;
  bool first_term = true;
  for (const auto& [m, c] : terms) {
    if (!first_term) os << " + ";
    first_term = false;
    std::string ms = mono(m);
    if (c == 1 && ms != "1")
      os << ms;
    else if (ms == "1")
      os << c;
    else
      os << c << "*" << ms;
  }
  return os.str();
}

}  // namespace

std::string to_string(const FreePoly& f) {
  return print_terms(f.terms(), [](const Word& w) { return to_string(w); });
}

std::string to_string(const NormalMonomial& m) {
  if (m.is_unit()) return "1";
  std::ostringstream os;
  bool first = true;
  for (const auto& [v, e] : m.powers)
    append_power(os, v, e, first);
  for (std::size_t i = 0; i + 1 < m.comm.size(); i += 2) {
    if (!first) os << "*";
    first = false;
    os << "[x" << m.comm[i] << ",x" << m.comm[i + 1] << "]";
  }
  return os.str();
}

std::string to_string(const NormalPoly& a) {
  return print_terms(a.terms(),
                     [](const NormalMonomial& m) { return to_string(m); });
}

std::string to_string(const GrassmannElement& g) {
  if (g.is_zero()) return "0";
  std::ostringstream os;
  bool first_term = true;
  for (const auto& [mask, c] : g.terms()) {
    if (!first_term) os << " + ";
    first_term = false;
    if (mask == 0) {
      os << c;
      continue;
    }
    if (c != 1) os << c << "*";
    bool first = true;
    for (int i = 0; i < 62; ++i) {
      if (mask & (1ULL << i)) {
        if (!first) os << "*";
        first = false;
        os << "e" << (i + 1);
      }
    }
  }
  return os.str();
}

}  // namespace relfree
