#include "relfree/parser.hpp"

#include <cctype>
#include <functional>
#include <vector>

namespace relfree {

namespace {

// Recursive-descent parser over a shared scanner; FreePoly and Grassmann
// expressions differ only in their primaries.
class Scanner {
 public:
  explicit Scanner(const std::string& text) : text_(text) {}

  void skip_space() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      if (text_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
      ++pos_;
    }
  }

  bool eof() {
    skip_space();
    return pos_ >= text_.size();
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  char advance() {
    char c = text_[pos_++];
    ++col_;
    return c;
  }

  bool accept(char c) {
    if (peek() == c) {
      advance();
      return true;
    }
    return false;
  }

  void expect(char c, const char* what) {
    if (!accept(c)) fail(std::string("expected '") + c + "' " + what);
  }

  long long nat(const char* what) {
    skip_space();
    if (pos_ >= text_.size() ||
        !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      fail(std::string("expected a number ") + what);
    long long v = 0;
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + (advance() - '0');
      if (v > 1'000'000'000LL) fail("number literal too large");
    }
    return v;
  }

  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError(msg, line_, col_);
  }

 private:
  const std::string& text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

template <typename Poly, typename PrimaryFn>
Poly parse_expr(Scanner& sc, const PrimaryFn& primary);

template <typename Poly, typename PrimaryFn>
Poly parse_power(Scanner& sc, const PrimaryFn& primary) {
  Poly base = primary(sc);
  if (sc.accept('^')) {
    long long e = sc.nat("as exponent");
    if (e > 1 << 12) sc.fail("exponent too large");
    return base.pow(static_cast<int>(e));
  }
  return base;
}

template <typename Poly, typename PrimaryFn>
Poly parse_term(Scanner& sc, const PrimaryFn& primary) {
  Poly acc = parse_power<Poly>(sc, primary);
  while (sc.accept('*')) acc = acc * parse_power<Poly>(sc, primary);
  return acc;
}

template <typename Poly, typename PrimaryFn>
Poly parse_expr(Scanner& sc, const PrimaryFn& primary) {
  bool negate = sc.accept('-');
  Poly acc = parse_term<Poly>(sc, primary);
  if (negate) acc = acc.scaled(acc.field().p() - 1);
  while (true) {
    if (sc.accept('+')) {
      acc += parse_term<Poly>(sc, primary);
    } else if (sc.accept('-')) {
      acc -= parse_term<Poly>(sc, primary);
    } else {
      break;
    }
  }
  return acc;
}

}  // namespace

FreePoly parse(const std::string& text, PrimeField field, int n_vars) {
  // Two passes when the ambient is derived: scan first, then build.
  std::function<FreePoly(Scanner&)> primary = [&](Scanner& sc) -> FreePoly {
    char c = sc.peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      long long v = sc.nat("as coefficient");
      return FreePoly::constant(field, n_vars, field.reduce(v));
    }
    if (c == 'x') {
      sc.advance();
      long long idx = sc.nat("as variable index");
      if (idx == 0) sc.fail("variable index 0 (indices are 1-based)");
      if (idx > n_vars) sc.fail("variable x" + std::to_string(idx) +
                                " outside ambient x1..x" +
                                std::to_string(n_vars));
      return FreePoly::variable(field, n_vars, static_cast<int>(idx));
    }
    if (c == '(') {
      sc.advance();
      FreePoly inner = parse_expr<FreePoly>(sc, primary);
      sc.expect(')', "to close the parenthesis");
      return inner;
    }
    if (c == '[') {
      sc.advance();
      std::vector<FreePoly> args;
      args.push_back(parse_expr<FreePoly>(sc, primary));
      sc.expect(',', "inside the commutator (needs at least two entries)");
      args.push_back(parse_expr<FreePoly>(sc, primary));
      while (sc.accept(',')) args.push_back(parse_expr<FreePoly>(sc, primary));
      sc.expect(']', "to close the commutator");
      return long_commutator(args);
    }
    if (c == '\0') sc.fail("unexpected end of input");
    sc.fail(std::string("unexpected character '") + c + "'");
  };

  if (n_vars <= 0) {
    // Derivation pass: find the largest variable index.
    int max_var = 0;
    {
      Scanner sc(text);
      while (!sc.eof()) {
        char c = sc.advance();
        if (c == 'x') {
          long long idx = sc.nat("as variable index");
          if (idx == 0) sc.fail("variable index 0 (indices are 1-based)");
          max_var = std::max<int>(max_var, static_cast<int>(idx));
        }
      }
    }
    n_vars = std::max(max_var, 1);
  }

  Scanner sc(text);
  FreePoly out = parse_expr<FreePoly>(sc, primary);
  if (!sc.eof()) sc.fail("trailing input after the expression");
  return out;
}

GrassmannElement parse_grassmann(const std::string& text, PrimeField field,
                                 int s) {
  std::function<GrassmannElement(Scanner&)> primary =
      [&](Scanner& sc) -> GrassmannElement {
    char c = sc.peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      long long v = sc.nat("as coefficient");
      GrassmannElement g(field, s);
      g.add_term(0, field.reduce(v));
      return g;
    }
    if (c == 'e') {
      sc.advance();
      long long idx = sc.nat("as generator index");
      if (idx == 0) sc.fail("generator index 0 (indices are 1-based)");
      if (idx > s) sc.fail("generator e" + std::to_string(idx) +
                           " outside e1..e" + std::to_string(s));
      return GrassmannElement::generator(field, s, static_cast<int>(idx));
    }
    if (c == '(') {
      sc.advance();
      GrassmannElement inner = parse_expr<GrassmannElement>(sc, primary);
      sc.expect(')', "to close the parenthesis");
      return inner;
    }
    if (c == '\0') sc.fail("unexpected end of input");
    sc.fail(std::string("unexpected character '") + c + "'");
  };

  Scanner sc(text);
  GrassmannElement out = parse_expr<GrassmannElement>(sc, primary);
  if (!sc.eof()) sc.fail("trailing input after the expression");
  return out;
}

}  // namespace relfree
