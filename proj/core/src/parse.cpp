#include "pcs/parse.hpp"

#include <cctype>

namespace pcs {

namespace {

struct Parser {
  const std::string& text;
  const FieldSpec& F;
  ParseNotes* notes;
  size_t pos = 0;

  [[noreturn]] void error(const std::string& msg) const {
    fail(errc::syntax_error, msg + " at position " + std::to_string(pos));
  }

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  bool peek(char c) {
    skip_ws();
    return pos < text.size() && text[pos] == c;
  }

  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos;
    return true;
  }

  mpz_class integer() {
    skip_ws();
    size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start) error("expected an integer");
    return mpz_class(text.substr(start, pos - start));
  }

  int exponent() {
    mpz_class e = integer();
    if (e < 0 || e > 100000) error("exponent out of range");
    return static_cast<int>(e.get_si());
  }

  BivariatePolynomial atom() {
    skip_ws();
    if (pos >= text.size()) error("unexpected end of input");
    char c = text[pos];
    if (c == '(') {
      ++pos;
      BivariatePolynomial e = expr();
      if (!accept(')')) error("expected ')'");
      return e;
    }
    if (c == 'X' || c == 'x') {
      ++pos;
      return BivariatePolynomial::variable(F, Var::X);
    }
    if (c == 'Y' || c == 'y') {
      ++pos;
      return BivariatePolynomial::variable(F, Var::Y);
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mpz_class n = integer();
      FieldElement v = F.from_rational(mpq_class(n));
      if (v.is_zero() && n != 0 && notes)
        notes->reduced_literals.push_back(n.get_str() + " = 0 in " + F.to_string());
      return BivariatePolynomial::constant(v);
    }
    error("unexpected character '" + std::string(1, c) + "'");
  }

  BivariatePolynomial power() {
    BivariatePolynomial base = atom();
    if (accept('^')) {
      int e = exponent();
      return base.pow(e);
    }
    return base;
  }

  BivariatePolynomial factor() {
    skip_ws();
    if (accept('-')) return -factor();
    if (accept('+')) return factor();
    return power();
  }

  BivariatePolynomial term() {
    BivariatePolynomial acc = factor();
    while (accept('*')) acc = acc * factor();
    skip_ws();
    // reject implicit multiplication like "2X" or ")("
    if (pos < text.size()) {
      char c = text[pos];
      if (c == '(' || c == 'X' || c == 'x' || c == 'Y' || c == 'y' ||
          std::isdigit(static_cast<unsigned char>(c)))
        error("implicit multiplication is not allowed; use '*'");
    }
    return acc;
  }

  BivariatePolynomial expr() {
    BivariatePolynomial acc = term();
    while (true) {
      if (accept('+'))
        acc = acc + term();
      else if (accept('-'))
        acc = acc - term();
      else
        break;
    }
    return acc;
  }
};

}  // namespace

BivariatePolynomial parse_expression(const std::string& text, const FieldSpec& field,
                                     ParseNotes* notes) {
  Parser p{text, field, notes};
  BivariatePolynomial result = p.expr();
  p.skip_ws();
  if (p.pos != text.size()) p.error("trailing input");
  return result;
}

}  // namespace pcs
