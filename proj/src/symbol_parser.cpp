#include <cctype>
#include <charconv>
#include <cmath>
#include <string_view>

#include "bergman/error.hpp"
#include "bergman/symbol.hpp"

namespace bergman {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Symbol parse() {
    skip_ws();
    if (at_end()) fail("empty symbol");
    double sign = 1.0;
    if (peek() == '+' || peek() == '-') {
      sign = (peek() == '-') ? -1.0 : 1.0;
      ++pos_;
    }
    std::vector<Term> terms;
    while (true) {
      Term t = parse_term();
      t.coeff *= sign;
      terms.push_back(t);
      skip_ws();
      if (at_end()) break;
      if (peek() != '+' && peek() != '-') fail("expected '+' or '-'");
      sign = (peek() == '-') ? -1.0 : 1.0;
      ++pos_;
    }
    return Symbol(std::move(terms));
  }

 private:
  Term parse_term() {
    skip_ws();
    if (at_end()) fail("expected a term");
    Term t;
    const char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == '(') {
      t.coeff = parse_coeff();
      skip_ws();
      if (at_end() || peek() != '*') return t;
      ++pos_;
    }
    parse_factor(t);
    while (true) {
      skip_ws();
      if (at_end() || peek() != '*') break;
      ++pos_;
      parse_factor(t);
    }
    return t;
  }

  cplx parse_coeff() {
    if (peek() == '(') {
      ++pos_;
      skip_ws();
      const double re = parse_double();
      skip_ws();
      if (at_end() || (peek() != '+' && peek() != '-')) fail("expected '+' or '-' inside complex coefficient");
      const double sign = (peek() == '-') ? -1.0 : 1.0;
      ++pos_;
      skip_ws();
      if (!at_end() && (peek() == '+' || peek() == '-')) fail("unexpected sign");
      const double im = parse_double();
      expect('i');
      skip_ws();
      expect(')');
      return {re, sign * im};
    }
    const double v = parse_double();
    if (!at_end() && peek() == 'i') {
      ++pos_;
      return {0.0, v};
    }
    return {v, 0.0};
  }

  void parse_factor(Term& t) {
    skip_ws();
    if (consume("zbar")) {
      t.n += parse_optional_int_power();
    } else if (consume("z")) {
      t.m += parse_optional_int_power();
    } else if (consume("log(")) {
      skip_ws();
      expect('r');
      skip_ws();
      expect(')');
      t.p += parse_optional_int_power();
    } else if (consume("r^")) {
      t.alpha += parse_double();
    } else {
      fail("expected a factor (z, zbar, r^a, log(r))");
    }
  }

  int parse_optional_int_power() {
    if (at_end() || peek() != '^') return 1;
    ++pos_;
    if (at_end() || !std::isdigit(static_cast<unsigned char>(peek()))) fail("expected a nonnegative integer exponent");
    int v = 0;
    auto res = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), v);
    if (res.ec != std::errc()) fail("integer exponent out of range");
    pos_ = static_cast<std::size_t>(res.ptr - text_.data());
    return v;
  }

  double parse_double() {
    if (at_end()) fail("expected a number");
    const char c = peek();
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == '-')) fail("expected a number");
    double v = 0.0;
    auto res = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), v);
    if (res.ec != std::errc() || !std::isfinite(v)) fail("malformed number");
    pos_ = static_cast<std::size_t>(res.ptr - text_.data());
    return v;
  }

  bool consume(std::string_view word) {
    if (text_.substr(pos_, word.size()) != word) return false;
    pos_ += word.size();
    return true;
  }

  void expect(char c) {
    if (at_end() || peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(pos_, msg); }

  std::string_view text_;
  std::size_t pos_ = 0;
};

std::string shortest(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

std::string coeff_text(cplx c) {
  if (c.imag() == 0.0) return shortest(c.real());
  if (c.real() == 0.0) return shortest(c.imag()) + "i";
  return "(" + shortest(c.real()) + (c.imag() < 0.0 ? "-" : "+") + shortest(std::abs(c.imag())) + "i)";
}

std::string power_text(const std::string& base, int k) {
  return k == 1 ? base : base + "^" + std::to_string(k);
}

}  // namespace

Symbol parse_symbol(const std::string& text) { return Parser(text).parse(); }

std::string to_string(const Symbol& s) {
  if (s.empty()) return "0";
  std::string out;
  bool first = true;
  for (const Term& t : s.terms()) {
    cplx c = t.coeff;
    const bool negative = c.real() < 0.0 || (c.real() == 0.0 && c.imag() < 0.0);
    if (negative) c = -c;
    if (first) {
      out += negative ? "-" : "";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;

    std::vector<std::string> factors;
    if (t.m > 0) factors.push_back(power_text("z", t.m));
    if (t.n > 0) factors.push_back(power_text("zbar", t.n));
    if (t.alpha != 0.0) factors.push_back("r^" + shortest(t.alpha));
    if (t.p > 0) factors.push_back(power_text("log(r)", t.p));

    std::string body;
    if (factors.empty() || c != cplx(1.0, 0.0)) body = coeff_text(c);
    for (const auto& f : factors) {
      if (!body.empty()) body += "*";
      body += f;
    }
    out += body;
  }
  return out;
}

}  // namespace bergman
