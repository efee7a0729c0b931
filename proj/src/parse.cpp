#include "corrheight/parse.hpp"

#include <cctype>

namespace corrh::arith {

namespace {

MPoly add(MPoly a, const MPoly& b, int sign) {
  for (const auto& [e, c] : b) {
    Rational v = a[e] + (sign < 0 ? Rational(-c) : c);
    if (sgn(v) == 0)
      a.erase(e);
    else
      a[e] = v;
  }
  return a;
}

MPoly mul(const MPoly& a, const MPoly& b) {
  MPoly out;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      std::array<unsigned, 3> e{ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]};
      Rational v = out[e] + ca * cb;
      if (sgn(v) == 0)
        out.erase(e);
      else
        out[e] = v;
    }
  return out;
}

MPoly constant(const Rational& c) {
  MPoly p;
  if (sgn(c) != 0) p[{0, 0, 0}] = c;
  return p;
}

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  MPoly run() {
    skip();
    if (pos_ == s_.size()) throw ParseError("empty polynomial", pos_);
    MPoly p = expr();
    skip();
    if (pos_ != s_.size()) throw ParseError(std::string("unexpected '") + s_[pos_] + "'", pos_);
    return p;
  }

  Rational number_only() {
    skip();
    int sign = 1;
    if (peek() == '-' || peek() == '+') {
      sign = peek() == '-' ? -1 : 1;
      ++pos_;
      skip();
    }
    Rational q = number();
    skip();
    if (peek() == '/') {
      ++pos_;
      skip();
      const std::size_t at = pos_;
      Rational d = number();
      if (sgn(d) == 0) throw ParseError("division by zero", at);
      q /= d;
    }
    skip();
    if (pos_ != s_.size()) throw ParseError(std::string("unexpected '") + s_[pos_] + "'", pos_);
    return sign < 0 ? Rational(-q) : q;
  }

 private:
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool starts_primary() const {
    const char c = peek();
    return std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == 'x' || c == 'y' || c == 't' || c == '(';
  }

  MPoly expr() {
    MPoly acc = term();
    for (;;) {
      skip();
      const char c = peek();
      if (c != '+' && c != '-') return acc;
      ++pos_;
      acc = add(std::move(acc), term(), c == '-' ? -1 : 1);
    }
  }

  MPoly term() {
    MPoly acc = unary();
    for (;;) {
      skip();
      const char c = peek();
      if (c == '*') {
        ++pos_;
        acc = mul(acc, unary());
      } else if (c == '/') {
        ++pos_;
        skip();
        const std::size_t at = pos_;
        MPoly d = unary();
        if (d.size() > 1 || (d.size() == 1 && d.begin()->first != std::array<unsigned, 3>{0, 0, 0}))
          throw ParseError("division by a non-constant", at);
        if (d.empty()) throw ParseError("division by zero", at);
        acc = mul(acc, constant(1 / d.begin()->second));
      } else if (starts_primary()) {
        acc = mul(acc, power());
      } else {
        return acc;
      }
    }
  }

  MPoly unary() {
    skip();
    const char c = peek();
    if (c == '-' || c == '+') {
      ++pos_;
      MPoly inner = unary();
      return c == '-' ? add(MPoly{}, inner, -1) : inner;
    }
    return power();
  }

  MPoly power() {
    MPoly base = primary();
    skip();
    if (peek() != '^') return base;
    ++pos_;
    skip();
    const std::size_t at = pos_;
    if (!std::isdigit(static_cast<unsigned char>(peek()))) throw ParseError("exponent must be a non-negative integer", at);
    unsigned long e = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      e = e * 10 + static_cast<unsigned long>(s_[pos_++] - '0');
      if (e > 100000) throw ParseError("exponent too large", at);
    }
    MPoly r = constant(1);
    for (unsigned long i = 0; i < e; ++i) r = mul(r, base);
    return r;
  }

  MPoly primary() {
    skip();
    const char c = peek();
    if (c == '(') {
      const std::size_t open = pos_;
      ++pos_;
      MPoly inner = expr();
      skip();
      if (peek() != ')') throw ParseError("unbalanced parenthesis", open);
      ++pos_;
      return inner;
    }
    if (c == 'x' || c == 'y' || c == 't') {
      ++pos_;
      if (std::isalnum(static_cast<unsigned char>(peek())) && !std::isdigit(static_cast<unsigned char>(peek())))
        throw ParseError("unknown identifier", pos_ - 1);
      std::array<unsigned, 3> e{0, 0, 0};
      e[c == 'x' ? 0 : c == 'y' ? 1 : 2] = 1;
      return MPoly{{e, Rational(1)}};
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return constant(number());
    if (c == '\0') throw ParseError("unexpected end of input", pos_);
    if (std::isalpha(static_cast<unsigned char>(c))) throw ParseError(std::string("unknown variable '") + c + "'", pos_);
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  Rational number() {
    const std::size_t start = pos_;
    std::string digits;
    while (std::isdigit(static_cast<unsigned char>(peek()))) digits += s_[pos_++];
    Integer den = 1;
    if (peek() == '.') {
      ++pos_;
      while (std::isdigit(static_cast<unsigned char>(peek()))) {
        digits += s_[pos_++];
        den *= 10;
      }
    }
    if (digits.empty()) throw ParseError("malformed number", start);
    Rational q(Integer(digits), den);
    q.canonicalize();
    return q;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

MPoly parse_polynomial(std::string_view text) { return Parser(text).run(); }

Rational parse_rational(std::string_view text) { return Parser(text).number_only(); }

bool uses_variable(const MPoly& p, int var) {
  for (const auto& [e, c] : p)
    if (e[var] > 0) return true;
  return false;
}

BiPoly to_bipoly(const MPoly& p) {
  if (uses_variable(p, 2)) throw ValidationError("unexpected parameter t in a correspondence");
  std::vector<std::vector<Rational>> rows;
  for (const auto& [e, c] : p) {
    if (rows.size() <= e[0]) rows.resize(e[0] + 1);
    if (rows[e[0]].size() <= e[1]) rows[e[0]].resize(e[1] + 1);
    rows[e[0]][e[1]] = c;
  }
  return BiPoly(std::move(rows));
}

UniPoly to_unipoly(const MPoly& p, int var) {
  for (int v = 0; v < 3; ++v)
    if (v != var && uses_variable(p, v)) throw ValidationError("polynomial must be univariate");
  std::vector<Rational> c;
  for (const auto& [e, v] : p) {
    if (c.size() <= e[var]) c.resize(e[var] + 1);
    c[e[var]] = v;
  }
  return UniPoly(std::move(c));
}

BiPoly specialize(const MPoly& family, const Rational& value) {
  MPoly out;
  for (const auto& [e, c] : family) {
    Rational v = c;
    for (unsigned i = 0; i < e[2]; ++i) v *= value;
    std::array<unsigned, 3> k{e[0], e[1], 0};
    Rational s = out[k] + v;
    if (sgn(s) == 0)
      out.erase(k);
    else
      out[k] = s;
  }
  return to_bipoly(out);
}

std::string to_string(const MPoly& p) {
  if (p.empty()) return "0";
  std::string out;
  const char names[3] = {'x', 'y', 't'};
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    const auto& [e, c] = *it;
    const bool neg = sgn(c) < 0;
    Rational a = neg ? Rational(-c) : c;
    out += out.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
    std::string mono;
    for (int v = 0; v < 3; ++v) {
      if (e[v] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += names[v];
      if (e[v] > 1) mono += "^" + std::to_string(e[v]);
    }
    if (mono.empty())
      out += to_string(a);
    else if (a == 1)
      out += mono;
    else
      out += to_string(a) + "*" + mono;
  }
  return out;
}

}  // namespace corrh::arith
