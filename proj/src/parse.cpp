#include "ffmc/parse.hpp"

#include <cctype>
#include <charconv>
#include <map>

namespace ffmc {

namespace {

enum class Tok { Int, Ident, Sym, Newline, End };

struct Token {
  Tok kind;
  std::string text;
  int line;
  int col;
};

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto push = [&](Tok k, std::string t, int c) { out.push_back({k, std::move(t), line, c}); };
  while (i < src.size()) {
    const char ch = src[i];
    if (ch == '\n') {
      push(Tok::Newline, "\\n", col);
      ++i;
      ++line;
      col = 1;
      continue;
    }
    if (ch == '#') {
      while (i < src.size() && src[i] != '\n') ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(ch))) {
      ++i;
      ++col;
      continue;
    }
    const int start = col;
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      push(Tok::Int, std::string(src.substr(i, j - i)), start);
      col += static_cast<int>(j - i);
      i = j;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      push(Tok::Ident, std::string(src.substr(i, j - i)), start);
      col += static_cast<int>(j - i);
      i = j;
      continue;
    }
    if (ch == '!' && i + 1 < src.size() && src[i + 1] == '=') {
      push(Tok::Sym, "!=", start);
      i += 2;
      col += 2;
      continue;
    }
    if (std::string_view("^+-*=|()").find(ch) != std::string_view::npos) {
      push(Tok::Sym, std::string(1, ch), start);
      ++i;
      ++col;
      continue;
    }
    throw Error(ErrorKind::Syntax, "line " + std::to_string(line) + ", column " + std::to_string(col) +
                                       ": unexpected character '" + std::string(1, ch) + "'");
  }
  out.push_back({Tok::End, "end of input", line, col});
  return out;
}

class Parser {
 public:
  Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Formula file() {
    Formula F;
    skip_newlines();
    field_decl();
    F.field = field_;
    skip_newlines();
    expect_word("vars");
    while (peek().kind == Tok::Ident) {
      const Token& t = next();
      for (const auto& n : names_)
        if (n == t.text) fail(t, "duplicate variable '" + t.text + "'", ErrorKind::Semantic);
      names_.push_back(t.text);
    }
    end_of_line();
    F.nvars = static_cast<int>(names_.size());
    F.names = names_;
    skip_newlines();
    while (peek().kind != Tok::End) {
      expect_word("clause");
      Clause c;
      if (peek().kind != Tok::Newline && peek().kind != Tok::End) {
        c.literals.push_back(literal());
        while (accept_sym("|")) c.literals.push_back(literal());
      }
      end_of_line();
      F.clauses.push_back(std::move(c));
      skip_newlines();
    }
    return F;
  }

  void set_context(FieldPtr field, std::vector<std::string> names) {
    field_ = std::move(field);
    names_ = std::move(names);
  }

  Polynomial whole_polynomial() {
    Polynomial p = poly();
    if (peek().kind != Tok::End) fail(peek(), "unexpected '" + peek().text + "'");
    return p;
  }

  Constraint whole_constraint() {
    Constraint c = literal();
    if (peek().kind != Tok::End) fail(peek(), "unexpected '" + peek().text + "'");
    return c;
  }

 private:
  [[noreturn]] void fail(const Token& t, const std::string& msg, ErrorKind kind = ErrorKind::Syntax) const {
    throw Error(kind, "line " + std::to_string(t.line) + ", column " + std::to_string(t.col) + ": " + msg);
  }

  const Token& peek() const { return toks_[pos_]; }
  const Token& next() {
    const Token& t = toks_[pos_];
    if (t.kind != Tok::End) ++pos_;
    return t;
  }
  bool accept_sym(std::string_view s) {
    if (peek().kind == Tok::Sym && peek().text == s) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect_sym(std::string_view s) {
    if (!accept_sym(s)) fail(peek(), "expected '" + std::string(s) + "', found '" + peek().text + "'");
  }
  void expect_word(std::string_view w) {
    if (peek().kind != Tok::Ident || peek().text != w)
      fail(peek(), "expected '" + std::string(w) + "', found '" + peek().text + "'");
    ++pos_;
  }
  void skip_newlines() {
    while (peek().kind == Tok::Newline) ++pos_;
  }
  void end_of_line() {
    if (peek().kind == Tok::End) return;
    if (peek().kind != Tok::Newline) fail(peek(), "expected end of line, found '" + peek().text + "'");
    ++pos_;
  }

  std::int64_t integer() {
    const Token& t = peek();
    if (t.kind != Tok::Int) fail(t, "expected an integer, found '" + t.text + "'");
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc() || ptr != t.text.data() + t.text.size()) fail(t, "integer out of range");
    ++pos_;
    return v;
  }

  // Integer-coefficient polynomial in the generator symbol `a`; degree -> coefficient.
  std::map<int, std::int64_t> symbol_poly() {
    std::map<int, std::int64_t> out;
    std::int64_t sign = accept_sym("-") ? -1 : (accept_sym("+"), 1);
    for (;;) {
      std::int64_t c = 1;
      int deg = 0;
      bool any = false;
      if (peek().kind == Tok::Int) {
        c = integer();
        any = true;
        accept_sym("*");
      }
      if (peek().kind == Tok::Ident && peek().text == "a") {
        ++pos_;
        deg = 1;
        if (accept_sym("^")) deg = static_cast<int>(integer());
        any = true;
      }
      if (!any) fail(peek(), "expected a term in 'a', found '" + peek().text + "'");
      out[deg] += sign * c;
      if (accept_sym("+"))
        sign = 1;
      else if (accept_sym("-"))
        sign = -1;
      else
        break;
    }
    return out;
  }

  std::vector<std::uint32_t> reduce_coeffs(const std::map<int, std::int64_t>& m, std::int64_t p) const {
    std::vector<std::uint32_t> out;
    for (const auto& [d, c] : m) {
      if (out.size() <= static_cast<std::size_t>(d)) out.resize(static_cast<std::size_t>(d) + 1, 0);
      out[static_cast<std::size_t>(d)] = static_cast<std::uint32_t>(((c % p) + p) % p);
    }
    return out;
  }

  void field_decl() {
    const Token& head = peek();
    expect_word("field");
    const Token& num = peek();
    const std::int64_t base = integer();
    std::int64_t k = 1;
    bool explicit_power = false;
    if (accept_sym("^")) {
      k = integer();
      explicit_power = true;
    }
    try {
      std::optional<std::vector<std::uint32_t>> modulus;
      std::int64_t p = base;
      if (!explicit_power) {
        // Split a prime power q into p^k.
        std::int64_t q = base;
        if (q < 2) throw Error(ErrorKind::NotPrimePower, std::to_string(q) + " is not a prime power");
        p = 0;
        for (std::int64_t d = 2; d * d <= q; ++d)
          if (q % d == 0) {
            p = d;
            break;
          }
        if (p == 0) p = q;
        k = 0;
        while (q % p == 0) {
          q /= p;
          ++k;
        }
        if (q != 1) throw Error(ErrorKind::NotPrimePower, std::to_string(base) + " is not a prime power");
      } else if (k < 1 || k > 20) {
        fail(num, "bad extension degree", ErrorKind::Semantic);
      }
      if (peek().kind == Tok::Ident && peek().text == "mod") {
        ++pos_;
        if (!Field::is_prime(static_cast<std::uint64_t>(std::max<std::int64_t>(p, 0))))
          throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
        modulus = reduce_coeffs(symbol_poly(), p);
      }
      if (k == 1 && !modulus)
        field_ = Field::prime(p);
      else
        field_ = Field::extension(p, static_cast<int>(k), modulus);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::Syntax) throw;
      fail(head, e.what(), e.kind());
    }
    end_of_line();
  }

  Constraint literal() {
    Polynomial lhs = poly();
    Rel rel;
    if (accept_sym("="))
      rel = Rel::Eq;
    else if (accept_sym("!="))
      rel = Rel::Neq;
    else
      fail(peek(), "expected '=' or '!=', found '" + peek().text + "'");
    Polynomial rhs = poly();
    return {lhs - rhs, rel};
  }

  bool starts_atom() const {
    const Token& t = peek();
    return t.kind == Tok::Int || t.kind == Tok::Ident || (t.kind == Tok::Sym && t.text == "(");
  }

  Polynomial poly() {
    Polynomial out(field_);
    bool negative = false;
    if (accept_sym("-"))
      negative = true;
    else
      accept_sym("+");
    for (;;) {
      if (!starts_atom()) fail(peek(), "expected a term, found '" + peek().text + "'");
      Polynomial t = term();
      out += negative ? -t : t;
      if (accept_sym("+"))
        negative = false;
      else if (accept_sym("-"))
        negative = true;
      else
        break;
    }
    return out;
  }

  Polynomial term() {
    const Field& F = *field_;
    Elem c = F.one();
    std::vector<Monomial::Factor> factors;
    for (;;) {
      const Token& t = peek();
      if (t.kind == Tok::Int) {
        c = F.mul(c, F.from_integer(integer() % static_cast<std::int64_t>(F.characteristic())));
      } else if (t.kind == Tok::Sym && t.text == "(") {
        ++pos_;
        if (F.is_prime_field()) {
          // Parenthesized subexpression over a prime field.
          Polynomial inner = poly();
          expect_sym(")");
          Polynomial rest = factors.empty() ? Polynomial::constant(field_, c)
                                            : Polynomial::monomial(field_, c, Monomial::from_factors(factors));
          Polynomial prod = rest * inner;
          if (accept_sym("*") || starts_atom()) prod = prod * term();
          return prod;
        }
        const auto coeffs = reduce_coeffs(symbol_poly(), F.characteristic());
        expect_sym(")");
        c = F.mul(c, F.from_coefficients(coeffs));
      } else if (t.kind == Tok::Ident) {
        const int x = lookup(t);
        ++pos_;
        int e = 1;
        if (accept_sym("^")) {
          const Token& et = peek();
          const std::int64_t ev = integer();
          if (ev < 0 || ev > 1000000) fail(et, "exponent out of range");
          e = static_cast<int>(ev);
        }
        if (x == 0)
          c = F.mul(c, F.pow(F.generator(), static_cast<std::uint64_t>(e)));
        else
          factors.emplace_back(x, e);
      } else {
        fail(t, "expected a coefficient or variable, found '" + t.text + "'");
      }
      if (accept_sym("*")) continue;
      if (!starts_atom()) break;
    }
    return Polynomial::monomial(field_, c, Monomial::from_factors(std::move(factors)));
  }

  // Variable index, or 0 for the generator symbol of an extension field.
  int lookup(const Token& t) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == t.text) return static_cast<int>(i) + 1;
    if (names_.empty() && t.text.size() > 1 && t.text[0] == 'x') {
      int v = 0;
      auto [ptr, ec] = std::from_chars(t.text.data() + 1, t.text.data() + t.text.size(), v);
      if (ec == std::errc() && ptr == t.text.data() + t.text.size() && v >= 1) return v;
    }
    if (t.text == "a" && !field_->is_prime_field()) return 0;
    fail(t, "unknown variable '" + t.text + "'", ErrorKind::Semantic);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  FieldPtr field_;
  std::vector<std::string> names_;
};

}  // namespace

Formula parse_formula(std::string_view text) {
  Parser p(lex(text));
  return p.file();
}

Polynomial parse_polynomial(const FieldPtr& field, std::string_view text, const std::vector<std::string>& names) {
  Parser p(lex(text));
  p.set_context(field, names);
  return p.whole_polynomial();
}

Constraint parse_constraint(const FieldPtr& field, std::string_view text, const std::vector<std::string>& names) {
  Parser p(lex(text));
  p.set_context(field, names);
  return p.whole_constraint();
}

}  // namespace ffmc
