#include "folab/parse.hpp"

#include <cctype>

namespace folab {

ParseError::ParseError(const std::string& msg, int line, int column)
    : Error("syntax error at line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
      line_(line),
      column_(column) {}

namespace {

class ExprParser {
 public:
  ExprParser(const std::string& text, const std::vector<std::string>& vars) : s_(text), vars_(vars) {}

  MPoly parse_expression_only() {
    MPoly p = expr();
    skip();
    if (pos_ < s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

  std::vector<MPoly> parse_differential_only() {
    std::vector<MPoly> out(vars_.size(), MPoly(vars_));
    bool first = true;
    while (true) {
      skip();
      int sign = 1;
      size_t sign_pos = pos_;
      if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) {
        sign = s_[pos_] == '-' ? -1 : 1;
        ++pos_;
      } else if (!first) {
        break;
      }
      skip();
      if (pos_ >= s_.size()) {
        pos_ = sign_pos;
        fail("expected a term after '" + std::string(1, s_[sign_pos]) + "'");
      }
      first = false;
      MPoly coeff = MPoly::constant(vars_, FieldElement(sign));
      int dv = differential_at();
      if (dv < 0) {
        coeff = coeff * term();
        skip();
        if (pos_ < s_.size() && s_[pos_] == '*') {
          ++pos_;
          skip();
        }
        dv = differential_at();
        if (dv < 0) fail("expected a differential d" + (vars_.empty() ? std::string("?") : vars_[0]));
      }
      pos_ += 1 + vars_[static_cast<size_t>(dv)].size();
      out[static_cast<size_t>(dv)] += coeff;
    }
    skip();
    if (pos_ < s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    int line = 1, col = 1;
    for (size_t k = 0; k < pos_ && k < s_.size(); ++k) {
      if (s_[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(msg, line, col);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool ident_char(size_t k) const {
    return k < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[k])) || s_[k] == '_');
  }

  std::string peek_ident() const {
    size_t k = pos_;
    while (ident_char(k)) ++k;
    return s_.substr(pos_, k - pos_);
  }

  int var_of(const std::string& id) const {
    for (size_t i = 0; i < vars_.size(); ++i)
      if (vars_[i] == id) return static_cast<int>(i);
    return -1;
  }

  // Index of the variable if a differential token starts at pos_, else -1.
  int differential_at() const {
    std::string id = peek_ident();
    if (id.size() < 2 || id[0] != 'd') return -1;
    return var_of(id.substr(1));
  }

  bool starts_atom() {
    skip();
    if (pos_ >= s_.size()) return false;
    char c = s_[pos_];
    if (c == '(' || std::isdigit(static_cast<unsigned char>(c))) return true;
    if (std::isalpha(static_cast<unsigned char>(c))) return differential_at() < 0;
    return false;
  }

  MPoly expr() {
    skip();
    MPoly acc(vars_);
    bool first = true;
    while (true) {
      skip();
      int sign = 1;
      if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) {
        sign = s_[pos_] == '-' ? -1 : 1;
        ++pos_;
      } else if (!first) {
        break;
      }
      first = false;
      MPoly t = term();
      acc += sign < 0 ? -t : t;
    }
    return acc;
  }

  MPoly term() {
    MPoly acc = power();
    while (true) {
      skip();
      if (pos_ < s_.size() && s_[pos_] == '*') {
        size_t save = pos_;
        ++pos_;
        skip();
        if (differential_at() >= 0) {
          pos_ = save;
          break;
        }
        acc = acc * power();
      } else if (pos_ < s_.size() && s_[pos_] == '/') {
        ++pos_;
        MPoly d = power();
        if (!d.is_constant() || d.is_zero()) fail("division only by nonzero constants");
        acc = acc.scaled(d.constant_term().inverse());
      } else if (starts_atom()) {
        acc = acc * power();
      } else {
        break;
      }
    }
    return acc;
  }

  MPoly power() {
    skip();
    if (pos_ < s_.size() && s_[pos_] == '-') {
      ++pos_;
      return -power();
    }
    MPoly base = atom();
    skip();
    if (pos_ < s_.size() && s_[pos_] == '^') {
      ++pos_;
      skip();
      size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected an integer exponent");
      base = base.pow(std::stoi(s_.substr(start, pos_ - start)));
    }
    return base;
  }

  long integer_argument() {
    skip();
    if (pos_ >= s_.size() || s_[pos_] != '(') fail("expected '('");
    ++pos_;
    skip();
    int sign = 1;
    if (pos_ < s_.size() && s_[pos_] == '-') {
      sign = -1;
      ++pos_;
    }
    size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer");
    long v = sign * std::stol(s_.substr(start, pos_ - start));
    skip();
    if (pos_ >= s_.size() || s_[pos_] != ')') fail("expected ')'");
    ++pos_;
    return v;
  }

  FieldElement root_of(long m) {
    if (m == 0) return FieldElement(0);
    Integer sf = squarefree_part(Integer(m));
    Integer sq = Integer(m) / sf;
    Integer s;
    mpz_sqrt(s.get_mpz_t(), sq.get_mpz_t());
    if (sf == 1) return FieldElement(Rational(s));
    return FieldElement(Rational(s)) * FieldElement::sqrt_of(sf.get_si());
  }

  MPoly atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      MPoly e = expr();
      skip();
      if (pos_ >= s_.size() || s_[pos_] != ')') fail("expected ')'");
      ++pos_;
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return MPoly::constant(vars_, FieldElement(Rational(Integer(s_.substr(start, pos_ - start)))));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::string id = peek_ident();
      int v = var_of(id);
      if (v >= 0) {
        pos_ += id.size();
        return MPoly::variable(vars_, v);
      }
      if (id == "i") {
        pos_ += 1;
        return MPoly::constant(vars_, FieldElement::sqrt_of(-1));
      }
      if (id == "rt") {
        pos_ += 2;
        return MPoly::constant(vars_, root_of(integer_argument()));
      }
      if (id == "param") {
        pos_ += 5;
        skip();
        if (pos_ >= s_.size() || s_[pos_] != '(') fail("expected '('");
        ++pos_;
        skip();
        std::string name = peek_ident();
        if (name.empty()) fail("expected a parameter name");
        pos_ += name.size();
        skip();
        if (pos_ >= s_.size() || s_[pos_] != ')') fail("expected ')'");
        ++pos_;
        return MPoly::constant(vars_, FieldElement::parameter(name));
      }
      fail("unknown symbol '" + id + "'");
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const std::string& s_;
  const std::vector<std::string>& vars_;
  size_t pos_ = 0;
};

}  // namespace

MPoly parse_poly(const std::string& text, const std::vector<std::string>& vars) {
  return ExprParser(text, vars).parse_expression_only();
}

std::vector<MPoly> parse_differential(const std::string& text, const std::vector<std::string>& vars) {
  return ExprParser(text, vars).parse_differential_only();
}

}  // namespace folab
