#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "pvc/errors.hpp"
#include "pvc/rf.hpp"

namespace pvc {

namespace detail {

class ExprParser {
 public:
  ExprParser(std::string_view text, ContextPtr ctx) : text_(text), ctx_(std::move(ctx)) {}

  RF parse() {
    skip_ws();
    if (pos_ == text_.size()) throw ParseError("empty expression", pos_);
    RF r = expr();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
    return r;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  RF expr() {
    RF acc = term();
    for (;;) {
      if (accept('+')) acc = acc + term();
      else if (accept('-')) acc = acc - term();
      else return acc;
    }
  }

  RF term() {
    RF acc = factor();
    for (;;) {
      if (accept('*')) {
        acc = acc * factor();
      } else if (accept('/')) {
        const std::size_t at = pos_;
        RF d = factor();
        if (d.is_zero()) throw ParseError("division by zero", at);
        acc = acc / d;
      } else {
        return acc;
      }
    }
  }

  RF factor() {
    const bool neg = accept('-');
    RF b = base();
    if (accept('^')) {
      skip_ws();
      const std::size_t at = pos_;
      bool eneg = accept('-');
      skip_ws();
      std::string digits;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) digits += text_[pos_++];
      if (digits.empty()) throw ParseError("integer exponent expected", at);
      if (digits.size() > 4) throw ParseError("exponent too large", at);
      int e = std::stoi(digits);
      if (eneg) e = -e;
      if (e < 0 && b.is_zero()) throw ParseError("negative power of zero", at);
      b = b.pow(e);
    }
    return neg ? -b : b;
  }

  RF base() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of expression", pos_);
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      RF r = expr();
      if (!accept(')')) throw ParseError("')' expected", pos_);
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string digits;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) digits += text_[pos_++];
      return RF::constant(ctx_, Rat(mpz_class(digits)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t at = pos_;
      std::string id;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        id += text_[pos_++];
      if (id == "t") {
        if (!ctx_->index_of("s")) throw ParseError("'t' needs s in context", at);
        return RF::variable(ctx_, "t");
      }
      auto idx = ctx_->index_of(id);
      if (!idx) throw ParseError("unknown identifier '" + id + "'", at);
      return RF::variable(ctx_, *idx);
    }
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  std::string_view text_;
  ContextPtr ctx_;
  std::size_t pos_ = 0;
};

inline std::string render_monomial(const Exponents& e, const VarContext& ctx) {
  std::string out;
  for (std::size_t i = 0; i < ctx.arity(); ++i) {
    if (e[i] == 0) continue;
    if (!out.empty()) out += '*';
    // with d = 1 the radical is t itself
    out += (ctx.root_degree() == 1 && ctx.names()[i] == "s") ? std::string("t") : ctx.names()[i];
    if (e[i] > 1) out += '^' + std::to_string(e[i]);
  }
  return out;
}

inline bool is_single_symbol(const MPoly& p) {
  return p.size() == 1 && p.leading().coef == 1 && total_degree(p.leading().exp) == 1;
}

}  // namespace detail

/// Parse an expression in the fixture grammar into ctx.
inline RF parse_expr(std::string_view text, const ContextPtr& ctx) {
  return detail::ExprParser(text, ctx).parse();
}

inline std::string render_poly(const MPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : p.terms()) {
    Rat c = t.coef;
    const bool neg = sgn(c) < 0;
    if (neg) c = -c;
    std::string mono = detail::render_monomial(t.exp, *p.context());
    std::string piece;
    if (mono.empty()) piece = c.get_str();
    else if (c == 1) piece = mono;
    else piece = c.get_str() + "*" + mono;
    if (first) out += neg ? "-" + piece : piece;
    else out += (neg ? " - " : " + ") + piece;
    first = false;
  }
  return out;
}

/// Render in the grammar accepted by parse_expr.
inline std::string render_expr(const RF& a) {
  if (a.is_zero()) return "0";
  Rat c = a.coefficient();
  const bool neg = sgn(c) < 0;
  if (neg) c = -c;
  std::vector<std::string> num, den;
  auto piece = [](const RF::Factor& f, int e) {
    std::string b = render_poly(f.base);
    const bool atom = detail::is_single_symbol(f.base);
    if (!atom) b = "(" + b + ")";
    if (e != 1) b += "^" + std::to_string(e);
    return b;
  };
  if (c.get_num() != 1 || a.is_constant()) num.push_back(c.get_num().get_str());
  if (c.get_den() != 1) den.push_back(c.get_den().get_str());
  for (const auto& f : a.factors()) {
    if (f.exp > 0) num.push_back(piece(f, f.exp));
    else den.push_back(piece(f, -f.exp));
  }
  auto join = [](const std::vector<std::string>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "*" : "") + v[i];
    return s;
  };
  std::string out = num.empty() ? "1" : join(num);
  if (!den.empty()) {
    std::string d = join(den);
    out += "/" + (den.size() > 1 ? "(" + d + ")" : d);
  }
  if (neg) out = "-" + out;
  return out;
}

/// Split text at top-level '+' and '-' into signed summands (sign kept on each piece).
inline std::vector<std::string> split_summands(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '(') ++depth;
    if (c == ')') --depth;
    const bool sign = (c == '+' || c == '-') && depth == 0;
    bool exponent_sign = false;
    if (sign) {
      std::size_t j = i;
      while (j > 0 && std::isspace(static_cast<unsigned char>(text[j - 1]))) --j;
      exponent_sign = j > 0 && text[j - 1] == '^';
    }
    if (sign && !exponent_sign) {
      bool blank = true;
      for (char x : cur)
        if (!std::isspace(static_cast<unsigned char>(x))) blank = false;
      if (!blank) out.push_back(cur);
      cur = (c == '-') ? "-" : "";
      continue;
    }
    cur += c;
  }
  bool blank = true;
  for (char x : cur)
    if (!std::isspace(static_cast<unsigned char>(x))) blank = false;
  if (!blank) out.push_back(cur);
  return out;
}

}  // namespace pvc
