#include "qes/exact/parse.hpp"

#include <cctype>

namespace qes::exact {
namespace {

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  MPoly run() {
    MPoly p = sum();
    skip();
    if (pos_ != s_.size()) throw ParseError("unexpected character '" + std::string(1, s_[pos_]) + "'", pos_);
    return p;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  MPoly sum() {
    MPoly acc;
    bool negate = false;
    if (accept('-')) negate = true;
    else accept('+');
    acc = product();
    if (negate) acc = -acc;
    for (;;) {
      if (accept('+')) acc += product();
      else if (accept('-')) acc -= product();
      else return acc;
    }
  }

  MPoly product() {
    MPoly acc = power();
    for (;;) {
      if (accept('*')) {
        acc *= power();
      } else if (accept('/')) {
        const std::size_t at = pos_;
        MPoly d = power();
        if (!d.is_constant() || d.is_zero()) throw ParseError("division by a non-constant or zero", at);
        acc *= BigRat(1 / d.constant_term());
      } else {
        return acc;
      }
    }
  }

  MPoly power() {
    MPoly base = atom();
    if (accept('^')) {
      skip();
      const std::size_t at = pos_;
      unsigned e = 0;
      if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
        throw ParseError("expected exponent", at);
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        e = e * 10 + static_cast<unsigned>(s_[pos_++] - '0');
        if (e > Monomial::kMaxExponent) throw ParseError("exponent too large", at);
      }
      base = base.pow(e);
    }
    return base;
  }

  MPoly atom() {
    skip();
    if (pos_ >= s_.size()) throw ParseError("unexpected end of input", pos_);
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      MPoly inner = sum();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return inner;
    }
    if (c == '-') {
      ++pos_;
      return -power();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return MPoly(BigRat(BigInt(std::string(s_.substr(start, pos_ - start)), 10)));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      const std::string_view name = s_.substr(start, pos_ - start);
      const auto v = var_from_name(name);
      if (!v) throw ParseError("unknown variable '" + std::string(name) + "'", start);
      return MPoly::variable(*v);
    }
    throw ParseError("unexpected character '" + std::string(1, c) + "'", pos_);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

MPoly parse_poly(std::string_view text) { return Parser(text).run(); }

}  // namespace qes::exact
