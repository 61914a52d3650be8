#include "hbspace/parse.hpp"

#include <cctype>
#include <charconv>
#include <string>

#include "hbspace/error.hpp"

namespace hbspace {

namespace {

constexpr long kMaxPower = 64;

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  RationalFn run() {
    skip();
    if (pos_ == s_.size()) fail("empty expression");
    RationalFn out = expr();
    if (pos_ != s_.size()) fail("unexpected token");
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    const std::string tok = pos_ < s_.size() ? "'" + std::string(token_text()) + "'" : "end of input";
    throw Error(ErrorCode::kParse, why + " at " + tok + " (offset " + std::to_string(pos_) + ")");
  }

  std::string_view token_text() const {
    std::size_t end = pos_ + 1;
    if (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.') {
      while (end < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[end])) || s_[end] == '.')) ++end;
    }
    return s_.substr(pos_, end - pos_);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) const { return pos_ < s_.size() && s_[pos_] == c; }
  bool eat(char c) {
    if (!peek(c)) return false;
    ++pos_;
    skip();
    return true;
  }
  bool starts_primary() const {
    if (pos_ >= s_.size()) return false;
    const char c = s_[pos_];
    return c == '(' || c == 'z' || c == 'i' || c == '.' || std::isdigit(static_cast<unsigned char>(c));
  }

  RationalFn expr() {
    RationalFn acc = term();
    for (;;) {
      if (eat('+')) acc = acc + term();
      else if (eat('-')) acc = acc - term();
      else return acc;
    }
  }

  RationalFn term() {
    RationalFn acc = unary();
    for (;;) {
      if (eat('*')) {
        acc = acc * unary();
      } else if (peek('/')) {
        const std::size_t at = pos_;
        eat('/');
        const RationalFn d = unary();
        if (d.is_zero()) {
          pos_ = at;
          fail("division by the zero polynomial");
        }
        acc = acc / d;
      } else if (starts_primary()) {
        acc = acc * power();
      } else {
        return acc;
      }
    }
  }

  RationalFn unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }

  RationalFn power() {
    RationalFn base = primary();
    if (!eat('^')) return base;
    const std::size_t at = pos_;
    long e = 0;
    const auto [end, ec] = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), e);
    if (ec != std::errc() || e < 0 || e > kMaxPower) fail("exponent must be an integer in 0..64");
    pos_ = static_cast<std::size_t>(end - s_.data());
    if (peek('.')) {
      pos_ = at;
      fail("exponent must be an integer in 0..64");
    }
    skip();
    RationalFn out = RationalFn::constant(1.0);
    for (long k = 0; k < e; ++k) out = out * base;
    return out;
  }

  RationalFn primary() {
    if (pos_ >= s_.size()) fail("expected an operand");
    if (eat('(')) {
      RationalFn inner = expr();
      if (!eat(')')) fail("unbalanced parentheses, expected ')'");
      return inner;
    }
    if (eat('z')) return RationalFn(ComplexPoly{0.0, 1.0});
    if (eat('i')) return RationalFn::constant(cplx{0.0, 1.0});
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    fail(c == ')' ? "unbalanced parentheses" : "unexpected token");
  }

  RationalFn number() {
    double v = 0.0;
    const auto [end, ec] = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), v);
    if (ec != std::errc()) fail("malformed number");
    pos_ = static_cast<std::size_t>(end - s_.data());
    if (peek('.')) fail("malformed number");
    const bool imag = peek('i');
    if (imag) ++pos_;
    if (pos_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[pos_])) && s_[pos_] != 'z')) {
      fail("unexpected token");
    }
    skip();
    return RationalFn::constant(imag ? cplx{0.0, v} : cplx{v, 0.0});
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

RationalFn parse_rational(std::string_view text, const Tolerances& tol) {
  RationalFn raw = Parser(text).run();
  return RationalFn(raw.num(), raw.den(), tol);
}

}  // namespace hbspace
