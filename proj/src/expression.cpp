#include <cctype>
#include <cmath>
#include <cstdlib>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>

#include "radialnet/profile.hpp"

namespace radialnet {

namespace {

using Fn = std::function<double(double)>;

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  Fn parse() {
    Fn f = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("expression '" + s_ + "': " + what + " at offset " +
                                std::to_string(pos_));
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Fn expr() {
    Fn lhs = term();
    for (;;) {
      if (eat('+')) {
        Fn rhs = term();
        lhs = [lhs, rhs](double z) { return lhs(z) + rhs(z); };
      } else if (eat('-')) {
        Fn rhs = term();
        lhs = [lhs, rhs](double z) { return lhs(z) - rhs(z); };
      } else {
        return lhs;
      }
    }
  }

  Fn term() {
    Fn lhs = unary();
    for (;;) {
      if (eat('*')) {
        Fn rhs = unary();
        lhs = [lhs, rhs](double z) { return lhs(z) * rhs(z); };
      } else if (eat('/')) {
        Fn rhs = unary();
        lhs = [lhs, rhs](double z) { return lhs(z) / rhs(z); };
      } else {
        return lhs;
      }
    }
  }

  Fn unary() {
    if (eat('-')) {
      Fn f = unary();
      return [f](double z) { return -f(z); };
    }
    if (eat('+')) return unary();
    return power();
  }

  Fn power() {
    Fn base = primary();
    if (eat('^')) {
      Fn ex = unary();  // right associative
      return [base, ex](double z) { return std::pow(base(z), ex(z)); };
    }
    return base;
  }

  Fn primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    char c = s_[pos_];
    if (eat('(')) {
      Fn f = expr();
      if (!eat(')')) fail("missing ')'");
      return f;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* begin = s_.c_str() + pos_;
      char* end = nullptr;
      double v = std::strtod(begin, &end);
      if (end == begin) fail("bad number");
      pos_ += static_cast<std::size_t>(end - begin);
      return [v](double) { return v; };
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      std::string id = s_.substr(start, pos_ - start);
      if (id == "z" || id == "r") return [](double z) { return z; };
      if (id == "pi") return [](double) { return std::numbers::pi; };
      if (id == "e") return [](double) { return std::numbers::e; };
      static const std::map<std::string, double (*)(double)> funcs = {
          {"abs", [](double x) { return std::fabs(x); }},
          {"sqrt", [](double x) { return std::sqrt(x); }},
          {"exp", [](double x) { return std::exp(x); }},
          {"log", [](double x) { return std::log(x); }},
          {"sin", [](double x) { return std::sin(x); }},
          {"cos", [](double x) { return std::cos(x); }},
      };
      auto it = funcs.find(id);
      if (it == funcs.end()) fail("unknown identifier '" + id + "'");
      if (!eat('(')) fail("expected '(' after " + id);
      Fn arg = expr();
      if (!eat(')')) fail("missing ')'");
      auto fp = it->second;
      return [fp, arg](double z) { return fp(arg(z)); };
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string s_;
  std::size_t pos_ = 0;
};

}  // namespace

std::function<double(double)> parse_expression(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty expression");
  return Parser(text).parse();
}

}  // namespace radialnet
