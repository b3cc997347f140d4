// Small complex-valued expression language for field and coefficient
// descriptors: numbers, the constants i, pi, e, the variables x, y, z, t,
// + - * / ^, unary minus and the usual elementary functions.
#pragma once

#include <cctype>
#include <cmath>
#include <complex>
#include <functional>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bvroots {

struct ExprError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ExprVars {
  std::complex<double> x{}, y{}, z{}, t{};
};

class Expression {
 public:
  explicit Expression(std::string_view source) : source_(normalize(source)) {
    Parser p{source_, 0};
    root_ = p.parse_sum();
    p.skip_ws();
    if (p.pos != p.src.size()) throw ExprError("unexpected input at position " + std::to_string(p.pos) + " in '" + source_ + "'");
  }

  std::complex<double> operator()(const ExprVars& v) const { return root_->eval(v); }
  const std::string& source() const { return source_; }

 private:
  using cplx = std::complex<double>;

  // Accept U+2212 MINUS SIGN as '-'.
  static std::string normalize(std::string_view in) {
    std::string out;
    out.reserve(in.size());
    for (std::size_t k = 0; k < in.size(); ++k) {
      if (in.substr(k, 3) == "\xe2\x88\x92") {
        out.push_back('-');
        k += 2;
      } else {
        out.push_back(in[k]);
      }
    }
    return out;
  }

  struct Node {
    virtual ~Node() = default;
    virtual cplx eval(const ExprVars& v) const = 0;
  };
  using NodePtr = std::shared_ptr<const Node>;

  struct Constant final : Node {
    cplx value;
    explicit Constant(cplx c) : value(c) {}
    cplx eval(const ExprVars&) const override { return value; }
  };
  struct Variable final : Node {
    cplx ExprVars::*member;
    explicit Variable(cplx ExprVars::*m) : member(m) {}
    cplx eval(const ExprVars& v) const override { return v.*member; }
  };
  struct Binary final : Node {
    char op;
    NodePtr lhs, rhs;
    Binary(char o, NodePtr l, NodePtr r) : op(o), lhs(std::move(l)), rhs(std::move(r)) {}
    cplx eval(const ExprVars& v) const override {
      const cplx a = lhs->eval(v), b = rhs->eval(v);
      switch (op) {
        case '+': return a + b;
        case '-': return a - b;
        case '*': return a * b;
        case '/': return a / b;
        default: return power(a, b);
      }
    }
  };
  struct Negate final : Node {
    NodePtr arg;
    explicit Negate(NodePtr a) : arg(std::move(a)) {}
    cplx eval(const ExprVars& v) const override { return -arg->eval(v); }
  };
  struct Call final : Node {
    std::function<cplx(cplx)> fn;
    NodePtr arg;
    Call(std::function<cplx(cplx)> f, NodePtr a) : fn(std::move(f)), arg(std::move(a)) {}
    cplx eval(const ExprVars& v) const override { return fn(arg->eval(v)); }
  };

  // Integer exponents use repeated multiplication so that z^2 at z = i is
  // exactly -1.
  static cplx power(cplx a, cplx b) {
    if (b.imag() == 0.0 && b.real() == std::round(b.real()) && std::abs(b.real()) <= 64) {
      int n = static_cast<int>(b.real());
      cplx result = 1.0, base = a;
      const bool invert = n < 0;
      for (n = std::abs(n); n > 0; n >>= 1) {
        if (n & 1) result *= base;
        base *= base;
      }
      return invert ? 1.0 / result : result;
    }
    if (a == cplx{}) return {};
    return std::pow(a, b);
  }

  static std::function<cplx(cplx)> lookup_function(const std::string& name) {
    if (name == "exp") return [](cplx a) { return std::exp(a); };
    if (name == "log") return [](cplx a) { return std::log(a); };
    if (name == "sqrt") return [](cplx a) { return std::sqrt(a); };
    if (name == "sin") return [](cplx a) { return std::sin(a); };
    if (name == "cos") return [](cplx a) { return std::cos(a); };
    if (name == "tan") return [](cplx a) { return std::tan(a); };
    if (name == "sinh") return [](cplx a) { return std::sinh(a); };
    if (name == "cosh") return [](cplx a) { return std::cosh(a); };
    if (name == "tanh") return [](cplx a) { return std::tanh(a); };
    if (name == "abs") return [](cplx a) { return cplx(std::abs(a)); };
    if (name == "arg") return [](cplx a) { return cplx(std::arg(a)); };
    if (name == "conj") return [](cplx a) { return std::conj(a); };
    if (name == "re") return [](cplx a) { return cplx(a.real()); };
    if (name == "im") return [](cplx a) { return cplx(a.imag()); };
    return {};
  }

  struct Parser {
    std::string_view src;
    std::size_t pos;

    void skip_ws() {
      while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
    }
    bool accept(char c) {
      skip_ws();
      if (pos < src.size() && src[pos] == c) {
        ++pos;
        return true;
      }
      return false;
    }
    [[noreturn]] void fail(const std::string& what) const {
      throw ExprError(what + " at position " + std::to_string(pos) + " in '" + std::string(src) + "'");
    }

    NodePtr parse_sum() {
      NodePtr lhs = parse_product();
      for (;;) {
        if (accept('+')) lhs = std::make_shared<Binary>('+', lhs, parse_product());
        else if (accept('-')) lhs = std::make_shared<Binary>('-', lhs, parse_product());
        else return lhs;
      }
    }
    NodePtr parse_product() {
      NodePtr lhs = parse_unary();
      for (;;) {
        if (accept('*')) lhs = std::make_shared<Binary>('*', lhs, parse_unary());
        else if (accept('/')) lhs = std::make_shared<Binary>('/', lhs, parse_unary());
        else return lhs;
      }
    }
    NodePtr parse_unary() {
      if (accept('-')) return std::make_shared<Negate>(parse_unary());
      if (accept('+')) return parse_unary();
      return parse_power();
    }
    // Right associative; binds tighter than unary minus on its left operand.
    NodePtr parse_power() {
      NodePtr base = parse_atom();
      if (accept('^')) return std::make_shared<Binary>('^', base, parse_unary());
      return base;
    }
    NodePtr parse_atom() {
      skip_ws();
      if (pos >= src.size()) fail("unexpected end of expression");
      const char c = src[pos];
      if (accept('(')) {
        NodePtr inner = parse_sum();
        if (!accept(')')) fail("expected ')'");
        return inner;
      }
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
        std::size_t used = 0;
        const std::string rest(src.substr(pos));
        double value = 0.0;
        try {
          value = std::stod(rest, &used);
        } catch (const std::exception&) {
          fail("malformed number");
        }
        pos += used;
        return std::make_shared<Constant>(cplx(value));
      }
      if (std::isalpha(static_cast<unsigned char>(c))) {
        const std::size_t start = pos;
        while (pos < src.size() && (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_')) ++pos;
        const std::string name(src.substr(start, pos - start));
        if (auto fn = lookup_function(name)) {
          if (!accept('(')) fail("expected '(' after " + name);
          NodePtr arg = parse_sum();
          if (!accept(')')) fail("expected ')'");
          return std::make_shared<Call>(std::move(fn), std::move(arg));
        }
        if (name == "x") return std::make_shared<Variable>(&ExprVars::x);
        if (name == "y") return std::make_shared<Variable>(&ExprVars::y);
        if (name == "z") return std::make_shared<Variable>(&ExprVars::z);
        if (name == "t") return std::make_shared<Variable>(&ExprVars::t);
        if (name == "i") return std::make_shared<Constant>(cplx(0.0, 1.0));
        if (name == "pi") return std::make_shared<Constant>(cplx(std::numbers::pi));
        if (name == "e") return std::make_shared<Constant>(cplx(std::numbers::e));
        pos = start;
        fail("unknown identifier '" + name + "'");
      }
      fail(std::string("unexpected character '") + c + "'");
    }
  };

  std::string source_;
  NodePtr root_;
};

}  // namespace bvroots
