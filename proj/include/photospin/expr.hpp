#ifndef PHOTOSPIN_EXPR_HPP
#define PHOTOSPIN_EXPR_HPP

#include <cctype>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "photospin/jet.hpp"

namespace photospin {

struct ExprError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Small arithmetic expressions over the coordinates (t, x1, x2, x3):
// operators + - * / ^, functions exp, sin, cos, sqrt, constants pi and e.
// Evaluation is templated so profiles can be sampled with plain doubles or
// with forward-mode jets.
class Expression {
 public:
  static Expression parse(const std::string& text);

  template <typename T>
  T evaluate(const std::array<T, 4>& vars) const {
    if (!root_) throw ExprError("empty expression");
    return eval_node<T>(*root_, vars);
  }

  Jet2d evaluate_jets(const Vec4& x) const {
    std::array<Jet2d, 4> vars;
    for (int a = 0; a < 4; ++a) vars[static_cast<std::size_t>(a)] = Jet2d::variable(x(a), a);
    return evaluate(vars);
  }

 private:
  enum class Kind { Number, Variable, Add, Sub, Mul, Div, Pow, Neg, Call };

  struct Node {
    Kind kind;
    double number = 0.0;
    int variable = 0;                         // index into (t, x1, x2, x3)
    std::string name;                         // function name for Call
    std::vector<std::unique_ptr<Node>> args;  // operands
  };

  std::shared_ptr<const Node> root_;

  template <typename T>
  static T eval_node(const Node& n, const std::array<T, 4>& vars) {
    switch (n.kind) {
      case Kind::Number:
        return T(n.number);
      case Kind::Variable:
        return vars[static_cast<std::size_t>(n.variable)];
      case Kind::Add:
        return eval_node<T>(*n.args[0], vars) + eval_node<T>(*n.args[1], vars);
      case Kind::Sub:
        return eval_node<T>(*n.args[0], vars) - eval_node<T>(*n.args[1], vars);
      case Kind::Mul:
        return eval_node<T>(*n.args[0], vars) * eval_node<T>(*n.args[1], vars);
      case Kind::Div:
        return eval_node<T>(*n.args[0], vars) / eval_node<T>(*n.args[1], vars);
      case Kind::Neg:
        return T(0.0) - eval_node<T>(*n.args[0], vars);
      case Kind::Pow: {
        const T base = eval_node<T>(*n.args[0], vars);
        if (n.args[1]->kind == Kind::Number) return pow_impl(base, n.args[1]->number);
        return exp(eval_node<T>(*n.args[1], vars) * log(base));
      }
      case Kind::Call: {
        const T a = eval_node<T>(*n.args[0], vars);
        if (n.name == "exp") return exp(a);
        if (n.name == "sin") return sin(a);
        if (n.name == "cos") return cos(a);
        if (n.name == "sqrt") return sqrt(a);
        throw ExprError("unknown function: " + n.name);
      }
    }
    throw ExprError("corrupt expression tree");
  }

  static double pow_impl(double base, double p) { return std::pow(base, p); }
  static Jet2d pow_impl(const Jet2d& base, double p) { return pow(base, p); }

  // ---- recursive-descent parser ----
  struct Parser {
    const std::string& s;
    std::size_t pos = 0;

    void skip() {
      while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(char c) {
      skip();
      if (pos < s.size() && s[pos] == c) {
        ++pos;
        return true;
      }
      return false;
    }
    [[noreturn]] void fail(const std::string& what) {
      throw ExprError(what + " at position " + std::to_string(pos) + " in '" + s + "'");
    }

    std::unique_ptr<Node> sum() {
      auto lhs = product();
      for (;;) {
        if (eat('+')) {
          auto n = std::make_unique<Node>();
          n->kind = Kind::Add;
          n->args.push_back(std::move(lhs));
          n->args.push_back(product());
          lhs = std::move(n);
        } else if (eat('-')) {
          auto n = std::make_unique<Node>();
          n->kind = Kind::Sub;
          n->args.push_back(std::move(lhs));
          n->args.push_back(product());
          lhs = std::move(n);
        } else {
          return lhs;
        }
      }
    }
    std::unique_ptr<Node> product() {
      auto lhs = unary();
      for (;;) {
        if (eat('*')) {
          auto n = std::make_unique<Node>();
          n->kind = Kind::Mul;
          n->args.push_back(std::move(lhs));
          n->args.push_back(unary());
          lhs = std::move(n);
        } else if (eat('/')) {
          auto n = std::make_unique<Node>();
          n->kind = Kind::Div;
          n->args.push_back(std::move(lhs));
          n->args.push_back(unary());
          lhs = std::move(n);
        } else {
          return lhs;
        }
      }
    }
    std::unique_ptr<Node> unary() {
      if (eat('-')) {
        auto n = std::make_unique<Node>();
        n->kind = Kind::Neg;
        n->args.push_back(unary());
        return n;
      }
      (void)eat('+');
      return power();
    }
    std::unique_ptr<Node> power() {
      auto base = atom();
      if (eat('^')) {  // right-associative
        auto n = std::make_unique<Node>();
        n->kind = Kind::Pow;
        n->args.push_back(std::move(base));
        n->args.push_back(unary());
        return n;
      }
      return base;
    }
    std::unique_ptr<Node> atom() {
      skip();
      if (pos >= s.size()) fail("unexpected end of expression");
      const char c = s[pos];
      if (c == '(') {
        ++pos;
        auto inner = sum();
        if (!eat(')')) fail("missing ')'");
        return inner;
      }
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
        std::size_t len = 0;
        const double v = std::stod(s.substr(pos), &len);
        pos += len;
        auto n = std::make_unique<Node>();
        n->kind = Kind::Number;
        n->number = v;
        return n;
      }
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t end = pos;
        while (end < s.size() &&
               (std::isalnum(static_cast<unsigned char>(s[end])) || s[end] == '_'))
          ++end;
        const std::string word = s.substr(pos, end - pos);
        pos = end;
        auto n = std::make_unique<Node>();
        if (word == "pi" || word == "e") {
          n->kind = Kind::Number;
          n->number = word == "pi" ? M_PI : M_E;
          return n;
        }
        if (word == "t" || word == "x1" || word == "x2" || word == "x3") {
          n->kind = Kind::Variable;
          n->variable = word == "t" ? 0 : word[1] - '0';
          return n;
        }
        if (eat('(')) {
          n->kind = Kind::Call;
          n->name = word;
          if (!(word == "exp" || word == "sin" || word == "cos" || word == "sqrt"))
            fail("unknown function '" + word + "'");
          n->args.push_back(sum());
          if (!eat(')')) fail("missing ')' after function argument");
          return n;
        }
        fail("unknown identifier '" + word + "'");
      }
      fail(std::string("unexpected character '") + c + "'");
    }
  };
};

inline Expression Expression::parse(const std::string& text) {
  Parser p{text};
  auto root = p.sum();
  p.skip();
  if (p.pos != text.size()) p.fail("trailing input");
  Expression e;
  e.root_ = std::shared_ptr<const Node>(root.release());
  return e;
}

}  // namespace photospin

#endif
