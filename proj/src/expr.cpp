#include "svcalc/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <functional>

namespace svcalc {

namespace {
enum class Op { num, var, neg, add, sub, mul, div, pow, sin, cos, exp, abs, min, max };
}

struct Expr::Node {
  Op op = Op::num;
  double value = 0.0;
  int var_index = 0;
  std::vector<std::shared_ptr<const Node>> kids;
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;

NodePtr make(Op op, std::vector<NodePtr> kids) {
  auto n = std::make_shared<Expr::Node>();
  n->op = op;
  n->kids = std::move(kids);
  return n;
}

class Parser {
 public:
  Parser(const std::string& s, const std::vector<std::string>& vars) : s_(s), vars_(vars) {}

  NodePtr run() {
    NodePtr e = expression();
    skip_ws();
    if (pos_ != s_.size()) throw ExprError("unexpected trailing input", pos_);
    return e;
  }

 private:
  const std::string& s_;
  const std::vector<std::string>& vars_;
  size_t pos_ = 0;

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  NodePtr expression() {
    NodePtr e = term();
    while (true) {
      if (eat('+')) e = make(Op::add, {e, term()});
      else if (eat('-')) e = make(Op::sub, {e, term()});
      else return e;
    }
  }

  NodePtr term() {
    NodePtr e = unary();
    while (true) {
      if (eat('*')) e = make(Op::mul, {e, unary()});
      else if (eat('/')) e = make(Op::div, {e, unary()});
      else return e;
    }
  }

  NodePtr unary() {
    if (eat('-')) return make(Op::neg, {unary()});
    if (eat('+')) return unary();
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (eat('^')) return make(Op::pow, {base, unary()});  // right-associative
    return base;
  }

  NodePtr primary() {
    skip_ws();
    if (pos_ >= s_.size()) throw ExprError("unexpected end of expression", pos_);
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return ident();
    if (c == '(') {
      ++pos_;
      NodePtr e = expression();
      if (!eat(')')) throw ExprError("missing ')'", pos_);
      return e;
    }
    throw ExprError(std::string("unexpected character '") + c + "'", pos_);
  }

  NodePtr number() {
    const char* begin = s_.c_str() + pos_;
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin) throw ExprError("malformed number", pos_);
    pos_ += static_cast<size_t>(end - begin);
    auto n = std::make_shared<Expr::Node>();
    n->op = Op::num;
    n->value = v;
    return n;
  }

  NodePtr ident() {
    const size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      ++pos_;
    const std::string name = s_.substr(start, pos_ - start);

    static const std::pair<const char*, Op> fns[] = {
        {"sin", Op::sin}, {"cos", Op::cos}, {"exp", Op::exp},
        {"abs", Op::abs}, {"min", Op::min}, {"max", Op::max}};
    for (const auto& [fname, op] : fns) {
      if (name == fname) {
        if (!eat('(')) throw ExprError("expected '(' after " + name, pos_);
        std::vector<NodePtr> args{expression()};
        while (eat(',')) args.push_back(expression());
        if (!eat(')')) throw ExprError("missing ')'", pos_);
        const size_t want = (op == Op::min || op == Op::max) ? 2 : 1;
        if (args.size() != want)
          throw ExprError(name + " takes " + std::to_string(want) + " argument(s)", pos_);
        return make(op, std::move(args));
      }
    }

    if (name == "pi") {
      auto n = std::make_shared<Expr::Node>();
      n->op = Op::num;
      n->value = 3.14159265358979323846;
      return n;
    }

    for (size_t i = 0; i < vars_.size(); ++i) {
      if (vars_[i] == name) {
        auto n = std::make_shared<Expr::Node>();
        n->op = Op::var;
        n->var_index = static_cast<int>(i);
        return n;
      }
    }
    if (vars_.size() == 1 && (name == "x" || name == "t" || name == "r" || name == "s")) {
      auto n = std::make_shared<Expr::Node>();
      n->op = Op::var;
      n->var_index = 0;
      return n;
    }
    throw ExprError("unknown identifier '" + name + "'", start);
  }
};

double eval(const Expr::Node& n, std::span<const double> args) {
  switch (n.op) {
    case Op::num: return n.value;
    case Op::var:
      if (n.var_index >= static_cast<int>(args.size()))
        throw std::invalid_argument("expression evaluated with too few arguments");
      return args[static_cast<size_t>(n.var_index)];
    case Op::neg: return -eval(*n.kids[0], args);
    case Op::add: return eval(*n.kids[0], args) + eval(*n.kids[1], args);
    case Op::sub: return eval(*n.kids[0], args) - eval(*n.kids[1], args);
    case Op::mul: return eval(*n.kids[0], args) * eval(*n.kids[1], args);
    case Op::div: return eval(*n.kids[0], args) / eval(*n.kids[1], args);
    case Op::pow: return std::pow(eval(*n.kids[0], args), eval(*n.kids[1], args));
    case Op::sin: return std::sin(eval(*n.kids[0], args));
    case Op::cos: return std::cos(eval(*n.kids[0], args));
    case Op::exp: return std::exp(eval(*n.kids[0], args));
    case Op::abs: return std::fabs(eval(*n.kids[0], args));
    case Op::min: return std::fmin(eval(*n.kids[0], args), eval(*n.kids[1], args));
    case Op::max: return std::fmax(eval(*n.kids[0], args), eval(*n.kids[1], args));
  }
  return 0.0;
}

}  // namespace

Expr Expr::parse(const std::string& text, const std::vector<std::string>& vars) {
  Expr e;
  e.text_ = text;
  e.root_ = Parser(text, vars).run();
  return e;
}

double Expr::operator()(std::span<const double> args) const {
  if (!root_) throw std::invalid_argument("evaluating an empty expression");
  return eval(*root_, args);
}

}  // namespace svcalc
