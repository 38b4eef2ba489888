#pragma once

// Small expression catalog for scalar functions: polynomials over + - * / ^
// plus sin, cos, exp, abs, min, max. Used wherever configs name a function.

#include <memory>
#include <span>
#include <string>
#include <vector>

namespace svcalc {

class Expr {
 public:
  // vars lists the variable names in argument order. A single-variable
  // expression also accepts x, t, r or s for its variable.
  static Expr parse(const std::string& text, const std::vector<std::string>& vars);

  double operator()(std::span<const double> args) const;
  double operator()(double x) const { return (*this)(std::span<const double>(&x, 1)); }
  double operator()(double x, double y) const {
    const double a[2] = {x, y};
    return (*this)(std::span<const double>(a, 2));
  }

  const std::string& text() const { return text_; }

  struct Node;

 private:
  std::shared_ptr<const Node> root_;
  std::string text_;
};

// Error with the offending position, thrown on malformed input.
struct ExprError : std::invalid_argument {
  size_t position;
  ExprError(const std::string& msg, size_t pos)
      : std::invalid_argument(msg + " at position " + std::to_string(pos)), position(pos) {}
};

}  // namespace svcalc
