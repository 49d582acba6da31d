#ifndef HAMMERSTEIN_EXPRESSION_HPP_
#define HAMMERSTEIN_EXPRESSION_HPP_

#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hammerstein/core.hpp"

namespace hammer {

class ExpressionError : public Error {
 public:
  ExpressionError(const std::string& what, std::size_t column)
      : Error(what), column_(column) {}
  std::size_t column() const { return column_; }

 private:
  std::size_t column_;
};

// Arithmetic expression over named variables. Supports + - * / ^ (right
// associative), comparisons, && || !, c ? a : b, the constants pi and e and
// the functions exp log ln sqrt cbrt abs sin cos tan pos min max pow step if.
class Expression {
 public:
  Expression() = default;
  // `vars` fixes the argument order of operator(); `constants` are
  // substituted at compile time.
  static Expression compile(std::string_view source,
                            const std::vector<std::string>& vars,
                            const std::map<std::string, double>& constants = {});

  double operator()(std::span<const double> values) const;
  double operator()(std::initializer_list<double> values) const {
    return (*this)(std::span<const double>(values.begin(), values.size()));
  }

  const std::string& source() const { return source_; }
  std::size_t arity() const { return arity_; }
  bool uses(std::size_t var) const;

  struct Node;

 private:
  std::shared_ptr<const Node> root_;
  std::string source_;
  std::size_t arity_ = 0;
};

// Replaces every occurrence of the identifier `var` (not a function name)
// by "(replacement)".
std::string substitute(std::string_view source, std::string_view var,
                       std::string_view replacement);

// Evaluates a closed expression such as "1/12" or "e^(3/4)".
double evaluate_constant(std::string_view source,
                         const std::map<std::string, double>& constants = {});

}  // namespace hammer

#endif  // HAMMERSTEIN_EXPRESSION_HPP_
