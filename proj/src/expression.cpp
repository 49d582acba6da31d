#include "hammerstein/expression.hpp"

#include <cctype>
#include <cmath>
#include <functional>
#include <numbers>

namespace hammer {

struct Expression::Node {
  enum Kind { Const, Var, Unary, Binary, Call, Ternary } kind = Const;
  double value = 0.0;
  std::size_t var = 0;
  char op = 0;  // unary: '-', '!'; binary: + - * / ^ < > l(<=) g(>=) = n & |
  std::string fn;
  std::vector<std::shared_ptr<const Node>> args;
};

namespace {

using NodeP = std::shared_ptr<const Expression::Node>;
using Node = Expression::Node;

struct Token {
  enum Kind { Number, Ident, Op, End } kind;
  std::string text;
  double value = 0.0;
  std::size_t col = 0;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t col = i + 1;
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t j = i;
      while (j < s.size() && (std::isdigit(static_cast<unsigned char>(s[j])) ||
                              s[j] == '.'))
        ++j;
      if (j < s.size() && (s[j] == 'e' || s[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < s.size() && (s[k] == '+' || s[k] == '-')) ++k;
        if (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) {
          j = k;
          while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j])))
            ++j;
        }
      }
      const std::string text(s.substr(i, j - i));
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(text, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != text.size())
        throw ExpressionError("malformed number '" + text + "'", col);
      out.push_back({Token::Number, text, v, col});
      i = j;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) ||
                              s[j] == '_'))
        ++j;
      out.push_back({Token::Ident, std::string(s.substr(i, j - i)), 0.0, col});
      i = j;
      continue;
    }
    static const char* two[] = {"<=", ">=", "==", "!=", "&&", "||", "**"};
    bool matched = false;
    for (const char* t : two)
      if (s.substr(i, 2) == t) {
        out.push_back({Token::Op, t, 0.0, col});
        i += 2;
        matched = true;
        break;
      }
    if (matched) continue;
    if (std::string_view("+-*/^()<>,?:!").find(c) != std::string_view::npos) {
      out.push_back({Token::Op, std::string(1, c), 0.0, col});
      ++i;
      continue;
    }
    throw ExpressionError(std::string("unexpected character '") + c + "'", col);
  }
  out.push_back({Token::End, "", 0.0, s.size() + 1});
  return out;
}

NodeP make_const(double v) {
  auto n = std::make_shared<Node>();
  n->kind = Node::Const;
  n->value = v;
  return n;
}

struct FnInfo {
  int min_args, max_args;  // max_args < 0 for variadic
};

const std::map<std::string, FnInfo>& functions() {
  static const std::map<std::string, FnInfo> f = {
      {"exp", {1, 1}},  {"log", {1, 1}},  {"ln", {1, 1}},   {"sqrt", {1, 1}},
      {"cbrt", {1, 1}}, {"abs", {1, 1}},  {"sin", {1, 1}},  {"cos", {1, 1}},
      {"tan", {1, 1}},  {"pos", {1, 1}},  {"step", {1, 1}}, {"min", {2, -1}},
      {"max", {2, -1}}, {"pow", {2, 2}},  {"if", {3, 3}}};
  return f;
}

class Parser {
 public:
  Parser(std::vector<Token> toks, const std::vector<std::string>& vars,
         const std::map<std::string, double>& constants)
      : t_(std::move(toks)), vars_(vars), constants_(constants) {}

  NodeP parse() {
    auto n = ternary();
    if (peek().kind != Token::End)
      throw ExpressionError("unexpected '" + peek().text + "'", peek().col);
    return n;
  }

 private:
  const Token& peek() const { return t_[pos_]; }
  bool accept(const char* op) {
    if (peek().kind == Token::Op && peek().text == op) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(const char* op) {
    if (!accept(op))
      throw ExpressionError(std::string("expected '") + op + "'", peek().col);
  }

  static NodeP binary(char op, NodeP a, NodeP b) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Binary;
    n->op = op;
    n->args = {std::move(a), std::move(b)};
    return n;
  }

  NodeP ternary() {
    auto c = logic_or();
    if (accept("?")) {
      auto a = ternary();
      expect(":");
      auto b = ternary();
      auto n = std::make_shared<Node>();
      n->kind = Node::Ternary;
      n->args = {c, a, b};
      return n;
    }
    return c;
  }
  NodeP logic_or() {
    auto a = logic_and();
    while (accept("||")) a = binary('|', a, logic_and());
    return a;
  }
  NodeP logic_and() {
    auto a = comparison();
    while (accept("&&")) a = binary('&', a, comparison());
    return a;
  }
  NodeP comparison() {
    auto a = additive();
    if (accept("<=")) return binary('l', a, additive());
    if (accept(">=")) return binary('g', a, additive());
    if (accept("==")) return binary('=', a, additive());
    if (accept("!=")) return binary('n', a, additive());
    if (accept("<")) return binary('<', a, additive());
    if (accept(">")) return binary('>', a, additive());
    return a;
  }
  NodeP additive() {
    auto a = multiplicative();
    for (;;) {
      if (accept("+")) a = binary('+', a, multiplicative());
      else if (accept("-")) a = binary('-', a, multiplicative());
      else return a;
    }
  }
  NodeP multiplicative() {
    auto a = unary();
    for (;;) {
      if (accept("*")) a = binary('*', a, unary());
      else if (accept("/")) a = binary('/', a, unary());
      else return a;
    }
  }
  NodeP unary() {
    if (accept("-")) {
      auto n = std::make_shared<Node>();
      n->kind = Node::Unary;
      n->op = '-';
      n->args = {unary()};
      return n;
    }
    if (accept("+")) return unary();
    if (accept("!")) {
      auto n = std::make_shared<Node>();
      n->kind = Node::Unary;
      n->op = '!';
      n->args = {unary()};
      return n;
    }
    return power();
  }
  NodeP power() {
    auto a = atom();
    if (accept("^") || accept("**")) return binary('^', a, unary());
    return a;
  }
  NodeP atom() {
    const Token tok = peek();
    if (tok.kind == Token::Number) {
      ++pos_;
      return make_const(tok.value);
    }
    if (tok.kind == Token::Ident) {
      ++pos_;
      if (accept("(")) {
        auto it = functions().find(tok.text);
        if (it == functions().end())
          throw ExpressionError("unknown function '" + tok.text + "'", tok.col);
        auto n = std::make_shared<Node>();
        n->kind = Node::Call;
        n->fn = tok.text;
        if (!accept(")")) {
          do n->args.push_back(ternary());
          while (accept(","));
          expect(")");
        }
        const int na = static_cast<int>(n->args.size());
        if (na < it->second.min_args ||
            (it->second.max_args >= 0 && na > it->second.max_args))
          throw ExpressionError("wrong number of arguments for '" + tok.text +
                                    "'",
                                tok.col);
        return n;
      }
      for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i] == tok.text) {
          auto n = std::make_shared<Node>();
          n->kind = Node::Var;
          n->var = i;
          return n;
        }
      if (auto c = constants_.find(tok.text); c != constants_.end())
        return make_const(c->second);
      if (tok.text == "pi") return make_const(std::numbers::pi);
      if (tok.text == "e") return make_const(std::numbers::e);
      throw ExpressionError("unknown name '" + tok.text + "'", tok.col);
    }
    if (accept("(")) {
      auto n = ternary();
      expect(")");
      return n;
    }
    if (tok.kind == Token::End)
      throw ExpressionError("unexpected end of expression", tok.col);
    throw ExpressionError("unexpected '" + tok.text + "'", tok.col);
  }

  std::vector<Token> t_;
  std::size_t pos_ = 0;
  const std::vector<std::string>& vars_;
  const std::map<std::string, double>& constants_;
};

double call(const std::string& fn, const std::vector<double>& a) {
  if (fn == "exp") return std::exp(a[0]);
  if (fn == "log" || fn == "ln") return std::log(a[0]);
  if (fn == "sqrt") return std::sqrt(a[0]);
  if (fn == "cbrt") return std::cbrt(a[0]);
  if (fn == "abs") return std::abs(a[0]);
  if (fn == "sin") return std::sin(a[0]);
  if (fn == "cos") return std::cos(a[0]);
  if (fn == "tan") return std::tan(a[0]);
  if (fn == "pos") return a[0] > 0.0 ? a[0] : 0.0;
  if (fn == "step") return a[0] >= 0.0 ? 1.0 : 0.0;
  if (fn == "pow") return std::pow(a[0], a[1]);
  if (fn == "if") return a[0] != 0.0 ? a[1] : a[2];
  double r = a[0];
  for (std::size_t i = 1; i < a.size(); ++i)
    r = fn == "min" ? std::min(r, a[i]) : std::max(r, a[i]);
  return r;
}

double eval(const Node& n, std::span<const double> x) {
  switch (n.kind) {
    case Node::Const:
      return n.value;
    case Node::Var:
      return x[n.var];
    case Node::Unary: {
      const double a = eval(*n.args[0], x);
      return n.op == '-' ? -a : (a == 0.0 ? 1.0 : 0.0);
    }
    case Node::Ternary:
      return eval(*n.args[0], x) != 0.0 ? eval(*n.args[1], x)
                                        : eval(*n.args[2], x);
    case Node::Call: {
      if (n.fn == "if")
        return eval(*n.args[0], x) != 0.0 ? eval(*n.args[1], x)
                                          : eval(*n.args[2], x);
      std::vector<double> a;
      a.reserve(n.args.size());
      for (const auto& c : n.args) a.push_back(eval(*c, x));
      return call(n.fn, a);
    }
    case Node::Binary: {
      const double a = eval(*n.args[0], x);
      if (n.op == '&') return a != 0.0 && eval(*n.args[1], x) != 0.0;
      if (n.op == '|') return a != 0.0 || eval(*n.args[1], x) != 0.0;
      const double b = eval(*n.args[1], x);
      switch (n.op) {
        case '+': return a + b;
        case '-': return a - b;
        case '*': return a * b;
        case '/': return a / b;
        case '^': return std::pow(a, b);
        case '<': return a < b;
        case '>': return a > b;
        case 'l': return a <= b;
        case 'g': return a >= b;
        case '=': return a == b;
        case 'n': return a != b;
      }
    }
  }
  return NAN;
}

bool uses_var(const Node& n, std::size_t v) {
  if (n.kind == Node::Var) return n.var == v;
  for (const auto& c : n.args)
    if (uses_var(*c, v)) return true;
  return false;
}

}  // namespace

Expression Expression::compile(std::string_view source,
                               const std::vector<std::string>& vars,
                               const std::map<std::string, double>& constants) {
  Parser p(tokenize(source), vars, constants);
  Expression e;
  e.root_ = p.parse();
  e.source_ = std::string(source);
  e.arity_ = vars.size();
  return e;
}

double Expression::operator()(std::span<const double> values) const {
  if (!root_) throw SpecificationError("empty expression");
  if (values.size() < arity_)
    throw DomainError("expression '" + source_ + "' expects " +
                      std::to_string(arity_) + " values");
  return eval(*root_, values);
}

bool Expression::uses(std::size_t var) const {
  return root_ && uses_var(*root_, var);
}

std::string substitute(std::string_view source, std::string_view var,
                       std::string_view replacement) {
  const auto toks = tokenize(source);
  std::string out;
  std::size_t copied = 0;
  for (std::size_t i = 0; i + 1 < toks.size(); ++i) {
    const auto& tk = toks[i];
    if (tk.kind != Token::Ident || tk.text != var) continue;
    if (toks[i + 1].kind == Token::Op && toks[i + 1].text == "(") continue;
    const std::size_t start = tk.col - 1;
    out.append(source.substr(copied, start - copied));
    out += "(";
    out.append(replacement);
    out += ")";
    copied = start + tk.text.size();
  }
  out.append(source.substr(copied));
  return out;
}

double evaluate_constant(std::string_view source,
                         const std::map<std::string, double>& constants) {
  return Expression::compile(source, {}, constants)({});
}

}  // namespace hammer
