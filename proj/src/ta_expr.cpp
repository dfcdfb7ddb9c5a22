#include <algorithm>
#include <cctype>

#include "ta_internal.hpp"

namespace cdv::ta {

int Expr::eval(const State& s) const {
  switch (op) {
    case Op::constant: return value;
    case Op::var: return s.vars[value];
    case Op::clock: return s.clocks[value];
    case Op::at_location: return s.locations[value] == location ? 1 : 0;
    case Op::logical_not: return lhs->eval(s) ? 0 : 1;
    case Op::negate: return -lhs->eval(s);
    case Op::add: return lhs->eval(s) + rhs->eval(s);
    case Op::sub: return lhs->eval(s) - rhs->eval(s);
    case Op::lt: return lhs->eval(s) < rhs->eval(s);
    case Op::le: return lhs->eval(s) <= rhs->eval(s);
    case Op::gt: return lhs->eval(s) > rhs->eval(s);
    case Op::ge: return lhs->eval(s) >= rhs->eval(s);
    case Op::eq: return lhs->eval(s) == rhs->eval(s);
    case Op::ne: return lhs->eval(s) != rhs->eval(s);
    case Op::logical_and: return lhs->eval(s) && rhs->eval(s);
    case Op::logical_or: return lhs->eval(s) || rhs->eval(s);
  }
  return 0;
}

namespace detail {

namespace {

struct Token {
  enum Kind { end, ident, number, op } kind = end;
  std::string text;
};

class Parser {
 public:
  Parser(const Network& net, std::string_view text, int line, bool allow_clocks)
      : net_(net), text_(text), line_(line), allow_clocks_(allow_clocks) {
    advance();
  }

  ExprPtr parse() {
    ExprPtr e = parse_or();
    if (tok_.kind != Token::end) fail("unexpected '" + tok_.text + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ModelError(line_, msg + " in expression '" + std::string(text_) + "'");
  }

  void advance() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ >= text_.size()) {
      tok_ = {Token::end, ""};
      return;
    }
    const char c = text_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t b = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_' || text_[pos_] == '.')) {
        ++pos_;
      }
      tok_ = {Token::ident, std::string(text_.substr(b, pos_ - b))};
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t b = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      tok_ = {Token::number, std::string(text_.substr(b, pos_ - b))};
      return;
    }
    static constexpr std::string_view two[] = {"||", "&&", "==", "!=", "<=", ">="};
    for (auto t : two) {
      if (text_.substr(pos_, 2) == t) {
        pos_ += 2;
        tok_ = {Token::op, std::string(t)};
        return;
      }
    }
    if (std::string_view("!<>+-()").find(c) != std::string_view::npos) {
      ++pos_;
      tok_ = {Token::op, std::string(1, c)};
      return;
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  bool accept(std::string_view op) {
    if (tok_.kind == Token::op && tok_.text == op) {
      advance();
      return true;
    }
    return false;
  }

  static ExprPtr binary(Op op, ExprPtr l, ExprPtr r) {
    auto e = std::make_shared<Expr>();
    e->op = op;
    e->lhs = std::move(l);
    e->rhs = std::move(r);
    return e;
  }

  ExprPtr parse_or() {
    ExprPtr l = parse_and();
    while (accept("||")) l = binary(Op::logical_or, l, parse_and());
    return l;
  }

  ExprPtr parse_and() {
    ExprPtr l = parse_cmp();
    while (accept("&&")) l = binary(Op::logical_and, l, parse_cmp());
    return l;
  }

  ExprPtr parse_cmp() {
    ExprPtr l = parse_sum();
    static constexpr std::pair<std::string_view, Op> ops[] = {{"==", Op::eq}, {"!=", Op::ne}, {"<=", Op::le},
                                                              {">=", Op::ge}, {"<", Op::lt},  {">", Op::gt}};
    for (auto [text, op] : ops) {
      if (accept(text)) return binary(op, l, parse_sum());
    }
    return l;
  }

  ExprPtr parse_sum() {
    ExprPtr l = parse_unary();
    for (;;) {
      if (accept("+")) l = binary(Op::add, l, parse_unary());
      else if (accept("-")) l = binary(Op::sub, l, parse_unary());
      else return l;
    }
  }

  ExprPtr parse_unary() {
    if (accept("!")) return binary(Op::logical_not, parse_unary(), nullptr);
    if (accept("-")) return binary(Op::negate, parse_unary(), nullptr);
    if (accept("(")) {
      ExprPtr e = parse_or();
      if (!accept(")")) fail("missing ')'");
      return e;
    }
    auto e = std::make_shared<Expr>();
    if (tok_.kind == Token::number) {
      e->op = Op::constant;
      e->value = std::stoi(tok_.text);
    } else if (tok_.kind == Token::ident) {
      resolve(tok_.text, *e);
    } else {
      fail(tok_.kind == Token::end ? "unexpected end" : "unexpected '" + tok_.text + "'");
    }
    advance();
    return e;
  }

  void resolve(const std::string& name, Expr& e) const {
    if (name == "true" || name == "false") {
      e.op = Op::constant;
      e.value = name == "true";
      return;
    }
    if (auto dot = name.find('.'); dot != std::string::npos) {
      auto a = net_.find_automaton(name.substr(0, dot));
      if (!a) fail("unknown automaton '" + name.substr(0, dot) + "'");
      auto l = net_.automata[*a].find_location(name.substr(dot + 1));
      if (!l) fail("unknown location '" + name + "'");
      e.op = Op::at_location;
      e.value = *a;
      e.location = *l;
      return;
    }
    if (auto v = net_.find_var(name)) {
      e.op = Op::var;
      e.value = *v;
      return;
    }
    if (auto c = net_.find_clock(name)) {
      if (!allow_clocks_) fail("clock '" + name + "' not allowed here");
      e.op = Op::clock;
      e.value = *c;
      return;
    }
    fail("undeclared symbol '" + name + "'");
  }

  const Network& net_;
  std::string_view text_;
  int line_;
  bool allow_clocks_;
  std::size_t pos_ = 0;
  Token tok_;
};

bool is_comparison(Op op) {
  return op == Op::lt || op == Op::le || op == Op::gt || op == Op::ge || op == Op::eq || op == Op::ne;
}

bool mentions_clock(const Expr& e) {
  if (e.op == Op::clock) return true;
  return (e.lhs && mentions_clock(*e.lhs)) || (e.rhs && mentions_clock(*e.rhs));
}

}  // namespace

ExprPtr parse_expression(const Network& net, std::string_view text, int line, bool allow_clocks) {
  return Parser(net, text, line, allow_clocks).parse();
}

void collect_clock_bounds(const Expr& e, std::vector<int>& max_const, int line) {
  if (is_comparison(e.op) && (mentions_clock(*e.lhs) || mentions_clock(*e.rhs))) {
    const Expr* c = e.lhs->op == Op::clock ? e.lhs.get() : e.rhs->op == Op::clock ? e.rhs.get() : nullptr;
    const Expr* k = c == e.lhs.get() ? e.rhs.get() : e.lhs.get();
    if (!c || k->op != Op::constant || k->value < 0) {
      throw ModelError(line, "clocks may only be compared with non-negative integer constants");
    }
    max_const[c->value] = std::max(max_const[c->value], k->value);
    return;
  }
  if (e.op == Op::clock) throw ModelError(line, "clocks may only appear in comparisons");
  if (e.lhs) collect_clock_bounds(*e.lhs, max_const, line);
  if (e.rhs) collect_clock_bounds(*e.rhs, max_const, line);
}

void collect_clocks(const Expr& e, std::vector<bool>& used) {
  if (e.op == Op::clock) used[e.value] = true;
  if (e.lhs) collect_clocks(*e.lhs, used);
  if (e.rhs) collect_clocks(*e.rhs, used);
}

}  // namespace detail
}  // namespace cdv::ta
