#include "ndmu/formula.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace ndmu {

FormulaPtr Formula::atom(std::string name) {
  return FormulaPtr(new Formula(FormulaKind::Atom, std::move(name), VarSort::Free, nullptr, nullptr));
}
FormulaPtr Formula::var(std::string name, VarSort sort) {
  return FormulaPtr(new Formula(FormulaKind::Var, std::move(name), sort, nullptr, nullptr));
}
FormulaPtr Formula::top() {
  return FormulaPtr(new Formula(FormulaKind::Top, "", VarSort::Free, nullptr, nullptr));
}
FormulaPtr Formula::bot() {
  return FormulaPtr(new Formula(FormulaKind::Bot, "", VarSort::Free, nullptr, nullptr));
}
FormulaPtr Formula::conj(FormulaPtr l, FormulaPtr r) {
  return FormulaPtr(new Formula(FormulaKind::And, "", VarSort::Free, std::move(l), std::move(r)));
}
FormulaPtr Formula::disj(FormulaPtr l, FormulaPtr r) {
  return FormulaPtr(new Formula(FormulaKind::Or, "", VarSort::Free, std::move(l), std::move(r)));
}
FormulaPtr Formula::box(FormulaPtr b) {
  return FormulaPtr(new Formula(FormulaKind::Box, "", VarSort::Free, std::move(b), nullptr));
}
FormulaPtr Formula::dia(FormulaPtr b) {
  return FormulaPtr(new Formula(FormulaKind::Dia, "", VarSort::Free, std::move(b), nullptr));
}
FormulaPtr Formula::nu(std::string v, FormulaPtr b) {
  return FormulaPtr(new Formula(FormulaKind::Nu, std::move(v), VarSort::Free, std::move(b), nullptr));
}
FormulaPtr Formula::mu(std::string v, FormulaPtr b) {
  return FormulaPtr(new Formula(FormulaKind::Mu, std::move(v), VarSort::Free, std::move(b), nullptr));
}

ParseError::ParseError(SourcePos p, const std::string& msg)
    : std::runtime_error("parse error at line " + std::to_string(p.line) + ", column " +
                         std::to_string(p.col) + ": " + msg),
      pos(p) {}

namespace {

enum class Tok { Ident, Top, Bot, Box, Dia, Nu, Mu, Amp, Pipe, LParen, RParen, Dot, End };

struct Token {
  Tok type;
  std::string text;
  SourcePos pos;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) { advance(); }

  const Token& peek() const { return current_; }

  Token take() {
    Token t = current_;
    advance();
    return t;
  }

 private:
  void advance() {
    skip_blank();
    current_.pos = pos_;
    if (at_end()) {
      current_ = {Tok::End, "", pos_};
      return;
    }
    char c = text_[index_];
    if (c == '&') {
      current_ = {Tok::Amp, "&", pos_};
      bump();
      return;
    }
    if (c == '|') {
      current_ = {Tok::Pipe, "|", pos_};
      bump();
      return;
    }
    if (c == '(') {
      current_ = {Tok::LParen, "(", pos_};
      bump();
      return;
    }
    if (c == ')') {
      current_ = {Tok::RParen, ")", pos_};
      bump();
      return;
    }
    if (c == '.') {
      current_ = {Tok::Dot, ".", pos_};
      bump();
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::string word;
      SourcePos start = pos_;
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(text_[index_])) || text_[index_] == '_')) {
        word.push_back(text_[index_]);
        bump();
      }
      Tok type = Tok::Ident;
      if (word == "top") type = Tok::Top;
      else if (word == "bot") type = Tok::Bot;
      else if (word == "box") type = Tok::Box;
      else if (word == "dia") type = Tok::Dia;
      else if (word == "nu") type = Tok::Nu;
      else if (word == "mu") type = Tok::Mu;
      current_ = {type, std::move(word), start};
      return;
    }
    throw ParseError(pos_, std::string("unexpected character '") + c + "'");
  }

  void skip_blank() {
    while (!at_end()) {
      char c = text_[index_];
      if (c == '#') {
        while (!at_end() && text_[index_] != '\n') bump();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        bump();
      } else {
        break;
      }
    }
  }

  bool at_end() const { return index_ >= text_.size(); }

  void bump() {
    if (text_[index_] == '\n') {
      ++pos_.line;
      pos_.col = 1;
    } else {
      ++pos_.col;
    }
    ++index_;
  }

  std::string_view text_;
  std::size_t index_ = 0;
  SourcePos pos_;
  Token current_;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : lex_(text) {}

  FormulaPtr run() {
    FormulaPtr f = parse_or();
    if (lex_.peek().type != Tok::End)
      throw ParseError(lex_.peek().pos, "unexpected '" + lex_.peek().text + "' after formula");
    return f;
  }

 private:
  FormulaPtr parse_or() {
    FormulaPtr l = parse_and();
    while (lex_.peek().type == Tok::Pipe) {
      lex_.take();
      l = Formula::disj(std::move(l), parse_and());
    }
    return l;
  }

  FormulaPtr parse_and() {
    FormulaPtr l = parse_unary();
    while (lex_.peek().type == Tok::Amp) {
      lex_.take();
      l = Formula::conj(std::move(l), parse_unary());
    }
    return l;
  }

  FormulaPtr parse_unary() {
    const Token& t = lex_.peek();
    switch (t.type) {
      case Tok::Box:
        lex_.take();
        return Formula::box(parse_unary());
      case Tok::Dia:
        lex_.take();
        return Formula::dia(parse_unary());
      case Tok::Nu:
      case Tok::Mu:
        return parse_binder();
      default:
        return parse_primary();
    }
  }

  FormulaPtr parse_binder() {
    Token t = lex_.take();
    bool is_nu = t.type == Tok::Nu;
    Token name = lex_.take();
    if (name.type != Tok::Ident)
      throw ParseError(name.pos, "expected variable name after '" + t.text + "'");
    Token dot = lex_.take();
    if (dot.type != Tok::Dot) throw ParseError(dot.pos, "expected '.' after bound variable");
    scope_.push_back({name.text, is_nu ? VarSort::NuBound : VarSort::MuBound});
    FormulaPtr body = parse_or();
    scope_.pop_back();
    return is_nu ? Formula::nu(name.text, std::move(body)) : Formula::mu(name.text, std::move(body));
  }

  FormulaPtr parse_primary() {
    Token t = lex_.take();
    switch (t.type) {
      case Tok::Top:
        return Formula::top();
      case Tok::Bot:
        return Formula::bot();
      case Tok::Ident: {
        for (auto it = scope_.rbegin(); it != scope_.rend(); ++it)
          if (it->first == t.text) return Formula::var(t.text, it->second);
        return Formula::atom(t.text);
      }
      case Tok::LParen: {
        FormulaPtr f = parse_or();
        Token close = lex_.take();
        if (close.type != Tok::RParen) throw ParseError(close.pos, "expected ')'");
        return f;
      }
      case Tok::End:
        throw ParseError(t.pos, "unexpected end of input");
      default:
        throw ParseError(t.pos, "unexpected '" + t.text + "'");
    }
  }

  Lexer lex_;
  std::vector<std::pair<std::string, VarSort>> scope_;
};

// Precedence levels for printing: 1 = or operand, 2 = and operand,
// 3 = prefix operand. Binders parenthesize in any operand position.
void print_rec(const Formula& f, int level, std::string& out) {
  switch (f.kind()) {
    case FormulaKind::Atom:
    case FormulaKind::Var:
      out += f.name();
      return;
    case FormulaKind::Top:
      out += "top";
      return;
    case FormulaKind::Bot:
      out += "bot";
      return;
    case FormulaKind::Or: {
      bool wrap = level >= 2;
      if (wrap) out += '(';
      print_rec(*f.lhs(), 1, out);
      out += " | ";
      print_rec(*f.rhs(), 2, out);
      if (wrap) out += ')';
      return;
    }
    case FormulaKind::And: {
      bool wrap = level >= 3;
      if (wrap) out += '(';
      print_rec(*f.lhs(), 2, out);
      out += " & ";
      print_rec(*f.rhs(), 3, out);
      if (wrap) out += ')';
      return;
    }
    case FormulaKind::Box:
    case FormulaKind::Dia:
      out += f.kind() == FormulaKind::Box ? "box " : "dia ";
      print_rec(*f.body(), 3, out);
      return;
    case FormulaKind::Nu:
    case FormulaKind::Mu: {
      bool wrap = level >= 1;
      if (wrap) out += '(';
      out += f.kind() == FormulaKind::Nu ? "nu " : "mu ";
      out += f.name();
      out += ". ";
      print_rec(*f.body(), 0, out);
      if (wrap) out += ')';
      return;
    }
  }
}

template <class F>
void walk(const Formula& f, F&& visit) {
  visit(f);
  switch (f.kind()) {
    case FormulaKind::And:
    case FormulaKind::Or:
      walk(*f.lhs(), visit);
      walk(*f.rhs(), visit);
      break;
    case FormulaKind::Box:
    case FormulaKind::Dia:
    case FormulaKind::Nu:
    case FormulaKind::Mu:
      walk(*f.body(), visit);
      break;
    default:
      break;
  }
}

bool is_binder(const Formula& f) {
  return f.kind() == FormulaKind::Nu || f.kind() == FormulaKind::Mu;
}

void collect_unbound_vars(const Formula& f, std::vector<std::string>& scope, std::set<std::string>& out) {
  switch (f.kind()) {
    case FormulaKind::Var:
      if (std::find(scope.begin(), scope.end(), f.name()) == scope.end()) out.insert(f.name());
      return;
    case FormulaKind::And:
    case FormulaKind::Or:
      collect_unbound_vars(*f.lhs(), scope, out);
      collect_unbound_vars(*f.rhs(), scope, out);
      return;
    case FormulaKind::Box:
    case FormulaKind::Dia:
      collect_unbound_vars(*f.body(), scope, out);
      return;
    case FormulaKind::Nu:
    case FormulaKind::Mu:
      scope.push_back(f.name());
      collect_unbound_vars(*f.body(), scope, out);
      scope.pop_back();
      return;
    default:
      return;
  }
}

}  // namespace

FormulaPtr parse_formula(std::string_view text) { return Parser(text).run(); }

std::string print_formula(const Formula& f) {
  std::string out;
  print_rec(f, 0, out);
  return out;
}

bool equal_formulas(const Formula& a, const Formula& b) {
  if (a.kind() != b.kind() || a.name() != b.name()) return false;
  if (a.kind() == FormulaKind::Var && a.var_sort() != b.var_sort()) return false;
  switch (a.kind()) {
    case FormulaKind::And:
    case FormulaKind::Or:
      return equal_formulas(*a.lhs(), *b.lhs()) && equal_formulas(*a.rhs(), *b.rhs());
    case FormulaKind::Box:
    case FormulaKind::Dia:
    case FormulaKind::Nu:
    case FormulaKind::Mu:
      return equal_formulas(*a.body(), *b.body());
    default:
      return true;
  }
}

std::vector<std::string> atom_names(const Formula& f) {
  std::set<std::string> names;
  walk(f, [&](const Formula& n) {
    if (n.kind() == FormulaKind::Atom) names.insert(n.name());
  });
  return {names.begin(), names.end()};
}

std::vector<std::string> unbound_variables(const Formula& f) {
  std::set<std::string> names;
  std::vector<std::string> scope;
  collect_unbound_vars(f, scope, names);
  return {names.begin(), names.end()};
}

std::vector<std::string> bound_variables(const Formula& f) {
  std::vector<std::string> names;
  walk(f, [&](const Formula& n) {
    if (is_binder(n)) names.push_back(n.name());
  });
  return names;
}

bool is_hygienic(const Formula& f) {
  std::vector<std::string> binders = bound_variables(f);
  std::set<std::string> unique(binders.begin(), binders.end());
  if (unique.size() != binders.size()) return false;
  for (const std::string& a : atom_names(f))
    if (unique.count(a)) return false;
  for (const std::string& v : unbound_variables(f))
    if (unique.count(v)) return false;

  // Every captured Var leaf must carry its binder's sort.
  bool ok = true;
  std::vector<std::pair<std::string, VarSort>> scope;
  auto check = [&](auto&& self, const Formula& n) -> void {
    switch (n.kind()) {
      case FormulaKind::Var: {
        auto it = std::find_if(scope.rbegin(), scope.rend(),
                               [&](const auto& s) { return s.first == n.name(); });
        if (it != scope.rend() && it->second != n.var_sort()) ok = false;
        return;
      }
      case FormulaKind::And:
      case FormulaKind::Or:
        self(self, *n.lhs());
        self(self, *n.rhs());
        return;
      case FormulaKind::Box:
      case FormulaKind::Dia:
        self(self, *n.body());
        return;
      case FormulaKind::Nu:
      case FormulaKind::Mu:
        scope.emplace_back(n.name(), n.kind() == FormulaKind::Nu ? VarSort::NuBound : VarSort::MuBound);
        self(self, *n.body());
        scope.pop_back();
        return;
      default:
        return;
    }
  };
  check(check, f);
  return ok;
}

namespace {

FormulaPtr rename_rec(const FormulaPtr& f, std::map<std::string, std::string>& env,
                      std::set<std::string>& taken) {
  switch (f->kind()) {
    case FormulaKind::Atom:
    case FormulaKind::Top:
    case FormulaKind::Bot:
      return f;
    case FormulaKind::Var: {
      auto it = env.find(f->name());
      if (it == env.end()) return f;
      if (it->second == f->name()) return f;
      return Formula::var(it->second, f->var_sort());
    }
    case FormulaKind::And:
    case FormulaKind::Or: {
      FormulaPtr l = rename_rec(f->lhs(), env, taken);
      FormulaPtr r = rename_rec(f->rhs(), env, taken);
      if (l == f->lhs() && r == f->rhs()) return f;
      return f->kind() == FormulaKind::And ? Formula::conj(std::move(l), std::move(r))
                                           : Formula::disj(std::move(l), std::move(r));
    }
    case FormulaKind::Box:
    case FormulaKind::Dia: {
      FormulaPtr b = rename_rec(f->body(), env, taken);
      if (b == f->body()) return f;
      return f->kind() == FormulaKind::Box ? Formula::box(std::move(b)) : Formula::dia(std::move(b));
    }
    case FormulaKind::Nu:
    case FormulaKind::Mu: {
      std::string fresh = f->name();
      if (taken.count(fresh)) {
        int k = 1;
        while (taken.count(f->name() + "_" + std::to_string(k))) ++k;
        fresh = f->name() + "_" + std::to_string(k);
      }
      taken.insert(fresh);
      auto saved = env.find(f->name());
      std::string old_value;
      bool had = saved != env.end();
      if (had) old_value = saved->second;
      env[f->name()] = fresh;
      FormulaPtr b = rename_rec(f->body(), env, taken);
      if (had)
        env[f->name()] = old_value;
      else
        env.erase(f->name());
      if (b == f->body() && fresh == f->name()) return f;
      return f->kind() == FormulaKind::Nu ? Formula::nu(fresh, std::move(b))
                                          : Formula::mu(fresh, std::move(b));
    }
  }
  throw std::logic_error("unreachable formula kind");
}

}  // namespace

FormulaPtr rename_apart(const FormulaPtr& f) {
  std::set<std::string> taken;
  for (const std::string& a : atom_names(*f)) taken.insert(a);
  for (const std::string& v : unbound_variables(*f)) taken.insert(v);
  std::map<std::string, std::string> env;
  return rename_rec(f, env, taken);
}

std::map<std::string, const Formula*> binder_nodes(const Formula& f) {
  if (!is_hygienic(f)) throw std::invalid_argument("formula is not hygienic; apply rename_apart first");
  std::map<std::string, const Formula*> out;
  walk(f, [&](const Formula& n) {
    if (is_binder(n)) out[n.name()] = &n;
  });
  return out;
}

FormulaPtr binder_body(const Formula& f, const std::string& z) {
  if (!is_hygienic(f)) throw std::invalid_argument("formula is not hygienic; apply rename_apart first");
  FormulaPtr found;
  walk(f, [&](const Formula& n) {
    if (is_binder(n) && n.name() == z) found = n.body();
  });
  if (!found) throw std::invalid_argument("no binder for variable '" + z + "'");
  return found;
}

DependencyOrder dependency_order(const Formula& f) {
  std::map<std::string, const Formula*> binders = binder_nodes(f);

  DependencyOrder order;
  std::set<std::string> bound;
  for (const auto& [name, node] : binders) {
    bound.insert(name);
    order.sort_[name] = node->kind() == FormulaKind::Nu ? VarSort::NuBound : VarSort::MuBound;
  }

  // z1 <= z2 when z2 occurs free in z1's body. By hygiene an occurrence is
  // free there exactly when its binder lies outside the body.
  std::map<std::string, std::set<std::string>> above;
  for (const auto& [z1, node] : binders) {
    std::set<std::string> seen;
    std::set<std::string> inner;
    walk(*node->body(), [&](const Formula& n) {
      if (n.kind() == FormulaKind::Var && bound.count(n.name()) && n.name() != z1)
        seen.insert(n.name());
      if (is_binder(n)) inner.insert(n.name());
    });
    std::set<std::string> free;
    for (const std::string& w : seen)
      if (!inner.count(w)) free.insert(w);
    above[z1] = std::move(free);
  }
  for (const auto& [z1, ws] : above)
    order.above_[z1] = std::vector<std::string>(ws.begin(), ws.end());

  // Kahn's algorithm over the strict edges, smallest name first.
  std::map<std::string, int> pending;  // z2 -> number of unranked z1 <= z2
  for (const auto& [z, _] : binders) pending[z] = 0;
  for (const auto& [z1, ws] : above)
    for (const std::string& z2 : ws) ++pending[z2];
  std::set<std::string> ready;
  for (const auto& [z, c] : pending)
    if (c == 0) ready.insert(z);
  while (!ready.empty()) {
    std::string z = *ready.begin();
    ready.erase(ready.begin());
    order.rank_[z] = static_cast<int>(order.vars_.size()) + 1;
    order.vars_.push_back(z);
    for (const std::string& w : above[z])
      if (--pending[w] == 0) ready.insert(w);
  }
  if (order.vars_.size() != binders.size())
    throw std::logic_error("cyclic variable dependencies; formula is not hygienic");
  return order;
}

bool DependencyOrder::leq(const std::string& a, const std::string& b) const {
  if (!contains(a) || !contains(b)) throw std::invalid_argument("unknown variable in dependency query");
  if (a == b) return true;
  auto it = above_.find(a);
  return it != above_.end() &&
         std::find(it->second.begin(), it->second.end(), b) != it->second.end();
}

int DependencyOrder::rank(const std::string& z) const {
  auto it = rank_.find(z);
  if (it == rank_.end()) throw std::invalid_argument("unknown variable '" + z + "'");
  return it->second;
}

VarSort DependencyOrder::sort_of(const std::string& z) const {
  auto it = sort_.find(z);
  if (it == sort_.end()) throw std::invalid_argument("unknown variable '" + z + "'");
  return it->second;
}

}  // namespace ndmu
