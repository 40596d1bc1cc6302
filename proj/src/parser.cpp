#include "smi/parser.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include "smi/errors.hpp"

namespace smi {

namespace {

struct SExpr {
  std::string atom;  // empty for lists
  std::vector<SExpr> items;
  std::size_t line = 0;
  std::size_t column = 0;
  bool is_list = false;

  bool is(std::string_view s) const { return !is_list && atom == s; }
};

[[noreturn]] void fail(const SExpr& at, const std::string& what) { throw ParseError(what, at.line, at.column); }

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  std::vector<SExpr> read_all() {
    std::vector<SExpr> out;
    while (true) {
      skip_space();
      if (pos_ >= text_.size()) break;
      out.push_back(read());
    }
    return out;
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  SExpr read() {
    skip_space();
    SExpr e;
    e.line = line_;
    e.column = col_;
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input", line_, col_);
    char c = text_[pos_];
    if (c == ')') throw ParseError("unexpected ')'", line_, col_);
    if (c == '(') {
      e.is_list = true;
      advance();
      while (true) {
        skip_space();
        if (pos_ >= text_.size()) throw ParseError("unterminated list", e.line, e.column);
        if (text_[pos_] == ')') {
          advance();
          break;
        }
        e.items.push_back(read());
      }
      return e;
    }
    while (pos_ < text_.size()) {
      char d = text_[pos_];
      if (d == '(' || d == ')' || d == ';' || std::isspace(static_cast<unsigned char>(d))) break;
      e.atom.push_back(d);
      advance();
    }
    return e;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

bool looks_numeric(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  return i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '.');
}

Rational number(const SExpr& e) {
  try {
    return parse_rational(e.atom);
  } catch (const InputError& err) {
    fail(e, err.what());
  }
}

struct LinearExpr {
  std::map<VarId, Rational> coefs;
  Rational constant;

  bool is_constant() const {
    return std::all_of(coefs.begin(), coefs.end(), [](const auto& kv) { return sgn(kv.second) == 0; });
  }
  LinearExpr& operator+=(const LinearExpr& o) {
    for (const auto& [v, c] : o.coefs) coefs[v] += c;
    constant += o.constant;
    return *this;
  }
  LinearExpr& operator*=(const Rational& k) {
    for (auto& [v, c] : coefs) c *= k;
    constant *= k;
    return *this;
  }
};

// Negation-normal-form formula prior to CNF conversion.
struct Formula {
  enum class Kind { literal, constant, conj, disj } kind = Kind::constant;
  Literal literal = BoolLit{0, true};
  bool value = true;
  std::vector<Formula> kids;

  static Formula lit(Literal l) { return {Kind::literal, std::move(l), true, {}}; }
  static Formula truth(bool v) { return {Kind::constant, BoolLit{0, true}, v, {}}; }
  static Formula group(Kind k, std::vector<Formula> kids) { return {k, BoolLit{0, true}, true, std::move(kids)}; }
};

std::vector<Clause> to_cnf(const Formula& f) {
  switch (f.kind) {
    case Formula::Kind::literal:
      return {Clause{f.literal}};
    case Formula::Kind::constant:
      return f.value ? std::vector<Clause>{} : std::vector<Clause>{Clause{}};
    case Formula::Kind::conj: {
      std::vector<Clause> out;
      for (const auto& k : f.kids) {
        auto sub = to_cnf(k);
        out.insert(out.end(), sub.begin(), sub.end());
      }
      return out;
    }
    case Formula::Kind::disj: {
      std::vector<Clause> acc{Clause{}};  // the empty disjunction
      for (const auto& k : f.kids) {
        auto sub = to_cnf(k);
        std::vector<Clause> next;
        for (const auto& a : acc)
          for (const auto& b : sub) {
            Clause c = a;
            c.insert(c.end(), b.begin(), b.end());
            next.push_back(std::move(c));
          }
        acc = std::move(next);
      }
      return acc;
    }
  }
  return {};
}

class ProblemBuilder {
 public:
  explicit ProblemBuilder(std::shared_ptr<VarTable> vars) : vars_(std::move(vars)) {}

  VarId lookup(const SExpr& e) const {
    auto id = vars_->find(e.atom);
    if (!id) fail(e, "unknown variable '" + e.atom + "'");
    return *id;
  }

  LinearExpr linear(const SExpr& e) const {
    LinearExpr out;
    if (!e.is_list) {
      if (looks_numeric(e.atom)) {
        out.constant = number(e);
        return out;
      }
      VarId v = lookup(e);
      if ((*vars_)[v].kind != VarKind::real) fail(e, "boolean '" + e.atom + "' used in arithmetic");
      out.coefs[v] = 1;
      return out;
    }
    if (e.items.empty() || e.items[0].is_list) fail(e, "malformed term");
    const std::string& op = e.items[0].atom;
    if (op == "+") {
      if (e.items.size() < 2) fail(e, "empty sum");
      for (std::size_t i = 1; i < e.items.size(); ++i) out += linear(e.items[i]);
      return out;
    }
    if (op == "-") {
      if (e.items.size() == 2) {
        out = linear(e.items[1]);
        out *= Rational(-1);
        return out;
      }
      if (e.items.size() != 3) fail(e, "'-' takes one or two arguments");
      out = linear(e.items[1]);
      LinearExpr rhs = linear(e.items[2]);
      rhs *= Rational(-1);
      out += rhs;
      return out;
    }
    if (op == "*") {
      if (e.items.size() < 2) fail(e, "empty product");
      out.constant = 1;
      bool have_var = false;
      for (std::size_t i = 1; i < e.items.size(); ++i) {
        LinearExpr f = linear(e.items[i]);
        if (f.is_constant()) {
          out *= f.constant;
          continue;
        }
        if (have_var || !out.is_constant()) fail(e.items[i], "non-linear product");
        have_var = true;
        f *= out.constant;
        out = f;
      }
      return out;
    }
    fail(e, "unknown operator '" + op + "' in term");
  }

  // lhs <= rhs, closed.
  Formula compare(const SExpr& at, const LinearExpr& lhs, const LinearExpr& rhs) const {
    LinearExpr diff = rhs;
    diff *= Rational(-1);
    diff += lhs;
    std::vector<Term> terms;
    for (const auto& [v, c] : diff.coefs) terms.push_back({v, c});
    auto r = LinearAtom::make(std::move(terms), diff.constant);
    (void)at;
    if (const bool* b = std::get_if<bool>(&r)) return Formula::truth(*b);
    return Formula::lit(std::get<LinearAtom>(std::move(r)));
  }

  Formula formula(const SExpr& e, bool negated) const {
    if (!e.is_list) {
      if (e.is("true")) return Formula::truth(!negated);
      if (e.is("false")) return Formula::truth(negated);
      VarId v = lookup(e);
      if ((*vars_)[v].kind != VarKind::boolean) fail(e, "real variable '" + e.atom + "' used as a literal");
      return Formula::lit(BoolLit{v, !negated});
    }
    if (e.items.empty() || e.items[0].is_list) fail(e, "malformed formula");
    const std::string& op = e.items[0].atom;
    auto args = [&] { return std::vector<SExpr>(e.items.begin() + 1, e.items.end()); };
    if (op == "not") {
      if (e.items.size() != 2) fail(e, "'not' takes one argument");
      return formula(e.items[1], !negated);
    }
    if (op == "or" || op == "and") {
      bool is_or = (op == "or") != negated;
      std::vector<Formula> kids;
      for (const auto& a : args()) kids.push_back(formula(a, negated));
      return Formula::group(is_or ? Formula::Kind::disj : Formula::Kind::conj, std::move(kids));
    }
    if (op == "=>") {
      if (e.items.size() != 3) fail(e, "'=>' takes two arguments");
      // a => b  ==  (not a) or b
      std::vector<Formula> kids{formula(e.items[1], !negated), formula(e.items[2], negated)};
      return Formula::group(negated ? Formula::Kind::conj : Formula::Kind::disj, std::move(kids));
    }
    if (op == "=") fail(e, "equality atoms are not supported (measure zero)");
    if (op == "<" || op == "<=" || op == ">" || op == ">=") {
      if (e.items.size() < 3) fail(e, "comparison needs at least two operands");
      std::vector<LinearExpr> operands;
      for (const auto& a : args()) operands.push_back(linear(a));
      bool ascending = op[0] == '<';
      std::vector<Formula> links;
      for (std::size_t i = 0; i + 1 < operands.size(); ++i) {
        const auto& small = ascending ? operands[i] : operands[i + 1];
        const auto& large = ascending ? operands[i + 1] : operands[i];
        links.push_back(negated ? compare(e, large, small) : compare(e, small, large));
      }
      if (links.size() == 1) return links.front();
      return Formula::group(negated ? Formula::Kind::disj : Formula::Kind::conj, std::move(links));
    }
    fail(e, "unknown operator '" + op + "' in formula");
  }

  std::vector<Clause> clauses(const SExpr& e) const {
    auto cnf = to_cnf(formula(e, false));
    for (const auto& c : cnf)
      if (c.empty()) fail(e, "assertion contains an empty (unsatisfiable) clause");
    return cnf;
  }

  std::vector<Literal> guard(const SExpr& e) const {
    Formula f = formula(e, false);
    std::vector<Literal> lits;
    if (f.kind == Formula::Kind::literal) {
      lits.push_back(f.literal);
    } else if (f.kind == Formula::Kind::conj) {
      for (const auto& k : f.kids) {
        if (k.kind != Formula::Kind::literal) fail(e, "weight guard must be a literal or a conjunction of literals");
        lits.push_back(k.literal);
      }
    } else {
      fail(e, "weight guard must be a literal or a conjunction of literals");
    }
    std::vector<VarId> vs;
    for (const auto& l : lits) {
      auto lv = literal_vars(l);
      vs.insert(vs.end(), lv.begin(), lv.end());
    }
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    if (vs.size() != 1) fail(e, "weight guard must mention exactly one variable");
    return lits;
  }

  void factor(const SExpr& e, Monomial& m) const {
    if (!e.is_list) {
      if (looks_numeric(e.atom)) {
        m.coef *= number(e);
        return;
      }
      m.powers.emplace_back(lookup(e), 1u);
      return;
    }
    if (e.items.size() == 3 && e.items[0].is("^")) {
      Rational k = number(e.items[2]);
      if (k.get_den() != 1 || sgn(k) < 0 || !k.get_num().fits_uint_p()) fail(e.items[2], "exponent must be a natural number");
      m.powers.emplace_back(lookup(e.items[1]), static_cast<unsigned>(k.get_num().get_ui()));
      return;
    }
    if (!e.items.empty() && e.items[0].is("*")) {
      for (std::size_t i = 1; i < e.items.size(); ++i) factor(e.items[i], m);
      return;
    }
    fail(e, "malformed monomial");
  }

  Monomial monomial(const SExpr& e) const {
    Monomial m{Rational(1), {}};
    factor(e, m);
    std::map<VarId, unsigned> merged;
    for (const auto& [v, k] : m.powers) merged[v] += k;
    m.powers.clear();
    for (const auto& [v, k] : merged)
      if (k > 0) m.powers.emplace_back(v, k);
    return m;
  }

  Polynomial polynomial(const SExpr& e) const {
    Polynomial p;
    if (e.is_list && !e.items.empty() && e.items[0].is("+")) {
      for (std::size_t i = 1; i < e.items.size(); ++i) p.push_back(monomial(e.items[i]));
      if (p.empty()) fail(e, "empty polynomial");
    } else {
      p.push_back(monomial(e));
    }
    return p;
  }

 private:
  std::shared_ptr<VarTable> vars_;
};

void check_name(const SExpr& e) {
  if (e.is_list || e.atom.empty()) fail(e, "expected a variable name");
  if (e.atom.rfind("__", 0) == 0) fail(e, "names starting with '__' are reserved");
  if (looks_numeric(e.atom)) fail(e, "variable name cannot be numeric");
  static const char* reserved[] = {"true", "false", "not", "or", "and", "=>", "+", "-", "*", "^", "<", "<=", ">", ">=", "="};
  for (const char* r : reserved)
    if (e.atom == r) fail(e, "'" + e.atom + "' is a reserved word");
}

}  // namespace

Problem parse_problem(std::string_view text) {
  auto forms = Reader(text).read_all();
  auto vars = std::make_shared<VarTable>();
  ProblemBuilder builder(vars);
  std::vector<Clause> asserted;
  std::vector<std::pair<const SExpr*, const SExpr*>> weight_forms;

  for (const auto& f : forms) {
    if (!f.is_list || f.items.empty() || f.items[0].is_list) fail(f, "expected a top-level command");
    const std::string& cmd = f.items[0].atom;
    if (cmd == "declare-real") {
      if (f.items.size() < 2) fail(f, "declare-real needs a name");
      check_name(f.items[1]);
      if (f.items.size() != 4) fail(f, "unbounded real variable '" + f.items[1].atom + "': declare-real needs lo and hi");
      Var v{f.items[1].atom, VarKind::real, number(f.items[2]), number(f.items[3])};
      try {
        vars->add(std::move(v));
      } catch (const InputError& err) {
        fail(f, err.what());
      }
    } else if (cmd == "declare-bool") {
      if (f.items.size() != 2) fail(f, "declare-bool takes a name");
      check_name(f.items[1]);
      try {
        vars->add(Var{f.items[1].atom, VarKind::boolean, 0, 0});
      } catch (const InputError& err) {
        fail(f, err.what());
      }
    } else if (cmd == "assert") {
      if (f.items.size() != 2) fail(f, "assert takes one formula");
      auto cs = builder.clauses(f.items[1]);
      asserted.insert(asserted.end(), cs.begin(), cs.end());
    } else if (cmd == "weight") {
      if (f.items.size() != 3) fail(f, "weight takes a guard and a polynomial");
      weight_forms.emplace_back(&f.items[1], &f.items[2]);
    } else {
      fail(f, "unknown command '" + cmd + "'");
    }
  }

  Problem p;
  for (const auto& [g, poly] : weight_forms) p.weights.push_back({builder.guard(*g), builder.polynomial(*poly)});
  p.theory.vars = vars;
  for (VarId v = 0; v < vars->size(); ++v) {
    p.theory.scope.push_back(v);
    if ((*vars)[v].kind == VarKind::real) {
      auto dc = domain_clauses(*vars, v);
      p.theory.clauses.insert(p.theory.clauses.end(), dc.begin(), dc.end());
    }
  }
  p.theory.clauses.insert(p.theory.clauses.end(), asserted.begin(), asserted.end());
  // Asserted bounds usually repeat the declared domain; keep one copy.
  std::set<std::string> seen;
  std::vector<Clause> unique;
  for (auto& c : p.theory.clauses)
    if (seen.insert(clause_to_string(*vars, c)).second) unique.push_back(std::move(c));
  p.theory.clauses = std::move(unique);
  return p;
}

std::vector<Clause> parse_query(std::string_view text, const Problem& problem) {
  auto forms = Reader(text).read_all();
  auto vars = std::make_shared<VarTable>(*problem.theory.vars);
  ProblemBuilder builder(vars);
  std::vector<Clause> out;
  for (const auto& f : forms) {
    if (!f.is_list || f.items.size() != 2 || !f.items[0].is("assert")) fail(f, "query files may contain only (assert ...)");
    auto cs = builder.clauses(f.items[1]);
    out.insert(out.end(), cs.begin(), cs.end());
  }
  return out;
}

namespace {

std::string guard_to_string(const VarTable& vars, const std::vector<Literal>& guard) {
  if (guard.size() == 1) return literal_to_string(vars, guard.front());
  std::string out = "(and";
  for (const auto& l : guard) out += " " + literal_to_string(vars, l);
  return out + ")";
}

std::string monomial_to_string(const VarTable& vars, const Monomial& m) {
  std::string out = "(* " + m.coef.get_str();
  for (const auto& [v, k] : m.powers) out += " (^ " + vars[v].name + " " + std::to_string(k) + ")";
  return out + ")";
}

}  // namespace

std::string write_problem(const Problem& problem) {
  const VarTable& vars = *problem.theory.vars;
  std::ostringstream out;
  for (VarId v : problem.theory.scope) {
    const Var& var = vars[v];
    if (var.kind == VarKind::real)
      out << "(declare-real " << var.name << " " << var.lo.get_str() << " " << var.hi.get_str() << ")\n";
    else
      out << "(declare-bool " << var.name << ")\n";
  }
  std::vector<Clause> implied;
  for (VarId v : problem.theory.scope)
    if (vars[v].kind == VarKind::real) {
      auto dc = domain_clauses(vars, v);
      implied.insert(implied.end(), dc.begin(), dc.end());
    }
  for (const auto& clause : problem.theory.clauses) {
    if (std::find(implied.begin(), implied.end(), clause) != implied.end()) continue;
    out << "(assert " << clause_to_string(vars, clause) << ")\n";
  }
  for (const auto& w : problem.weights) {
    out << "(weight " << guard_to_string(vars, w.guard) << " ";
    if (w.weight.size() == 1) {
      out << monomial_to_string(vars, w.weight.front());
    } else {
      out << "(+";
      for (const auto& m : w.weight) out << " " << monomial_to_string(vars, m);
      out << ")";
    }
    out << ")\n";
  }
  return out.str();
}

}  // namespace smi
