#include "gradekit/formula.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "gradekit/error.hpp"

namespace gradekit {

FormulaPtr mk_pred(int pred, std::vector<Term> args) {
  auto f = std::make_shared<Formula>();
  f->kind = Formula::Kind::pred;
  f->pred = pred;
  f->args = std::move(args);
  return f;
}

FormulaPtr mk_eq(Term lhs, Term rhs) {
  auto f = std::make_shared<Formula>();
  f->kind = Formula::Kind::eq;
  f->lhs = std::move(lhs);
  f->rhs = std::move(rhs);
  return f;
}

namespace {
FormulaPtr mk_binary(Formula::Kind k, FormulaPtr a, FormulaPtr b) {
  auto f = std::make_shared<Formula>();
  f->kind = k;
  f->a = std::move(a);
  f->b = std::move(b);
  return f;
}
FormulaPtr mk_quant(Formula::Kind k, std::string var, FormulaPtr body) {
  auto f = std::make_shared<Formula>();
  f->kind = k;
  f->bound = std::move(var);
  f->a = std::move(body);
  return f;
}
} // namespace

FormulaPtr mk_not(FormulaPtr a) {
  auto f = std::make_shared<Formula>();
  f->kind = Formula::Kind::lnot;
  f->a = std::move(a);
  return f;
}
FormulaPtr mk_and(FormulaPtr a, FormulaPtr b) { return mk_binary(Formula::Kind::land, std::move(a), std::move(b)); }
FormulaPtr mk_or(FormulaPtr a, FormulaPtr b) { return mk_binary(Formula::Kind::lor, std::move(a), std::move(b)); }
FormulaPtr mk_implies(FormulaPtr a, FormulaPtr b) { return mk_binary(Formula::Kind::implies, std::move(a), std::move(b)); }
FormulaPtr mk_iff(FormulaPtr a, FormulaPtr b) { return mk_binary(Formula::Kind::iff, std::move(a), std::move(b)); }
FormulaPtr mk_forall(std::string var, FormulaPtr body) { return mk_quant(Formula::Kind::forall, std::move(var), std::move(body)); }
FormulaPtr mk_exists(std::string var, FormulaPtr body) { return mk_quant(Formula::Kind::exists, std::move(var), std::move(body)); }

FormulaPtr mk_conjunction(const std::vector<FormulaPtr>& parts) {
  if (parts.empty()) throw DomainError("empty conjunction has no formula");
  FormulaPtr acc = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) acc = mk_and(acc, parts[i]);
  return acc;
}

bool uses_identity(const Formula& f) {
  switch (f.kind) {
    case Formula::Kind::eq: return true;
    case Formula::Kind::pred: return false;
    case Formula::Kind::lnot:
    case Formula::Kind::forall:
    case Formula::Kind::exists: return uses_identity(*f.a);
    default: return uses_identity(*f.a) || uses_identity(*f.b);
  }
}

namespace {
void term_vars(const Term& t, std::set<std::string>& out) {
  if (t.kind == Term::Kind::var)
    out.insert(t.var);
  else
    for (const auto& a : t.args) term_vars(a, out);
}

void collect_free(const Formula& f, std::set<std::string>& bound, std::set<std::string>& out) {
  switch (f.kind) {
    case Formula::Kind::pred: {
      std::set<std::string> vs;
      for (const auto& t : f.args) term_vars(t, vs);
      for (const auto& v : vs)
        if (!bound.count(v)) out.insert(v);
      return;
    }
    case Formula::Kind::eq: {
      std::set<std::string> vs;
      term_vars(f.lhs, vs);
      term_vars(f.rhs, vs);
      for (const auto& v : vs)
        if (!bound.count(v)) out.insert(v);
      return;
    }
    case Formula::Kind::lnot: collect_free(*f.a, bound, out); return;
    case Formula::Kind::forall:
    case Formula::Kind::exists: {
      bool fresh = bound.insert(f.bound).second;
      collect_free(*f.a, bound, out);
      if (fresh) bound.erase(f.bound);
      return;
    }
    default:
      collect_free(*f.a, bound, out);
      collect_free(*f.b, bound, out);
      return;
  }
}
} // namespace

std::set<std::string> free_variables(const Formula& f) {
  std::set<std::string> bound, out;
  collect_free(f, bound, out);
  return out;
}

namespace {
Term subst_term(const Term& t, const std::vector<std::pair<std::string, Term>>& subst) {
  if (t.kind == Term::Kind::var) {
    for (const auto& [v, r] : subst)
      if (v == t.var) return r;
    return t;
  }
  std::vector<Term> args;
  args.reserve(t.args.size());
  for (const auto& a : t.args) args.push_back(subst_term(a, subst));
  return Term::make_app(t.fn, std::move(args));
}
} // namespace

FormulaPtr substitute(const FormulaPtr& f, const std::vector<std::pair<std::string, Term>>& subst) {
  if (subst.empty()) return f;
  switch (f->kind) {
    case Formula::Kind::pred: {
      std::vector<Term> args;
      args.reserve(f->args.size());
      for (const auto& t : f->args) args.push_back(subst_term(t, subst));
      return mk_pred(f->pred, std::move(args));
    }
    case Formula::Kind::eq:
      return mk_eq(subst_term(f->lhs, subst), subst_term(f->rhs, subst));
    case Formula::Kind::lnot: return mk_not(substitute(f->a, subst));
    case Formula::Kind::land: return mk_and(substitute(f->a, subst), substitute(f->b, subst));
    case Formula::Kind::lor: return mk_or(substitute(f->a, subst), substitute(f->b, subst));
    case Formula::Kind::implies: return mk_implies(substitute(f->a, subst), substitute(f->b, subst));
    case Formula::Kind::iff: return mk_iff(substitute(f->a, subst), substitute(f->b, subst));
    case Formula::Kind::forall:
    case Formula::Kind::exists: {
      std::vector<std::pair<std::string, Term>> inner;
      for (const auto& p : subst)
        if (p.first != f->bound) inner.push_back(p);
      auto body = substitute(f->a, inner);
      return f->kind == Formula::Kind::forall ? mk_forall(f->bound, body)
                                              : mk_exists(f->bound, body);
    }
  }
  throw InternalError("substitute: bad kind");
}

// ---------------------------------------------------------------- printing

namespace {
int precedence(Formula::Kind k) {
  switch (k) {
    case Formula::Kind::iff: return 1;
    case Formula::Kind::implies: return 2;
    case Formula::Kind::lor: return 3;
    case Formula::Kind::land: return 4;
    case Formula::Kind::lnot: return 5;
    default: return 6; // atoms, quantifiers (printed atomically or prefix)
  }
}

void print_rec(const Formula& f, const Signature& sig, int parent_prec, std::ostream& out) {
  switch (f.kind) {
    case Formula::Kind::pred: {
      out << sig.predicates[static_cast<std::size_t>(f.pred)].name << "(";
      for (std::size_t i = 0; i < f.args.size(); ++i)
        out << (i ? "," : "") << print_term(f.args[i], sig);
      out << ")";
      return;
    }
    case Formula::Kind::eq:
      out << print_term(f.lhs, sig) << " = " << print_term(f.rhs, sig);
      return;
    case Formula::Kind::lnot:
      out << "!";
      print_rec(*f.a, sig, precedence(f.kind), out);
      return;
    case Formula::Kind::forall:
    case Formula::Kind::exists: {
      bool paren = parent_prec > 0; // quantifier scope is maximal; guard inside operators
      if (paren) out << "(";
      out << (f.kind == Formula::Kind::forall ? "forall " : "exists ") << f.bound << ". ";
      print_rec(*f.a, sig, 0, out);
      if (paren) out << ")";
      return;
    }
    default: {
      const int prec = precedence(f.kind);
      const bool paren = prec < parent_prec || (prec == parent_prec);
      const char* op = f.kind == Formula::Kind::land   ? " & "
                       : f.kind == Formula::Kind::lor  ? " | "
                       : f.kind == Formula::Kind::iff  ? " <-> "
                                                        : " -> ";
      if (paren) out << "(";
      print_rec(*f.a, sig, prec, out);
      out << op;
      print_rec(*f.b, sig, prec, out);
      if (paren) out << ")";
      return;
    }
  }
}
} // namespace

std::string print_term(const Term& t, const Signature& sig) {
  if (t.kind == Term::Kind::var) return t.var;
  const auto& f = sig.functions[static_cast<std::size_t>(t.fn)];
  if (f.arity == 0) return f.name;
  std::string out = f.name + "(";
  for (std::size_t i = 0; i < t.args.size(); ++i)
    out += (i ? "," : "") + print_term(t.args[i], sig);
  return out + ")";
}

std::string print_formula(const Formula& f, const Signature& sig) {
  std::ostringstream out;
  print_rec(f, sig, 0, out);
  return out.str();
}

// equality up to bound-variable renaming: compare with de Bruijn-style maps
namespace {
bool equal_terms(const Term& a, const Term& b,
                 const std::vector<std::pair<std::string, std::string>>& env) {
  if (a.kind != b.kind) return false;
  if (a.kind == Term::Kind::var) {
    for (auto it = env.rbegin(); it != env.rend(); ++it) {
      if (it->first == a.var || it->second == b.var)
        return it->first == a.var && it->second == b.var;
    }
    return a.var == b.var;
  }
  if (a.fn != b.fn || a.args.size() != b.args.size()) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (!equal_terms(a.args[i], b.args[i], env)) return false;
  return true;
}

bool equal_rec(const Formula& a, const Formula& b,
               std::vector<std::pair<std::string, std::string>>& env) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Formula::Kind::pred: {
      if (a.pred != b.pred || a.args.size() != b.args.size()) return false;
      for (std::size_t i = 0; i < a.args.size(); ++i)
        if (!equal_terms(a.args[i], b.args[i], env)) return false;
      return true;
    }
    case Formula::Kind::eq:
      return equal_terms(a.lhs, b.lhs, env) && equal_terms(a.rhs, b.rhs, env);
    case Formula::Kind::lnot: return equal_rec(*a.a, *b.a, env);
    case Formula::Kind::forall:
    case Formula::Kind::exists: {
      env.emplace_back(a.bound, b.bound);
      bool ok = equal_rec(*a.a, *b.a, env);
      env.pop_back();
      return ok;
    }
    default:
      return equal_rec(*a.a, *b.a, env) && equal_rec(*a.b, *b.b, env);
  }
}
} // namespace

bool equal_formulas(const Formula& a, const Formula& b) {
  std::vector<std::pair<std::string, std::string>> env;
  return equal_rec(a, b, env);
}

// ---------------------------------------------------------------- evaluation

void Assignment::set(std::string var, int value) {
  for (auto& [v, x] : binding)
    if (v == var) {
      x = value;
      return;
    }
  binding.emplace_back(std::move(var), value);
}

namespace {
struct Env {
  std::vector<std::pair<std::string_view, int>> stack;

  int lookup(const std::string& var) const {
    for (auto it = stack.rbegin(); it != stack.rend(); ++it)
      if (it->first == var) return it->second;
    throw DomainError("unbound variable '" + var + "'");
  }
};

int eval_term(const Structure& s, const Term& t, const Env& env) {
  if (t.kind == Term::Kind::var) return env.lookup(t.var);
  std::vector<int> args(t.args.size());
  for (std::size_t i = 0; i < t.args.size(); ++i) args[i] = eval_term(s, t.args[i], env);
  return s.app(t.fn, args);
}

bool eval_rec(const Structure& s, const Formula& f, Env& env) {
  switch (f.kind) {
    case Formula::Kind::pred: {
      std::vector<int> args(f.args.size());
      for (std::size_t i = 0; i < f.args.size(); ++i) args[i] = eval_term(s, f.args[i], env);
      return s.holds(f.pred, args);
    }
    case Formula::Kind::eq:
      return eval_term(s, f.lhs, env) == eval_term(s, f.rhs, env);
    case Formula::Kind::lnot: return !eval_rec(s, *f.a, env);
    case Formula::Kind::land: return eval_rec(s, *f.a, env) && eval_rec(s, *f.b, env);
    case Formula::Kind::lor: return eval_rec(s, *f.a, env) || eval_rec(s, *f.b, env);
    case Formula::Kind::implies: return !eval_rec(s, *f.a, env) || eval_rec(s, *f.b, env);
    case Formula::Kind::iff: return eval_rec(s, *f.a, env) == eval_rec(s, *f.b, env);
    case Formula::Kind::forall:
    case Formula::Kind::exists: {
      const bool want_all = f.kind == Formula::Kind::forall;
      env.stack.emplace_back(f.bound, 0);
      bool result = want_all;
      for (int e = 0; e < s.size(); ++e) {
        env.stack.back().second = e;
        if (eval_rec(s, *f.a, env) != want_all) {
          result = !want_all;
          break;
        }
      }
      env.stack.pop_back();
      return result;
    }
  }
  throw InternalError("evaluate: bad kind");
}
} // namespace

bool evaluate(const Structure& s, const Formula& f, const Assignment& assignment) {
  Env env;
  env.stack.reserve(assignment.binding.size() + 4);
  for (const auto& [v, x] : assignment.binding) {
    if (x < 0 || x >= s.size()) throw DomainError("assignment value out of domain");
    env.stack.emplace_back(v, x);
  }
  return eval_rec(s, f, env);
}

// ---------------------------------------------------------------- sampling

namespace {
struct Sampler {
  const Signature& sig;
  std::mt19937_64 rng;
  bool identity;
  int fresh = 0;

  int below(int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); }

  Term term(const std::vector<std::string>& vars, int depth) {
    if (!sig.functions.empty() && depth > 0 && below(3) == 0) {
      int f = below(static_cast<int>(sig.functions.size()));
      std::vector<Term> args;
      for (int i = 0; i < sig.functions[static_cast<std::size_t>(f)].arity; ++i)
        args.push_back(term(vars, depth - 1));
      return Term::make_app(f, std::move(args));
    }
    if (vars.empty()) {
      // fall back to a constant if one exists; otherwise no term can be built
      for (std::size_t f = 0; f < sig.functions.size(); ++f)
        if (sig.functions[f].arity == 0) return Term::make_app(static_cast<int>(f), {});
      throw DomainError("no terms available: no variables in scope and no constants");
    }
    return Term::make_var(vars[static_cast<std::size_t>(below(static_cast<int>(vars.size())))]);
  }

  FormulaPtr atom(const std::vector<std::string>& vars) {
    const bool can_pred = !sig.predicates.empty();
    if (!can_pred && !identity) throw DomainError("no atoms available in this language");
    if (can_pred && (!identity || below(4) != 0)) {
      int p = below(static_cast<int>(sig.predicates.size()));
      std::vector<Term> args;
      for (int i = 0; i < sig.predicates[static_cast<std::size_t>(p)].arity; ++i)
        args.push_back(term(vars, 1));
      return mk_pred(p, std::move(args));
    }
    return mk_eq(term(vars, 1), term(vars, 1));
  }

  FormulaPtr gen(std::vector<std::string> vars, int depth) {
    if (depth <= 0 || below(4) == 0) return atom(vars);
    switch (below(7)) {
      case 0: return mk_not(gen(vars, depth - 1));
      case 1: return mk_and(gen(vars, depth - 1), gen(vars, depth - 1));
      case 2: return mk_or(gen(vars, depth - 1), gen(vars, depth - 1));
      case 3: return mk_implies(gen(vars, depth - 1), gen(vars, depth - 1));
      case 4: return mk_iff(gen(vars, depth - 1), gen(vars, depth - 1));
      default: {
        std::string v = "q" + std::to_string(++fresh);
        bool all = below(2) == 0;
        vars.push_back(v);
        auto body = gen(vars, depth - 1);
        return all ? mk_forall(v, body) : mk_exists(v, body);
      }
    }
  }
};
} // namespace

FormulaPtr random_formula(const Signature& sig, const std::vector<std::string>& vars,
                          int max_depth, bool identity_permitted, std::uint64_t seed) {
  Sampler smp{sig, std::mt19937_64(seed), identity_permitted};
  return smp.gen(vars, max_depth);
}

} // namespace gradekit
