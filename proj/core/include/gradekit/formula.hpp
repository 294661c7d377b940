#pragma once

#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "gradekit/structure.hpp"

namespace gradekit {

// Terms are variables or function applications (constants are 0-ary
// applications). Function symbols are referenced by index into the signature
// the formula was built against.
struct Term {
  enum class Kind { var, app };
  Kind kind = Kind::var;
  std::string var;
  int fn = -1;
  std::vector<Term> args;

  static Term make_var(std::string name) {
    Term t;
    t.kind = Kind::var;
    t.var = std::move(name);
    return t;
  }
  static Term make_app(int fn, std::vector<Term> args) {
    Term t;
    t.kind = Kind::app;
    t.fn = fn;
    t.args = std::move(args);
    return t;
  }
  bool operator==(const Term&) const = default;
};

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

// First-order AST. `Eq` nodes only appear when identity is permitted.
struct Formula {
  enum class Kind { pred, eq, lnot, land, lor, implies, iff, forall, exists };
  Kind kind = Kind::pred;

  int pred = -1;          // pred
  std::vector<Term> args; // pred
  Term lhs, rhs;          // eq
  FormulaPtr a, b;        // connectives (unary uses a)
  std::string bound;      // quantifiers
};

FormulaPtr mk_pred(int pred, std::vector<Term> args);
FormulaPtr mk_eq(Term lhs, Term rhs);
FormulaPtr mk_not(FormulaPtr a);
FormulaPtr mk_and(FormulaPtr a, FormulaPtr b);
FormulaPtr mk_or(FormulaPtr a, FormulaPtr b);
FormulaPtr mk_implies(FormulaPtr a, FormulaPtr b);
FormulaPtr mk_iff(FormulaPtr a, FormulaPtr b);
FormulaPtr mk_forall(std::string var, FormulaPtr body);
FormulaPtr mk_exists(std::string var, FormulaPtr body);
FormulaPtr mk_conjunction(const std::vector<FormulaPtr>& parts); // parts nonempty

bool uses_identity(const Formula& f);
std::set<std::string> free_variables(const Formula& f);

// Capture-avoiding substitution of free variables by terms. Substituted
// terms must not contain variables that could be captured by binders in f;
// enumeration/capture code only substitutes fresh or disjoint names.
FormulaPtr substitute(const FormulaPtr& f, const std::vector<std::pair<std::string, Term>>& subst);

// Grammar: `!` not, `&`, `|`, `->`, `<->`, `forall v.`/`exists v.` (dot
// optional), atoms `R(t,..)`, `t1 = t2`, terms `f(t,..)`, constants bare.
// Precedence ! > & > | > -> > <->; quantifier scope extends maximally right.
FormulaPtr parse_formula(std::string_view text, const Signature& sig, bool identity_permitted);

// Deterministic rendering in the grammar above; parses back to an equal AST.
std::string print_term(const Term& t, const Signature& sig);
std::string print_formula(const Formula& f, const Signature& sig);

// Structural equality up to canonical renaming of bound variables.
bool equal_formulas(const Formula& a, const Formula& b);

struct Assignment {
  std::vector<std::pair<std::string, int>> binding;
  void set(std::string var, int value);
};

// Standard Tarskian evaluation; quantifiers range over s.domain. Throws
// DomainError on unbound free variables.
bool evaluate(const Structure& s, const Formula& f, const Assignment& assignment);

// Deterministic random formula sampler used by property tests and sampled
// preservation checks; draws from the given free variables.
FormulaPtr random_formula(const Signature& sig, const std::vector<std::string>& vars,
                          int max_depth, bool identity_permitted, std::uint64_t seed);

} // namespace gradekit
