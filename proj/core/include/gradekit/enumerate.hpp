#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <tuple>

#include "gradekit/formula.hpp"

namespace gradekit {

// Bounds for the exhaustive formula stream. The stream is complete for the
// language up to a generated normal form: double negations, vacuous
// quantifiers, commutative duplicates (b & a when a & b was emitted) and
// self-paired connectives (a & a, a <-> a, a -> a) are pruned; none of these
// can separate where a kept formula cannot.
struct EnumBounds {
  int max_quant_depth = 1;
  int max_connectives = 1;
  int term_depth = 2;          // max nesting of function applications in atoms
  bool identity = false;       // permit t1 = t2 atoms
  std::size_t cap = 1000000;   // generated-formula cap; exceeded -> EnumerationOverflow
};

// All formulas within bounds whose free variables are exactly `free_vars`
// (subset semantics when exact = false). Deterministic order: quantifier
// depth, then connective count, then construction order.
std::vector<FormulaPtr> enumerate_formulas(const Signature& sig,
                                           const std::vector<std::string>& free_vars,
                                           const EnumBounds& bounds, bool exact = true);

// Incremental interface for iterative deepening: memoizes cells of formulas
// indexed by (quantifier depth, connective count) over free_vars plus
// canonically-named quantified variables. Visit order is q-major.
class FormulaEnumerator {
public:
  FormulaEnumerator(const Signature& sig, std::vector<std::string> free_vars,
                    const EnumBounds& bounds);

  // Formulas with free variables among free_vars at exactly (q, c).
  const std::vector<FormulaPtr>& cell(int quant_depth, int connectives);

  // Calls fn on every formula in deepening order until fn returns false.
  void scan(const std::function<bool(const FormulaPtr&)>& fn);

  std::size_t generated() const { return generated_; }

private:
  struct Key {
    int scope, q, c;
    bool operator<(const Key& o) const {
      return std::tie(scope, q, c) < std::tie(o.scope, o.q, o.c);
    }
  };

  struct Cell {
    std::vector<FormulaPtr> formulas;
    std::vector<std::set<std::string>> frees; // parallel to formulas
  };

  const Cell& cell_at(int scope, int q, int c);
  const std::vector<Term>& terms_at(int scope);
  std::string scope_var(int depth) const;
  void push(Cell& cell, FormulaPtr f, std::set<std::string> free);

  Signature sig_;
  std::vector<std::string> base_;
  EnumBounds bounds_;
  std::string quant_prefix_;
  std::map<Key, Cell> cells_;
  std::map<int, std::vector<Term>> terms_;
  std::size_t generated_ = 0;
};

} // namespace gradekit
