#pragma once

#include <optional>

#include "gradekit/enumerate.hpp"
#include "gradekit/formula.hpp"
#include "gradekit/grade_id.hpp"
#include "gradekit/structure.hpp"
#include "gradekit/symmetry.hpp"

namespace gradekit {

// Decides complete identity-free indiscernibility of a and b.
//
// Computes the least set C of element pairs containing (a, b) and every
// (e, e), closed under coordinatewise function application; C is exactly the
// set of value pairs (t(a, params), t(b, params)) over all terms. a and b are
// indiscernible iff for every predicate and every arity-length sequence of
// C-pairs, membership of the left tuple equals membership of the right one.
// Predicates of arity > 3 raise DomainError (the sequence check is exhaustive).
bool indisc_pair(const Structure& s, int a, int b);

// Partition of the domain by indisc_pair (an equivalence relation).
PairPartition full_indisc(const Structure& s);

struct QuotientResult {
  Structure quotient;     // elements named after each class's first member
  std::vector<int> class_of; // element -> quotient element
};

// Quotient by full indiscernibility. Function tables are verified to be
// well defined; a failure raises InternalError since the relation is a
// congruence.
QuotientResult quotient(const Structure& s);

// Bundled per-structure analysis shared by the relativity and grade engines.
struct Analysis {
  PairPartition partition;
  QuotientResult quot;
};
Analysis analyze(const Structure& s);

// Decides any of the six indiscernibility grades. On finite structures the
// identity-permitted grades coincide with the symmetry grades and the
// identity-free monadic/pairwise grades with the relativity grades, so those
// four are dispatched to the corresponding engines.
bool indisc_grade(const Structure& s, GradeId g, int a, int b);

// Identity-free two-variable formula separating a from b: the result phi
// satisfies phi(a,a) != phi(a,b). Returns nullopt when a and b are
// indiscernible; raises DepthCapExhausted when they are not but no witness
// exists within the deepening bounds (quantifier depth up to depth_cap, one
// connective per formula, terms two applications deep).
std::optional<FormulaPtr> discerning_formula(const Structure& s, int a, int b,
                                             int depth_cap = 3);

// Bounds used by the search; callers running many searches over one signature
// should share an enumerator built from these.
EnumBounds discerning_bounds(int depth_cap);
std::optional<FormulaPtr> discerning_formula(const Structure& s, FormulaEnumerator& en,
                                             int a, int b);

// Identity-free formula in free variables {x, y} whose extension on s equals
// full indiscernibility. Relational signatures use the universally quantified
// atomic-pattern family; signatures with functions use per-class-pair
// separating formulas found by discerning_formula. Raises DomainError when
// the signature has no predicates (the identity-free language is empty).
FormulaPtr defining_formula(const Structure& s, int depth_cap = 3);

} // namespace gradekit
