#pragma once

#include <string>

#include "gradekit/formula.hpp"
#include "gradekit/grades.hpp"

namespace gradekit {

// Finite family of two-variable formulas meant to capture a grade: the grade
// holds on (a, b) iff every member is true at (a, b).
struct FormulaSet {
  std::vector<FormulaPtr> formulas;
  bool identity_permitted = false;
  std::string provenance;
};

// Guarded swap-invariance family for complete symmetry: for each atomic
// pattern, all parameters pinned away from x and y, the biconditional between
// the pattern and its x/y swap. Relational signatures get the full family up
// to param_bound distinct parameters; signatures with functions get atoms up
// to term_depth and the set is marked approximate.
FormulaSet capture_set_sym_total(const Signature& sig, int param_bound, int term_depth = 2);

// Instance-sufficient family for complete relativity, built from the failing
// quotient clause of every non-related class pair, guarded by separating
// formulas from discerning_formula (raises DepthCapExhausted through it).
FormulaSet capture_set_rel_total(const Structure& s, int depth_cap = 3);

struct CaptureResult {
  bool ok = true;
  int a = -1, b = -1;          // counterexample pair when !ok
  bool grade_verdict = false;  // engine verdict at that pair
};

// Compares the grade verdict with the conjunction of the set on every ordered
// pair; first mismatch is reported.
CaptureResult verify_capture(const Structure& s, GradeId g, const FormulaSet& set);

// Capturability of each grade by identity-permitted / identity-free formula
// sets, as data with the documented key.
enum class Capturability { universal, fails_somewhere, finite_only, finite_quotient_only };
struct CaptureTableRow {
  GradeId grade;
  Capturability with_identity;
  Capturability without_identity;
};
const std::array<CaptureTableRow, 12>& capturability_table();
std::string_view capturability_key(Capturability c); // "yes" "no" "f" "fq"

} // namespace gradekit
