#pragma once

#include <optional>

#include "gradekit/grade_id.hpp"
#include "gradekit/structure.hpp"

namespace gradekit {

// Bijection on a structure's domain, as images in domain order.
struct Permutation {
  std::vector<int> image;
  bool operator==(const Permutation&) const = default;
};

// Point constraints for the search: `required` pins, and optionally
// "fix everything outside {a, b}".
struct SearchConstraint {
  std::vector<std::pair<int, int>> required;
  std::optional<std::pair<int, int>> fix_outside;
};

bool is_automorphism(const Structure& s, const Permutation& pi);

// Direct check that `map` (element of M -> element of N, by index) is an
// isomorphism from M onto N.
bool is_isomorphism(const Structure& m, const Structure& n, const std::vector<int>& map);

// Complete backtracking search in declaration order with forward checking
// (one round of profile refinement plus incremental consistency checks).
// Deterministic: returns the first witness in lexicographic assignment order,
// or nullopt iff no automorphism satisfies the constraint.
std::optional<Permutation> find_automorphism(const Structure& s,
                                             const SearchConstraint& c = {});

// Same search between two structures; nullopt iff M and N are not isomorphic
// under the constraint (pins are M-index -> N-index).
std::optional<std::vector<int>> find_isomorphism(const Structure& m, const Structure& n,
                                                 const SearchConstraint& c = {});

// All automorphisms in lexicographic order, at most `cap` of them.
std::vector<Permutation> enumerate_automorphisms(const Structure& s, std::size_t cap);

struct SymVerdict {
  bool holds = false;
  std::optional<Permutation> witness;
};

// g must be symTotal, symPair or symBare. symTotal is decided by testing the
// transposition directly; the others run constrained searches.
SymVerdict sym_grade(const Structure& s, GradeId g, int a, int b);

// Equivalence relation on the domain as element -> class id (classes numbered
// by first occurrence).
struct PairPartition {
  std::vector<int> class_id;
  int num_classes = 0;
  bool same(int a, int b) const {
    return class_id[static_cast<std::size_t>(a)] == class_id[static_cast<std::size_t>(b)];
  }
};

// Orbit partition of symBare, computed by union-closing search witnesses.
PairPartition orbits(const Structure& s);

} // namespace gradekit
