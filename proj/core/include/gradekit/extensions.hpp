#pragma once

#include "gradekit/indisc.hpp"
#include "gradekit/structure.hpp"

namespace gradekit {

struct InflationResult {
  Structure extended;
  std::vector<int> clones;     // indices of the new elements in extended
  std::vector<int> retraction; // extended element -> base element
};

// Adds `copies` clones of element a (named a$1..a$k); predicate membership
// and function values are pulled back along the retraction. Every clone is
// completely indiscernible from a in the extension.
InflationResult inflate(const Structure& s, int a, int copies);

// Identity-free elementary inclusion of M into N along an injective strong
// embedding (checked; DomainError when violated). Decided through the
// quotients: true iff the induced class map is an isomorphism of quotients
// hitting every class of N.
bool is_elementary_ext_noid(const Structure& m, const Structure& n,
                            const std::vector<int>& embedding);

// For a, b discernible in s (precondition; DomainError otherwise): inflates a
// by |[b]|+1 clones and reports whether the bare-symmetry search from a to b
// fails in the extension. Expected true always.
bool check_ext_main(const Structure& s, int a, int b);

// Adds one clone of a and reports the implication
//   (complete symmetry of a,b in the extension) => (a,b indiscernible in s).
// Expected true always; the pairwise analogue of this implication fails.
bool check_ext_total(const Structure& s, int a, int b);

} // namespace gradekit
