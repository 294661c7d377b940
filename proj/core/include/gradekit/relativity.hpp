#pragma once

#include <optional>

#include "gradekit/indisc.hpp"
#include "gradekit/structure.hpp"

namespace gradekit {

// Finite binary relation between two domains, as sorted unique index pairs.
struct Correspondence {
  std::vector<std::pair<int, int>> pairs;
  void normalize();
  bool contains(int a, int b) const;
  bool operator==(const Correspondence&) const = default;
};

// Bijection between the quotient domains of two structures.
struct QuotientIso {
  std::vector<int> map; // M-quotient element -> N-quotient element
  bool operator==(const QuotientIso&) const = default;
};

// Totality, surjectivity, predicate agreement over all linked tuple pairs,
// and closure under coordinatewise function application.
bool is_relativeness_correspondence(const Structure& m, const Structure& n,
                                    const Correspondence& pi);

// Decided through the quotient: total, surjective, the induced class map is
// well defined, and that map is an isomorphism of the quotients. Equivalent
// to preservation of all identity-free formulas.
bool is_near_correspondence(const Analysis& m, const Analysis& n, const Correspondence& pi);
bool is_near_correspondence(const Structure& m, const Structure& n, const Correspondence& pi);

// The lift of a quotient isomorphism: a pi^e b iff pi([a]) = [b]. Always a
// relativeness correspondence.
Correspondence galois_e(const Analysis& m, const Analysis& n, const QuotientIso& pi);
Correspondence galois_e(const Structure& m, const Structure& n, const QuotientIso& pi);

// The projection of a near-correspondence to its induced quotient
// isomorphism. Raises DomainError when pi is not a near-correspondence.
QuotientIso galois_c(const Analysis& m, const Analysis& n, const Correspondence& pi);
QuotientIso galois_c(const Structure& m, const Structure& n, const Correspondence& pi);

// (pi^c)^e: the unique maximal relativeness correspondence extending pi.
Correspondence maximal_extension(const Analysis& m, const Analysis& n, const Correspondence& pi);
Correspondence maximal_extension(const Structure& m, const Structure& n, const Correspondence& pi);

struct RelVerdict {
  bool holds = false;
  std::optional<Correspondence> witness;
};

// relTotal / relPair / relBare, decided as the corresponding symmetry grade
// between [a] and [b] on the quotient. When the grade holds the witness is
// the e-lift of the first quotient automorphism found and passes
// is_relativeness_correspondence together with the grade's point conditions.
RelVerdict rel_grade(const Structure& s, GradeId g, int a, int b);
RelVerdict rel_grade(const Structure& s, const Analysis& an, GradeId g, int a, int b);

} // namespace gradekit
