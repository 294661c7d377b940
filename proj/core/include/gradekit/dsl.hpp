#pragma once

#include <string>
#include <string_view>

#include "gradekit/structure.hpp"

namespace gradekit {

// Parses a `signature { ... } structure { ... }` document. Throws ParseError
// with line/column on syntax errors and on semantic errors (unknown symbol,
// wrong arity, partial function, empty domain, reserved '$' in names).
Structure parse_structure(std::string_view text);

// Parses a signature-only document (used by `random --spec`); optional
// trailing density directives:
//   density = 0.5;        # default for every predicate
//   density R = 0.8;      # per-predicate override
struct SignatureSpec {
  Signature sig;
  double default_density = 0.5;
  std::vector<std::pair<std::string, double>> per_predicate;
  double density_of(int pred) const;
};
SignatureSpec parse_signature_spec(std::string_view text);

enum class Format { dsl, json, dot };

// dsl output reparses to an identical structure; json uses sorted keys;
// dot renders binary predicates as arcs (undirected when symmetric) and
// rejects predicates of arity > 2 via DomainError.
std::string serialize_structure(const Structure& s, Format format);

} // namespace gradekit
