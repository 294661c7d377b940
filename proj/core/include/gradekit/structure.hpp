#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gradekit {

// Predicate and function symbols with arities. Constants are 0-place functions.
struct Signature {
  struct Sym {
    std::string name;
    int arity = 0;
    bool operator==(const Sym&) const = default;
  };

  std::vector<Sym> predicates; // arity >= 1
  std::vector<Sym> functions;  // arity >= 0

  bool relational() const { return functions.empty(); }
  std::optional<int> pred_index(std::string_view name) const;
  std::optional<int> func_index(std::string_view name) const;

  bool operator==(const Signature&) const = default;
};

// Finite structure: ordered domain, predicate extensions, total function tables.
// Extensions are kept sorted; `marks` and flat `tables` give O(1) lookups.
// All iteration orders derive from declaration order, so outputs are
// deterministic.
struct Structure {
  Signature sig;
  std::vector<std::string> domain;
  // extensions[p] = sorted list of arity-length tuples of element indices
  std::vector<std::vector<std::vector<int>>> extensions;
  // tables[f][mixed-radix index of args] = element index; size(domain)^arity entries
  std::vector<std::vector<int>> tables;

  int size() const { return static_cast<int>(domain.size()); }

  // Element index by name; throws DomainError on unknown names.
  int idx(std::string_view name) const;
  std::optional<int> find(std::string_view name) const;

  bool holds(int pred, std::span<const int> args) const;
  int app(int fn, std::span<const int> args) const;

  bool operator==(const Structure& o) const {
    return sig == o.sig && domain == o.domain && extensions == o.extensions &&
           tables == o.tables;
  }

  // Derived membership bitmaps; rebuilt by seal().
  std::vector<std::vector<char>> marks;
};

struct Diagnostic {
  enum class Severity { error, warning };
  Severity severity = Severity::error;
  std::string location; // free-form, e.g. "R", "f(a,b)", "line 3"
  std::string message;
};

using Diagnostics = std::vector<Diagnostic>;

// Empty iff every Structure invariant holds (domain nonempty, tuples in
// range, tables total, arities consistent, symbol names unique).
Diagnostics validate_structure(const Structure& s);

// Sorts extensions, deduplicates tuples, rebuilds marks. Throws DomainError
// if validation fails.
void seal_structure(Structure& s);

// Convenience constructor used by gallery/random/quotient/inflate.
Structure make_structure(Signature sig, std::vector<std::string> domain,
                         std::vector<std::vector<std::vector<int>>> extensions,
                         std::vector<std::vector<int>> tables);

// Mixed-radix helpers for enumerating arity-length tuples over n elements.
std::size_t tuple_count(int n, int arity);
std::size_t tuple_index(std::span<const int> tuple, int n);
void index_to_tuple(std::size_t index, int n, int arity, std::vector<int>& out);
bool next_tuple(std::vector<int>& tuple, int n); // lexicographic successor

} // namespace gradekit
