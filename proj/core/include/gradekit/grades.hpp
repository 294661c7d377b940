#pragma once

#include <array>
#include <map>
#include <string>
#include <tuple>

#include "gradekit/grade_id.hpp"
#include "gradekit/indisc.hpp"
#include "gradekit/relativity.hpp"
#include "gradekit/structure.hpp"
#include "gradekit/symmetry.hpp"

namespace gradekit {

// Single dispatcher for deciding any grade on a pair; `an` carries the
// precomputed quotient analysis of s.
bool grade_holds(const Structure& s, const Analysis& an, GradeId g, int a, int b);

struct GradeMatrix {
  std::vector<std::string> domain;
  int n = 0;
  // cells[(a*n + b)][grade]
  std::vector<std::array<bool, 12>> cells;
  // printable witnesses for sym/rel grades that hold, when requested
  std::map<std::tuple<int, int, GradeId>, std::string> witnesses;

  const std::array<bool, 12>& at(int a, int b) const {
    return cells[static_cast<std::size_t>(a) * static_cast<std::size_t>(n) +
                 static_cast<std::size_t>(b)];
  }
  bool get(int a, int b, GradeId g) const {
    return at(a, b)[static_cast<std::size_t>(g)];
  }
};

struct MatrixOptions {
  int size_cap = 10;
  bool with_witnesses = false;
};

// All twelve grades for all ordered pairs; deterministic. Raises DomainError
// beyond the size cap.
GradeMatrix grade_matrix(const Structure& s, const MatrixOptions& opts = {});

// JSON per the documented schema:
//   {"pairs":[{"a":..,"b":..,"grades":{"id":false,...}}]}
std::string matrix_to_json(const GradeMatrix& m);

enum class Regime { generalArbitrary, generalRelational, finiteArbitrary, finiteRelational };

std::string_view regime_name(Regime r);
std::optional<Regime> regime_from_name(std::string_view name);

// Hasse diagram over grades (nodes are coincidence classes in the finite
// regimes). Entailment is the reflexive-transitive closure of the edges,
// with grades in one node mutually entailing.
struct EntailmentDiagram {
  Regime regime = Regime::generalArbitrary;
  std::vector<std::vector<GradeId>> nodes;
  std::vector<std::pair<int, int>> edges; // node index -> node index, downward
  bool entails(GradeId from, GradeId to) const;
  int node_of(GradeId g) const;
};

const EntailmentDiagram& lattice(Regime regime);

std::string diagram_to_dot(const EntailmentDiagram& d);

struct Violation {
  int a = 0, b = 0;
  GradeId from = GradeId::id, to = GradeId::id;
};

// Empty iff every diagram entailment R -> S satisfies R(a,b) => S(a,b) on
// every ordered pair. Relational regimes require a relational signature.
std::vector<Violation> check_conformance(const Structure& s, Regime regime);
std::vector<Violation> check_matrix(const GradeMatrix& m, const EntailmentDiagram& d);

struct RelationStatus {
  bool reflexive = false, symmetric = false, transitive = false;
};

// Reflexivity/symmetry/transitivity of each grade's relation on s, by
// exhaustive check over the matrix.
std::array<RelationStatus, 12> equivalence_report(const Structure& s);

} // namespace gradekit
