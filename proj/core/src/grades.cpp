#include "gradekit/grades.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"

#include "gradekit/error.hpp"

namespace gradekit {

std::string_view grade_name(GradeId g) {
  switch (g) {
    case GradeId::id: return "id";
    case GradeId::indiscEqPair: return "indiscEqPair";
    case GradeId::indiscEqMon: return "indiscEqMon";
    case GradeId::indiscNeqFull: return "indiscNeqFull";
    case GradeId::indiscNeqPair: return "indiscNeqPair";
    case GradeId::indiscNeqMon: return "indiscNeqMon";
    case GradeId::symTotal: return "symTotal";
    case GradeId::symPair: return "symPair";
    case GradeId::symBare: return "symBare";
    case GradeId::relTotal: return "relTotal";
    case GradeId::relPair: return "relPair";
    case GradeId::relBare: return "relBare";
  }
  return "?";
}

std::optional<GradeId> grade_from_name(std::string_view name) {
  for (GradeId g : all_grades)
    if (grade_name(g) == name) return g;
  return std::nullopt;
}

bool grade_holds(const Structure& s, const Analysis& an, GradeId g, int a, int b) {
  switch (g) {
    case GradeId::id: return a == b;
    case GradeId::indiscNeqFull: return an.partition.same(a, b);
    case GradeId::symTotal:
    case GradeId::symPair:
    case GradeId::symBare: return sym_grade(s, g, a, b).holds;
    case GradeId::relTotal:
    case GradeId::relPair:
    case GradeId::relBare: return rel_grade(s, an, g, a, b).holds;
    // finite-structure coincidences (see indisc_grade)
    case GradeId::indiscEqPair: return sym_grade(s, GradeId::symPair, a, b).holds;
    case GradeId::indiscEqMon: return sym_grade(s, GradeId::symBare, a, b).holds;
    case GradeId::indiscNeqPair: return rel_grade(s, an, GradeId::relPair, a, b).holds;
    case GradeId::indiscNeqMon: return rel_grade(s, an, GradeId::relBare, a, b).holds;
  }
  throw DomainError("unknown grade");
}

namespace {

std::string permutation_text(const Structure& s, const Permutation& pi) {
  std::string out;
  for (int x = 0; x < s.size(); ++x) {
    if (x) out += " ";
    out += s.domain[static_cast<std::size_t>(x)] + "->" +
           s.domain[static_cast<std::size_t>(pi.image[static_cast<std::size_t>(x)])];
  }
  return out;
}

std::string correspondence_text(const Structure& s, const Correspondence& c) {
  std::string out;
  for (auto [a, b] : c.pairs) {
    if (!out.empty()) out += " ";
    out += "(" + s.domain[static_cast<std::size_t>(a)] + "," +
           s.domain[static_cast<std::size_t>(b)] + ")";
  }
  return out;
}

} // namespace

GradeMatrix grade_matrix(const Structure& s, const MatrixOptions& opts) {
  if (s.size() > opts.size_cap)
    throw DomainError("grade_matrix size cap " + std::to_string(opts.size_cap) +
                      " exceeded (domain has " + std::to_string(s.size()) + " elements)");
  Analysis an = analyze(s);
  GradeMatrix m;
  m.domain = s.domain;
  m.n = s.size();
  m.cells.assign(static_cast<std::size_t>(m.n) * static_cast<std::size_t>(m.n), {});
  for (int a = 0; a < m.n; ++a)
    for (int b = 0; b < m.n; ++b) {
      auto& cell = m.cells[static_cast<std::size_t>(a) * static_cast<std::size_t>(m.n) +
                           static_cast<std::size_t>(b)];
      // sym/rel verdicts computed once and reused for the coincident grades
      SymVerdict st = sym_grade(s, GradeId::symTotal, a, b);
      SymVerdict sp = sym_grade(s, GradeId::symPair, a, b);
      SymVerdict sb = sym_grade(s, GradeId::symBare, a, b);
      RelVerdict rt = rel_grade(s, an, GradeId::relTotal, a, b);
      RelVerdict rp = rel_grade(s, an, GradeId::relPair, a, b);
      RelVerdict rb = rel_grade(s, an, GradeId::relBare, a, b);
      cell[static_cast<std::size_t>(GradeId::id)] = a == b;
      cell[static_cast<std::size_t>(GradeId::indiscNeqFull)] = an.partition.same(a, b);
      cell[static_cast<std::size_t>(GradeId::symTotal)] = st.holds;
      cell[static_cast<std::size_t>(GradeId::symPair)] = sp.holds;
      cell[static_cast<std::size_t>(GradeId::symBare)] = sb.holds;
      cell[static_cast<std::size_t>(GradeId::relTotal)] = rt.holds;
      cell[static_cast<std::size_t>(GradeId::relPair)] = rp.holds;
      cell[static_cast<std::size_t>(GradeId::relBare)] = rb.holds;
      cell[static_cast<std::size_t>(GradeId::indiscEqPair)] = sp.holds;
      cell[static_cast<std::size_t>(GradeId::indiscEqMon)] = sb.holds;
      cell[static_cast<std::size_t>(GradeId::indiscNeqPair)] = rp.holds;
      cell[static_cast<std::size_t>(GradeId::indiscNeqMon)] = rb.holds;
      if (opts.with_witnesses) {
        auto put_sym = [&](GradeId g, const SymVerdict& v) {
          if (v.holds && v.witness)
            m.witnesses[{a, b, g}] = permutation_text(s, *v.witness);
        };
        auto put_rel = [&](GradeId g, const RelVerdict& v) {
          if (v.holds && v.witness)
            m.witnesses[{a, b, g}] = correspondence_text(s, *v.witness);
        };
        put_sym(GradeId::symTotal, st);
        put_sym(GradeId::symPair, sp);
        put_sym(GradeId::symBare, sb);
        put_rel(GradeId::relTotal, rt);
        put_rel(GradeId::relPair, rp);
        put_rel(GradeId::relBare, rb);
      }
    }
  return m;
}

std::string matrix_to_json(const GradeMatrix& m) {
  nlohmann::json j;
  j["pairs"] = nlohmann::json::array();
  for (int a = 0; a < m.n; ++a)
    for (int b = 0; b < m.n; ++b) {
      nlohmann::json row;
      row["a"] = m.domain[static_cast<std::size_t>(a)];
      row["b"] = m.domain[static_cast<std::size_t>(b)];
      nlohmann::json grades;
      for (GradeId g : all_grades) grades[std::string(grade_name(g))] = m.get(a, b, g);
      row["grades"] = grades;
      j["pairs"].push_back(row);
    }
  return j.dump(2) + "\n";
}

std::string_view regime_name(Regime r) {
  switch (r) {
    case Regime::generalArbitrary: return "general-arbitrary";
    case Regime::generalRelational: return "general-relational";
    case Regime::finiteArbitrary: return "finite-arbitrary";
    case Regime::finiteRelational: return "finite-relational";
  }
  return "?";
}

std::optional<Regime> regime_from_name(std::string_view name) {
  for (Regime r : {Regime::generalArbitrary, Regime::generalRelational,
                   Regime::finiteArbitrary, Regime::finiteRelational})
    if (regime_name(r) == name) return r;
  return std::nullopt;
}

int EntailmentDiagram::node_of(GradeId g) const {
  for (std::size_t i = 0; i < nodes.size(); ++i)
    for (GradeId x : nodes[i])
      if (x == g) return static_cast<int>(i);
  throw InternalError("grade missing from diagram");
}

bool EntailmentDiagram::entails(GradeId from, GradeId to) const {
  const int src = node_of(from);
  const int dst = node_of(to);
  std::vector<char> seen(nodes.size(), 0);
  std::vector<int> todo{src};
  seen[static_cast<std::size_t>(src)] = 1;
  while (!todo.empty()) {
    int cur = todo.back();
    todo.pop_back();
    if (cur == dst) return true;
    for (auto [u, v] : edges)
      if (u == cur && !seen[static_cast<std::size_t>(v)]) {
        seen[static_cast<std::size_t>(v)] = 1;
        todo.push_back(v);
      }
  }
  return false;
}

namespace {

using G = GradeId;

EntailmentDiagram make_general_arbitrary() {
  EntailmentDiagram d;
  d.regime = Regime::generalArbitrary;
  d.nodes = {{G::id},          {G::symTotal},     {G::indiscNeqFull},
             {G::symPair},     {G::relTotal},     {G::indiscEqPair},
             {G::symBare},     {G::relPair},      {G::indiscEqMon},
             {G::indiscNeqPair}, {G::relBare},    {G::indiscNeqMon}};
  auto e = [&](G a, G b) { d.edges.emplace_back(d.node_of(a), d.node_of(b)); };
  e(G::id, G::symTotal);
  e(G::id, G::indiscNeqFull);
  e(G::symTotal, G::symPair);
  e(G::symTotal, G::relTotal);
  e(G::indiscNeqFull, G::relTotal);
  e(G::symPair, G::indiscEqPair);
  e(G::symPair, G::symBare);
  e(G::symPair, G::relPair);
  e(G::relTotal, G::relPair);
  e(G::symBare, G::indiscEqMon);
  e(G::symBare, G::relBare);
  e(G::relPair, G::indiscNeqPair);
  e(G::relPair, G::relBare);
  e(G::indiscEqPair, G::indiscEqMon);
  e(G::indiscEqPair, G::indiscNeqPair);
  e(G::relBare, G::indiscNeqMon);
  e(G::indiscEqMon, G::indiscNeqMon);
  e(G::indiscNeqPair, G::indiscNeqMon);
  return d;
}

EntailmentDiagram make_general_relational() {
  EntailmentDiagram d = make_general_arbitrary();
  d.regime = Regime::generalRelational;
  // identity-free indiscernibility slots in between = and symTotal
  const int id = d.node_of(G::id);
  const int st = d.node_of(G::symTotal);
  const int fo = d.node_of(G::indiscNeqFull);
  const int rt = d.node_of(G::relTotal);
  std::erase_if(d.edges, [&](const std::pair<int, int>& e) {
    return (e.first == id && e.second == st) || (e.first == fo && e.second == rt);
  });
  d.edges.emplace_back(fo, st);
  return d;
}

EntailmentDiagram make_finite(bool relational) {
  EntailmentDiagram d;
  d.regime = relational ? Regime::finiteRelational : Regime::finiteArbitrary;
  d.nodes = {{G::id},
             {G::symTotal},
             {G::indiscNeqFull},
             {G::indiscEqPair, G::symPair},
             {G::relTotal},
             {G::indiscEqMon, G::symBare},
             {G::indiscNeqPair, G::relPair},
             {G::indiscNeqMon, G::relBare}};
  auto e = [&](G a, G b) { d.edges.emplace_back(d.node_of(a), d.node_of(b)); };
  if (relational) {
    e(G::id, G::indiscNeqFull);
    e(G::indiscNeqFull, G::symTotal);
  } else {
    e(G::id, G::symTotal);
    e(G::id, G::indiscNeqFull);
    e(G::indiscNeqFull, G::relTotal);
  }
  e(G::symTotal, G::symPair);
  e(G::symTotal, G::relTotal);
  e(G::symPair, G::symBare);
  e(G::symPair, G::relPair);
  e(G::symBare, G::relBare);
  e(G::relTotal, G::relPair);
  e(G::relPair, G::relBare);
  return d;
}

} // namespace

const EntailmentDiagram& lattice(Regime regime) {
  static const EntailmentDiagram ga = make_general_arbitrary();
  static const EntailmentDiagram gr = make_general_relational();
  static const EntailmentDiagram fa = make_finite(false);
  static const EntailmentDiagram fr = make_finite(true);
  switch (regime) {
    case Regime::generalArbitrary: return ga;
    case Regime::generalRelational: return gr;
    case Regime::finiteArbitrary: return fa;
    case Regime::finiteRelational: return fr;
  }
  throw DomainError("unknown regime");
}

std::string diagram_to_dot(const EntailmentDiagram& d) {
  std::ostringstream out;
  out << "digraph entailments {\n  rankdir=TB;\n";
  for (std::size_t i = 0; i < d.nodes.size(); ++i) {
    std::string label;
    for (GradeId g : d.nodes[i]) label += (label.empty() ? "" : ", ") + std::string(grade_name(g));
    out << "  n" << i << " [label=\"" << label << "\"];\n";
  }
  for (auto [u, v] : d.edges) out << "  n" << u << " -> n" << v << ";\n";
  out << "}\n";
  return out.str();
}

std::vector<Violation> check_matrix(const GradeMatrix& m, const EntailmentDiagram& d) {
  std::vector<Violation> out;
  for (int a = 0; a < m.n; ++a)
    for (int b = 0; b < m.n; ++b)
      for (GradeId from : all_grades)
        for (GradeId to : all_grades) {
          if (from == to || !d.entails(from, to)) continue;
          if (m.get(a, b, from) && !m.get(a, b, to)) out.push_back({a, b, from, to});
        }
  return out;
}

std::vector<Violation> check_conformance(const Structure& s, Regime regime) {
  if ((regime == Regime::generalRelational || regime == Regime::finiteRelational) &&
      !s.sig.relational())
    throw DomainError("regime '" + std::string(regime_name(regime)) +
                      "' requires a relational signature");
  MatrixOptions opts;
  opts.size_cap = 12;
  return check_matrix(grade_matrix(s, opts), lattice(regime));
}

std::array<RelationStatus, 12> equivalence_report(const Structure& s) {
  MatrixOptions opts;
  opts.size_cap = 12;
  GradeMatrix m = grade_matrix(s, opts);
  std::array<RelationStatus, 12> out;
  for (GradeId g : all_grades) {
    RelationStatus st{true, true, true};
    for (int a = 0; a < m.n; ++a) {
      if (!m.get(a, a, g)) st.reflexive = false;
      for (int b = 0; b < m.n; ++b) {
        if (m.get(a, b, g) != m.get(b, a, g)) st.symmetric = false;
        for (int c = 0; c < m.n; ++c)
          if (m.get(a, b, g) && m.get(b, c, g) && !m.get(a, c, g)) st.transitive = false;
      }
    }
    out[static_cast<std::size_t>(g)] = st;
  }
  return out;
}

} // namespace gradekit
