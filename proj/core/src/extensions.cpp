#include "gradekit/extensions.hpp"

#include "gradekit/error.hpp"
#include "gradekit/symmetry.hpp"

namespace gradekit {

InflationResult inflate(const Structure& s, int a, int copies) {
  if (a < 0 || a >= s.size()) throw DomainError("element out of domain");
  if (copies < 1) throw DomainError("inflate needs at least one clone");

  const int n = s.size();
  const int nn = n + copies;
  std::vector<std::string> domain = s.domain;
  InflationResult out;
  for (int i = 1; i <= copies; ++i) {
    out.clones.push_back(n + i - 1);
    domain.push_back(s.domain[static_cast<std::size_t>(a)] + "$" + std::to_string(i));
  }
  out.retraction.resize(static_cast<std::size_t>(nn));
  for (int e = 0; e < n; ++e) out.retraction[static_cast<std::size_t>(e)] = e;
  for (int c : out.clones) out.retraction[static_cast<std::size_t>(c)] = a;
  const auto& sigma = out.retraction;

  std::vector<std::vector<std::vector<int>>> ext(s.sig.predicates.size());
  for (std::size_t p = 0; p < s.extensions.size(); ++p) {
    const int arity = s.sig.predicates[p].arity;
    std::vector<int> t(static_cast<std::size_t>(arity), 0);
    std::vector<int> base(static_cast<std::size_t>(arity));
    do {
      for (std::size_t i = 0; i < t.size(); ++i)
        base[i] = sigma[static_cast<std::size_t>(t[i])];
      if (s.holds(static_cast<int>(p), base)) ext[p].push_back(t);
    } while (next_tuple(t, nn));
  }

  std::vector<std::vector<int>> tables(s.sig.functions.size());
  for (std::size_t f = 0; f < s.tables.size(); ++f) {
    const int arity = s.sig.functions[f].arity;
    tables[f].resize(tuple_count(nn, arity));
    std::vector<int> t(static_cast<std::size_t>(arity), 0);
    std::vector<int> base(static_cast<std::size_t>(arity));
    std::size_t slot = 0;
    bool more = true;
    while (more) {
      for (std::size_t i = 0; i < t.size(); ++i)
        base[i] = sigma[static_cast<std::size_t>(t[i])];
      tables[f][slot++] = s.app(static_cast<int>(f), base);
      more = arity > 0 && next_tuple(t, nn);
    }
  }

  out.extended = make_structure(s.sig, std::move(domain), std::move(ext), std::move(tables));
  return out;
}

bool is_elementary_ext_noid(const Structure& m, const Structure& n,
                            const std::vector<int>& embedding) {
  if (m.sig != n.sig) throw DomainError("embedding needs equal signatures");
  if (static_cast<int>(embedding.size()) != m.size())
    throw DomainError("embedding must cover the domain of the substructure");
  std::vector<char> hit(static_cast<std::size_t>(n.size()), 0);
  for (int y : embedding) {
    if (y < 0 || y >= n.size()) throw DomainError("embedding image out of domain");
    if (hit[static_cast<std::size_t>(y)]) throw DomainError("embedding is not injective");
    hit[static_cast<std::size_t>(y)] = 1;
  }
  // strong embedding: predicate membership reflected both ways, functions commute
  for (std::size_t p = 0; p < m.sig.predicates.size(); ++p) {
    const int arity = m.sig.predicates[p].arity;
    std::vector<int> t(static_cast<std::size_t>(arity), 0);
    std::vector<int> mapped(static_cast<std::size_t>(arity));
    do {
      for (std::size_t i = 0; i < t.size(); ++i)
        mapped[i] = embedding[static_cast<std::size_t>(t[i])];
      if (m.holds(static_cast<int>(p), t) != n.holds(static_cast<int>(p), mapped))
        throw DomainError("embedding does not preserve predicate '" +
                          m.sig.predicates[p].name + "'");
    } while (next_tuple(t, m.size()));
  }
  for (std::size_t f = 0; f < m.sig.functions.size(); ++f) {
    const int arity = m.sig.functions[f].arity;
    std::vector<int> t(static_cast<std::size_t>(arity), 0);
    std::vector<int> mapped(static_cast<std::size_t>(arity));
    bool more = true;
    while (more) {
      for (std::size_t i = 0; i < t.size(); ++i)
        mapped[i] = embedding[static_cast<std::size_t>(t[i])];
      if (embedding[static_cast<std::size_t>(m.app(static_cast<int>(f), t))] !=
          n.app(static_cast<int>(f), mapped))
        throw DomainError("embedding does not preserve function '" +
                          m.sig.functions[f].name + "'");
      more = arity > 0 && next_tuple(t, m.size());
    }
  }

  Analysis am = analyze(m);
  Analysis anl = analyze(n);
  if (am.partition.num_classes != anl.partition.num_classes) return false;
  // induced class map must be a well-defined bijection...
  std::vector<int> map(static_cast<std::size_t>(am.partition.num_classes), -1);
  std::vector<int> taken(static_cast<std::size_t>(anl.partition.num_classes), -1);
  for (int e = 0; e < m.size(); ++e) {
    const int cm = am.partition.class_id[static_cast<std::size_t>(e)];
    const int cn = anl.partition.class_id[static_cast<std::size_t>(embedding[static_cast<std::size_t>(e)])];
    if (map[static_cast<std::size_t>(cm)] >= 0 && map[static_cast<std::size_t>(cm)] != cn)
      return false;
    if (taken[static_cast<std::size_t>(cn)] >= 0 && taken[static_cast<std::size_t>(cn)] != cm)
      return false;
    map[static_cast<std::size_t>(cm)] = cn;
    taken[static_cast<std::size_t>(cn)] = cm;
  }
  for (int v : taken)
    if (v < 0) return false; // some class of n is never hit
  // ...and an isomorphism of the quotients
  return is_isomorphism(am.quot.quotient, anl.quot.quotient, map);
}

bool check_ext_main(const Structure& s, int a, int b) {
  if (indisc_pair(s, a, b))
    throw DomainError("check_ext_main needs a discernible pair");
  PairPartition part = full_indisc(s);
  int class_size = 0;
  for (int e = 0; e < s.size(); ++e)
    if (part.same(b, e)) ++class_size;
  InflationResult inf = inflate(s, a, class_size + 1);
  return !sym_grade(inf.extended, GradeId::symBare, a, b).holds;
}

bool check_ext_total(const Structure& s, int a, int b) {
  InflationResult inf = inflate(s, a, 1);
  const bool total_in_ext = sym_grade(inf.extended, GradeId::symTotal, a, b).holds;
  return !total_in_ext || indisc_pair(s, a, b);
}

} // namespace gradekit
