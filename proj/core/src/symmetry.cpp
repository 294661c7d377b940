#include "gradekit/symmetry.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "gradekit/error.hpp"

namespace gradekit {
namespace {

// One refinement round over atomic profiles: per predicate/position tuple
// counts, per function the value's current color and diagonal behaviour.
// Used only to prune candidate images; completeness is the search's job.
std::vector<long> profile_colors(const Structure& s) {
  const int n = s.size();
  std::vector<std::vector<long>> prof(static_cast<std::size_t>(n));
  for (int e = 0; e < n; ++e) {
    auto& row = prof[static_cast<std::size_t>(e)];
    for (std::size_t p = 0; p < s.extensions.size(); ++p) {
      const int arity = s.sig.predicates[p].arity;
      for (int pos = 0; pos < arity; ++pos) {
        long count = 0;
        for (const auto& t : s.extensions[p])
          if (t[static_cast<std::size_t>(pos)] == e) ++count;
        row.push_back(count);
      }
      // diagonal membership, e.g. loops for binary predicates
      std::vector<int> diag(static_cast<std::size_t>(arity), e);
      row.push_back(s.holds(static_cast<int>(p), diag) ? 1 : 0);
    }
    for (std::size_t f = 0; f < s.tables.size(); ++f) {
      if (s.sig.functions[f].arity == 1) {
        int v[1] = {e};
        row.push_back(s.app(static_cast<int>(f), v) == e ? 1 : 0);
      }
      long hits = 0;
      for (int v : s.tables[f])
        if (v == e) ++hits;
      row.push_back(hits);
    }
  }
  // ids follow the sorted order of the profile vectors so that colors are
  // comparable across two structures
  std::map<std::vector<long>, long> ids;
  for (const auto& row : prof) ids.emplace(row, 0);
  long next = 0;
  for (auto& [profile, id] : ids) id = next++;
  std::vector<long> colors(static_cast<std::size_t>(n));
  for (int e = 0; e < n; ++e) colors[static_cast<std::size_t>(e)] = ids[prof[static_cast<std::size_t>(e)]];
  return colors;
}

// Backtracking mapper from m to n; complete over all assignments compatible
// with pins. Assumes |M| == |N| and equal signatures.
struct Search {
  const Structure& m;
  const Structure& n;
  std::vector<int> image;   // m index -> n index or -1
  std::vector<char> used;   // n index taken
  std::vector<long> mcolor, ncolor;

  bool consistent(int just) const {
    // check predicate tuples and function equations whose participants are
    // all assigned and include `just`
    for (std::size_t p = 0; p < m.extensions.size(); ++p) {
      const int arity = m.sig.predicates[p].arity;
      std::vector<int> mapped(static_cast<std::size_t>(arity));
      // tuples of M through the new point must land inside R^N
      for (const auto& t : m.extensions[p]) {
        bool touches = false, total = true;
        for (int v : t) {
          touches = touches || v == just;
          total = total && image[static_cast<std::size_t>(v)] >= 0;
        }
        if (!touches || !total) continue;
        for (std::size_t i = 0; i < t.size(); ++i)
          mapped[i] = image[static_cast<std::size_t>(t[i])];
        if (!n.holds(static_cast<int>(p), mapped)) return false;
      }
      // tuples of N through the new image must pull back into R^M
      const int just_img = image[static_cast<std::size_t>(just)];
      std::vector<int> pre(static_cast<std::size_t>(arity));
      for (const auto& t : n.extensions[p]) {
        bool touches = false, total = true;
        for (int v : t) {
          touches = touches || v == just_img;
          int back = -1;
          for (int x = 0; x < m.size(); ++x)
            if (image[static_cast<std::size_t>(x)] == v) { back = x; break; }
          if (back < 0) { total = false; break; }
        }
        if (!touches || !total) continue;
        std::size_t i = 0;
        for (int v : t) {
          for (int x = 0; x < m.size(); ++x)
            if (image[static_cast<std::size_t>(x)] == v) { pre[i] = x; break; }
          ++i;
        }
        if (!m.holds(static_cast<int>(p), pre)) return false;
      }
    }
    for (std::size_t f = 0; f < m.tables.size(); ++f) {
      const int arity = m.sig.functions[f].arity;
      std::vector<int> args(static_cast<std::size_t>(arity), 0);
      std::vector<int> mapped(static_cast<std::size_t>(arity));
      bool more = true;
      while (more) {
        bool touches = arity == 0, total = true;
        for (int v : args) {
          touches = touches || v == just;
          total = total && image[static_cast<std::size_t>(v)] >= 0;
        }
        int out = m.app(static_cast<int>(f), args);
        touches = touches || out == just;
        if (touches && total && image[static_cast<std::size_t>(out)] >= 0) {
          for (std::size_t i = 0; i < args.size(); ++i)
            mapped[i] = image[static_cast<std::size_t>(args[i])];
          if (n.app(static_cast<int>(f), mapped) != image[static_cast<std::size_t>(out)])
            return false;
        }
        more = arity > 0 && next_tuple(args, m.size());
      }
    }
    return true;
  }

  bool assign(int x, int y) {
    if (image[static_cast<std::size_t>(x)] >= 0) return image[static_cast<std::size_t>(x)] == y;
    if (used[static_cast<std::size_t>(y)]) return false;
    if (mcolor[static_cast<std::size_t>(x)] != ncolor[static_cast<std::size_t>(y)]) return false;
    image[static_cast<std::size_t>(x)] = y;
    used[static_cast<std::size_t>(y)] = 1;
    if (consistent(x)) return true;
    image[static_cast<std::size_t>(x)] = -1;
    used[static_cast<std::size_t>(y)] = 0;
    return false;
  }

  void unassign(int x) {
    used[static_cast<std::size_t>(image[static_cast<std::size_t>(x)])] = 0;
    image[static_cast<std::size_t>(x)] = -1;
  }

  // emit() returns false to keep enumerating; search() returns true when told
  // to stop.
  bool search(int x, const std::function<bool(const std::vector<int>&)>& emit) {
    while (x < m.size() && image[static_cast<std::size_t>(x)] >= 0) ++x;
    if (x >= m.size()) return emit(image);
    for (int y = 0; y < n.size(); ++y) {
      if (used[static_cast<std::size_t>(y)]) continue;
      if (!assign(x, y)) continue;
      if (search(x + 1, emit)) return true;
      unassign(x);
    }
    return false;
  }
};

void run_search(const Structure& m, const Structure& n, const SearchConstraint& c,
                const std::function<bool(const std::vector<int>&)>& emit) {
  if (m.sig != n.sig) throw DomainError("isomorphism search needs equal signatures");
  if (m.size() != n.size()) return;

  Search s{m, n, {}, {}, {}, {}};
  s.image.assign(static_cast<std::size_t>(m.size()), -1);
  s.used.assign(static_cast<std::size_t>(n.size()), 0);
  s.mcolor = profile_colors(m);
  s.ncolor = profile_colors(n);

  std::vector<char> pinned(static_cast<std::size_t>(m.size()), 0);
  for (auto [x, y] : c.required) {
    if (x < 0 || x >= m.size() || y < 0 || y >= n.size())
      throw DomainError("constraint element out of domain");
    pinned[static_cast<std::size_t>(x)] = 1;
  }
  if (c.fix_outside) {
    auto [a, b] = *c.fix_outside;
    for (int x = 0; x < m.size(); ++x)
      if (x != a && x != b) {
        if (pinned[static_cast<std::size_t>(x)] == 0 && !s.assign(x, x)) return;
        pinned[static_cast<std::size_t>(x)] = 1;
      }
  }
  for (auto [x, y] : c.required)
    if (!s.assign(x, y)) return;

  s.search(0, emit);
}

} // namespace

bool is_isomorphism(const Structure& m, const Structure& n, const std::vector<int>& map) {
  if (m.sig != n.sig || m.size() != n.size()) return false;
  if (static_cast<int>(map.size()) != m.size()) return false;
  std::vector<char> used(static_cast<std::size_t>(n.size()), 0);
  for (int y : map) {
    if (y < 0 || y >= n.size() || used[static_cast<std::size_t>(y)]) return false;
    used[static_cast<std::size_t>(y)] = 1;
  }
  for (std::size_t p = 0; p < m.sig.predicates.size(); ++p) {
    const int arity = m.sig.predicates[p].arity;
    std::vector<int> t(static_cast<std::size_t>(arity), 0);
    std::vector<int> mapped(static_cast<std::size_t>(arity));
    do {
      for (std::size_t i = 0; i < t.size(); ++i) mapped[i] = map[static_cast<std::size_t>(t[i])];
      if (m.holds(static_cast<int>(p), t) != n.holds(static_cast<int>(p), mapped)) return false;
    } while (next_tuple(t, m.size()));
  }
  for (std::size_t f = 0; f < m.sig.functions.size(); ++f) {
    const int arity = m.sig.functions[f].arity;
    std::vector<int> t(static_cast<std::size_t>(arity), 0);
    std::vector<int> mapped(static_cast<std::size_t>(arity));
    bool more = true;
    while (more) {
      for (std::size_t i = 0; i < t.size(); ++i) mapped[i] = map[static_cast<std::size_t>(t[i])];
      if (map[static_cast<std::size_t>(m.app(static_cast<int>(f), t))] !=
          n.app(static_cast<int>(f), mapped))
        return false;
      more = arity > 0 && next_tuple(t, m.size());
    }
  }
  return true;
}

bool is_automorphism(const Structure& s, const Permutation& pi) {
  return is_isomorphism(s, s, pi.image);
}

std::optional<std::vector<int>> find_isomorphism(const Structure& m, const Structure& n,
                                                 const SearchConstraint& c) {
  std::optional<std::vector<int>> out;
  run_search(m, n, c, [&](const std::vector<int>& image) {
    out = image;
    return true;
  });
  return out;
}

std::optional<Permutation> find_automorphism(const Structure& s, const SearchConstraint& c) {
  auto r = find_isomorphism(s, s, c);
  if (!r) return std::nullopt;
  return Permutation{std::move(*r)};
}

std::vector<Permutation> enumerate_automorphisms(const Structure& s, std::size_t cap) {
  std::vector<Permutation> out;
  run_search(s, s, {}, [&](const std::vector<int>& image) {
    out.push_back(Permutation{image});
    return out.size() >= cap;
  });
  return out;
}

SymVerdict sym_grade(const Structure& s, GradeId g, int a, int b) {
  if (a < 0 || a >= s.size() || b < 0 || b >= s.size())
    throw DomainError("element out of domain");
  switch (g) {
    case GradeId::symTotal: {
      // the definition is quantifier-free: test the transposition directly
      Permutation pi;
      pi.image.resize(static_cast<std::size_t>(s.size()));
      for (int x = 0; x < s.size(); ++x) pi.image[static_cast<std::size_t>(x)] = x;
      pi.image[static_cast<std::size_t>(a)] = b;
      pi.image[static_cast<std::size_t>(b)] = a;
      if (is_automorphism(s, pi)) return {true, pi};
      return {false, std::nullopt};
    }
    case GradeId::symPair: {
      SearchConstraint c;
      c.required = {{a, b}, {b, a}};
      auto w = find_automorphism(s, c);
      return {w.has_value(), w};
    }
    case GradeId::symBare: {
      SearchConstraint c;
      c.required = {{a, b}};
      auto w = find_automorphism(s, c);
      return {w.has_value(), w};
    }
    default: throw DomainError("sym_grade needs a symmetry grade");
  }
}

PairPartition orbits(const Structure& s) {
  const int n = s.size();
  std::vector<int> parent(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) parent[static_cast<std::size_t>(i)] = i;
  std::function<int(int)> find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)];
    return x;
  };
  auto unite = [&](int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  };
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      if (find(a) == find(b)) continue;
      auto v = sym_grade(s, GradeId::symBare, a, b);
      if (!v.holds) continue;
      // a witness joins every element with its image
      for (int x = 0; x < n; ++x) unite(x, v.witness->image[static_cast<std::size_t>(x)]);
    }
  PairPartition part;
  part.class_id.assign(static_cast<std::size_t>(n), -1);
  for (int i = 0; i < n; ++i) {
    int root = find(i);
    if (part.class_id[static_cast<std::size_t>(root)] < 0)
      part.class_id[static_cast<std::size_t>(root)] = part.num_classes++;
    part.class_id[static_cast<std::size_t>(i)] = part.class_id[static_cast<std::size_t>(root)];
  }
  return part;
}

} // namespace gradekit
