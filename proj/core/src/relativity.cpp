#include "gradekit/relativity.hpp"

#include <algorithm>

#include "gradekit/error.hpp"

namespace gradekit {

void Correspondence::normalize() {
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
}

bool Correspondence::contains(int a, int b) const {
  return std::binary_search(pairs.begin(), pairs.end(), std::make_pair(a, b));
}

namespace {

bool total_and_surjective(const Structure& m, const Structure& n, const Correspondence& pi) {
  std::vector<char> dom(static_cast<std::size_t>(m.size()), 0);
  std::vector<char> rng(static_cast<std::size_t>(n.size()), 0);
  for (auto [a, b] : pi.pairs) {
    if (a < 0 || a >= m.size() || b < 0 || b >= n.size())
      throw DomainError("correspondence pair out of domain");
    dom[static_cast<std::size_t>(a)] = 1;
    rng[static_cast<std::size_t>(b)] = 1;
  }
  return std::find(dom.begin(), dom.end(), 0) == dom.end() &&
         std::find(rng.begin(), rng.end(), 0) == rng.end();
}

} // namespace

bool is_relativeness_correspondence(const Structure& m, const Structure& n,
                                    const Correspondence& pi_in) {
  if (m.sig != n.sig) throw DomainError("correspondence needs equal signatures");
  Correspondence pi = pi_in;
  pi.normalize();
  if (!total_and_surjective(m, n, pi)) return false;

  std::vector<std::vector<int>> image(static_cast<std::size_t>(m.size()));
  std::vector<std::vector<int>> preimage(static_cast<std::size_t>(n.size()));
  for (auto [a, b] : pi.pairs) {
    image[static_cast<std::size_t>(a)].push_back(b);
    preimage[static_cast<std::size_t>(b)].push_back(a);
  }

  // predicate clause, pruned through the extensions from both sides
  for (std::size_t p = 0; p < m.sig.predicates.size(); ++p) {
    const int arity = m.sig.predicates[p].arity;
    std::vector<int> mapped(static_cast<std::size_t>(arity));
    auto scan = [&](const Structure& src, const Structure& dst,
                    const std::vector<std::vector<int>>& link) {
      for (const auto& t : src.extensions[p]) {
        std::vector<std::size_t> pick(static_cast<std::size_t>(arity), 0);
        bool more = true;
        while (more) {
          bool ok = true;
          for (int i = 0; i < arity && ok; ++i) {
            const auto& opts = link[static_cast<std::size_t>(t[static_cast<std::size_t>(i)])];
            if (opts.empty())
              ok = false;
            else
              mapped[static_cast<std::size_t>(i)] = opts[pick[static_cast<std::size_t>(i)]];
          }
          if (ok && !dst.holds(static_cast<int>(p), mapped)) return false;
          int i = arity - 1;
          for (; i >= 0; --i) {
            const auto& opts = link[static_cast<std::size_t>(t[static_cast<std::size_t>(i)])];
            auto& pc = pick[static_cast<std::size_t>(i)];
            if (opts.empty()) { i = -1; break; }
            if (++pc < opts.size()) break;
            pc = 0;
          }
          more = i >= 0;
        }
      }
      return true;
    };
    if (!scan(m, n, image)) return false;
    if (!scan(n, m, preimage)) return false;
  }

  // function clause: f(lefts) linked to f(rights) for every linked argument pair
  for (std::size_t f = 0; f < m.sig.functions.size(); ++f) {
    const int arity = m.sig.functions[f].arity;
    std::vector<std::size_t> pick(static_cast<std::size_t>(arity), 0);
    std::vector<int> lhs(static_cast<std::size_t>(arity)), rhs(static_cast<std::size_t>(arity));
    bool more = true;
    while (more) {
      for (std::size_t i = 0; i < pick.size(); ++i) {
        lhs[i] = pi.pairs[pick[i]].first;
        rhs[i] = pi.pairs[pick[i]].second;
      }
      if (!pi.contains(m.app(static_cast<int>(f), lhs), n.app(static_cast<int>(f), rhs)))
        return false;
      int i = arity - 1;
      for (; i >= 0; --i) {
        if (++pick[static_cast<std::size_t>(i)] < pi.pairs.size()) break;
        pick[static_cast<std::size_t>(i)] = 0;
      }
      more = arity > 0 && i >= 0;
    }
  }
  return true;
}

namespace {

// induced class map, or nullopt when not well defined / not injective
std::optional<std::vector<int>> class_map(const Analysis& m, const Analysis& n,
                                          const Correspondence& pi) {
  const int mc = m.partition.num_classes;
  const int nc = n.partition.num_classes;
  if (mc != nc) return std::nullopt;
  std::vector<int> map(static_cast<std::size_t>(mc), -1);
  std::vector<int> taken(static_cast<std::size_t>(nc), -1);
  for (auto [a, b] : pi.pairs) {
    const int ca = m.partition.class_id[static_cast<std::size_t>(a)];
    const int cb = n.partition.class_id[static_cast<std::size_t>(b)];
    if (map[static_cast<std::size_t>(ca)] >= 0 && map[static_cast<std::size_t>(ca)] != cb)
      return std::nullopt; // a ~ a' but images differ
    if (taken[static_cast<std::size_t>(cb)] >= 0 && taken[static_cast<std::size_t>(cb)] != ca)
      return std::nullopt; // b ~ b' but sources differ
    map[static_cast<std::size_t>(ca)] = cb;
    taken[static_cast<std::size_t>(cb)] = ca;
  }
  for (int v : map)
    if (v < 0) return std::nullopt;
  return map;
}

} // namespace

bool is_near_correspondence(const Analysis& m, const Analysis& n, const Correspondence& pi_in) {
  if (m.quot.quotient.sig != n.quot.quotient.sig)
    throw DomainError("correspondence needs equal signatures");
  Correspondence pi = pi_in;
  pi.normalize();
  // totality/surjectivity over the original domains
  std::vector<char> dom(m.quot.class_of.size(), 0), rng(n.quot.class_of.size(), 0);
  for (auto [a, b] : pi.pairs) {
    if (a < 0 || static_cast<std::size_t>(a) >= dom.size() || b < 0 ||
        static_cast<std::size_t>(b) >= rng.size())
      throw DomainError("correspondence pair out of domain");
    dom[static_cast<std::size_t>(a)] = 1;
    rng[static_cast<std::size_t>(b)] = 1;
  }
  if (std::find(dom.begin(), dom.end(), 0) != dom.end()) return false;
  if (std::find(rng.begin(), rng.end(), 0) != rng.end()) return false;

  auto map = class_map(m, n, pi);
  if (!map) return false;
  return is_isomorphism(m.quot.quotient, n.quot.quotient, *map);
}

bool is_near_correspondence(const Structure& m, const Structure& n, const Correspondence& pi) {
  return is_near_correspondence(analyze(m), analyze(n), pi);
}

Correspondence galois_e(const Analysis& m, const Analysis& n, const QuotientIso& pi) {
  if (static_cast<int>(pi.map.size()) != m.partition.num_classes)
    throw DomainError("quotient isomorphism has wrong size");
  Correspondence out;
  for (int a = 0; a < static_cast<int>(m.quot.class_of.size()); ++a) {
    const int target = pi.map[static_cast<std::size_t>(m.quot.class_of[static_cast<std::size_t>(a)])];
    for (int b = 0; b < static_cast<int>(n.quot.class_of.size()); ++b)
      if (n.quot.class_of[static_cast<std::size_t>(b)] == target) out.pairs.emplace_back(a, b);
  }
  out.normalize();
  return out;
}

QuotientIso galois_c(const Analysis& m, const Analysis& n, const Correspondence& pi_in) {
  Correspondence pi = pi_in;
  pi.normalize();
  if (!is_near_correspondence(m, n, pi))
    throw DomainError("galois_c precondition violated: not a near-correspondence");
  auto map = class_map(m, n, pi);
  return QuotientIso{*map};
}

Correspondence maximal_extension(const Analysis& m, const Analysis& n, const Correspondence& pi) {
  return galois_e(m, n, galois_c(m, n, pi));
}

Correspondence galois_e(const Structure& m, const Structure& n, const QuotientIso& pi) {
  return galois_e(analyze(m), analyze(n), pi);
}

QuotientIso galois_c(const Structure& m, const Structure& n, const Correspondence& pi) {
  return galois_c(analyze(m), analyze(n), pi);
}

Correspondence maximal_extension(const Structure& m, const Structure& n,
                                 const Correspondence& pi) {
  Analysis am = analyze(m), an = analyze(n);
  return galois_e(am, an, galois_c(am, an, pi));
}

RelVerdict rel_grade(const Structure& s, const Analysis& an, GradeId g, int a, int b) {
  if (a < 0 || a >= s.size() || b < 0 || b >= s.size())
    throw DomainError("element out of domain");
  GradeId sym;
  switch (g) {
    case GradeId::relTotal: sym = GradeId::symTotal; break;
    case GradeId::relPair: sym = GradeId::symPair; break;
    case GradeId::relBare: sym = GradeId::symBare; break;
    default: throw DomainError("rel_grade needs a relativity grade");
  }
  const int ca = an.quot.class_of[static_cast<std::size_t>(a)];
  const int cb = an.quot.class_of[static_cast<std::size_t>(b)];
  SymVerdict v = sym_grade(an.quot.quotient, sym, ca, cb);
  if (!v.holds) return {false, std::nullopt};
  return {true, galois_e(an, an, QuotientIso{v.witness->image})};
}

RelVerdict rel_grade(const Structure& s, GradeId g, int a, int b) {
  return rel_grade(s, analyze(s), g, a, b);
}

} // namespace gradekit
