#include "gradekit/indisc.hpp"

#include <algorithm>

#include "gradekit/error.hpp"
#include "gradekit/relativity.hpp"

namespace gradekit {
namespace {

// Least pair set containing (a,b) and the diagonal, closed under
// coordinatewise function application. Worklist terminates within n^2 adds.
std::vector<char> pair_closure(const Structure& s, int a, int b) {
  const int n = s.size();
  std::vector<char> in(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
  std::vector<std::pair<int, int>> work;
  auto add = [&](int x, int y) {
    auto& slot = in[static_cast<std::size_t>(x) * static_cast<std::size_t>(n) + static_cast<std::size_t>(y)];
    if (!slot) {
      slot = 1;
      work.emplace_back(x, y);
    }
  };
  add(a, b);
  for (int e = 0; e < n; ++e) add(e, e);

  std::vector<std::pair<int, int>> members;
  while (!work.empty()) {
    auto [x, y] = work.back();
    work.pop_back();
    members.emplace_back(x, y);
    for (std::size_t f = 0; f < s.tables.size(); ++f) {
      const int arity = s.sig.functions[f].arity;
      if (arity == 0) continue; // constants pair with themselves, already in
      // any argument slot may use the new pair, the rest any known pair
      std::vector<std::size_t> pick(static_cast<std::size_t>(arity), 0);
      std::vector<int> lhs(static_cast<std::size_t>(arity)), rhs(static_cast<std::size_t>(arity));
      const std::size_t total = members.size();
      bool more = true;
      while (more) {
        bool uses_new = false;
        for (std::size_t i : pick) uses_new = uses_new || i == total - 1;
        if (uses_new) {
          for (std::size_t i = 0; i < pick.size(); ++i) {
            lhs[i] = members[pick[i]].first;
            rhs[i] = members[pick[i]].second;
          }
          add(s.app(static_cast<int>(f), lhs), s.app(static_cast<int>(f), rhs));
        }
        int i = arity - 1;
        for (; i >= 0; --i) {
          if (++pick[static_cast<std::size_t>(i)] < total) break;
          pick[static_cast<std::size_t>(i)] = 0;
        }
        more = i >= 0;
      }
    }
  }
  return in;
}

// Membership agreement of R over all sequences of closure pairs, pruned by
// walking the extension tuples and their coordinatewise images.
bool predicate_agrees(const Structure& s, const std::vector<char>& closure, int pred,
                      bool forward) {
  const int n = s.size();
  const int arity = s.sig.predicates[static_cast<std::size_t>(pred)].arity;
  std::vector<std::vector<int>> image(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      const bool linked = forward
          ? closure[static_cast<std::size_t>(x) * static_cast<std::size_t>(n) + static_cast<std::size_t>(y)]
          : closure[static_cast<std::size_t>(y) * static_cast<std::size_t>(n) + static_cast<std::size_t>(x)];
      if (linked) image[static_cast<std::size_t>(x)].push_back(y);
    }
  std::vector<int> mapped(static_cast<std::size_t>(arity));
  for (const auto& t : s.extensions[static_cast<std::size_t>(pred)]) {
    std::vector<std::size_t> pick(static_cast<std::size_t>(arity), 0);
    bool more = true;
    while (more) {
      for (int i = 0; i < arity; ++i)
        mapped[static_cast<std::size_t>(i)] =
            image[static_cast<std::size_t>(t[static_cast<std::size_t>(i)])]
                 [pick[static_cast<std::size_t>(i)]];
      if (!s.holds(pred, mapped)) return false;
      int i = arity - 1;
      for (; i >= 0; --i) {
        auto& p = pick[static_cast<std::size_t>(i)];
        if (++p < image[static_cast<std::size_t>(t[static_cast<std::size_t>(i)])].size()) break;
        p = 0;
      }
      more = i >= 0;
    }
  }
  return true;
}

} // namespace

bool indisc_pair(const Structure& s, int a, int b) {
  if (a < 0 || a >= s.size() || b < 0 || b >= s.size())
    throw DomainError("element out of domain");
  if (a == b) return true;
  for (const auto& p : s.sig.predicates)
    if (p.arity > 3)
      throw DomainError("indiscernibility check capped at predicate arity 3; '" +
                        p.name + "' has arity " + std::to_string(p.arity));
  auto closure = pair_closure(s, a, b);
  for (std::size_t p = 0; p < s.sig.predicates.size(); ++p) {
    if (!predicate_agrees(s, closure, static_cast<int>(p), true)) return false;
    if (!predicate_agrees(s, closure, static_cast<int>(p), false)) return false;
  }
  return true;
}

PairPartition full_indisc(const Structure& s) {
  const int n = s.size();
  PairPartition part;
  part.class_id.assign(static_cast<std::size_t>(n), -1);
  std::vector<int> reps;
  for (int e = 0; e < n; ++e) {
    for (int r : reps)
      if (indisc_pair(s, r, e)) {
        part.class_id[static_cast<std::size_t>(e)] = part.class_id[static_cast<std::size_t>(r)];
        break;
      }
    if (part.class_id[static_cast<std::size_t>(e)] < 0) {
      part.class_id[static_cast<std::size_t>(e)] = part.num_classes++;
      reps.push_back(e);
    }
  }
  return part;
}

QuotientResult quotient(const Structure& s) {
  PairPartition part = full_indisc(s);
  const int n = s.size();
  const int m = part.num_classes;

  std::vector<int> rep(static_cast<std::size_t>(m), -1);
  std::vector<std::string> domain(static_cast<std::size_t>(m));
  for (int e = 0; e < n; ++e) {
    int c = part.class_id[static_cast<std::size_t>(e)];
    if (rep[static_cast<std::size_t>(c)] < 0) {
      rep[static_cast<std::size_t>(c)] = e;
      domain[static_cast<std::size_t>(c)] = s.domain[static_cast<std::size_t>(e)];
    }
  }

  std::vector<std::vector<std::vector<int>>> ext(s.sig.predicates.size());
  for (std::size_t p = 0; p < s.extensions.size(); ++p) {
    for (const auto& t : s.extensions[p]) {
      std::vector<int> q(t.size());
      for (std::size_t i = 0; i < t.size(); ++i)
        q[i] = part.class_id[static_cast<std::size_t>(t[i])];
      ext[p].push_back(std::move(q));
    }
  }

  std::vector<std::vector<int>> tables(s.sig.functions.size());
  for (std::size_t f = 0; f < s.tables.size(); ++f) {
    const int arity = s.sig.functions[f].arity;
    tables[f].assign(tuple_count(m, arity), -1);
    std::vector<int> args(static_cast<std::size_t>(arity), 0);
    std::vector<int> classes(static_cast<std::size_t>(arity));
    bool more = true;
    while (more) {
      for (std::size_t i = 0; i < args.size(); ++i)
        classes[i] = part.class_id[static_cast<std::size_t>(args[i])];
      const std::size_t slot = tuple_index(classes, m);
      const int value = part.class_id[static_cast<std::size_t>(s.app(static_cast<int>(f), args))];
      if (tables[f][slot] >= 0 && tables[f][slot] != value)
        throw InternalError("quotient table not well defined for '" +
                            s.sig.functions[f].name +
                            "': the indiscernibility relation is not a congruence");
      tables[f][slot] = value;
      more = arity > 0 && next_tuple(args, n);
    }
    for (int v : tables[f])
      if (v < 0) throw InternalError("quotient table has an unreached class tuple");
  }

  QuotientResult out{make_structure(s.sig, std::move(domain), std::move(ext), std::move(tables)),
                     std::move(part.class_id)};
  return out;
}

Analysis analyze(const Structure& s) {
  Analysis a;
  a.quot = quotient(s);
  a.partition.class_id = a.quot.class_of;
  a.partition.num_classes = a.quot.quotient.size();
  return a;
}

bool indisc_grade(const Structure& s, GradeId g, int a, int b) {
  switch (g) {
    case GradeId::id: return a == b;
    case GradeId::indiscNeqFull: return indisc_pair(s, a, b);
    // finite-structure coincidences
    case GradeId::indiscEqMon: return sym_grade(s, GradeId::symBare, a, b).holds;
    case GradeId::indiscEqPair: return sym_grade(s, GradeId::symPair, a, b).holds;
    case GradeId::indiscNeqMon: return rel_grade(s, GradeId::relBare, a, b).holds;
    case GradeId::indiscNeqPair: return rel_grade(s, GradeId::relPair, a, b).holds;
    default: throw DomainError("indisc_grade needs an indiscernibility grade");
  }
}

EnumBounds discerning_bounds(int depth_cap) {
  EnumBounds bounds;
  bounds.max_quant_depth = depth_cap;
  // one connective suffices at the top level (a boolean combination only
  // separates when a constituent does) and keeps quantifier bodies tractable
  bounds.max_connectives = 1;
  bounds.term_depth = 2;
  bounds.identity = false;
  return bounds;
}

std::optional<FormulaPtr> discerning_formula(const Structure& s, FormulaEnumerator& en,
                                             int a, int b) {
  if (a < 0 || a >= s.size() || b < 0 || b >= s.size())
    throw DomainError("element out of domain");
  if (indisc_pair(s, a, b)) return std::nullopt;

  Assignment same, cross;
  same.set("x", a);
  same.set("y", a);
  cross.set("x", a);
  cross.set("y", b);

  FormulaPtr found;
  try {
    en.scan([&](const FormulaPtr& f) {
      if (evaluate(s, *f, same) != evaluate(s, *f, cross)) {
        found = f;
        return false;
      }
      return true;
    });
  } catch (const EnumerationOverflow&) {
    // treated as an exhausted budget below
  }
  if (found) return found;
  throw DepthCapExhausted("no separating formula within the deepening bounds for "
                          "discernible pair (" +
                              s.domain[static_cast<std::size_t>(a)] + ", " +
                              s.domain[static_cast<std::size_t>(b)] + ")",
                          s.domain[static_cast<std::size_t>(a)],
                          s.domain[static_cast<std::size_t>(b)]);
}

std::optional<FormulaPtr> discerning_formula(const Structure& s, int a, int b, int depth_cap) {
  FormulaEnumerator en(s.sig, {"x", "y"}, discerning_bounds(depth_cap));
  return discerning_formula(s, en, a, b);
}

namespace {

// Conjuncts of the relational defining formula: for every predicate and every
// placement of x (the rest universally quantified), the biconditional between
// the x-version and the y-version.
std::vector<FormulaPtr> relational_conjuncts(const Signature& sig) {
  std::vector<FormulaPtr> parts;
  for (std::size_t p = 0; p < sig.predicates.size(); ++p) {
    const int arity = sig.predicates[p].arity;
    for (unsigned mask = 1; mask < (1u << arity); ++mask) {
      std::vector<Term> xs, ys;
      std::vector<std::string> params;
      for (int i = 0; i < arity; ++i) {
        if (mask & (1u << i)) {
          xs.push_back(Term::make_var("x"));
          ys.push_back(Term::make_var("y"));
        } else {
          std::string v = "v" + std::to_string(params.size() + 1);
          params.push_back(v);
          xs.push_back(Term::make_var(v));
          ys.push_back(Term::make_var(v));
        }
      }
      FormulaPtr body = mk_iff(mk_pred(static_cast<int>(p), xs), mk_pred(static_cast<int>(p), ys));
      for (auto it = params.rbegin(); it != params.rend(); ++it) body = mk_forall(*it, body);
      parts.push_back(body);
    }
  }
  return parts;
}

} // namespace

FormulaPtr defining_formula(const Structure& s, int depth_cap) {
  if (s.sig.predicates.empty())
    throw DomainError(
        "signature has no predicates: the identity-free language is empty, every "
        "pair is indiscernible, and no defining formula exists");

  if (s.sig.relational()) return mk_conjunction(relational_conjuncts(s.sig));

  // finite-quotient construction: separate every pair of distinct classes
  PairPartition part = full_indisc(s);
  std::vector<int> rep(static_cast<std::size_t>(part.num_classes), -1);
  for (int e = 0; e < s.size(); ++e) {
    int c = part.class_id[static_cast<std::size_t>(e)];
    if (rep[static_cast<std::size_t>(c)] < 0) rep[static_cast<std::size_t>(c)] = e;
  }

  FormulaEnumerator en(s.sig, {"x", "y"}, discerning_bounds(depth_cap));
  std::vector<FormulaPtr> parts;
  for (int i = 0; i < part.num_classes; ++i)
    for (int j = 0; j < part.num_classes; ++j) {
      if (i == j) continue;
      auto phi = discerning_formula(s, en, rep[static_cast<std::size_t>(i)],
                                    rep[static_cast<std::size_t>(j)]);
      if (!phi) throw InternalError("distinct classes must be discernible");
      // (phi(x,x) <-> phi(x,y))
      auto xx = substitute(*phi, {{"y", Term::make_var("x")}});
      parts.push_back(mk_iff(xx, *phi));
    }
  if (parts.empty()) {
    // single class: any tautology in the identity-free language will do
    std::vector<Term> args(static_cast<std::size_t>(s.sig.predicates[0].arity),
                           Term::make_var("x"));
    auto atom = mk_pred(0, args);
    auto taut = mk_iff(atom, atom);
    // mention y so the extension is over both variables
    std::vector<Term> yargs(static_cast<std::size_t>(s.sig.predicates[0].arity),
                            Term::make_var("y"));
    auto yatom = mk_pred(0, yargs);
    parts.push_back(mk_and(taut, mk_iff(yatom, yatom)));
  }
  return mk_conjunction(parts);
}

} // namespace gradekit
