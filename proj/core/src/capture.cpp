#include "gradekit/capture.hpp"

#include <algorithm>
#include <set>

#include "gradekit/error.hpp"

namespace gradekit {
namespace {

// terms over the given variables, layered by application depth
std::vector<Term> pattern_terms(const Signature& sig, const std::vector<std::string>& vars,
                                int term_depth) {
  std::vector<Term> terms;
  for (const auto& v : vars) terms.push_back(Term::make_var(v));
  std::size_t layer_begin = 0;
  for (int d = 1; d <= term_depth; ++d) {
    const std::size_t layer_end = terms.size();
    for (std::size_t f = 0; f < sig.functions.size(); ++f) {
      const int arity = sig.functions[f].arity;
      std::vector<std::size_t> pick(static_cast<std::size_t>(arity), 0);
      while (true) {
        bool fresh = arity == 0 ? d == 1 : false;
        for (std::size_t i : pick) fresh = fresh || i >= layer_begin;
        if (fresh) {
          std::vector<Term> args;
          for (std::size_t i : pick) args.push_back(terms[i]);
          terms.push_back(Term::make_app(static_cast<int>(f), std::move(args)));
        }
        int i = arity - 1;
        for (; i >= 0; --i) {
          if (++pick[static_cast<std::size_t>(i)] < layer_end) break;
          pick[static_cast<std::size_t>(i)] = 0;
        }
        if (i < 0) break;
      }
    }
    layer_begin = layer_end;
    if (layer_begin == terms.size()) break;
  }
  return terms;
}

void collect_vars(const Term& t, std::vector<std::string>& out) {
  if (t.kind == Term::Kind::var)
    out.push_back(t.var);
  else
    for (const auto& a : t.args) collect_vars(a, out);
}

Term swap_xy_term(const Term& t) {
  if (t.kind == Term::Kind::var) {
    if (t.var == "x") return Term::make_var("y");
    if (t.var == "y") return Term::make_var("x");
    return t;
  }
  std::vector<Term> args;
  for (const auto& a : t.args) args.push_back(swap_xy_term(a));
  return Term::make_app(t.fn, std::move(args));
}

// guard "p1 != x & p1 != y & ..." wrapped around body, universally quantified
FormulaPtr guarded_swap(const std::vector<std::string>& params, FormulaPtr body) {
  FormulaPtr out = std::move(body);
  if (!params.empty()) {
    FormulaPtr guard;
    for (const auto& p : params) {
      auto c1 = mk_not(mk_eq(Term::make_var(p), Term::make_var("x")));
      auto c2 = mk_not(mk_eq(Term::make_var(p), Term::make_var("y")));
      auto both = mk_and(c1, c2);
      guard = guard ? mk_and(guard, both) : both;
    }
    out = mk_implies(guard, out);
    for (auto it = params.rbegin(); it != params.rend(); ++it) out = mk_forall(*it, out);
  }
  return out;
}

} // namespace

FormulaSet capture_set_sym_total(const Signature& sig, int param_bound, int term_depth) {
  if (param_bound < 0) throw DomainError("param_bound must be >= 0");
  FormulaSet set;
  set.identity_permitted = true;
  const bool approximate = !sig.relational();
  set.provenance = "sym-total guarded swap family, params <= " + std::to_string(param_bound) +
                   (approximate ? ", term depth <= " + std::to_string(term_depth) +
                                      " (approximate: term-infinite atomic family)"
                                : "");

  std::vector<std::string> vars = {"x", "y"};
  for (int i = 1; i <= param_bound; ++i) vars.push_back("p" + std::to_string(i));
  const std::vector<Term> terms = pattern_terms(sig, vars, sig.relational() ? 0 : term_depth);

  // canonical parameter use: p1..pk appear in first-occurrence order
  auto canonical_params = [&](const std::vector<Term>& args, std::vector<std::string>& params) {
    std::vector<std::string> occur;
    for (const auto& t : args) collect_vars(t, occur);
    bool mentions_xy = false;
    params.clear();
    for (const auto& v : occur) {
      if (v == "x" || v == "y") {
        mentions_xy = true;
        continue;
      }
      auto it = std::find(params.begin(), params.end(), v);
      if (it == params.end()) {
        std::string expect = "p" + std::to_string(params.size() + 1);
        if (v != expect) return false;
        params.push_back(v);
      }
    }
    return mentions_xy;
  };

  std::set<std::string> seen;
  auto add = [&](FormulaPtr atom, FormulaPtr swapped, const std::vector<std::string>& params) {
    auto body = mk_iff(atom, swapped);
    auto formula = guarded_swap(params, body);
    // drop the swap-image duplicate of an already-kept pattern
    std::string key = print_formula(*atom, sig);
    std::string skey = print_formula(*swapped, sig);
    if (seen.count(skey)) return;
    seen.insert(key);
    set.formulas.push_back(std::move(formula));
  };

  for (std::size_t p = 0; p < sig.predicates.size(); ++p) {
    const int arity = sig.predicates[p].arity;
    std::vector<std::size_t> pick(static_cast<std::size_t>(arity), 0);
    bool more = !terms.empty();
    std::vector<std::string> params;
    while (more) {
      std::vector<Term> args;
      for (std::size_t i : pick) args.push_back(terms[i]);
      if (canonical_params(args, params)) {
        std::vector<Term> swapped;
        for (const auto& t : args) swapped.push_back(swap_xy_term(t));
        add(mk_pred(static_cast<int>(p), args), mk_pred(static_cast<int>(p), swapped), params);
      }
      int i = arity - 1;
      for (; i >= 0; --i) {
        if (++pick[static_cast<std::size_t>(i)] < terms.size()) break;
        pick[static_cast<std::size_t>(i)] = 0;
      }
      more = i >= 0;
    }
  }
  if (!sig.relational()) {
    // equality atoms over non-trivial terms
    std::vector<std::string> params;
    for (std::size_t i = 0; i < terms.size(); ++i)
      for (std::size_t j = 0; j < terms.size(); ++j) {
        if (terms[i].kind == Term::Kind::var && terms[j].kind == Term::Kind::var) continue;
        std::vector<Term> args = {terms[i], terms[j]};
        if (!canonical_params(args, params)) continue;
        add(mk_eq(terms[i], terms[j]), mk_eq(swap_xy_term(terms[i]), swap_xy_term(terms[j])),
            params);
      }
  }
  return set;
}

namespace {

// memoized sign-adjusted separators between class representatives:
// result(u, w) satisfies result(u, u) true and result(u, w) false
struct Separators {
  const Structure& s;
  FormulaEnumerator en;
  std::map<std::pair<int, int>, FormulaPtr> memo;

  Separators(const Structure& s, int depth_cap)
      : s(s), en(s.sig, {"x", "y"}, discerning_bounds(depth_cap)) {}

  FormulaPtr get(int u, int w) {
    auto it = memo.find({u, w});
    if (it != memo.end()) return it->second;
    auto phi = discerning_formula(s, en, u, w);
    if (!phi) throw InternalError("separator requested for indiscernible pair");
    Assignment at_u;
    at_u.set("x", u);
    at_u.set("y", u);
    FormulaPtr adjusted = evaluate(s, **phi, at_u) ? *phi : mk_not(*phi);
    memo.emplace(std::make_pair(u, w), adjusted);
    return adjusted;
  }
};

struct RelTotalBuilder {
  const Structure& s;
  const Analysis& an;
  Separators& sep;
  std::vector<int> rep; // class -> representative element

  // guard parameters accumulated for one gamma
  struct Params {
    std::vector<std::string> names;
    std::vector<int> classes;
    std::string var_for(int cls) {
      for (std::size_t i = 0; i < classes.size(); ++i)
        if (classes[i] == cls) return names[i];
      names.push_back("v" + std::to_string(names.size() + 1));
      classes.push_back(cls);
      return names.back();
    }
  };

  FormulaPtr gamma(int ca, int cb) {
    const Structure& q = an.quot.quotient;
    const int a = rep[static_cast<std::size_t>(ca)];
    const int b = rep[static_cast<std::size_t>(cb)];
    auto sigma = [&](int c) { return c == ca ? cb : c == cb ? ca : c; };

    Params params;
    FormulaPtr theta;

    // predicate clause failure on the quotient
    for (std::size_t p = 0; p < q.sig.predicates.size() && !theta; ++p) {
      const int arity = q.sig.predicates[p].arity;
      std::vector<int> k(static_cast<std::size_t>(arity), 0);
      std::vector<int> sk(static_cast<std::size_t>(arity));
      bool more = true;
      while (more) {
        for (std::size_t i = 0; i < k.size(); ++i) sk[i] = sigma(k[i]);
        if (q.holds(static_cast<int>(p), k) != q.holds(static_cast<int>(p), sk)) {
          std::vector<Term> args;
          for (int c : k)
            args.push_back(Term::make_var(c == ca   ? "x"
                                          : c == cb ? "y"
                                                    : params.var_for(c)));
          theta = mk_pred(static_cast<int>(p), std::move(args));
          break;
        }
        more = next_tuple(k, q.size());
      }
    }

    // function clause failure: sigma(f(k)) != f(sigma(k))
    if (!theta) {
      for (std::size_t f = 0; f < q.sig.functions.size() && !theta; ++f) {
        const int arity = q.sig.functions[f].arity;
        std::vector<int> k(static_cast<std::size_t>(arity), 0);
        std::vector<int> sk(static_cast<std::size_t>(arity));
        bool more = true;
        while (more) {
          for (std::size_t i = 0; i < k.size(); ++i) sk[i] = sigma(k[i]);
          const int c1 = q.app(static_cast<int>(f), k);
          const int c2 = q.app(static_cast<int>(f), sk);
          if (sigma(c1) != c2) {
            std::vector<Term> args;
            for (int c : k)
              args.push_back(Term::make_var(c == ca   ? "x"
                                            : c == cb ? "y"
                                                      : params.var_for(c)));
            Term t = Term::make_app(static_cast<int>(f), std::move(args));
            // compare the term's value against a reference whose class
            // separates the two sides
            if (c1 == c2) {
              // both sides land in ca (or cb); x (resp. y) separates
              FormulaPtr delta = c1 == ca ? sep.get(a, b) : sep.get(b, a);
              const char* refvar = c1 == ca ? "x" : "y";
              theta = substitute(delta, {{"x", t}, {"y", Term::make_var(refvar)}});
            } else {
              const int cg = (c1 != ca && c1 != cb) ? c1 : c2;
              const int other = cg == c1 ? c2 : c1;
              FormulaPtr delta = sep.get(rep[static_cast<std::size_t>(cg)],
                                         rep[static_cast<std::size_t>(other)]);
              std::string g = params.var_for(cg);
              theta = substitute(delta, {{"x", Term::make_var(g)}, {"y", t}});
            }
            break;
          }
          more = arity > 0 && next_tuple(k, q.size());
        }
      }
    }

    if (!theta)
      throw InternalError("swap is not a quotient automorphism but no failing clause found");

    // swap x and y inside theta (terms only mention x, y, params)
    FormulaPtr theta_swap = substitute(
        theta, {{"x", Term::make_var("y")}, {"y", Term::make_var("x")}});
    FormulaPtr body = mk_iff(theta, theta_swap);

    FormulaPtr guard;
    for (std::size_t i = 0; i < params.names.size(); ++i) {
      const int cg = params.classes[i];
      const Term v = Term::make_var(params.names[i]);
      FormulaPtr phi = sep.get(a, rep[static_cast<std::size_t>(cg)]);
      FormulaPtr psi = sep.get(b, rep[static_cast<std::size_t>(cg)]);
      // phi(x,x) & !phi(x,v) & psi(y,y) & !psi(y,v)
      auto c1 = substitute(phi, {{"y", Term::make_var("x")}});
      auto c2 = mk_not(substitute(phi, {{"y", v}}));
      auto c3 = substitute(psi, {{"x", Term::make_var("y")}});
      auto c4 = mk_not(substitute(psi, {{"x", Term::make_var("y")}, {"y", v}}));
      auto part = mk_and(mk_and(c1, c2), mk_and(c3, c4));
      guard = guard ? mk_and(guard, part) : part;
    }
    FormulaPtr out = guard ? mk_implies(guard, body) : body;
    for (auto it = params.names.rbegin(); it != params.names.rend(); ++it)
      out = mk_forall(*it, out);
    return out;
  }
};

} // namespace

FormulaSet capture_set_rel_total(const Structure& s, int depth_cap) {
  Analysis an = analyze(s);
  const Structure& q = an.quot.quotient;
  Separators sep(s, depth_cap);

  std::vector<int> rep(static_cast<std::size_t>(an.partition.num_classes), -1);
  for (int e = 0; e < s.size(); ++e) {
    int c = an.partition.class_id[static_cast<std::size_t>(e)];
    if (rep[static_cast<std::size_t>(c)] < 0) rep[static_cast<std::size_t>(c)] = e;
  }

  RelTotalBuilder builder{s, an, sep, rep};
  FormulaSet set;
  set.identity_permitted = false;
  set.provenance = "rel-total guarded family instantiated per structure; separators up to "
                   "quantifier depth " + std::to_string(depth_cap) +
                   ", one formula per unrelated class pair";

  std::set<std::string> seen;
  for (int ca = 0; ca < q.size(); ++ca)
    for (int cb = 0; cb < q.size(); ++cb) {
      if (ca == cb) continue;
      if (sym_grade(q, GradeId::symTotal, ca, cb).holds) continue;
      FormulaPtr gamma = builder.gamma(ca, cb);
      std::string key = print_formula(*gamma, s.sig);
      if (seen.insert(key).second) set.formulas.push_back(std::move(gamma));
    }
  return set;
}

CaptureResult verify_capture(const Structure& s, GradeId g, const FormulaSet& set) {
  Analysis an = analyze(s);
  for (const auto& f : set.formulas)
    if (!set.identity_permitted && uses_identity(*f))
      throw DomainError("identity-free formula set contains '='");
  for (int a = 0; a < s.size(); ++a)
    for (int b = 0; b < s.size(); ++b) {
      Assignment asg;
      asg.set("x", a);
      asg.set("y", b);
      bool joint = true;
      for (const auto& f : set.formulas)
        if (!evaluate(s, *f, asg)) {
          joint = false;
          break;
        }
      const bool verdict = grade_holds(s, an, g, a, b);
      if (joint != verdict) return {false, a, b, verdict};
    }
  return {};
}

const std::array<CaptureTableRow, 12>& capturability_table() {
  using C = Capturability;
  static const std::array<CaptureTableRow, 12> table = {{
      {GradeId::id, C::universal, C::fails_somewhere},
      {GradeId::indiscEqPair, C::universal, C::fails_somewhere},
      {GradeId::indiscEqMon, C::universal, C::fails_somewhere},
      {GradeId::indiscNeqFull, C::universal, C::universal},
      {GradeId::indiscNeqPair, C::universal, C::universal},
      {GradeId::indiscNeqMon, C::universal, C::universal},
      {GradeId::symTotal, C::universal, C::fails_somewhere},
      {GradeId::symPair, C::finite_only, C::fails_somewhere},
      {GradeId::symBare, C::finite_only, C::fails_somewhere},
      {GradeId::relTotal, C::universal, C::universal},
      {GradeId::relPair, C::finite_quotient_only, C::finite_quotient_only},
      {GradeId::relBare, C::finite_quotient_only, C::finite_quotient_only},
  }};
  return table;
}

std::string_view capturability_key(Capturability c) {
  switch (c) {
    case Capturability::universal: return "yes";
    case Capturability::fails_somewhere: return "no";
    case Capturability::finite_only: return "f";
    case Capturability::finite_quotient_only: return "fq";
  }
  return "?";
}

} // namespace gradekit
