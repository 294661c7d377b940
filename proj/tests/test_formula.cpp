#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gradekit/enumerate.hpp"
#include "gradekit/error.hpp"
#include "gradekit/formula.hpp"
#include "support.hpp"

using namespace gradekit;
using namespace testsupport;

TEST_CASE("parsing: the worked example over G's signature") {
  Signature sig = gallery("G").sig;
  auto f = parse_formula("exists z (S(x,z) & Dt(z,y))", sig, false);
  auto free = free_variables(*f);
  CHECK(free == std::set<std::string>{"x", "y"});
  CHECK(!uses_identity(*f));
  // dotted quantifier form parses to the same AST
  auto g = parse_formula("exists z. S(x,z) & Dt(z,y)", sig, false);
  CHECK(equal_formulas(*f, *g));
}

TEST_CASE("parsing errors") {
  Signature sig{{{"R", 2}}, {}};
  CHECK_THROWS_WITH_AS(parse_formula("x = y", sig, false), doctest::Contains("not permitted"),
                       ParseError);
  CHECK_NOTHROW(parse_formula("x = y", sig, true));
  CHECK_THROWS_WITH_AS(parse_formula("R(x)", sig, false), doctest::Contains("arity mismatch"),
                       ParseError);
  CHECK_THROWS_AS(parse_formula("R(x,y", sig, false), ParseError);
  CHECK_THROWS_AS(parse_formula("R(x,y) &", sig, false), ParseError);
}

TEST_CASE("precedence and quantifier scope") {
  Signature sig{{{"P", 1}, {"Q", 1}}, {}};
  // ! > & > | > -> > <->, quantifier scope maximal to the right
  auto f = parse_formula("!P(x) & P(y) | P(x) -> P(y) <-> P(x)", sig, false);
  CHECK(f->kind == Formula::Kind::iff);
  CHECK(f->a->kind == Formula::Kind::implies);
  CHECK(f->a->a->kind == Formula::Kind::lor);
  CHECK(f->a->a->a->kind == Formula::Kind::land);
  CHECK(f->a->a->a->a->kind == Formula::Kind::lnot);

  auto q = parse_formula("forall v. P(v) -> Q(v)", sig, false);
  CHECK(q->kind == Formula::Kind::forall);
  CHECK(q->a->kind == Formula::Kind::implies);
}

TEST_CASE("print/parse round-trip on random formulas") {
  Signature sig{{{"R", 2}, {"P", 1}}, {{"f", 1}, {"c", 0}}};
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    bool identity = seed % 2 == 0;
    auto f = random_formula(sig, {"x", "y"}, 4, identity, seed);
    std::string text = print_formula(*f, sig);
    auto g = parse_formula(text, sig, identity);
    CHECK_MESSAGE(equal_formulas(*f, *g), text);
  }
}

TEST_CASE("formula equality is structural up to bound renaming") {
  Signature sig{{{"R", 2}}, {}};
  auto a = parse_formula("forall v. exists w. R(v,w)", sig, false);
  auto b = parse_formula("forall w. exists v. R(w,v)", sig, false);
  CHECK(equal_formulas(*a, *b));
  auto c = parse_formula("forall v. exists w. R(w,v)", sig, false);
  CHECK(!equal_formulas(*a, *c));
  // a bound variable never matches a free one of the same name
  auto d = parse_formula("forall v. R(v,z)", sig, false);
  auto e = parse_formula("forall z. R(z,z)", sig, false);
  CHECK(!equal_formulas(*d, *e));
  auto f = parse_formula("forall q. R(q,z)", sig, false);
  CHECK(equal_formulas(*d, *f));
}

TEST_CASE("evaluation on the gallery") {
  Structure b = gallery("B");
  auto has_succ = parse_formula("exists y (R(x,y))", b.sig, false);
  Assignment at1;
  at1.set("x", b.idx("1"));
  CHECK(evaluate(b, *has_succ, at1));

  Structure a = gallery("A");
  Assignment at1a;
  at1a.set("x", a.idx("1"));
  CHECK(!evaluate(a, *has_succ, at1a));

  Structure g = gallery("G");
  auto phi = parse_formula("exists z (S(x,z) & Dt(z,y))", g.sig, false);
  CHECK(evaluate(g, *phi, pair_assignment(g.idx("1"), g.idx("3"))));
  CHECK(!evaluate(g, *phi, pair_assignment(g.idx("3"), g.idx("1"))));
}

TEST_CASE("evaluation: inner quantifiers shadow outer ones") {
  Structure b = gallery("B");
  // inner v wins; the formula says every element has an R-successor
  auto f = parse_formula("forall v. exists v. R(v,v)", b.sig, false);
  Assignment empty;
  CHECK(!evaluate(b, *f, empty)); // no loops in B
  auto g = parse_formula("forall v. exists w. R(v,w)", b.sig, false);
  CHECK(evaluate(b, *g, empty));
  // shadowing a free variable
  auto h = parse_formula("R(x,x) | exists x. R(x,x)", b.sig, false);
  Assignment at0;
  at0.set("x", 0);
  CHECK(!evaluate(b, *h, at0));
}

TEST_CASE("evaluation: unbound variables are rejected") {
  Structure b = gallery("B");
  auto f = parse_formula("R(x,y)", b.sig, false);
  Assignment only_x;
  only_x.set("x", 0);
  CHECK_THROWS_AS(evaluate(b, *f, only_x), DomainError);
}

TEST_CASE("evaluation respects connective semantics on random inputs") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    Structure s = seed % 2 ? random_structure(seed, 2 + seed % 4, relational_spec(0.5))
                           : random_structure(seed, 2 + seed % 4, unary_function_spec(0.5));
    auto f = random_formula(s.sig, {"x"}, 3, false, seed * 31);
    auto g = random_formula(s.sig, {"x"}, 3, false, seed * 31 + 7);
    for (int e = 0; e < s.size(); ++e) {
      Assignment asg;
      asg.set("x", e);
      const bool fe = evaluate(s, *f, asg), ge = evaluate(s, *g, asg);
      CHECK(evaluate(s, *mk_not(f), asg) == !fe);
      CHECK(evaluate(s, *mk_and(f, g), asg) == (fe && ge));
      CHECK(evaluate(s, *mk_or(f, g), asg) == (fe || ge));
      CHECK(evaluate(s, *mk_implies(f, g), asg) == (!fe || ge));
      CHECK(evaluate(s, *mk_iff(f, g), asg) == (fe == ge));
      // de Morgan
      CHECK(evaluate(s, *mk_not(mk_and(f, g)), asg) ==
            evaluate(s, *mk_or(mk_not(f), mk_not(g)), asg));
      // forall v phi == !exists v !phi
      auto all = mk_forall("v9", mk_or(f, mk_pred(0, {Term::make_var("v9"), Term::make_var("x")})));
      auto dual = mk_not(mk_exists(
          "v9", mk_not(mk_or(f, mk_pred(0, {Term::make_var("v9"), Term::make_var("x")})))));
      CHECK(evaluate(s, *all, asg) == evaluate(s, *dual, asg));
    }
  }
}

TEST_CASE("evaluation is invariant under extending the assignment") {
  Structure g = gallery("G");
  auto phi = parse_formula("exists z (S(x,z) & Dt(z,y))", g.sig, false);
  Assignment base = pair_assignment(0, 2);
  Assignment extended = base;
  extended.set("unused", 4);
  CHECK(evaluate(g, *phi, base) == evaluate(g, *phi, extended));
}

TEST_CASE("enumeration: depth 0, no connectives, one free variable") {
  Signature sig{{{"R", 2}}, {}};
  EnumBounds b;
  b.max_quant_depth = 0;
  b.max_connectives = 0;
  auto fs = enumerate_formulas(sig, {"x"}, b);
  REQUIRE(fs.size() == 1);
  CHECK(print_formula(*fs[0], sig) == "R(x,x)");

  b.identity = true;
  auto fs2 = enumerate_formulas(sig, {"x"}, b);
  REQUIRE(fs2.size() == 2);
  CHECK(print_formula(*fs2[1], sig) == "x = x");
}

TEST_CASE("enumeration: empty identity-free language over a predicate-free signature") {
  Signature sig{{}, {{"f", 1}}};
  EnumBounds b;
  b.max_quant_depth = 2;
  b.max_connectives = 2;
  CHECK(enumerate_formulas(sig, {"x"}, b).empty());
}

TEST_CASE("every enumerated formula round-trips and respects the identity flag") {
  Signature sig{{{"R", 2}}, {{"f", 1}}};
  for (bool identity : {false, true}) {
    EnumBounds b;
    b.max_quant_depth = 1;
    b.max_connectives = 1;
    b.term_depth = 1;
    b.identity = identity;
    auto fs = enumerate_formulas(sig, {"x", "y"}, b, false);
    CHECK(fs.size() > 10);
    std::set<std::string> texts;
    for (const auto& f : fs) {
      if (!identity) CHECK(!uses_identity(*f));
      std::string text = print_formula(*f, sig);
      CHECK_MESSAGE(texts.insert(text).second, "duplicate: ", text);
      auto back = parse_formula(text, sig, identity);
      CHECK(equal_formulas(*f, *back));
    }
  }
}

TEST_CASE("enumeration: exact free variables vs subset semantics") {
  Signature sig{{{"R", 2}}, {}};
  EnumBounds b;
  b.max_quant_depth = 0;
  b.max_connectives = 0;
  auto exact = enumerate_formulas(sig, {"x", "y"}, b, true);
  CHECK(exact.size() == 2); // R(x,y), R(y,x)
  auto subset = enumerate_formulas(sig, {"x", "y"}, b, false);
  CHECK(subset.size() == 4); // + R(x,x), R(y,y)
}

TEST_CASE("enumeration overflow raises") {
  Signature sig{{{"R", 2}}, {}};
  EnumBounds b;
  b.max_quant_depth = 2;
  b.max_connectives = 2;
  b.cap = 500;
  CHECK_THROWS_AS(enumerate_formulas(sig, {"x", "y"}, b), EnumerationOverflow);
}

TEST_CASE("enumeration is deterministic") {
  Signature sig{{{"R", 2}}, {}};
  EnumBounds b;
  b.max_quant_depth = 1;
  b.max_connectives = 1;
  auto a = enumerate_formulas(sig, {"x", "y"}, b);
  auto c = enumerate_formulas(sig, {"x", "y"}, b);
  REQUIRE(a.size() == c.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    CHECK(print_formula(*a[i], sig) == print_formula(*c[i], sig));
}
