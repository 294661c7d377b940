#include <cctype>

#include "gradekit/error.hpp"
#include "gradekit/formula.hpp"

namespace gradekit {
namespace {

struct FLexer {
  std::string_view src;
  std::size_t pos = 0;
  int line = 1, col = 1;

  void advance() {
    if (pos < src.size()) {
      if (src[pos] == '\n') { ++line; col = 1; } else { ++col; }
      ++pos;
    }
  }
  void skip_ws() {
    while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) advance();
  }
  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, line, col); }

  char peek() {
    skip_ws();
    return pos < src.size() ? src[pos] : '\0';
  }
  bool try_tok(std::string_view t) {
    skip_ws();
    if (src.substr(pos, t.size()) != t) return false;
    // reject identifier-prefix matches such as "forallx"
    if (std::isalpha(static_cast<unsigned char>(t[0]))) {
      std::size_t end = pos + t.size();
      if (end < src.size() &&
          (std::isalnum(static_cast<unsigned char>(src[end])) || src[end] == '_'))
        return false;
    }
    for (std::size_t i = 0; i < t.size(); ++i) advance();
    return true;
  }
  void expect(std::string_view t) {
    if (!try_tok(t)) fail("expected '" + std::string(t) + "'");
  }
  std::string ident() {
    skip_ws();
    if (pos >= src.size() ||
        !(std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_'))
      fail("expected identifier");
    std::string out;
    while (pos < src.size() &&
           (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_')) {
      out.push_back(src[pos]);
      advance();
    }
    return out;
  }
};

struct FParser {
  FLexer lx;
  const Signature& sig;
  bool identity;

  std::vector<Term> arg_list() {
    std::vector<Term> args;
    lx.expect("(");
    if (lx.peek() != ')') {
      args.push_back(term());
      while (lx.try_tok(",")) args.push_back(term());
    }
    lx.expect(")");
    return args;
  }

  std::vector<Term> checked_args(const std::string& name, int arity) {
    auto args = arg_list();
    if (static_cast<int>(args.size()) != arity)
      lx.fail("arity mismatch: '" + name + "' takes " + std::to_string(arity) +
              " argument(s), got " + std::to_string(args.size()));
    return args;
  }

  Term term() {
    std::string name = lx.ident();
    if (auto f = sig.func_index(name)) {
      const int arity = sig.functions[static_cast<std::size_t>(*f)].arity;
      std::vector<Term> args;
      if (arity > 0) {
        args = checked_args(name, arity);
      } else if (lx.peek() == '(') {
        lx.fail("constant '" + name + "' takes no arguments");
      }
      return Term::make_app(*f, std::move(args));
    }
    if (sig.pred_index(name)) lx.fail("predicate '" + name + "' used as a term");
    return Term::make_var(name);
  }

  FormulaPtr atom_or_unary() {
    if (lx.try_tok("!")) return mk_not(atom_or_unary());
    if (lx.try_tok("forall")) {
      std::string v = lx.ident();
      lx.try_tok(".");
      return mk_forall(v, iff_level());
    }
    if (lx.try_tok("exists")) {
      std::string v = lx.ident();
      lx.try_tok(".");
      return mk_exists(v, iff_level());
    }
    if (lx.try_tok("(")) {
      auto f = iff_level();
      lx.expect(")");
      return f;
    }
    // predicate atom or equality
    std::string name = lx.ident();
    if (auto p = sig.pred_index(name)) {
      const int arity = sig.predicates[static_cast<std::size_t>(*p)].arity;
      return mk_pred(*p, checked_args(name, arity));
    }
    // must be an equality whose lhs starts with this identifier
    Term lhs;
    if (auto f = sig.func_index(name)) {
      const int arity = sig.functions[static_cast<std::size_t>(*f)].arity;
      std::vector<Term> args;
      if (arity > 0) args = checked_args(name, arity);
      lhs = Term::make_app(*f, std::move(args));
    } else {
      if (lx.peek() == '(') lx.fail("unknown predicate or function '" + name + "'");
      lhs = Term::make_var(name);
    }
    if (!lx.try_tok("=")) lx.fail("expected '=' after term");
    if (!identity) lx.fail("'=' is not permitted in an identity-free formula");
    return mk_eq(std::move(lhs), term());
  }

  FormulaPtr and_level() {
    auto f = atom_or_unary();
    while (lx.try_tok("&")) f = mk_and(f, atom_or_unary());
    return f;
  }
  FormulaPtr or_level() {
    auto f = and_level();
    while (lx.try_tok("|")) f = mk_or(f, and_level());
    return f;
  }
  FormulaPtr implies_level() {
    auto f = or_level();
    if (lx.try_tok("->")) return mk_implies(f, implies_level()); // right assoc
    return f;
  }
  FormulaPtr iff_level() {
    auto f = implies_level();
    while (lx.try_tok("<->")) f = mk_iff(f, implies_level());
    return f;
  }

  FormulaPtr run() {
    auto f = iff_level();
    lx.skip_ws();
    if (lx.pos != lx.src.size()) lx.fail("trailing input after formula");
    return f;
  }
};

void check_scopes(const Formula& f, std::vector<std::string>& bound, const Signature& sig) {
  // bound variables must not shadow signature symbols; free vars may be anything
  switch (f.kind) {
    case Formula::Kind::forall:
    case Formula::Kind::exists:
      if (sig.pred_index(f.bound) || sig.func_index(f.bound))
        throw DomainError("quantified variable '" + f.bound + "' clashes with a symbol");
      bound.push_back(f.bound);
      check_scopes(*f.a, bound, sig);
      bound.pop_back();
      return;
    case Formula::Kind::lnot: check_scopes(*f.a, bound, sig); return;
    case Formula::Kind::land:
    case Formula::Kind::lor:
    case Formula::Kind::implies:
    case Formula::Kind::iff:
      check_scopes(*f.a, bound, sig);
      check_scopes(*f.b, bound, sig);
      return;
    default: return;
  }
}

} // namespace

FormulaPtr parse_formula(std::string_view text, const Signature& sig, bool identity_permitted) {
  FParser p{FLexer{text}, sig, identity_permitted};
  auto f = p.run();
  std::vector<std::string> bound;
  check_scopes(*f, bound, sig);
  return f;
}

} // namespace gradekit
