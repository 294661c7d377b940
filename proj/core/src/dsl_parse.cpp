#include <cctype>
#include <map>
#include <string>

#include "gradekit/dsl.hpp"
#include "gradekit/error.hpp"

namespace gradekit {
namespace {

struct Lexer {
  std::string_view src;
  std::size_t pos = 0;
  int line = 1;
  int col = 1;

  void advance() {
    if (pos < src.size()) {
      if (src[pos] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++pos;
    }
  }

  void skip_ws() {
    while (pos < src.size()) {
      char c = src[pos];
      if (c == '#') {
        while (pos < src.size() && src[pos] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  bool eof() {
    skip_ws();
    return pos >= src.size();
  }

  char peek() {
    skip_ws();
    return pos < src.size() ? src[pos] : '\0';
  }

  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, line, col); }

  bool try_punct(char c) {
    skip_ws();
    if (pos < src.size() && src[pos] == c) {
      advance();
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!try_punct(c)) fail(std::string("expected '") + c + "'");
  }

  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$';
  }

  std::string ident() {
    skip_ws();
    if (pos >= src.size() || !ident_char(src[pos])) fail("expected identifier");
    std::string out;
    while (pos < src.size() && ident_char(src[pos])) {
      out.push_back(src[pos]);
      advance();
    }
    return out;
  }

  bool try_keyword(std::string_view kw) {
    skip_ws();
    std::size_t p = pos;
    for (char c : kw) {
      if (p >= src.size() || src[p] != c) return false;
      ++p;
    }
    if (p < src.size() && ident_char(src[p])) return false;
    while (pos < p) advance();
    return true;
  }

  int integer() {
    skip_ws();
    if (pos >= src.size() || !std::isdigit(static_cast<unsigned char>(src[pos]))) fail("expected integer");
    int v = 0;
    while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) {
      v = v * 10 + (src[pos] - '0');
      advance();
    }
    return v;
  }

  double number() {
    skip_ws();
    std::size_t start = pos;
    while (pos < src.size() &&
           (std::isdigit(static_cast<unsigned char>(src[pos])) || src[pos] == '.'))
      advance();
    if (start == pos) fail("expected number");
    return std::stod(std::string(src.substr(start, pos - start)));
  }
};

Signature parse_signature_block(Lexer& lx) {
  if (!lx.try_keyword("signature")) lx.fail("expected 'signature'");
  lx.expect('{');
  Signature sig;
  while (!lx.try_punct('}')) {
    if (lx.try_keyword("pred")) {
      std::string name = lx.ident();
      lx.expect('/');
      int arity = lx.integer();
      if (arity < 1) lx.fail("predicate arity must be >= 1");
      sig.predicates.push_back({name, arity});
    } else if (lx.try_keyword("func")) {
      std::string name = lx.ident();
      lx.expect('/');
      int arity = lx.integer();
      sig.functions.push_back({name, arity});
    } else if (lx.try_keyword("const")) {
      sig.functions.push_back({lx.ident(), 0});
    } else {
      lx.fail("expected 'pred', 'func' or 'const'");
    }
    lx.expect(';');
  }
  std::map<std::string, int> seen;
  for (const auto& p : sig.predicates)
    if (++seen[p.name] > 1) lx.fail("duplicate symbol '" + p.name + "'");
  for (const auto& f : sig.functions)
    if (++seen[f.name] > 1) lx.fail("duplicate symbol '" + f.name + "'");
  return sig;
}

struct StructureParser {
  Lexer& lx;
  Signature sig;
  std::vector<std::string> domain;
  std::map<std::string, int, std::less<>> elem;

  int element() {
    std::string name = lx.ident();
    auto it = elem.find(name);
    if (it == elem.end()) lx.fail("unknown element '" + name + "'");
    return it->second;
  }

  std::vector<int> tuple(const std::string& symbol, int arity) {
    std::vector<int> t;
    lx.expect('(');
    if (lx.peek() != ')') {
      t.push_back(element());
      while (lx.try_punct(',')) t.push_back(element());
    }
    lx.expect(')');
    if (static_cast<int>(t.size()) != arity)
      lx.fail("arity mismatch: '" + symbol + "' takes " + std::to_string(arity) +
              " argument(s), got " + std::to_string(t.size()));
    return t;
  }

  Structure run() {
    if (!lx.try_keyword("structure")) lx.fail("expected 'structure'");
    lx.expect('{');

    if (!lx.try_keyword("domain")) lx.fail("expected 'domain' first");
    lx.expect('=');
    lx.expect('{');
    while (!lx.try_punct('}')) {
      if (!domain.empty()) lx.expect(',');
      std::string name = lx.ident();
      if (name.find('$') != std::string::npos)
        lx.fail("'$' is reserved for inflation clones");
      if (elem.count(name)) lx.fail("duplicate domain element '" + name + "'");
      elem.emplace(name, static_cast<int>(domain.size()));
      domain.push_back(name);
    }
    lx.expect(';');

    std::vector<std::vector<std::vector<int>>> ext(sig.predicates.size());
    const std::size_t nf = sig.functions.size();
    std::vector<std::map<std::size_t, int>> partial(nf);
    std::vector<bool> assigned(sig.predicates.size() + nf, false);
    const int n = static_cast<int>(domain.size());

    while (!lx.try_punct('}')) {
      bool edges = lx.try_keyword("edges");
      std::string name = lx.ident();
      auto p = sig.pred_index(name);
      auto f = sig.func_index(name);
      if (!p && !f) lx.fail("unknown symbol '" + name + "'");
      if (edges && !p) lx.fail("'edges' needs a predicate");
      if (edges && sig.predicates[static_cast<std::size_t>(*p)].arity != 2)
        lx.fail("'edges' needs a binary predicate");
      std::size_t slot = p ? static_cast<std::size_t>(*p)
                           : sig.predicates.size() + static_cast<std::size_t>(*f);
      if (assigned[slot]) lx.fail("symbol '" + name + "' assigned twice");
      assigned[slot] = true;
      lx.expect('=');

      if (p && edges) {
        lx.expect('{');
        bool first = true;
        while (!lx.try_punct('}')) {
          if (!first) lx.expect(',');
          first = false;
          int a = element();
          lx.expect('-');
          int b = element();
          ext[static_cast<std::size_t>(*p)].push_back({a, b});
          ext[static_cast<std::size_t>(*p)].push_back({b, a});
        }
      } else if (p) {
        int arity = sig.predicates[static_cast<std::size_t>(*p)].arity;
        lx.expect('{');
        bool first = true;
        while (!lx.try_punct('}')) {
          if (!first) lx.expect(',');
          first = false;
          ext[static_cast<std::size_t>(*p)].push_back(tuple(name, arity));
        }
      } else {
        int arity = sig.functions[static_cast<std::size_t>(*f)].arity;
        auto& table = partial[static_cast<std::size_t>(*f)];
        if (arity == 0) {
          table[0] = element();
        } else {
          lx.expect('{');
          bool first = true;
          while (!lx.try_punct('}')) {
            if (!first) lx.expect(',');
            first = false;
            std::vector<int> args;
            if (lx.peek() == '(') {
              args = tuple(name, arity);
            } else {
              if (arity != 1) lx.fail("expected '(' for arity " + std::to_string(arity));
              args.push_back(element());
            }
            lx.expect('-');
            lx.expect('>');
            int val = element();
            std::size_t key = tuple_index(args, n);
            if (table.count(key)) lx.fail("duplicate mapping in '" + name + "'");
            table[key] = val;
          }
        }
      }
      lx.expect(';');
    }

    if (!lx.eof()) lx.fail("trailing input after structure");
    if (domain.empty()) throw ParseError("domain must be nonempty", lx.line, lx.col);

    std::vector<std::vector<int>> tables(nf);
    for (std::size_t f = 0; f < nf; ++f) {
      const std::size_t want = tuple_count(n, sig.functions[f].arity);
      if (partial[f].size() != want)
        throw ParseError("partial function '" + sig.functions[f].name + "': " +
                             std::to_string(partial[f].size()) + " of " +
                             std::to_string(want) + " values given",
                         lx.line, lx.col);
      tables[f].resize(want);
      for (const auto& [k, v] : partial[f]) tables[f][k] = v;
    }
    return make_structure(std::move(sig), std::move(domain), std::move(ext),
                          std::move(tables));
  }
};

} // namespace

Structure parse_structure(std::string_view text) {
  Lexer lx{text};
  Signature sig = parse_signature_block(lx);
  StructureParser sp{lx, std::move(sig), {}, {}};
  return sp.run();
}

double SignatureSpec::density_of(int pred) const {
  const std::string& name = sig.predicates[static_cast<std::size_t>(pred)].name;
  for (const auto& [n, d] : per_predicate)
    if (n == name) return d;
  return default_density;
}

SignatureSpec parse_signature_spec(std::string_view text) {
  Lexer lx{text};
  SignatureSpec spec;
  spec.sig = parse_signature_block(lx);
  while (!lx.eof()) {
    if (!lx.try_keyword("density")) lx.fail("expected 'density' directive");
    if (lx.peek() == '=') {
      lx.expect('=');
      spec.default_density = lx.number();
    } else {
      std::string name = lx.ident();
      if (!spec.sig.pred_index(name)) lx.fail("unknown predicate '" + name + "'");
      lx.expect('=');
      spec.per_predicate.emplace_back(name, lx.number());
    }
    lx.expect(';');
  }
  return spec;
}

} // namespace gradekit
