#include "gradekit/structure.hpp"

#include <algorithm>
#include <set>

#include "gradekit/error.hpp"

namespace gradekit {

std::optional<int> Signature::pred_index(std::string_view name) const {
  for (std::size_t i = 0; i < predicates.size(); ++i)
    if (predicates[i].name == name) return static_cast<int>(i);
  return std::nullopt;
}

std::optional<int> Signature::func_index(std::string_view name) const {
  for (std::size_t i = 0; i < functions.size(); ++i)
    if (functions[i].name == name) return static_cast<int>(i);
  return std::nullopt;
}

int Structure::idx(std::string_view name) const {
  if (auto i = find(name)) return *i;
  throw DomainError("unknown element '" + std::string(name) + "'");
}

std::optional<int> Structure::find(std::string_view name) const {
  for (std::size_t i = 0; i < domain.size(); ++i)
    if (domain[i] == name) return static_cast<int>(i);
  return std::nullopt;
}

bool Structure::holds(int pred, std::span<const int> args) const {
  return marks[pred][tuple_index(args, size())] != 0;
}

int Structure::app(int fn, std::span<const int> args) const {
  return tables[fn][tuple_index(args, size())];
}

std::size_t tuple_count(int n, int arity) {
  std::size_t c = 1;
  for (int i = 0; i < arity; ++i) c *= static_cast<std::size_t>(n);
  return c;
}

std::size_t tuple_index(std::span<const int> tuple, int n) {
  std::size_t idx = 0;
  for (int v : tuple) idx = idx * static_cast<std::size_t>(n) + static_cast<std::size_t>(v);
  return idx;
}

void index_to_tuple(std::size_t index, int n, int arity, std::vector<int>& out) {
  out.assign(static_cast<std::size_t>(arity), 0);
  for (int i = arity - 1; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = static_cast<int>(index % static_cast<std::size_t>(n));
    index /= static_cast<std::size_t>(n);
  }
}

bool next_tuple(std::vector<int>& tuple, int n) {
  for (int i = static_cast<int>(tuple.size()) - 1; i >= 0; --i) {
    if (++tuple[static_cast<std::size_t>(i)] < n) return true;
    tuple[static_cast<std::size_t>(i)] = 0;
  }
  return false;
}

Diagnostics validate_structure(const Structure& s) {
  Diagnostics d;
  auto err = [&](std::string loc, std::string msg) {
    d.push_back({Diagnostic::Severity::error, std::move(loc), std::move(msg)});
  };

  std::set<std::string> names;
  for (const auto& p : s.sig.predicates) {
    if (!names.insert(p.name).second) err(p.name, "duplicate symbol name");
    if (p.arity < 1) err(p.name, "predicate arity must be >= 1");
  }
  for (const auto& f : s.sig.functions) {
    if (!names.insert(f.name).second) err(f.name, "duplicate symbol name");
    if (f.arity < 0) err(f.name, "negative function arity");
  }

  if (s.domain.empty()) err("domain", "domain must be nonempty");
  std::set<std::string> elems;
  for (const auto& e : s.domain)
    if (!elems.insert(e).second) err(e, "duplicate domain element");

  const int n = s.size();
  if (s.extensions.size() != s.sig.predicates.size())
    err("extensions", "one extension per predicate required");
  if (s.tables.size() != s.sig.functions.size())
    err("tables", "one table per function required");
  if (!d.empty()) return d;

  for (std::size_t p = 0; p < s.extensions.size(); ++p) {
    const int arity = s.sig.predicates[p].arity;
    for (const auto& t : s.extensions[p]) {
      if (static_cast<int>(t.size()) != arity) {
        err(s.sig.predicates[p].name, "tuple arity mismatch");
        continue;
      }
      for (int v : t)
        if (v < 0 || v >= n) err(s.sig.predicates[p].name, "tuple coordinate out of domain");
    }
  }
  for (std::size_t f = 0; f < s.tables.size(); ++f) {
    const int arity = s.sig.functions[f].arity;
    const std::size_t want = tuple_count(n, arity);
    if (s.tables[f].size() != want) {
      err(s.sig.functions[f].name, "partial function: table must be total on domain^arity");
      continue;
    }
    for (int v : s.tables[f])
      if (v < 0 || v >= n) err(s.sig.functions[f].name, "function value out of domain");
  }
  return d;
}

void seal_structure(Structure& s) {
  for (auto& ext : s.extensions) {
    std::sort(ext.begin(), ext.end());
    ext.erase(std::unique(ext.begin(), ext.end()), ext.end());
  }
  Diagnostics d = validate_structure(s);
  if (!d.empty()) {
    std::string msg = "invalid structure:";
    for (const auto& x : d) msg += " [" + x.location + "] " + x.message + ";";
    throw DomainError(msg);
  }
  const int n = s.size();
  s.marks.assign(s.sig.predicates.size(), {});
  for (std::size_t p = 0; p < s.extensions.size(); ++p) {
    s.marks[p].assign(tuple_count(n, s.sig.predicates[p].arity), 0);
    for (const auto& t : s.extensions[p]) s.marks[p][tuple_index(t, n)] = 1;
  }
}

Structure make_structure(Signature sig, std::vector<std::string> domain,
                         std::vector<std::vector<std::vector<int>>> extensions,
                         std::vector<std::vector<int>> tables) {
  Structure s;
  s.sig = std::move(sig);
  s.domain = std::move(domain);
  s.extensions = std::move(extensions);
  s.tables = std::move(tables);
  seal_structure(s);
  return s;
}

} // namespace gradekit
