#include <algorithm>
#include <sstream>

#include "json.hpp"

#include "gradekit/dsl.hpp"
#include "gradekit/error.hpp"

namespace gradekit {
namespace {

std::string to_dsl(const Structure& s) {
  std::ostringstream out;
  out << "signature {";
  for (const auto& p : s.sig.predicates) out << " pred " << p.name << "/" << p.arity << ";";
  for (const auto& f : s.sig.functions) {
    if (f.arity == 0)
      out << " const " << f.name << ";";
    else
      out << " func " << f.name << "/" << f.arity << ";";
  }
  out << " }\n";
  out << "structure {\n  domain = { ";
  for (int i = 0; i < s.size(); ++i) out << (i ? ", " : "") << s.domain[static_cast<std::size_t>(i)];
  out << " };\n";
  for (std::size_t p = 0; p < s.sig.predicates.size(); ++p) {
    out << "  " << s.sig.predicates[p].name << " = { ";
    bool first = true;
    for (const auto& t : s.extensions[p]) {
      out << (first ? "" : ", ") << "(";
      for (std::size_t i = 0; i < t.size(); ++i)
        out << (i ? "," : "") << s.domain[static_cast<std::size_t>(t[i])];
      out << ")";
      first = false;
    }
    out << " };\n";
  }
  const int n = s.size();
  for (std::size_t f = 0; f < s.sig.functions.size(); ++f) {
    const int arity = s.sig.functions[f].arity;
    if (arity == 0) {
      out << "  " << s.sig.functions[f].name << " = " << s.domain[static_cast<std::size_t>(s.tables[f][0])] << ";\n";
      continue;
    }
    out << "  " << s.sig.functions[f].name << " = { ";
    std::vector<int> args;
    for (std::size_t k = 0; k < s.tables[f].size(); ++k) {
      index_to_tuple(k, n, arity, args);
      if (k) out << ", ";
      if (arity == 1) {
        out << s.domain[static_cast<std::size_t>(args[0])];
      } else {
        out << "(";
        for (std::size_t i = 0; i < args.size(); ++i)
          out << (i ? "," : "") << s.domain[static_cast<std::size_t>(args[i])];
        out << ")";
      }
      out << " -> " << s.domain[static_cast<std::size_t>(s.tables[f][k])];
    }
    out << " };\n";
  }
  out << "}\n";
  return out.str();
}

std::string to_json(const Structure& s) {
  nlohmann::json j;
  j["domain"] = s.domain;
  nlohmann::json sig;
  sig["predicates"] = nlohmann::json::array();
  for (const auto& p : s.sig.predicates)
    sig["predicates"].push_back({{"name", p.name}, {"arity", p.arity}});
  sig["functions"] = nlohmann::json::array();
  for (const auto& f : s.sig.functions)
    sig["functions"].push_back({{"name", f.name}, {"arity", f.arity}});
  j["signature"] = sig;
  nlohmann::json ext = nlohmann::json::object();
  for (std::size_t p = 0; p < s.sig.predicates.size(); ++p) {
    auto& arr = ext[s.sig.predicates[p].name] = nlohmann::json::array();
    for (const auto& t : s.extensions[p]) {
      nlohmann::json tup = nlohmann::json::array();
      for (int v : t) tup.push_back(s.domain[static_cast<std::size_t>(v)]);
      arr.push_back(tup);
    }
  }
  j["extensions"] = ext;
  nlohmann::json tabs = nlohmann::json::object();
  const int n = s.size();
  for (std::size_t f = 0; f < s.sig.functions.size(); ++f) {
    auto& arr = tabs[s.sig.functions[f].name] = nlohmann::json::array();
    std::vector<int> args;
    for (std::size_t k = 0; k < s.tables[f].size(); ++k) {
      index_to_tuple(k, n, s.sig.functions[f].arity, args);
      nlohmann::json row;
      nlohmann::json a = nlohmann::json::array();
      for (int v : args) a.push_back(s.domain[static_cast<std::size_t>(v)]);
      row["args"] = a;
      row["value"] = s.domain[static_cast<std::size_t>(s.tables[f][k])];
      arr.push_back(row);
    }
  }
  j["tables"] = tabs;
  return j.dump(2) + "\n";
}

bool symmetric(const Structure& s, std::size_t p) {
  for (const auto& t : s.extensions[p]) {
    int rev[2] = {t[1], t[0]};
    if (!s.holds(static_cast<int>(p), rev)) return false;
  }
  return true;
}

std::string quote(const std::string& x) { return "\"" + x + "\""; }

std::string to_dot(const Structure& s) {
  for (const auto& p : s.sig.predicates)
    if (p.arity > 2)
      throw DomainError("dot output rejected: predicate '" + p.name + "' has arity > 2");

  std::vector<std::size_t> unary, binary;
  for (std::size_t p = 0; p < s.sig.predicates.size(); ++p)
    (s.sig.predicates[p].arity == 1 ? unary : binary).push_back(p);

  bool all_sym = true;
  for (std::size_t p : binary) all_sym = all_sym && symmetric(s, p);

  std::ostringstream out;
  out << (all_sym ? "graph" : "digraph") << " structure {\n";
  const char* arc = all_sym ? " -- " : " -> ";
  for (int e = 0; e < s.size(); ++e) {
    out << "  " << quote(s.domain[static_cast<std::size_t>(e)]);
    std::string tags;
    for (std::size_t p : unary) {
      int a[1] = {e};
      if (s.holds(static_cast<int>(p), a))
        tags += (tags.empty() ? "" : ",") + s.sig.predicates[p].name;
    }
    if (!tags.empty())
      out << " [label=" << quote(s.domain[static_cast<std::size_t>(e)] + "\\n" + tags) << "]";
    out << ";\n";
  }
  for (std::size_t p : binary) {
    bool sym = symmetric(s, p);
    for (const auto& t : s.extensions[p]) {
      if (sym && t[0] > t[1]) continue; // one line per undirected edge
      if (sym && t[0] == t[1]) {
        // self loop, emit once
      }
      out << "  " << quote(s.domain[static_cast<std::size_t>(t[0])]) << arc
          << quote(s.domain[static_cast<std::size_t>(t[1])])
          << " [label=" << quote(s.sig.predicates[p].name) << "";
      if (sym && !all_sym) out << ", dir=none";
      out << "];\n";
    }
  }
  out << "}\n";
  return out.str();
}

} // namespace

std::string serialize_structure(const Structure& s, Format format) {
  switch (format) {
    case Format::dsl: return to_dsl(s);
    case Format::json: return to_json(s);
    case Format::dot: return to_dot(s);
  }
  throw DomainError("unknown format");
}

} // namespace gradekit
