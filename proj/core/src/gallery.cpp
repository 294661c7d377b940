#include "gradekit/gallery.hpp"

#include "gradekit/error.hpp"

namespace gradekit {
namespace {

std::vector<std::string> names(int n) {
  std::vector<std::string> out;
  for (int i = 1; i <= n; ++i) out.push_back(std::to_string(i));
  return out;
}

std::vector<std::vector<int>> sym_edges(std::initializer_list<std::pair<int, int>> edges) {
  std::vector<std::vector<int>> ext;
  for (auto [a, b] : edges) {
    ext.push_back({a - 1, b - 1});
    ext.push_back({b - 1, a - 1});
  }
  return ext;
}

} // namespace

Structure gallery(std::string_view name) {
  Signature graph{{{"R", 2}}, {}};
  if (name == "A") return make_structure(graph, names(2), {{}}, {});
  if (name == "B") return make_structure(graph, names(2), {sym_edges({{1, 2}})}, {});
  if (name == "C") return make_structure(graph, names(3), {sym_edges({{1, 2}, {2, 3}})}, {});
  if (name == "D")
    return make_structure(graph, names(4), {{{0, 1}, {1, 2}, {2, 3}, {3, 0}}}, {});
  if (name == "F")
    return make_structure(Signature{{}, {{"f", 1}}}, names(2), {}, {{1, 1}});
  if (name == "G")
    return make_structure(Signature{{{"S", 2}, {"Dt", 2}}, {}}, names(6),
                          {sym_edges({{1, 2}, {3, 4}, {5, 6}}),
                           sym_edges({{2, 3}, {4, 5}, {6, 1}})},
                          {});
  if (name == "I")
    return make_structure(graph, names(9),
                          {sym_edges({{1, 2}, {4, 5}, {7, 8}, {8, 9}})}, {});
  throw DomainError("unknown gallery structure '" + std::string(name) +
                    "' (known: A B C D F G I)");
}

std::vector<std::string> gallery_names() { return {"A", "B", "C", "D", "F", "G", "I"}; }

} // namespace gradekit
