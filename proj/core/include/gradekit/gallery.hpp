#pragma once

#include <string_view>
#include <vector>

#include "gradekit/structure.hpp"

namespace gradekit {

// The worked counterexample structures, reproduced exactly:
//   A: two isolated vertices            B: single undirected edge
//   C: path 1-2-3                       D: directed 4-cycle
//   F: {1,2} with f(1)=f(2)=2           G: 6-cycle, alternating S/Dt edges
//   I: nine vertices, edges 1-2, 4-5, 7-8, 8-9
// Undirected graphs are stored symmetrically. Unknown names raise DomainError.
Structure gallery(std::string_view name);

std::vector<std::string> gallery_names();

} // namespace gradekit
