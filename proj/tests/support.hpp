#pragma once

#include <algorithm>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "gradekit/dsl.hpp"
#include "gradekit/formula.hpp"
#include "gradekit/gallery.hpp"
#include "gradekit/random.hpp"
#include "gradekit/structure.hpp"

namespace testsupport {

using namespace gradekit;

// criterion-2 style signatures
inline SignatureSpec relational_spec(double density) {
  SignatureSpec spec;
  spec.sig = Signature{{{"R", 2}}, {}};
  spec.default_density = density;
  return spec;
}

inline SignatureSpec unary_function_spec(double density) {
  SignatureSpec spec;
  spec.sig = Signature{{{"R", 2}}, {{"f", 1}}};
  spec.default_density = density;
  return spec;
}

// deterministic streams of random structures
inline std::vector<Structure> relational_stream(int count, int min_size, int max_size,
                                                std::uint64_t seed0 = 1000) {
  const double densities[] = {0.2, 0.5, 0.8};
  std::vector<Structure> out;
  for (int i = 0; i < count; ++i) {
    int size = min_size + i % (max_size - min_size + 1);
    double d = densities[i % 3];
    out.push_back(random_structure(seed0 + static_cast<std::uint64_t>(i), size,
                                   relational_spec(d)));
  }
  return out;
}

inline std::vector<Structure> function_stream(int count, int min_size, int max_size,
                                              std::uint64_t seed0 = 5000) {
  const double densities[] = {0.2, 0.5, 0.8};
  std::vector<Structure> out;
  for (int i = 0; i < count; ++i) {
    int size = min_size + i % (max_size - min_size + 1);
    double d = densities[i % 3];
    out.push_back(random_structure(seed0 + static_cast<std::uint64_t>(i), size,
                                   unary_function_spec(d)));
  }
  return out;
}

inline Assignment pair_assignment(int a, int b) {
  Assignment asg;
  asg.set("x", a);
  asg.set("y", b);
  return asg;
}

// independent oracle for full identity-free indiscernibility on relational
// structures: agreement of every predicate over all tuple pairs linked
// coordinatewise by {(a,b)} plus the diagonal
inline bool relational_indisc_oracle(const Structure& s, int a, int b) {
  for (std::size_t p = 0; p < s.sig.predicates.size(); ++p) {
    const int arity = s.sig.predicates[p].arity;
    std::vector<int> left(static_cast<std::size_t>(arity), 0);
    do {
      // enumerate all right tuples linked to left
      std::vector<int> choice(static_cast<std::size_t>(arity), 0);
      bool more = true;
      while (more) {
        std::vector<int> right(static_cast<std::size_t>(arity));
        bool ok = true;
        for (int i = 0; i < arity; ++i) {
          int l = left[static_cast<std::size_t>(i)];
          if (choice[static_cast<std::size_t>(i)] == 0) {
            right[static_cast<std::size_t>(i)] = l; // diagonal link
          } else if (l == a) {
            right[static_cast<std::size_t>(i)] = b; // the (a,b) link
          } else {
            ok = false;
          }
        }
        if (ok && s.holds(static_cast<int>(p), left) != s.holds(static_cast<int>(p), right))
          return false;
        more = next_tuple(choice, 2);
      }
    } while (next_tuple(left, s.size()));
  }
  return true;
}

// brute force over all |M|! permutations
inline void all_permutations(int n, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> perm(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
  do {
    fn(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
}

} // namespace testsupport
