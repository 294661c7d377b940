#pragma once

#include <cstdint>

#include "gradekit/dsl.hpp"
#include "gradekit/structure.hpp"

namespace gradekit {

// Deterministic for fixed (seed, size, spec): each predicate tuple is included
// independently with the predicate's density, each function value is uniform.
// Supported sizes: 1..12.
Structure random_structure(std::uint64_t seed, int size, const SignatureSpec& spec);

} // namespace gradekit
