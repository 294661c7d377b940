#include "gradekit/random.hpp"

#include <random>

#include "gradekit/error.hpp"

namespace gradekit {

Structure random_structure(std::uint64_t seed, int size, const SignatureSpec& spec) {
  if (size < 1 || size > 12)
    throw DomainError("random_structure size must be in 1..12, got " + std::to_string(size));

  std::mt19937_64 rng(seed);
  auto coin = [&](double p) {
    // 53-bit mantissa draw; avoids distribution objects so the stream is
    // identical across standard libraries
    return static_cast<double>(rng() >> 11) * (1.0 / 9007199254740992.0) < p;
  };
  auto below = [&](int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); };

  std::vector<std::string> domain;
  for (int i = 1; i <= size; ++i) domain.push_back("e" + std::to_string(i));

  std::vector<std::vector<std::vector<int>>> ext(spec.sig.predicates.size());
  for (std::size_t p = 0; p < spec.sig.predicates.size(); ++p) {
    const double density = spec.density_of(static_cast<int>(p));
    std::vector<int> t(static_cast<std::size_t>(spec.sig.predicates[p].arity), 0);
    do {
      if (coin(density)) ext[p].push_back(t);
    } while (next_tuple(t, size));
  }

  std::vector<std::vector<int>> tables(spec.sig.functions.size());
  for (std::size_t f = 0; f < spec.sig.functions.size(); ++f) {
    tables[f].resize(tuple_count(size, spec.sig.functions[f].arity));
    for (auto& v : tables[f]) v = below(size);
  }

  return make_structure(spec.sig, std::move(domain), std::move(ext), std::move(tables));
}

} // namespace gradekit
