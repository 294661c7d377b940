#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace gradekit {

// The twelve grades of discrimination.
enum class GradeId {
  id,
  indiscEqPair,
  indiscEqMon,
  indiscNeqFull,
  indiscNeqPair,
  indiscNeqMon,
  symTotal,
  symPair,
  symBare,
  relTotal,
  relPair,
  relBare,
};

inline constexpr std::array<GradeId, 12> all_grades = {
    GradeId::id,           GradeId::indiscEqPair, GradeId::indiscEqMon,
    GradeId::indiscNeqFull, GradeId::indiscNeqPair, GradeId::indiscNeqMon,
    GradeId::symTotal,     GradeId::symPair,      GradeId::symBare,
    GradeId::relTotal,     GradeId::relPair,      GradeId::relBare,
};

std::string_view grade_name(GradeId g);
std::optional<GradeId> grade_from_name(std::string_view name);

inline bool is_indisc_grade(GradeId g) {
  switch (g) {
    case GradeId::id:
    case GradeId::indiscEqPair:
    case GradeId::indiscEqMon:
    case GradeId::indiscNeqFull:
    case GradeId::indiscNeqPair:
    case GradeId::indiscNeqMon: return true;
    default: return false;
  }
}

inline bool is_sym_grade(GradeId g) {
  return g == GradeId::symTotal || g == GradeId::symPair || g == GradeId::symBare;
}

inline bool is_rel_grade(GradeId g) {
  return g == GradeId::relTotal || g == GradeId::relPair || g == GradeId::relBare;
}

} // namespace gradekit
