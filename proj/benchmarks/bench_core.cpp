#include <benchmark/benchmark.h>

#include "gradekit/dsl.hpp"
#include "gradekit/enumerate.hpp"
#include "gradekit/gallery.hpp"
#include "gradekit/grades.hpp"
#include "gradekit/random.hpp"

using namespace gradekit;

namespace {

SignatureSpec graph_spec() {
  SignatureSpec spec;
  spec.sig = Signature{{{"R", 2}}, {}};
  spec.default_density = 0.5;
  return spec;
}

SignatureSpec algebra_spec() {
  SignatureSpec spec;
  spec.sig = Signature{{{"R", 2}}, {{"f", 1}}};
  spec.default_density = 0.5;
  return spec;
}

} // namespace

static void BM_ParseStructure(benchmark::State& state) {
  std::string text = serialize_structure(
      random_structure(7, static_cast<int>(state.range(0)), graph_spec()), Format::dsl);
  for (auto _ : state) benchmark::DoNotOptimize(parse_structure(text));
}
BENCHMARK(BM_ParseStructure)->Arg(4)->Arg(8)->Arg(12);

static void BM_FullIndisc(benchmark::State& state) {
  Structure s = random_structure(11, static_cast<int>(state.range(0)), algebra_spec());
  for (auto _ : state) benchmark::DoNotOptimize(full_indisc(s));
}
BENCHMARK(BM_FullIndisc)->Arg(4)->Arg(8)->Arg(12);

static void BM_Quotient(benchmark::State& state) {
  Structure s = random_structure(13, static_cast<int>(state.range(0)), algebra_spec());
  for (auto _ : state) benchmark::DoNotOptimize(quotient(s));
}
BENCHMARK(BM_Quotient)->Arg(4)->Arg(8)->Arg(12);

static void BM_FindAutomorphism(benchmark::State& state) {
  Structure s = random_structure(17, static_cast<int>(state.range(0)), graph_spec());
  SearchConstraint c;
  c.required = {{0, static_cast<int>(state.range(0)) - 1}};
  for (auto _ : state) benchmark::DoNotOptimize(find_automorphism(s, c));
}
BENCHMARK(BM_FindAutomorphism)->Arg(4)->Arg(8)->Arg(12);

static void BM_GradeMatrix(benchmark::State& state) {
  Structure s = random_structure(19, static_cast<int>(state.range(0)), graph_spec());
  for (auto _ : state)
    benchmark::DoNotOptimize(grade_matrix(s, MatrixOptions{12, false}));
}
BENCHMARK(BM_GradeMatrix)->Arg(4)->Arg(6)->Arg(8);

static void BM_EvaluateFormula(benchmark::State& state) {
  Structure g = gallery("G");
  auto phi = parse_formula("forall u. exists w (S(u,w) & Dt(w,x))", g.sig, false);
  Assignment asg;
  asg.set("x", 0);
  for (auto _ : state) benchmark::DoNotOptimize(evaluate(g, *phi, asg));
}
BENCHMARK(BM_EvaluateFormula);

static void BM_EnumerateFormulas(benchmark::State& state) {
  Signature sig{{{"R", 2}}, {}};
  EnumBounds b;
  b.max_quant_depth = static_cast<int>(state.range(0));
  b.max_connectives = 1;
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_formulas(sig, {"x", "y"}, b, false));
}
BENCHMARK(BM_EnumerateFormulas)->Arg(1)->Arg(2);

static void BM_DiscerningFormula(benchmark::State& state) {
  Structure s = random_structure(23, static_cast<int>(state.range(0)), algebra_spec());
  for (auto _ : state) {
    for (int b = 1; b < s.size(); ++b)
      benchmark::DoNotOptimize(discerning_formula(s, 0, b, 2));
  }
}
BENCHMARK(BM_DiscerningFormula)->Arg(4)->Arg(6);

BENCHMARK_MAIN();
