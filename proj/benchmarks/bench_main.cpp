#include <benchmark/benchmark.h>

#include "foamcalc/formal_group.hpp"
#include "foamcalc/homology.hpp"
#include "foamcalc/prefoam.hpp"
#include "foamcalc/webs.hpp"

using namespace foamcalc;

static void BM_ThetaGeneric(benchmark::State& st) {
    auto D = static_cast<int>(st.range(0));
    auto p = generic_p(D);
    auto F = foams::theta(3, 1);
    for (auto _ : st) benchmark::DoNotOptimize(eval_deformed_gl2(F, p));
}
BENCHMARK(BM_ThetaGeneric)->Arg(6)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

static void BM_ExactSurface(benchmark::State& st) {
    auto g = static_cast<int>(st.range(0));
    auto F = foams::disjoint_union(foams::thin_surface(g, 2), foams::theta(2, 0));
    for (auto _ : st) benchmark::DoNotOptimize(eval_exact_gl2(F));
}
BENCHMARK(BM_ExactSurface)->DenseRange(0, 3);

static void BM_GlNTheta(benchmark::State& st) {
    std::vector<int> dots(static_cast<size_t>(st.range(0)));
    for (size_t i = 0; i < dots.size(); ++i) dots[i] = static_cast<int>(dots.size() - i);
    auto F = foams::gln_theta(dots);
    auto p = specialized_p({{{1, 0}, 1}}, 10);
    for (auto _ : st) benchmark::DoNotOptimize(eval_deformed_glN(F, p));
}
BENCHMARK(BM_GlNTheta)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

static void BM_NilHecke(benchmark::State& st) {
    auto F = FormalGroupLaw::multiplicative(8);
    for (auto _ : st) benchmark::DoNotOptimize(check_nilhecke(F, 3, static_cast<int>(st.range(0))));
}
BENCHMARK(BM_NilHecke)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

static void BM_StateSpace(benchmark::State& st) {
    auto w = webs::figure_web();
    for (auto _ : st) benchmark::DoNotOptimize(state_space_basis(w));
}
BENCHMARK(BM_StateSpace)->Unit(benchmark::kMillisecond);

static void BM_Homology(benchmark::State& st) {
    auto d = st.range(0) == 0 ? diagrams::right_trefoil() : diagrams::figure_eight();
    auto kh = Specialization::khovanov();
    for (auto _ : st) benchmark::DoNotOptimize(homology(build_complex(d, kh)));
}
BENCHMARK(BM_Homology)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_SmithNormalForm(benchmark::State& st) {
    auto n = static_cast<size_t>(st.range(0));
    IntMatrix A(n, std::vector<mpz_class>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) A[i][j] = static_cast<long>((i * 7 + j * 13 + i * j) % 11) - 5;
    for (auto _ : st) benchmark::DoNotOptimize(smith_invariants(A));
}
BENCHMARK(BM_SmithNormalForm)->Arg(16)->Arg(32)->Arg(64);
BENCHMARK_MAIN();
