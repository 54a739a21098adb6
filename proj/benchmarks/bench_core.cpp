// Microbenchmarks for the hot paths: sparse polynomial products, exact linear
// divisibility, Weyl group enumeration, fixed-point graph assembly, and
// localization integrals.

#include <benchmark/benchmark.h>

#include "wgkm/gkm.hpp"
#include "wgkm/polynomial.hpp"
#include "wgkm/root_system.hpp"
#include "wgkm/symmetric_space.hpp"
#include "wgkm/weyl.hpp"
#include "wgkm/wonderful.hpp"

using namespace wgkm;

namespace {

// (x0 + x1 + x2 + 1)^d: a dense low-rank polynomial of the shape the Chern
// pipeline multiplies all day.
Polynomial dense_poly(int degree) {
    Polynomial base = Polynomial::from_character(Character(IntVec{1, 1, 1})) +
                      Polynomial::constant(3, Rat(1));
    Polynomial out = Polynomial::constant(3, Rat(1));
    for (int i = 0; i < degree; ++i) out = out * base;
    return out;
}

void BM_PolynomialProduct(benchmark::State& state) {
    Polynomial a = dense_poly(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(a * a);
}
BENCHMARK(BM_PolynomialProduct)->Arg(4)->Arg(8);

void BM_LinearDivision(benchmark::State& state) {
    Character chi(IntVec{1, -1, 0});
    Polynomial f = dense_poly(static_cast<int>(state.range(0))) *
                   Polynomial::from_character(chi);
    for (auto _ : state) {
        LinearDivision d = divisible_by_linear(f, chi);
        benchmark::DoNotOptimize(d.divisible);
    }
}
BENCHMARK(BM_LinearDivision)->Arg(4)->Arg(8);

void BM_WeylEnumeration(benchmark::State& state) {
    RootSystem rs = RootSystem::build("D4");
    for (auto _ : state) {
        WeylGroup w = WeylGroup::enumerate(rs, /*allow_cache=*/false);
        benchmark::DoNotOptimize(w.order());
    }
}
BENCHMARK(BM_WeylEnumeration);

void BM_WonderfulBuild(benchmark::State& state) {
    for (auto _ : state) {
        SymmetricSpace sp = SymmetricSpace::build("AC:2", /*allow_cache=*/false);
        WonderfulVariety wv(sp);
        benchmark::DoNotOptimize(wv.x_graph().num_edges());
    }
}
BENCHMARK(BM_WonderfulBuild);

void BM_LocalizationIntegral(benchmark::State& state) {
    SymmetricSpace sp = SymmetricSpace::build("group:A2");
    WonderfulVariety wv(sp);
    EqClass top = top_chern(wv.x_graph());
    for (auto _ : state) benchmark::DoNotOptimize(localize_integral(top));
}
BENCHMARK(BM_LocalizationIntegral);

void BM_TotalChernClass(benchmark::State& state) {
    SymmetricSpace sp = SymmetricSpace::build("group:A2");
    WonderfulVariety wv(sp);
    for (auto _ : state) benchmark::DoNotOptimize(wv.chern_x(Bundle::Tangent));
}
BENCHMARK(BM_TotalChernClass);

} // namespace

BENCHMARK_MAIN();
