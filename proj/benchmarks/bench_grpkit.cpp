#include <benchmark/benchmark.h>

#include <string>

#include "grpkit/divdiff.hpp"
#include "grpkit/grp.hpp"
#include "grpkit/mps.hpp"
#include "grpkit/parser.hpp"

namespace {

grpkit::MapGerm power_germ(int k) {
    return grpkit::parse_germ("n = 2\nvars = x,z\nf1 = z^2\nf2 = z^" + std::to_string(2 * k + 1) +
                              " + x^2*z\n");
}

grpkit::MapGerm jet(int n) {
    std::string vars;
    std::string q;
    for (int i = 1; i < n; ++i) {
        vars += "x" + std::to_string(i) + ",";
        q += (i > 1 ? "+" : "") + std::string("x") + std::to_string(i) + "^2";
    }
    return grpkit::parse_germ("n = " + std::to_string(n) + "\nvars = " + vars + "z\nf1 = z*(" + q +
                              ") + z^3\nf2 = z^2\n");
}

void BM_DividedDifferences(benchmark::State& state) {
    const auto f = power_germ(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(grpkit::multiple_point_space(f, 4));
    }
}
BENCHMARK(BM_DividedDifferences)->Arg(2)->Arg(5)->Arg(10);

void BM_DdStepHighDegree(benchmark::State& state) {
    const auto f = grpkit::parse_germ("n = 1\nvars = z\nf1 = z^" + std::to_string(state.range(0)) + "\nf2 = z^2\n");
    for (auto _ : state) {
        benchmark::DoNotOptimize(grpkit::multiple_point_space(f, 3));
    }
}
BENCHMARK(BM_DdStepHighDegree)->Arg(10)->Arg(20)->Arg(40);

void BM_Analyze(benchmark::State& state) {
    const auto f = jet(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(grpkit::analyze(f));
    }
}
BENCHMARK(BM_Analyze)->DenseRange(3, 7);

void BM_ClassifyP1(benchmark::State& state) {
    const auto f = grpkit::parse_germ("n = 3\nvars = x,y,z\nf1 = y*z+z^4\nf2 = x*z+z^3\n");
    for (auto _ : state) {
        benchmark::DoNotOptimize(grpkit::classify_grp(f));
    }
}
BENCHMARK(BM_ClassifyP1);

}  // namespace

BENCHMARK_MAIN();
