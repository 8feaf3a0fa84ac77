// Serial reference vs OpenMP path for the data-parallel kernels.

#include <benchmark/benchmark.h>

#include <vector>

#include "polysinc/chaos.hpp"
#include "polysinc/colloc.hpp"
#include "polysinc/model.hpp"
#include "polysinc/reference.hpp"

using namespace polysinc;

namespace {

SpdeProblem example2() {
    SpdeProblem p;
    p.domain = {0, 1, 0, 1};
    p.K = 5;
    p.a0 = CoefficientExpr::number(1.0);
    p.b0 = 0.5;
    for (const char* s : {"1/4 * cos(2*pi*x)", "1/4 * cos(2*pi*y)", "1/16 * cos(4*pi*x)", "1/16 * cos(4*pi*y)",
                          "1/8 * cos(2*pi*x) * cos(2*pi*y)"})
        p.a.push_back(parse_coefficient(s));
    return p;
}

Execution mode(const benchmark::State& st) { return st.range(0) ? Execution::parallel : Execution::serial; }

const CoupledSystem& system_p3() {
    static const ChaosBasis basis(5, 3);
    static const CoupledSystem sys = galerkin_assemble(example2(), basis, triple_tensor(basis));
    return sys;
}

void BM_Assembly(benchmark::State& st) {
    const auto& sys = system_p3();
    const SincGrid g(0, 1, 5, default_step(5));
    for (auto _ : st) {
        auto out = st.range(0) ? build_global_system(sys, g, g, 1e3, {}, Execution::parallel)
                               : build_global_system_serial(sys, g, g, 1e3);
        benchmark::DoNotOptimize(out.matrix.valuePtr());
    }
}

void BM_CsrMultiply(benchmark::State& st) {
    const auto& sys = system_p3();
    const SincGrid g(0, 1, 5, default_step(5));
    const auto gs = build_global_system(sys, g, g);
    std::vector<double> x(static_cast<std::size_t>(gs.matrix.cols()), 1.0), y(static_cast<std::size_t>(gs.matrix.rows()));
    for (auto _ : st) {
        csr_multiply(gs.matrix, x, y, mode(st));
        benchmark::DoNotOptimize(y.data());
    }
}

void BM_FdBlockApply(benchmark::State& st) {
    const FdBlockOperator op(system_p3(), 41);
    std::vector<double> u(op.size(), 1.0), out(op.size());
    for (auto _ : st) {
        op.apply(u, out, mode(st));
        benchmark::DoNotOptimize(out.data());
    }
}

void BM_TripleTensor(benchmark::State& st) {
    const ChaosBasis basis(5, 4);
    for (auto _ : st) {
        auto t = st.range(0) ? triple_tensor(basis) : triple_tensor_serial(basis);
        benchmark::DoNotOptimize(t(0, 0, 1));
    }
}

void BM_SampledReference(benchmark::State& st) {
    SpdeProblem p;
    p.domain = {-1, 1, -1, 1};
    p.a0 = CoefficientExpr::number(2.0);
    p.b0 = 1.0;
    p.a = {CoefficientExpr::number(1.0)};
    p.f = CoefficientExpr::number(-1.0);
    const auto lat = Lattice::uniform(p.domain, 41);
    const auto solver = fd_realization_solver(p, 41, lat, false);
    const auto rule = gauss_legendre(16);
    for (auto _ : st) {
        auto m = sampled_reference(p, rule, solver, mode(st));
        benchmark::DoNotOptimize(m.mean.data());
    }
}

}  // namespace

BENCHMARK(BM_Assembly)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CsrMultiply)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_FdBlockApply)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TripleTensor)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SampledReference)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
