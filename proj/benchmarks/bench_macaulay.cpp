#include <benchmark/benchmark.h>

#include "gblab/groebner.hpp"
#include "gblab/macaulay.hpp"
#include "gblab/systems.hpp"

using namespace gblab;

namespace {

PolySystem chain_with_field_equation(uint64_t q, int r) {
    CipherSpec spec;
    spec.family = CipherFamily::mimc;
    spec.q = q;
    spec.rounds = r;
    spec.seed = 7;
    auto inst = resolve_spec(spec);
    auto ct = encrypt(inst, {5}, {3});
    PolySystem sys = build_mimc_system(inst, 3, ct[0]);
    return append_field_equations(sys, {sys.ring->index_of("y")});
}

}  // namespace

static void BM_macaulay_rref(benchmark::State& state) {
    PolySystem sys = chain_with_field_equation(11, 2);
    const TermOrder order = sys.order();
    const int d = int(state.range(0));
    for (auto _ : state) {
        auto m = macaulay_build(sys.polys, order, d, MacaulayMode::inhomogeneous);
        benchmark::DoNotOptimize(rref(m));
    }
}
BENCHMARK(BM_macaulay_rref)->Arg(11)->Arg(13)->Arg(14);

static void BM_macaulay_scan(benchmark::State& state) {
    PolySystem sys = chain_with_field_equation(uint64_t(state.range(0)), 2);
    for (auto _ : state) {
        MacaulayScan scan(sys.polys, TermOrderKind::drl);
        scan.advance_to(int(state.range(0)) + 3);
        benchmark::DoNotOptimize(scan.rank());
    }
}
BENCHMARK(BM_macaulay_scan)->Arg(11)->Arg(23);

static void BM_solving_degree(benchmark::State& state) {
    PolySystem sys = chain_with_field_equation(uint64_t(state.range(0)), 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(solving_degree(sys, TermOrderKind::drl, int(state.range(0)) + 4));
    }
}
BENCHMARK(BM_solving_degree)->Arg(11)->Arg(23);
