#include <benchmark/benchmark.h>

#include "gblab/shapelex.hpp"
#include "gblab/systems.hpp"

using namespace gblab;

static void BM_shape_basis(benchmark::State& state) {
    CipherSpec spec;
    spec.family = CipherFamily::mimc;
    spec.q = 4001;
    spec.rounds = int(state.range(0));
    spec.seed = 3;
    auto inst = resolve_spec(spec);
    auto ct = encrypt(inst, {1234}, {567});
    PolySystem sys = build_mimc_system(inst, 567, ct[0]);
    for (auto _ : state) {
        benchmark::DoNotOptimize(lex_gb_iterated(sys));
    }
}
BENCHMARK(BM_shape_basis)->Arg(3)->Arg(5)->Arg(7);

static void BM_key_recovery(benchmark::State& state) {
    CipherSpec spec;
    spec.family = CipherFamily::mimc;
    spec.q = uint64_t(state.range(0));
    spec.rounds = 4;
    spec.seed = 5;
    auto inst = resolve_spec(spec);
    auto ct = encrypt(inst, {42}, {17});
    PolySystem sys = build_mimc_system(inst, 17, ct[0]);
    for (auto _ : state) {
        benchmark::DoNotOptimize(recover_key(sys, AttackKind::field_equation));
    }
}
BENCHMARK(BM_key_recovery)->Arg(251)->Arg(4001);
