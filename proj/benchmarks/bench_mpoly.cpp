#include <benchmark/benchmark.h>

#include "gblab/mpoly.hpp"
#include "gblab/rng.hpp"

using namespace gblab;

namespace {

Polynomial random_poly(const RingPtr& ring, SplitMix64& rng, int max_deg, int terms) {
    std::vector<Term> ts;
    const uint64_t q = ring->field()->modulus().get_ui();
    for (int t = 0; t < terms; ++t) {
        std::vector<uint32_t> e(ring->nvars());
        int budget = int(rng.below(uint64_t(max_deg + 1)));
        for (auto& v : e) {
            v = uint32_t(rng.below(uint64_t(budget + 1)));
            budget -= int(v);
        }
        ts.push_back(Term{Monomial(e), mpz_class(rng.below(q))});
    }
    return Polynomial(ring, std::move(ts));
}

}  // namespace

static void BM_poly_mul(benchmark::State& state) {
    auto ring = make_ring({"x", "y", "z"}, make_field(65521), TermOrderKind::drl);
    SplitMix64 rng(1);
    Polynomial a = random_poly(ring, rng, int(state.range(0)), 24);
    Polynomial b = random_poly(ring, rng, int(state.range(0)), 24);
    for (auto _ : state) {
        benchmark::DoNotOptimize(a * b);
    }
}
BENCHMARK(BM_poly_mul)->Arg(4)->Arg(8)->Arg(16);

static void BM_division(benchmark::State& state) {
    auto ring = make_ring({"x", "y", "z"}, make_field(65521), TermOrderKind::drl);
    const TermOrder order{TermOrderKind::drl, ring};
    SplitMix64 rng(2);
    Polynomial f = random_poly(ring, rng, int(state.range(0)), 40);
    std::vector<Polynomial> divisors = {random_poly(ring, rng, 3, 6),
                                        random_poly(ring, rng, 2, 4)};
    for (auto& d : divisors) {
        if (d.is_zero()) d = Polynomial::variable(ring, 0);
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(divide(f, divisors, order));
    }
}
BENCHMARK(BM_division)->Arg(6)->Arg(10);
