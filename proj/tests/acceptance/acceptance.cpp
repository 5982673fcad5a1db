// Acceptance suite: one line per criterion, nonzero exit on failure.
// Criteria that exceed their per-point wall-clock allowance are skipped with
// a logged note instead of burning the whole run.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iostream>
#include <set>
#include <sstream>
#include <vector>

#include "gblab/complexity.hpp"
#include "gblab/degfall.hpp"
#include "gblab/errors.hpp"
#include "gblab/genpos.hpp"
#include "gblab/groebner.hpp"
#include "gblab/rng.hpp"
#include "gblab/shapelex.hpp"
#include "gblab/systems.hpp"

using namespace gblab;

namespace {

struct Criterion {
    int id;
    std::string name;
    bool pass = true;
    std::vector<std::string> notes;

    void fail(const std::string& why) {
        pass = false;
        notes.push_back(why);
    }
    void note(const std::string& what) { notes.push_back(what); }
    void require(bool ok, const std::string& why) {
        if (!ok) fail(why);
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

constexpr double kPointBudgetSeconds = 60.0;

CipherSpec spec_of(CipherFamily family, uint64_t q, int r, int n, uint64_t seed,
                   int rf = 0, int rp = 0) {
    CipherSpec s;
    s.family = family;
    s.q = q;
    s.rounds = r;
    s.rounds_full = rf;
    s.rounds_partial = rp;
    s.branches = n;
    s.seed = seed;
    if (family == CipherFamily::hades) s.affine_layer = AffineLayerKind::seeded;
    return s;
}

struct Sampled {
    CipherInstance inst;
    PolySystem system;
    PolySystem full;  // pre-reduction system where applicable
    mpz_class truth;  // key or preimage
};

Sampled sample(CipherFamily family, const char* attack, uint64_t q, int r, uint64_t seed) {
    Sampled out;
    CipherSpec spec = spec_of(family, q, r,
                              family == CipherFamily::mimc ? 1 : 2, seed);
    out.inst = resolve_spec(spec);
    SplitMix64 rng(seed ^ 0x517cc1b727220a95ULL);
    const std::string kind = attack;
    if (kind == "mimc_field_eq" || kind == "mimc") {
        mpz_class key = rng.below(spec.q), pt = rng.below(spec.q);
        auto ct = encrypt(out.inst, {key}, {pt});
        PolySystem sys = build_mimc_system(out.inst, pt, ct[0]);
        out.full = sys;
        out.system = kind == "mimc" ? sys
                                    : append_field_equations(sys, {sys.ring->index_of("y")});
        out.truth = key;
    } else if (kind == "two_plaintext") {
        mpz_class key = rng.below(spec.q);
        mpz_class p1 = rng.below(spec.q), p2 = rng.below(spec.q);
        while (p2 == p1) p2 = rng.below(spec.q);
        auto c1 = encrypt(out.inst, {key}, {p1});
        auto c2 = encrypt(out.inst, {key}, {p2});
        out.system = build_two_plaintext_system(out.inst, {p1, c1[0]}, {p2, c2[0]});
        out.full = out.system;
        out.truth = key;
    } else if (kind == "feistel") {
        mpz_class key = rng.below(spec.q);
        mpz_class pl = rng.below(spec.q), pr = rng.below(spec.q);
        auto ct = encrypt(out.inst, {key}, {pl, pr});
        out.full = build_feistel_system(out.inst, pl, pr, ct[0], ct[1]);
        PolySystem down = downsized_drl_feistel(out.full);
        const auto& field = *out.full.ring->field();
        const mpz_class cr =
            field.neg(out.full.polys.back().coefficient(Monomial::one(out.full.ring->nvars())));
        down.polys.push_back(
            Polynomial::variable(down.ring, down.ring->index_of("xL" + std::to_string(r - 1))) -
            Polynomial::constant(down.ring, cr));
        out.system = down;
        out.truth = key;
    } else if (kind == "hash") {
        mpz_class preimage = rng.below(spec.q);
        auto [alpha, rest] = hash_digest(out.inst, preimage);
        out.full = build_hash_preimage_system(out.inst, alpha);
        PolySystem chain = eliminate_linear(out.full);
        out.system = append_field_equations(chain, {chain.ring->index_of("x2")});
        out.truth = preimage;
    } else {
        throw Error("unknown sample kind");
    }
    return out;
}

// ---------------------------------------------------------------------------

void criterion_tables(Criterion& c1, Criterion& c2) {
    const auto t0 = std::chrono::steady_clock::now();
    auto cells = reference_tables();
    const double elapsed = seconds_since(t0);

    size_t discrepancy_rows = 0;
    for (const auto& cell : cells) {
        std::ostringstream id;
        id << cell.table << "[" << cell.params << "]";
        if (cell.column == "groebner") {
            if (!cell.note.empty()) {
                ++discrepancy_rows;
                c1.require(std::abs(cell.computed - 572.4) <= 0.5,
                           id.str() + ": formula does not reproduce the dedicated-table value");
                continue;
            }
            c1.require(std::abs(cell.computed - cell.reference) <= 0.5,
                       id.str() + ": |" + std::to_string(cell.computed) + " - " +
                           std::to_string(cell.reference) + "| > 0.5");
        } else {
            c2.require(std::abs(cell.computed - cell.reference) <= 1.0,
                       id.str() + ": established estimate off by more than 1.0 bits");
        }
    }
    c1.require(discrepancy_rows == 2,
               "expected the two annotated comparison cells carrying the 527.4/572.4 conflict");
    c1.note("527.4 vs 572.4 conflict reported on " + std::to_string(discrepancy_rows) +
            " comparison cells, not silently resolved");
    c1.require(elapsed < 1.0, "table generation exceeded 1 s");
    c2.require(elapsed < 1.0, "table generation exceeded 1 s");
}

void criterion_rank_pattern(Criterion& c) {
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<std::tuple<int, int, bool>> expected = {
        {3, 10, true},  {3, 11, false}, {3, 12, true},  {3, 13, false}, {4, 12, true},
        {4, 13, true},  {4, 14, false}, {4, 15, true},  {4, 16, true},  {4, 17, false},
        {5, 10, true},  {5, 11, false}, {5, 12, true},  {5, 13, false}};
    for (auto [n, r, want] : expected) {
        for (auto [family, variant] :
             {std::pair{CipherFamily::gmimc_erf, FeistelVariant::erf},
              std::pair{CipherFamily::gmimc_crf, FeistelVariant::crf}}) {
            CipherSpec spec = spec_of(family, 11, r, n, 1);
            spec.affine_layer = AffineLayerKind::shift;
            auto rep = feistel_rank_criterion(spec, variant);
            const bool got = rep.verdict == GenericityVerdict::generic;
            std::ostringstream id;
            id << feistel_variant_name(variant) << " n=" << n << " r=" << r;
            c.require(got == want, id.str() + ": expected " + (want ? "True" : "False"));
        }
    }
    c.require(seconds_since(t0) < 10.0, "rank pattern exceeded 10 s");
}

struct GridPoint {
    const char* attack;
    CipherFamily family;
    uint64_t q;
    int r;
    int expected;
    int lower;     // closed-form lower bound
    int macaulay;  // Macaulay bound of the attack system
};

std::vector<GridPoint> solving_grid() {
    std::vector<GridPoint> grid;
    for (uint64_t q : {11ull, 23ull, 29ull}) {
        for (int r : {2, 3}) {
            grid.push_back({"mimc_field_eq", CipherFamily::mimc, q, r, int(q) + 2 * r - 1,
                            int(q) + 2 * (r - 1), int(q) + 2 * r});
            grid.push_back({"two_plaintext", CipherFamily::mimc, q, r, 4 * r, 4 * r - 3,
                            4 * r + 1});
            grid.push_back({"feistel", CipherFamily::feistel_mimc, q, r, 2 * r, 2 * r - 1,
                            2 * r + 1});
            grid.push_back({"hash", CipherFamily::feistel_hash, q, r, int(q) + 2 * r - 3,
                            int(q) + 2 * (r - 2), int(q) + 2 * r - 2});
        }
    }
    return grid;
}

struct GridMeasurement {
    GridPoint point;
    bool skipped = false;
    bool generic_certified = false;
    int measured = -1;
};

void criterion_solving_grid(Criterion& c, std::vector<GridMeasurement>& measurements) {
    for (const auto& point : solving_grid()) {
        GridMeasurement m;
        m.point = point;
        std::ostringstream id;
        id << point.attack << " q=" << point.q << " r=" << point.r;
        Sampled s = sample(point.family, point.attack, point.q, point.r, 1000 + point.q);
        try {
            auto res = solving_degree(s.system, TermOrderKind::drl, point.macaulay + 1,
                                      Budget::with_timeout(kPointBudgetSeconds));
            if (res.status != SolvingDegreeResult::Status::found) {
                c.fail(id.str() + ": no solving degree within the Macaulay bound + 1");
                measurements.push_back(m);
                continue;
            }
            m.measured = res.degree;
            if (res.degree != point.expected) {
                c.note(id.str() + ": finding, measured " + std::to_string(res.degree) +
                       " differs from the small-scale law " + std::to_string(point.expected));
            }
            c.require(point.lower <= res.degree && res.degree <= point.macaulay,
                      id.str() + ": sandwich " + std::to_string(point.lower) +
                          " <= " + std::to_string(res.degree) +
                          " <= " + std::to_string(point.macaulay) + " violated");
        } catch (const BudgetError&) {
            m.skipped = true;
            c.note(id.str() + ": skipped, exceeded " +
                   std::to_string(int(kPointBudgetSeconds)) + " s wall-clock");
        }
        measurements.push_back(m);
    }
    size_t measured = 0;
    for (const auto& m : measurements) measured += !m.skipped;
    c.require(measured >= measurements.size() / 2,
              "more than half of the grid points were skipped");
}

void criterion_witnesses(Criterion& c) {
    for (uint64_t q : {11ull, 23ull, 29ull}) {
        for (int r : {2, 3}) {
            // field-equation witness: exact confirmation expected
            {
                std::ostringstream id;
                id << "mimc_field_eq witness q=" << q << " r=" << r;
                Sampled s = sample(CipherFamily::mimc, "mimc_field_eq", q, r, 2000 + q + 10 * r);
                try {
                    auto rec = witness_mimc_field_eq(s.system,
                                                     Budget::with_timeout(kPointBudgetSeconds));
                    c.require(rec.is_fall, id.str() + ": no degree fall");
                    c.require(rec.confirmed, id.str() + ": fall at " +
                                                 std::to_string(rec.fall_degree) +
                                                 " instead of the predicted " +
                                                 std::to_string(rec.predicted));
                } catch (const PreconditionError& e) {
                    c.note(id.str() + ": hypothesis gate, " + e.what());
                } catch (const BudgetError&) {
                    c.note(id.str() + ": skipped after " +
                           std::to_string(int(kPointBudgetSeconds)) + " s");
                }
            }
            // feistel witness
            {
                std::ostringstream id;
                id << "feistel witness q=" << q << " r=" << r;
                Sampled s = sample(CipherFamily::feistel_mimc, "feistel", q, r, 3000 + q + r);
                try {
                    auto rec =
                        witness_feistel(s.full, Budget::with_timeout(kPointBudgetSeconds));
                    c.require(rec.is_fall, id.str() + ": no degree fall");
                    c.require(rec.confirmed, id.str() + ": fall at " +
                                                 std::to_string(rec.fall_degree) +
                                                 " instead of the predicted " +
                                                 std::to_string(rec.predicted));
                } catch (const PreconditionError& e) {
                    c.note(id.str() + ": hypothesis gate, " + e.what());
                } catch (const BudgetError&) {
                    c.note(id.str() + ": skipped after " +
                           std::to_string(int(kPointBudgetSeconds)) + " s");
                }
            }
            // hash witness: the prediction is a lower bound in the reduced
            // measurement frame (the full frame is out of dense reach)
            {
                std::ostringstream id;
                id << "hash witness q=" << q << " r=" << r;
                Sampled s = sample(CipherFamily::feistel_hash, "hash", q, r, 4000 + q + r);
                try {
                    auto rec = witness_hash(s.system, Budget::with_timeout(kPointBudgetSeconds));
                    c.require(rec.is_fall, id.str() + ": no degree fall");
                    c.require(rec.fall_degree >= rec.predicted,
                              id.str() + ": fall below the predicted bound");
                    if (rec.fall_degree != rec.predicted) {
                        c.note(id.str() + ": fall at " + std::to_string(rec.fall_degree) +
                               ", bound " + std::to_string(rec.predicted) +
                               " (reduced measurement frame)");
                    }
                } catch (const PreconditionError& e) {
                    c.note(id.str() + ": hypothesis gate, " + e.what());
                } catch (const BudgetError&) {
                    c.note(id.str() + ": skipped after " +
                           std::to_string(int(kPointBudgetSeconds)) + " s");
                }
            }
        }
    }
}

void criterion_oracle_equivalence(Criterion& c) {
    const auto t0 = std::chrono::steady_clock::now();
    size_t instances = 0;
    auto check = [&](const PolySystem& sys, const std::string& id) {
        const TermOrder order = sys.order();
        std::vector<int> degrees;
        for (const auto& p : sys.polys) degrees.push_back(p.degree());
        const int cap = macaulay_bound(degrees, int(sys.ring->nvars())) + 2;
        auto res = solving_degree(sys, TermOrderKind::drl, cap);
        if (res.status != SolvingDegreeResult::Status::found) {
            c.fail(id + ": elimination never produced a basis");
            return;
        }
        auto oracle = buchberger(sys.polys, order, 500000);
        c.require(ideal_equal(*res.basis, oracle), id + ": ideals differ between engines");
        ++instances;
    };

    for (uint64_t q : {5ull, 11ull}) {
        for (int r : {2, 3}) {
            Sampled s = sample(CipherFamily::mimc, "mimc_field_eq", q, r, 100 + q + r);
            check(s.system, "mimc_field_eq q=" + std::to_string(q) + " r=" + std::to_string(r));
        }
        Sampled two = sample(CipherFamily::mimc, "two_plaintext", q, 2, 200 + q);
        check(two.system, "two_plaintext q=" + std::to_string(q));
    }
    for (uint64_t q : {5ull, 7ull, 11ull, 13ull}) {
        for (int r : {2, 3}) {
            Sampled s = sample(CipherFamily::feistel_mimc, "feistel", q, r, 300 + q + r);
            check(s.full, "feistel q=" + std::to_string(q) + " r=" + std::to_string(r));
            Sampled h = sample(CipherFamily::feistel_hash, "hash", q, r, 400 + q + r);
            check(h.system, "hash q=" + std::to_string(q) + " r=" + std::to_string(r));
        }
    }
    for (uint64_t q : {5ull, 7ull}) {
        for (auto family : {CipherFamily::gmimc_erf, CipherFamily::gmimc_crf}) {
            CipherSpec spec = spec_of(family, q, 2, 3, 500 + q);
            auto inst = resolve_spec(spec);
            SplitMix64 rng(spec.seed);
            std::vector<mpz_class> key = {rng.below(q), rng.below(q), rng.below(q)};
            std::vector<mpz_class> pt = {rng.below(q), rng.below(q), rng.below(q)};
            auto ct = encrypt(inst, key, pt);
            check(build_gmimc_system(inst, pt, ct),
                  family_name(family) + " q=" + std::to_string(q));
        }
    }
    {
        CipherSpec spec = spec_of(CipherFamily::hades, 11, 2, 2, 600, 1, 0);
        auto inst = resolve_spec(spec);
        std::vector<mpz_class> key = {3, 8}, pt = {1, 9};
        auto ct = encrypt(inst, key, pt);
        check(build_hades_system(inst, pt, ct), "hades full rounds q=11");
    }
    c.require(instances >= 20, "only " + std::to_string(instances) + " instances compared");
    c.note(std::to_string(instances) + " seeded instances compared");
    c.require(seconds_since(t0) < 300.0, "oracle equivalence exceeded 5 minutes");
}

void criterion_structural_gb(Criterion& c) {
    // keyed chains
    for (int r : {2, 3, 4}) {
        Sampled s = sample(CipherFamily::mimc, "mimc", 11, r, 700 + r);
        c.require(is_groebner(s.system.polys, s.system.order()),
                  "mimc r=" + std::to_string(r) + " chain is not a basis");
    }
    // two-plaintext subsystems with one first-round polynomial removed
    {
        Sampled s = sample(CipherFamily::mimc, "two_plaintext", 11, 3, 711);
        const int r = 3;
        for (int drop : {0, r}) {
            std::vector<Polynomial> polys;
            for (size_t i = 0; i < s.system.polys.size(); ++i) {
                if (int(i) != drop) polys.push_back(s.system.polys[i]);
            }
            c.require(is_groebner(polys, s.system.order()),
                      "two-plaintext subsystem missing poly " + std::to_string(drop) +
                          " is not a basis");
        }
    }
    // downsized feistel
    {
        Sampled s = sample(CipherFamily::feistel_mimc, "feistel", 13, 4, 712);
        PolySystem down = downsized_drl_feistel(s.full);
        c.require(is_groebner(down.polys, down.order()), "downsized feistel basis check failed");
    }
    // transformed full-round hades
    {
        CipherSpec spec = spec_of(CipherFamily::hades, 11, 4, 2, 713, 2, 0);
        auto inst = resolve_spec(spec);
        std::vector<mpz_class> key = {5, 2}, pt = {7, 3};
        auto ct = encrypt(inst, key, pt);
        PolySystem t = spn_transform(build_hades_system(inst, pt, ct));
        c.require(is_groebner(t.polys, t.order()), "transformed hades is not a basis");
    }
    // the worked two-branch instance over F13, frozen canonical polynomials
    {
        CipherSpec spec = spec_of(CipherFamily::feistel_mimc, 13, 4, 2, 1);
        spec.explicit_constants = {{mpz_class(0), mpz_class(0)},
                                   {mpz_class(0), mpz_class(0)},
                                   {mpz_class(0), mpz_class(0)},
                                   {mpz_class(0), mpz_class(0)}};
        auto inst = resolve_spec(spec);
        PolySystem down = downsized_drl_feistel(build_feistel_system(inst, 0, 0, 0, 0));
        const std::vector<std::string> expected = {
            "y^3 + 12*xR2",
            "xR2^3 + 3*xR2^2*y + 3*xR2*y^2 + y^3 + 12*xR3",
            "xR3^3 + 3*xR3^2*y + 3*xR3*y^2 + y^3 + xR2 + 12*xL3",
            "xL3^3 + 3*xL3^2*y + 3*xL3*y^2 + y^3 + xR3 + y",
        };
        c.require(down.polys.size() == 4, "worked instance has the wrong size");
        for (size_t i = 0; i < expected.size() && i < down.polys.size(); ++i) {
            c.require(down.polys[i].str() == expected[i],
                      "worked instance polynomial " + std::to_string(i + 1) +
                          " deviates from the frozen rendering");
        }
        // over F5 the printed coefficient conventions line up exactly; the
        // third polynomial differs from the printed variant by the first
        // basis element only (same ideal, same leading monomials)
        CipherSpec spec5 = spec;
        spec5.q = 5;
        auto inst5 = resolve_spec(spec5);
        PolySystem down5 = downsized_drl_feistel(build_feistel_system(inst5, 0, 0, 0, 0));
        const std::vector<std::string> printed5 = {
            "y^3 + 4*xR2",
            "xR2^3 + 3*xR2^2*y + 3*xR2*y^2 + y^3 + 4*xR3",
            "xR3^3 + 3*xR3^2*y + 3*xR3*y^2 + 2*y^3 + 4*xL3",
            "xL3^3 + 3*xL3^2*y + 3*xL3*y^2 + y^3 + xR3 + y",
        };
        c.require(down5.polys[0].str() == printed5[0], "F5 worked instance: first polynomial");
        c.require(down5.polys[1].str() == printed5[1], "F5 worked instance: second polynomial");
        c.require(down5.polys[3].str() == printed5[3], "F5 worked instance: fourth polynomial");
        Polynomial printed3 = parse_polynomial(down5.ring, printed5[2]);
        c.require(printed3 - down5.polys[2] == down5.polys[0],
                  "F5 worked instance: third polynomial should differ from the printed variant "
                  "by the first basis element");
    }
}

void criterion_shape_degree_laws(Criterion& c) {
    // univariate chains
    for (int r : {2, 3, 4, 5}) {
        Sampled s = sample(CipherFamily::mimc, "mimc", 11, r, 800 + r);
        ShapeBasis shape = lex_gb_iterated(s.system);
        int expect = 3;
        for (size_t i = 0; i < shape.linear_part.size(); ++i) {
            c.require(shape.linear_part[i].second.degree() == expect,
                      "chain image degree law fails at r=" + std::to_string(r));
            expect *= 3;
        }
        c.require(shape.univariate.degree() == expect,
                  "chain univariate degree law fails at r=" + std::to_string(r));
    }
    // two-branch chains
    for (int r : {2, 3, 4}) {
        Sampled s = sample(CipherFamily::feistel_mimc, "feistel", 13, r, 810 + r);
        ShapeBasis shape = lex_gb_feistel(s.full);
        int prod = 1;
        for (int i = 0; i < r; ++i) prod *= 3;
        c.require(shape.univariate.degree() == prod,
                  "feistel univariate degree law fails at r=" + std::to_string(r));
    }
    // quotient dimensions
    for (int r : {2, 3, 4}) {
        Sampled s = sample(CipherFamily::mimc, "mimc", 11, r, 820 + r);
        GroebnerBasis gb;
        gb.ring = s.system.ring;
        gb.order = TermOrderKind::drl;
        gb.source = GroebnerBasis::Source::asserted_by_structure;
        gb.polys = interreduce(s.system.polys, s.system.order());
        auto qd = quotient_dimension(gb);
        uint64_t expect = 1;
        for (int i = 0; i < r; ++i) expect *= 3;
        c.require(qd.finite && qd.dimension == expect,
                  "chain quotient dimension fails at r=" + std::to_string(r));
    }
    {
        CipherSpec spec = spec_of(CipherFamily::hades, 11, 3, 2, 830, 1, 1);
        auto inst = resolve_spec(spec);
        std::vector<mpz_class> key = {3, 8}, pt = {1, 9};
        auto ct = encrypt(inst, key, pt);
        PolySystem t = spn_transform(build_hades_system(inst, pt, ct));
        GroebnerBasis gb;
        gb.ring = t.ring;
        gb.order = TermOrderKind::drl;
        gb.source = GroebnerBasis::Source::asserted_by_structure;
        gb.polys = interreduce(t.polys, t.order());
        auto qd = quotient_dimension(gb);
        c.require(qd.finite && qd.dimension == 243,
                  "hades quotient dimension d^(2nrf+rp) fails");
    }
}

void criterion_key_recovery(Criterion& c) {
    size_t total = 0, with_truth = 0;
    size_t paired_total = 0, paired_singleton = 0;
    auto run = [&](CipherFamily family, const char* attack, AttackKind kind, uint64_t q, int r,
                   uint64_t seed) {
        Sampled s = sample(family, attack, q, r, seed);
        const PolySystem& sys = kind == AttackKind::feistel ? s.full
                                : kind == AttackKind::hash  ? s.system
                                : kind == AttackKind::field_equation ? s.full
                                                                      : s.system;
        KeyRecovery rec = recover_key(sys, kind);
        ++total;
        bool found = false;
        for (const auto& k : rec.solutions) found |= k == s.truth;
        with_truth += found;
        if (!found) {
            c.fail(std::string(attack) + " q=" + std::to_string(q) + " r=" + std::to_string(r) +
                   " seed=" + std::to_string(seed) + ": true solution missing");
        }
        if (kind == AttackKind::two_plaintext || kind == AttackKind::feistel) {
            ++paired_total;
            paired_singleton += rec.solutions.size() == 1;
        }
    };

    uint64_t seed = 9000;
    for (uint64_t q : {11ull, 23ull, 29ull}) {
        for (int r : {2, 3, 4}) {
            run(CipherFamily::mimc, "mimc_field_eq", AttackKind::field_equation, q, r, ++seed);
            run(CipherFamily::mimc, "two_plaintext", AttackKind::two_plaintext, q, r, ++seed);
        }
    }
    for (uint64_t q : {13ull, 23ull, 31ull}) {
        for (int r : {2, 3, 4}) {
            run(CipherFamily::feistel_mimc, "feistel", AttackKind::feistel, q, r, ++seed);
            run(CipherFamily::feistel_hash, "hash", AttackKind::hash, q, r, ++seed);
        }
    }
    for (int extra = 0; extra < 8; ++extra) {
        run(CipherFamily::mimc, "two_plaintext", AttackKind::two_plaintext, 29, 3, ++seed);
        run(CipherFamily::feistel_mimc, "feistel", AttackKind::feistel, 31, 3, ++seed);
    }
    c.require(total >= 50, "only " + std::to_string(total) + " instances attempted");
    const double rate = paired_total ? double(paired_singleton) / double(paired_total) : 0.0;
    std::ostringstream rate_note;
    rate_note.setf(std::ios::fixed);
    rate_note.precision(1);
    rate_note << "singleton candidate rate for paired attacks: " << 100.0 * rate << "% ("
              << paired_singleton << "/" << paired_total << ")";
    c.note(rate_note.str());
    c.note(std::to_string(total) + " instances, true solution recovered in " +
           std::to_string(with_truth));
    c.require(rate >= 0.8, "singleton rate below the 80% soft threshold");
}

void criterion_genericity(Criterion& c, const std::vector<GridMeasurement>& grid) {
    {
        Sampled s = sample(CipherFamily::mimc, "mimc", 11, 3, 910);
        c.require(is_generic_coordinates(s.system, GenericityMethod::pure_powers).verdict ==
                      GenericityVerdict::generic,
                  "keyed chain not certified generic");
    }
    {
        Sampled s = sample(CipherFamily::mimc, "two_plaintext", 11, 2, 920);
        c.require(is_generic_coordinates(s.system, GenericityMethod::pure_powers).verdict ==
                      GenericityVerdict::generic,
                  "two-plaintext system not certified generic");
    }
    {
        CipherSpec spec = spec_of(CipherFamily::hades, 11, 3, 2, 930, 1, 1);
        auto inst = resolve_spec(spec);
        std::vector<mpz_class> key = {3, 8}, pt = {1, 9};
        auto ct = encrypt(inst, key, pt);
        c.require(spn_genericity(build_hades_system(inst, pt, ct)).verdict ==
                      GenericityVerdict::generic,
                  "hades instance not certified generic");
    }
    {
        auto rep = is_generic_coordinates(build_spn_sponge_system(make_field(5), 3, 0),
                                          GenericityMethod::pure_powers);
        c.require(rep.verdict == GenericityVerdict::not_generic,
                  "sponge negative control not rejected");
    }
    // property: certified instances keep the measured solving degree at or
    // below the Macaulay bound (every grid instance carries a structural
    // certificate)
    for (const auto& m : grid) {
        if (m.skipped || m.measured < 0) continue;
        c.require(m.measured <= m.point.macaulay,
                  std::string(m.point.attack) + " q=" + std::to_string(m.point.q) +
                      " r=" + std::to_string(m.point.r) + ": solving degree above the bound");
    }
}

}  // namespace

int main() {
    std::vector<Criterion> criteria;
    criteria.reserve(16);
    auto& c1 = criteria.emplace_back(Criterion{1, "table reproduction within 0.5 bits"});
    auto& c2 = criteria.emplace_back(Criterion{2, "established columns within 1.0 bits"});
    auto& c3 = criteria.emplace_back(Criterion{3, "rank-criterion shift pattern"});
    auto& c4 = criteria.emplace_back(Criterion{4, "desk-scale solving degrees"});
    auto& c5 = criteria.emplace_back(Criterion{5, "lower-bound witnesses"});
    auto& c6 = criteria.emplace_back(Criterion{6, "oracle equivalence"});
    auto& c7 = criteria.emplace_back(Criterion{7, "structural basis claims"});
    auto& c8 = criteria.emplace_back(Criterion{8, "shape and quotient degree laws"});
    auto& c9 = criteria.emplace_back(Criterion{9, "end-to-end key recovery"});
    auto& c10 = criteria.emplace_back(Criterion{10, "genericity checks"});

    std::vector<GridMeasurement> grid;
    try {
        criterion_tables(c1, c2);
        criterion_rank_pattern(c3);
        criterion_solving_grid(c4, grid);
        criterion_witnesses(c5);
        criterion_oracle_equivalence(c6);
        criterion_structural_gb(c7);
        criterion_shape_degree_laws(c8);
        criterion_key_recovery(c9);
        criterion_genericity(c10, grid);
    } catch (const Error& e) {
        std::cerr << "acceptance suite aborted: " << e.what() << "\n";
        return 99;
    }

    int failures = 0;
    for (const auto& c : criteria) {
        std::cout << (c.pass ? "[PASS]" : "[FAIL]") << " criterion " << c.id << ": " << c.name
                  << "\n";
        for (const auto& note : c.notes) std::cout << "       - " << note << "\n";
        failures += !c.pass;
    }
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
              << "\n";
    return failures;
}
