#include <algorithm>
#include <set>

#include "doctest.h"

#include "gblab/errors.hpp"
#include "gblab/groebner.hpp"
#include "gblab/rng.hpp"
#include "gblab/shapelex.hpp"
#include "gblab/systems.hpp"

using namespace gblab;

namespace {

PolySystem mimc_with_fe(uint64_t q, int r, uint64_t seed, mpz_class key, mpz_class pt) {
    CipherSpec spec;
    spec.family = CipherFamily::mimc;
    spec.q = q;
    spec.rounds = r;
    spec.seed = seed;
    auto inst = resolve_spec(spec);
    auto ct = encrypt(inst, {key}, {pt});
    PolySystem sys = build_mimc_system(inst, pt, ct[0]);
    return append_field_equations(sys, {sys.ring->index_of("y")});
}

}  // namespace

TEST_CASE("is_groebner") {
    CipherSpec spec;
    spec.family = CipherFamily::mimc;
    spec.q = 11;
    spec.rounds = 3;
    spec.seed = 2;
    auto inst = resolve_spec(spec);
    auto ct = encrypt(inst, {6}, {2});
    PolySystem sys = build_mimc_system(inst, 2, ct[0]);
    CHECK(is_groebner(sys.polys, sys.order()));

    auto ring = make_ring({"x", "y"}, make_field(11), TermOrderKind::drl);
    const TermOrder order{TermOrderKind::drl, ring};
    Polynomial f = parse_polynomial(ring, "x^2 + 10*y");
    Polynomial g = parse_polynomial(ring, "x*y + 10");
    CHECK_FALSE(is_groebner({f, g}, order));
    CHECK(is_groebner({f}, order));
    CHECK_THROWS_AS(is_groebner({Polynomial::zero(ring)}, order), PreconditionError);
}

TEST_CASE("buchberger oracle") {
    auto ring = make_ring({"x", "y"}, make_field(13), TermOrderKind::drl);
    const TermOrder order{TermOrderKind::drl, ring};
    // an input that is already a reduced basis comes back monic and unchanged
    Polynomial f = parse_polynomial(ring, "x + 12");
    Polynomial g = parse_polynomial(ring, "y + 11");
    auto gb = buchberger({f.scaled(3), g}, order);
    REQUIRE(gb.polys.size() == 2);
    CHECK(std::find(gb.polys.begin(), gb.polys.end(), f) != gb.polys.end());
    CHECK(std::find(gb.polys.begin(), gb.polys.end(), g) != gb.polys.end());
    CHECK(quotient_dimension(gb).dimension == 1);

    // the classic non-basis pair gains the missing elements
    Polynomial a = parse_polynomial(ring, "x^2 + 12*y");
    Polynomial b = parse_polynomial(ring, "x*y + 12");
    auto gb2 = buchberger({a, b}, order);
    CHECK(is_groebner(gb2.polys, order));
    CHECK(gb2.polys.size() > 2);
    for (const auto& p : {a, b}) CHECK(normal_form(p, gb2).is_zero());

    CHECK_THROWS_AS(buchberger({a, b}, order, 1), BudgetError);
}

TEST_CASE("linear algebra gb against buchberger") {
    PolySystem sys = mimc_with_fe(11, 2, 31, 7, 3);
    const TermOrder order = sys.order();

    // at the maximal input degree the candidate is not yet a basis
    auto low = linear_algebra_gb(sys, TermOrderKind::drl, 11);
    CHECK_FALSE(low.achieved);

    // the small-scale law: the scan closes at q + 2r - 1 = 14
    auto hit = linear_algebra_gb(sys, TermOrderKind::drl, 14);
    CHECK(hit.achieved);
    REQUIRE(hit.basis.has_value());

    auto oracle = buchberger(sys.polys, order);
    CHECK(ideal_equal(*hit.basis, oracle));
}

TEST_CASE("solving degrees at desk scale") {
    // already a basis: the scan stops at the maximal input degree
    CipherSpec spec;
    spec.family = CipherFamily::mimc;
    spec.q = 11;
    spec.rounds = 2;
    spec.seed = 3;
    auto inst = resolve_spec(spec);
    auto ct = encrypt(inst, {5}, {2});
    PolySystem plain = build_mimc_system(inst, 2, ct[0]);
    auto res0 = solving_degree(plain, TermOrderKind::drl, 10);
    CHECK(res0.status == SolvingDegreeResult::Status::found);
    CHECK(res0.degree == 3);

    PolySystem sys = mimc_with_fe(11, 2, 31, 7, 3);
    auto res = solving_degree(sys, TermOrderKind::drl, 20);
    REQUIRE(res.status == SolvingDegreeResult::Status::found);
    CHECK(res.degree == 14);  // q + 2r - 1
    for (const auto& [d, achieved] : res.profile) CHECK(achieved == (d == 14));

    PolySystem sys3 = mimc_with_fe(11, 3, 57, 4, 9);
    auto res3 = solving_degree(sys3, TermOrderKind::drl, 20);
    REQUIRE(res3.status == SolvingDegreeResult::Status::found);
    CHECK(res3.degree == 16);  // q + 2r - 1

    // exhaustion is a distinct, non-throwing outcome
    auto exhausted = solving_degree(sys, TermOrderKind::drl, 12);
    CHECK(exhausted.status == SolvingDegreeResult::Status::exhausted);
}

TEST_CASE("two plaintext solving degree 4r") {
    CipherSpec spec;
    spec.family = CipherFamily::mimc;
    spec.q = 11;
    spec.rounds = 2;
    spec.seed = 8;
    auto inst = resolve_spec(spec);
    const mpz_class key = 6;
    auto c1 = encrypt(inst, {key}, {1});
    auto c2 = encrypt(inst, {key}, {4});
    PolySystem sys = build_two_plaintext_system(inst, {1, c1[0]}, {4, c2[0]});
    auto res = solving_degree(sys, TermOrderKind::drl, 12);
    REQUIRE(res.status == SolvingDegreeResult::Status::found);
    CHECK(res.degree == 8);  // 4r
}

TEST_CASE("quotient dimensions") {
    for (int r : {2, 3, 4}) {
        CipherSpec spec;
        spec.family = CipherFamily::mimc;
        spec.q = 11;
        spec.rounds = r;
        spec.seed = uint64_t(r);
        auto inst = resolve_spec(spec);
        auto ct = encrypt(inst, {3}, {5});
        PolySystem sys = build_mimc_system(inst, 5, ct[0]);
        GroebnerBasis gb;
        gb.ring = sys.ring;
        gb.order = TermOrderKind::drl;
        gb.source = GroebnerBasis::Source::asserted_by_structure;
        gb.polys = interreduce(sys.polys, sys.order());
        REQUIRE(is_groebner(gb.polys, sys.order()));
        auto qd = quotient_dimension(gb);
        CHECK(qd.finite);
        uint64_t expect = 1;
        for (int i = 0; i < r; ++i) expect *= 3;
        CHECK(qd.dimension == expect);
    }

    // transformed hades instance: d^(2*n*rf + rp) = 3^5
    CipherSpec spec;
    spec.family = CipherFamily::hades;
    spec.q = 11;
    spec.rounds_full = 1;
    spec.rounds_partial = 1;
    spec.rounds = 3;
    spec.branches = 2;
    spec.seed = 5;
    spec.affine_layer = AffineLayerKind::seeded;
    auto inst = resolve_spec(spec);
    std::vector<mpz_class> key = {3, 8}, pt = {1, 9};
    auto ct = encrypt(inst, key, pt);
    PolySystem transformed = spn_transform(build_hades_system(inst, pt, ct));
    GroebnerBasis gb;
    gb.ring = transformed.ring;
    gb.order = TermOrderKind::drl;
    gb.source = GroebnerBasis::Source::asserted_by_structure;
    gb.polys = interreduce(transformed.polys, transformed.order());
    REQUIRE(is_groebner(gb.polys, transformed.order()));
    auto qd = quotient_dimension(gb);
    CHECK(qd.finite);
    CHECK(qd.dimension == 243);

    // no pure power in some variable: infinite quotient
    auto ring = make_ring({"x", "y"}, make_field(11), TermOrderKind::drl);
    GroebnerBasis inf;
    inf.ring = ring;
    inf.order = TermOrderKind::drl;
    inf.polys = {parse_polynomial(ring, "x^2")};
    CHECK_FALSE(quotient_dimension(inf).finite);
}

TEST_CASE("normal forms") {
    CipherSpec spec;
    spec.family = CipherFamily::mimc;
    spec.q = 11;
    spec.rounds = 3;
    spec.seed = 9;
    auto inst = resolve_spec(spec);
    auto ct = encrypt(inst, {2}, {7});
    PolySystem sys = build_mimc_system(inst, 7, ct[0]);
    const TermOrder order = sys.order();
    GroebnerBasis gb;
    gb.ring = sys.ring;
    gb.order = TermOrderKind::drl;
    gb.polys = interreduce(sys.polys, order);

    Polynomial member = sys.polys[0] * sys.polys[1] + sys.polys[2];
    CHECK(normal_form(member, gb).is_zero());

    // remainder of the key field equation: observed degree cap 2*ceil(log3 q)
    size_t key = sys.ring->index_of("y");
    Polynomial fe = Polynomial::variable(sys.ring, key, 11) - Polynomial::variable(sys.ring, key);
    Polynomial r_y = normal_form(fe, gb);
    CHECK_FALSE(r_y.is_zero());
    CHECK(r_y.degree() <= 6);

    // reduction path independence given a basis: shuffle the divisor list
    std::vector<Polynomial> shuffled = gb.polys;
    std::reverse(shuffled.begin(), shuffled.end());
    CHECK(divide(fe, gb.polys, order).remainder == divide(fe, shuffled, order).remainder);
}

TEST_CASE("homogenized system bounds the affine solving degree") {
    auto affine_ring = make_ring({"x", "y"}, make_field(11), TermOrderKind::drl);
    auto homog_ring = make_ring({"x", "y", "x0"}, make_field(11), TermOrderKind::drl, 2);
    PolySystem sys;
    sys.ring = affine_ring;
    sys.roles = {{VariableRole::Kind::state, 1, 1, -1}, {VariableRole::Kind::key, -1, -1, -1}};
    sys.polys = {parse_polynomial(affine_ring, "x^2 + y + 1"),
                 parse_polynomial(affine_ring, "y^2 + x + 5")};

    PolySystem hsys;
    hsys.ring = homog_ring;
    hsys.roles = {{VariableRole::Kind::state, 1, 1, -1},
                  {VariableRole::Kind::key, -1, -1, -1},
                  {VariableRole::Kind::homogenizer, -1, -1, -1}};
    for (const auto& p : sys.polys) hsys.polys.push_back(homogenize(p.into_ring(homog_ring)));

    auto res = solving_degree(sys, TermOrderKind::drl, 10);
    auto hres = solving_degree(hsys, TermOrderKind::drl, 10);
    REQUIRE(res.status == SolvingDegreeResult::Status::found);
    REQUIRE(hres.status == SolvingDegreeResult::Status::found);
    CHECK(res.degree <= hres.degree);
}

TEST_CASE("dense elimination path under the elimination order") {
    // the word-sized fast engine only serves the degree-compatible order;
    // the elimination order goes through the dense reference path
    auto ring = make_ring({"x", "y"}, make_field(11), TermOrderKind::lex);
    PolySystem sys;
    sys.ring = ring;
    sys.roles = {{VariableRole::Kind::state, 1, 1, -1}, {VariableRole::Kind::key, -1, -1, -1}};
    sys.polys = {parse_polynomial(ring, "x^2 + y^2 + 10"), parse_polynomial(ring, "x*y + 3")};
    auto res = solving_degree(sys, TermOrderKind::lex, 8);
    REQUIRE(res.status == SolvingDegreeResult::Status::found);
    auto oracle = buchberger(sys.polys, sys.order());
    CHECK(ideal_equal(*res.basis, oracle));
    // the elimination order exposes a univariate polynomial in the least
    // variable at the end of the basis
    bool has_univariate = false;
    for (const auto& p : oracle.polys) {
        bool only_y = true;
        for (const auto& t : p.terms()) only_y &= t.mono.exps[0] == 0;
        has_univariate |= only_y;
    }
    CHECK(has_univariate);
}

TEST_CASE("solving degree can drop when the chain univariate gains roots") {
    // instances whose univariate has at least d_1 roots escape the usual
    // q + 2r - 1 behaviour; the Macaulay sandwich still holds
    CipherSpec spec;
    spec.family = CipherFamily::mimc;
    spec.q = 11;
    spec.rounds = 2;
    spec.seed = 31;
    auto inst = resolve_spec(spec);
    SplitMix64 rng(spec.seed ^ 0x517cc1b727220a95ULL);
    const mpz_class key = rng.below(11ull), pt = rng.below(11ull);
    auto ct = encrypt(inst, {key}, {pt});
    PolySystem sys = build_mimc_system(inst, pt, ct[0]);

    ShapeBasis shape = lex_gb_iterated(sys);
    auto roots = field_gcd_roots(shape.univariate, *sys.ring->field());
    REQUIRE(roots.roots.size() >= 3);

    PolySystem fe = append_field_equations(sys, {sys.ring->index_of("y")});
    auto res = solving_degree(fe, TermOrderKind::drl, 16);
    REQUIRE(res.status == SolvingDegreeResult::Status::found);
    CHECK(res.degree == 13);                      // below q + 2r - 1 = 14
    CHECK(res.degree >= 11 + 2 * (2 - 1));        // never below q + 2(r-1)
    CHECK(res.degree <= 11 + 2 * 2);              // never above q + 2r
}
