#include "doctest.h"

#include "gblab/errors.hpp"
#include "gblab/json_io.hpp"
#include "gblab/systems.hpp"

using namespace gblab;

TEST_CASE("cipher spec round trip") {
    CipherSpec spec;
    spec.family = CipherFamily::hades;
    spec.q = 11;
    spec.branches = 2;
    spec.rounds_full = 1;
    spec.rounds_partial = 1;
    spec.rounds = 3;
    spec.seed = 99;
    spec.affine_layer = AffineLayerKind::seeded;
    spec.key_schedule = KeyScheduleKind::affine;
    auto j = spec_to_json(spec);
    CipherSpec back = spec_from_json(j);
    CHECK(back.family == spec.family);
    CHECK(back.q == spec.q);
    CHECK(back.rounds_full == 1);
    CHECK(back.seed == 99);
    CHECK(back.key_schedule == KeyScheduleKind::affine);
    CHECK(spec_to_json(back) == j);

    // explicit constants survive as strings
    CipherSpec m;
    m.family = CipherFamily::mimc;
    m.q = 11;
    m.rounds = 2;
    m.explicit_constants = {{mpz_class(4)}, {mpz_class(9)}};
    CipherSpec mback = spec_from_json(spec_to_json(m));
    CHECK(mback.explicit_constants == m.explicit_constants);
}

TEST_CASE("malformed spec json points at the failing field") {
    nlohmann::json j;
    j["family"] = "mimc";
    CHECK_THROWS_WITH_AS(spec_from_json(j), doctest::Contains("spec.q"), ParseError);
    j["q"] = "11";
    CHECK_THROWS_WITH_AS(spec_from_json(j), doctest::Contains("spec.rounds"), ParseError);
    j["rounds"] = 2;
    CHECK_NOTHROW(spec_from_json(j));
    j["affine_layer"] = "diagonal";
    CHECK_THROWS_WITH_AS(spec_from_json(j), doctest::Contains("affine_layer"), ParseError);
}

TEST_CASE("system round trip") {
    CipherSpec spec;
    spec.family = CipherFamily::mimc;
    spec.q = 11;
    spec.rounds = 3;
    spec.seed = 5;
    auto inst = resolve_spec(spec);
    auto ct = encrypt(inst, {2}, {7});
    PolySystem sys = build_mimc_system(inst, 7, ct[0]);
    auto j = system_to_json(sys);
    PolySystem back = system_from_json(j);
    CHECK(*back.ring == *sys.ring);
    REQUIRE(back.polys.size() == sys.polys.size());
    for (size_t i = 0; i < sys.polys.size(); ++i) CHECK(back.polys[i] == sys.polys[i]);
    REQUIRE(back.roles.size() == sys.roles.size());
    for (size_t i = 0; i < sys.roles.size(); ++i) {
        CHECK(back.roles[i].str() == sys.roles[i].str());
    }
    CHECK(back.provenance.builder == "build_mimc_system");
    REQUIRE(back.provenance.spec.has_value());
    CHECK(back.provenance.spec->digest() == spec.digest());
    CHECK(system_to_json(back) == j);

    // loader validates the coverage invariant
    j["roles"] = nlohmann::json::array({"key"});
    CHECK_THROWS_AS(system_from_json(j), PreconditionError);
}
