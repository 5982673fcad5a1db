#include "gblab/json_io.hpp"

#include "gblab/errors.hpp"
#include "gblab/mpoly.hpp"

namespace gblab {

using nlohmann::json;

namespace {

std::string layer_name(AffineLayerKind k) {
    switch (k) {
        case AffineLayerKind::shift: return "shift";
        case AffineLayerKind::circulant: return "circulant";
        case AffineLayerKind::seeded: return "seeded";
    }
    throw Error("unreachable");
}

AffineLayerKind layer_from_name(const std::string& s) {
    if (s == "shift") return AffineLayerKind::shift;
    if (s == "circulant") return AffineLayerKind::circulant;
    if (s == "seeded") return AffineLayerKind::seeded;
    throw ParseError("spec.affine_layer: unknown kind '" + s + "'");
}

template <typename T>
T field_as(const json& j, const char* name, T fallback, bool required = false) {
    if (!j.contains(name)) {
        if (required) throw ParseError(std::string("spec.") + name + ": missing required field");
        return fallback;
    }
    try {
        return j.at(name).get<T>();
    } catch (const json::exception&) {
        throw ParseError(std::string("spec.") + name + ": wrong type");
    }
}

}  // namespace

json spec_to_json(const CipherSpec& spec) {
    json j;
    j["family"] = family_name(spec.family);
    j["q"] = spec.q.get_str();
    j["rounds"] = spec.rounds;
    if (spec.family == CipherFamily::hades) {
        j["rounds_full"] = spec.rounds_full;
        j["rounds_partial"] = spec.rounds_partial;
    }
    j["branches"] = spec.branches;
    j["exponent"] = spec.exponent;
    j["seed"] = spec.seed;
    j["affine_layer"] = layer_name(spec.affine_layer);
    j["key_schedule"] = spec.key_schedule == KeyScheduleKind::affine ? "affine" : "none";
    if (!spec.explicit_constants.empty()) {
        json rows = json::array();
        for (const auto& row : spec.explicit_constants) {
            json r = json::array();
            for (const auto& c : row) r.push_back(c.get_str());
            rows.push_back(std::move(r));
        }
        j["round_constants"] = std::move(rows);
    }
    return j;
}

CipherSpec spec_from_json(const json& j) {
    CipherSpec spec;
    spec.family = family_from_name(field_as<std::string>(j, "family", "", true));
    const std::string q_str = j.contains("q") && j.at("q").is_number()
                                  ? std::to_string(j.at("q").get<long>())
                                  : field_as<std::string>(j, "q", "", true);
    try {
        spec.q = mpz_class(q_str);
    } catch (const std::invalid_argument&) {
        throw ParseError("spec.q: not an integer");
    }
    spec.rounds = field_as<int>(j, "rounds", 0, true);
    spec.rounds_full = field_as<int>(j, "rounds_full", 0);
    spec.rounds_partial = field_as<int>(j, "rounds_partial", 0);
    spec.branches = field_as<int>(
        j, "branches",
        spec.family == CipherFamily::mimc
            ? 1
            : (spec.family == CipherFamily::feistel_mimc || spec.family == CipherFamily::feistel_hash
                   ? 2
                   : 3));
    spec.exponent = field_as<int>(j, "exponent", 3);
    spec.seed = field_as<uint64_t>(j, "seed", 1);
    spec.affine_layer = layer_from_name(field_as<std::string>(
        j, "affine_layer", spec.family == CipherFamily::hades ? "seeded" : "shift"));
    const std::string ks = field_as<std::string>(j, "key_schedule", "none");
    if (ks != "none" && ks != "affine") throw ParseError("spec.key_schedule: unknown kind");
    spec.key_schedule = ks == "affine" ? KeyScheduleKind::affine : KeyScheduleKind::none;
    if (j.contains("round_constants")) {
        if (!j.at("round_constants").is_array()) {
            throw ParseError("spec.round_constants: expected an array of arrays");
        }
        for (const auto& row : j.at("round_constants")) {
            std::vector<mpz_class> out;
            for (const auto& c : row) {
                out.emplace_back(c.is_string() ? mpz_class(c.get<std::string>())
                                               : mpz_class(c.get<long>()));
            }
            spec.explicit_constants.push_back(std::move(out));
        }
    }
    spec.validate();
    return spec;
}

json system_to_json(const PolySystem& sys) {
    json j;
    j["ring"] = {{"variables", sys.ring->variables()},
                 {"modulus", sys.ring->field()->modulus().get_str()},
                 {"order", sys.ring->order() == TermOrderKind::drl ? "drl" : "lex"}};
    if (sys.ring->homogenization_slot()) {
        j["ring"]["homogenization_slot"] = *sys.ring->homogenization_slot();
    }
    json polys = json::array();
    for (const auto& p : sys.polys) polys.push_back(p.str());
    j["polys"] = std::move(polys);
    json roles = json::array();
    for (const auto& r : sys.roles) roles.push_back(r.str());
    j["roles"] = std::move(roles);
    json prov;
    prov["builder"] = sys.provenance.builder;
    prov["note"] = sys.provenance.note;
    if (sys.provenance.spec) prov["spec"] = spec_to_json(*sys.provenance.spec);
    if (!sys.provenance.round_blocks.empty()) {
        json blocks = json::array();
        for (const auto& [b, e] : sys.provenance.round_blocks) blocks.push_back({b, e});
        prov["round_blocks"] = std::move(blocks);
    }
    j["provenance"] = std::move(prov);
    return j;
}

namespace {

VariableRole role_from_string(const std::string& s) {
    VariableRole role;
    std::string kind = s;
    std::string rest;
    if (auto pos = s.find(':'); pos != std::string::npos) {
        kind = s.substr(0, pos);
        rest = s.substr(pos);
    }
    if (kind == "key") {
        role.kind = VariableRole::Kind::key;
    } else if (kind == "state") {
        role.kind = VariableRole::Kind::state;
    } else if (kind == "plaintext_unknown") {
        role.kind = VariableRole::Kind::plaintext_unknown;
    } else if (kind == "hash_output_unknown") {
        role.kind = VariableRole::Kind::hash_output_unknown;
    } else if (kind == "homogenizer") {
        role.kind = VariableRole::Kind::homogenizer;
    } else {
        throw ParseError("system.roles: unknown role '" + s + "'");
    }
    auto grab = [&](const char* tag) {
        const std::string t = std::string(":") + tag + "=";
        auto pos = rest.find(t);
        if (pos == std::string::npos) return -1;
        return std::stoi(rest.substr(pos + t.size()));
    };
    role.round = grab("round");
    role.branch = grab("branch");
    role.sample = grab("sample");
    return role;
}

}  // namespace

PolySystem system_from_json(const json& j) {
    PolySystem sys;
    try {
        const auto& ring = j.at("ring");
        std::vector<std::string> vars = ring.at("variables").get<std::vector<std::string>>();
        mpz_class q(ring.at("modulus").get<std::string>());
        TermOrderKind kind =
            ring.at("order").get<std::string>() == "lex" ? TermOrderKind::lex : TermOrderKind::drl;
        std::optional<size_t> slot;
        if (ring.contains("homogenization_slot")) slot = ring.at("homogenization_slot").get<size_t>();
        sys.ring = make_ring(std::move(vars), make_field(q), kind, slot);
    } catch (const json::exception& e) {
        throw ParseError(std::string("system.ring: ") + e.what());
    }
    if (!j.contains("polys") || !j.at("polys").is_array()) {
        throw ParseError("system.polys: missing array");
    }
    for (const auto& p : j.at("polys")) {
        sys.polys.push_back(parse_polynomial(sys.ring, p.get<std::string>()));
    }
    if (!j.contains("roles") || !j.at("roles").is_array()) {
        throw ParseError("system.roles: missing array");
    }
    for (const auto& r : j.at("roles")) sys.roles.push_back(role_from_string(r.get<std::string>()));
    if (j.contains("provenance")) {
        const auto& prov = j.at("provenance");
        sys.provenance.builder = prov.value("builder", "");
        sys.provenance.note = prov.value("note", "");
        if (prov.contains("spec")) sys.provenance.spec = spec_from_json(prov.at("spec"));
        if (prov.contains("round_blocks")) {
            for (const auto& b : prov.at("round_blocks")) {
                sys.provenance.round_blocks.emplace_back(b.at(0).get<size_t>(),
                                                         b.at(1).get<size_t>());
            }
        }
    }
    sys.validate();
    return sys;
}

}
