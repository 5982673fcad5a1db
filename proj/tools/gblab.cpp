// Command-line workbench: builds cipher polynomial systems, measures solving
// and last-fall degrees, checks generic coordinates, recovers keys, and
// reproduces the complexity tables.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "gblab/complexity.hpp"
#include "gblab/degfall.hpp"
#include "gblab/errors.hpp"
#include "gblab/genpos.hpp"
#include "gblab/groebner.hpp"
#include "gblab/json_io.hpp"
#include "gblab/rng.hpp"
#include "gblab/shapelex.hpp"
#include "gblab/systems.hpp"
#include "gblab/version.hpp"

using json = nlohmann::json;
using namespace gblab;

namespace {

struct CommonOpts {
    uint64_t seed = 1;
    std::string out;
    int threads = 1;
    bool timings = false;
    double timeout = 0.0;  // seconds, 0 = unlimited
    int d_max = 0;         // 0 = derive from the instance
    uint64_t pair_budget = 200000;
};

struct SpecOpts {
    std::string spec_file;
    std::string family = "mimc";
    std::string q = "11";
    int rounds = 2;
    int rounds_full = 0;
    int rounds_partial = 0;
    int branches = 0;
    int exponent = 3;
    std::string layer;
    std::string key_schedule = "none";
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--seed", o.seed, "seed for constants and sampled data");
    cmd->add_option("--out", o.out, "output file (default stdout; GBLAB_OUT_DIR prefixes bare names)");
    cmd->add_option("--threads", o.threads, "upper bound on internal parallelism");
    cmd->add_flag("--timings", o.timings, "include wall-clock timings in the report");
    cmd->add_option("--timeout", o.timeout, "wall-clock budget in seconds");
    cmd->add_option("--d-max", o.d_max, "degree budget for scans");
    cmd->add_option("--pair-budget", o.pair_budget, "pair budget for the Buchberger oracle");
}

void add_spec(CLI::App* cmd, SpecOpts& s) {
    cmd->add_option("--spec", s.spec_file, "cipher spec as a JSON file");
    cmd->add_option("--family", s.family, "mimc|feistel_mimc|feistel_hash|gmimc_erf|gmimc_crf|hades");
    cmd->add_option("--q", s.q, "field size (prime)");
    cmd->add_option("--r", s.rounds, "number of rounds");
    cmd->add_option("--rf", s.rounds_full, "hades full rounds");
    cmd->add_option("--rp", s.rounds_partial, "hades partial rounds");
    cmd->add_option("--n", s.branches, "number of branches");
    cmd->add_option("--d", s.exponent, "power permutation exponent");
    cmd->add_option("--layer", s.layer, "affine layer: shift|circulant|seeded");
    cmd->add_option("--key-schedule", s.key_schedule, "none|affine");
}

CipherSpec make_spec(const SpecOpts& s, const CommonOpts& o) {
    if (!s.spec_file.empty()) {
        std::ifstream in(s.spec_file);
        if (!in) throw ParseError("cannot open spec file '" + s.spec_file + "'");
        json j;
        try {
            in >> j;
        } catch (const json::exception& e) {
            throw ParseError(std::string("spec file: ") + e.what());
        }
        return spec_from_json(j);
    }
    CipherSpec spec;
    spec.family = family_from_name(s.family);
    spec.q = mpz_class(s.q);
    spec.rounds = s.rounds;
    spec.rounds_full = s.rounds_full;
    spec.rounds_partial = s.rounds_partial;
    if (spec.family == CipherFamily::hades && spec.rounds_full > 0 && s.rounds == 2) {
        spec.rounds = 2 * s.rounds_full + s.rounds_partial;
    }
    spec.branches = s.branches > 0 ? s.branches
                    : spec.family == CipherFamily::mimc ? 1
                    : (spec.family == CipherFamily::feistel_mimc ||
                       spec.family == CipherFamily::feistel_hash)
                        ? 2
                        : 3;
    spec.exponent = s.exponent;
    spec.seed = o.seed;
    if (!s.layer.empty()) {
        spec.affine_layer = s.layer == "shift"       ? AffineLayerKind::shift
                            : s.layer == "circulant" ? AffineLayerKind::circulant
                            : s.layer == "seeded"
                                ? AffineLayerKind::seeded
                                : throw ParseError("unknown affine layer '" + s.layer + "'");
    } else if (spec.family == CipherFamily::hades) {
        spec.affine_layer = AffineLayerKind::seeded;
    }
    spec.key_schedule =
        s.key_schedule == "affine" ? KeyScheduleKind::affine : KeyScheduleKind::none;
    spec.validate();
    return spec;
}

Budget budget_of(const CommonOpts& o) {
    return o.timeout > 0 ? Budget::with_timeout(o.timeout) : Budget::none();
}

void emit(const CommonOpts& o, const std::string& payload) {
    std::string path = o.out;
    if (!path.empty() && path.find('/') == std::string::npos) {
        if (const char* dir = std::getenv("GBLAB_OUT_DIR")) {
            path = std::string(dir) + "/" + path;
        }
    }
    if (path.empty()) {
        std::cout << payload << "\n";
    } else {
        std::ofstream out(path);
        if (!out) throw Error("cannot write output file '" + path + "'");
        out << payload << "\n";
        std::cerr << "report written to " << path << "\n";
    }
}

json base_report(const char* command, const CipherSpec* spec, const CommonOpts& o) {
    json j;
    j["command"] = command;
    j["version"] = kVersion;
    j["seed"] = o.seed;
    j["budgets"] = {{"d_max", o.d_max},
                    {"pair_budget", o.pair_budget},
                    {"timeout_seconds", o.timeout},
                    {"threads", o.threads}};
    if (spec) {
        j["spec"] = spec_to_json(*spec);
        j["spec_digest"] = spec->digest();
    }
    return j;
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    }
};

void attach_timing(json& report, const CommonOpts& o, const Timer& t, const char* what) {
    const double ms = t.ms();
    std::cerr << what << " took " << ms << " ms\n";
    if (o.timings) report["timings_ms"][what] = ms;
}

// ---------------------------------------------------------------------------
// attack-instance sampling: key material and plaintexts come from a stream
// independent of the constants stream so instances stay reproducible
struct SampledInstance {
    CipherInstance inst;
    PolySystem system;           // the system the attack solves
    PolySystem recovery_system;  // the system key recovery consumes
    json oracle;                 // sampled key/plaintext data for the report
};

enum class AttackSystemKind { field_equation, two_plaintext, feistel, hash, plain };

AttackSystemKind attack_kind_from(const std::string& name) {
    if (name == "field_equation" || name == "mimc_field_eq") return AttackSystemKind::field_equation;
    if (name == "two_plaintext") return AttackSystemKind::two_plaintext;
    if (name == "feistel") return AttackSystemKind::feistel;
    if (name == "hash") return AttackSystemKind::hash;
    if (name == "plain") return AttackSystemKind::plain;
    throw ParseError("unknown attack '" + name + "'");
}

AttackSystemKind default_attack(CipherFamily family) {
    switch (family) {
        case CipherFamily::mimc: return AttackSystemKind::field_equation;
        case CipherFamily::feistel_mimc: return AttackSystemKind::feistel;
        case CipherFamily::feistel_hash: return AttackSystemKind::hash;
        default: return AttackSystemKind::plain;
    }
}

// downsized feistel chain plus the removed right-branch output polynomial;
// the system whose elimination the attack actually runs
PolySystem feistel_attack_system(const CipherInstance& inst, const PolySystem& full) {
    PolySystem down = downsized_drl_feistel(full);
    const auto& field = *full.ring->field();
    const Polynomial& frn = full.polys.back();
    const mpz_class cr = field.neg(frn.coefficient(Monomial::one(full.ring->nvars())));
    const int r = inst.spec.rounds;
    down.polys.push_back(Polynomial::variable(down.ring,
                                              down.ring->index_of("xL" + std::to_string(r - 1))) -
                         Polynomial::constant(down.ring, cr));
    down.provenance.note += "; right-branch output polynomial appended";
    return down;
}

SampledInstance sample_attack(const CipherSpec& spec, AttackSystemKind kind) {
    SampledInstance out;
    out.inst = resolve_spec(spec);
    const auto& inst = out.inst;
    SplitMix64 rng(spec.seed ^ 0x517cc1b727220a95ULL);
    const size_t n = size_t(spec.branches);
    auto draw_vec = [&](size_t len) {
        std::vector<mpz_class> v(len);
        for (auto& x : v) x = rng.below(spec.q);
        return v;
    };
    auto vec_json = [](const std::vector<mpz_class>& v) {
        json a = json::array();
        for (const auto& x : v) a.push_back(x.get_str());
        return a;
    };

    switch (kind) {
        case AttackSystemKind::field_equation: {
            if (spec.family != CipherFamily::mimc) {
                throw PreconditionError("field_equation attack expects the mimc family");
            }
            auto key = draw_vec(1), pt = draw_vec(1);
            auto ct = encrypt(inst, key, pt);
            PolySystem sys = build_mimc_system(inst, pt[0], ct[0]);
            out.recovery_system = sys;
            out.system = append_field_equations(sys, {sys.ring->index_of("y")});
            out.oracle = {{"key", vec_json(key)}, {"plaintext", vec_json(pt)},
                          {"ciphertext", vec_json(ct)}};
            break;
        }
        case AttackSystemKind::two_plaintext: {
            if (spec.family != CipherFamily::mimc) {
                throw PreconditionError("two_plaintext attack expects the mimc family");
            }
            auto key = draw_vec(1);
            mpz_class p1 = rng.below(spec.q), p2 = rng.below(spec.q);
            while (p2 == p1) p2 = rng.below(spec.q);
            auto c1 = encrypt(inst, key, {p1});
            auto c2 = encrypt(inst, key, {p2});
            out.system = build_two_plaintext_system(inst, {p1, c1[0]}, {p2, c2[0]});
            out.recovery_system = out.system;
            out.oracle = {{"key", vec_json(key)},
                          {"pairs", json::array({json::array({p1.get_str(), c1[0].get_str()}),
                                                 json::array({p2.get_str(), c2[0].get_str()})})}};
            break;
        }
        case AttackSystemKind::feistel: {
            if (spec.family != CipherFamily::feistel_mimc) {
                throw PreconditionError("feistel attack expects the feistel_mimc family");
            }
            auto key = draw_vec(1), pt = draw_vec(2);
            auto ct = encrypt(inst, key, pt);
            PolySystem full = build_feistel_system(inst, pt[0], pt[1], ct[0], ct[1]);
            out.recovery_system = full;
            out.system = feistel_attack_system(inst, full);
            out.oracle = {{"key", vec_json(key)}, {"plaintext", vec_json(pt)},
                          {"ciphertext", vec_json(ct)}};
            break;
        }
        case AttackSystemKind::hash: {
            if (spec.family != CipherFamily::feistel_hash) {
                throw PreconditionError("hash attack expects the feistel_hash family");
            }
            const mpz_class preimage = rng.below(spec.q);
            auto [alpha, rest] = hash_digest(inst, preimage);
            PolySystem full = build_hash_preimage_system(inst, alpha);
            out.recovery_system = full;
            PolySystem chain = eliminate_linear(full);
            out.system = append_field_equations(chain, {chain.ring->index_of("x2")});
            out.oracle = {{"preimage", preimage.get_str()},
                          {"digest", alpha.get_str()},
                          {"second_output", rest.get_str()}};
            break;
        }
        case AttackSystemKind::plain: {
            auto key = draw_vec(n), pt = draw_vec(n);
            auto ct = encrypt(inst, key, pt);
            PolySystem sys;
            switch (spec.family) {
                case CipherFamily::mimc: sys = build_mimc_system(inst, pt[0], ct[0]); break;
                case CipherFamily::feistel_mimc:
                    sys = build_feistel_system(inst, pt[0], pt[1], ct[0], ct[1]);
                    break;
                case CipherFamily::gmimc_erf:
                case CipherFamily::gmimc_crf: sys = build_gmimc_system(inst, pt, ct); break;
                case CipherFamily::hades: sys = build_hades_system(inst, pt, ct); break;
                default: throw PreconditionError("plain system not defined for this family");
            }
            out.system = sys;
            out.recovery_system = sys;
            out.oracle = {{"key", vec_json(key)}, {"plaintext", vec_json(pt)},
                          {"ciphertext", vec_json(ct)}};
            break;
        }
    }
    return out;
}

int macaulay_degree_cap(const PolySystem& sys, int requested) {
    if (requested > 0) return requested;
    std::vector<int> degrees;
    for (const auto& p : sys.polys) degrees.push_back(p.degree());
    return macaulay_bound(degrees, int(sys.ring->nvars())) + 2;
}

// ---------------------------------------------------------------------------

int cmd_build(const SpecOpts& s, const CommonOpts& o, const std::string& attack,
              bool transformed) {
    CipherSpec spec = make_spec(s, o);
    AttackSystemKind kind = attack.empty() ? default_attack(spec.family)
                                           : attack_kind_from(attack);
    SampledInstance inst = sample_attack(spec, kind);
    PolySystem sys = inst.system;
    if (transformed) {
        sys = spec.family == CipherFamily::gmimc_erf ? gmimc_erf_transform(sys)
                                                     : spn_transform(sys);
        sys = eliminate_linear(sys);
    }
    json report = base_report("build", &spec, o);
    report["system"] = system_to_json(sys);
    report["oracle"] = inst.oracle;
    emit(o, report.dump(2));
    return 0;
}

int cmd_solve(const SpecOpts& s, const CommonOpts& o, const std::string& attack) {
    CipherSpec spec = make_spec(s, o);
    AttackSystemKind kind = attack.empty() ? default_attack(spec.family)
                                           : attack_kind_from(attack);
    AttackKind rec_kind;
    switch (kind) {
        case AttackSystemKind::field_equation: rec_kind = AttackKind::field_equation; break;
        case AttackSystemKind::two_plaintext: rec_kind = AttackKind::two_plaintext; break;
        case AttackSystemKind::feistel: rec_kind = AttackKind::feistel; break;
        case AttackSystemKind::hash: rec_kind = AttackKind::hash; break;
        default: throw PreconditionError("solve: choose one of the four key-recovery attacks");
    }
    SampledInstance inst = sample_attack(spec, kind);
    Timer t;
    KeyRecovery rec = recover_key(inst.recovery_system, rec_kind);
    json report = base_report("solve", &spec, o);
    report["attack"] = attack_name(rec.kind);
    json sols = json::array();
    for (const auto& k : rec.solutions) sols.push_back(k.get_str());
    report["recovered_keys"] = sols;
    report["univariate_degrees"] = rec.univariate_degrees;
    report["gcd_degree"] = rec.gcd_degree;
    report["oracle"] = inst.oracle;
    // verify against the sampled truth
    std::string truth = kind == AttackSystemKind::hash
                            ? inst.oracle.at("preimage").get<std::string>()
                            : inst.oracle.at("key")[0].get<std::string>();
    bool found = false;
    for (const auto& k : rec.solutions) found |= k.get_str() == truth;
    report["true_solution_recovered"] = found;
    attach_timing(report, o, t, "solve");
    emit(o, report.dump(2));
    return 0;
}

int cmd_solvdeg(const SpecOpts& s, const CommonOpts& o, const std::string& attack,
                const std::string& field_eq) {
    CipherSpec spec = make_spec(s, o);
    AttackSystemKind kind = !attack.empty() ? attack_kind_from(attack)
                            : field_eq == "key" ? AttackSystemKind::field_equation
                                                : default_attack(spec.family);
    SampledInstance inst = sample_attack(spec, kind);
    const int cap = macaulay_degree_cap(inst.system, o.d_max);
    Timer t;
    auto res = solving_degree(inst.system, TermOrderKind::drl, cap, budget_of(o));
    json report = base_report("solvdeg", &spec, o);
    report["budgets"]["d_max"] = cap;
    report["status"] =
        res.status == SolvingDegreeResult::Status::found ? "found" : "exhausted";
    if (res.status == SolvingDegreeResult::Status::found) {
        report["solving_degree"] = res.degree;
        // basis envelope: order, source, degrees, canonical polynomials
        json gb;
        gb["order"] = res.basis->order == TermOrderKind::drl ? "drl" : "lex";
        gb["source"] = "macaulay";
        gb["macaulay_degree"] = res.basis->macaulay_degree;
        json polys = json::array();
        json degrees = json::array();
        for (const auto& p : res.basis->polys) {
            polys.push_back(p.str());
            degrees.push_back(p.degree());
        }
        gb["polys"] = std::move(polys);
        gb["degrees"] = std::move(degrees);
        report["groebner_basis"] = std::move(gb);
        std::cout << res.degree << "\n";
    }
    json profile = json::array();
    for (auto [d, achieved] : res.profile) profile.push_back({{"degree", d}, {"achieved", achieved}});
    report["profile"] = profile;
    report["oracle"] = inst.oracle;
    attach_timing(report, o, t, "solvdeg");
    emit(o, report.dump(2));
    return 0;
}

int cmd_lastfall(const SpecOpts& s, const CommonOpts& o, const std::string& attack) {
    CipherSpec spec = make_spec(s, o);
    AttackSystemKind kind = attack.empty() ? default_attack(spec.family)
                                           : attack_kind_from(attack);
    SampledInstance inst = sample_attack(spec, kind);
    const int cap = macaulay_degree_cap(inst.system, o.d_max);
    Timer t;
    auto res = last_fall_degree(inst.system, TermOrderKind::drl, cap, budget_of(o));
    json report = base_report("lastfall", &spec, o);
    report["budgets"]["d_max"] = cap;
    report["status"] =
        res.status == LastFallResult::Status::found ? "found" : "none_detected";
    report["last_fall_degree"] = res.degree;
    report["fall_degrees"] = res.fall_degrees;
    report["scan_cap"] = res.scan_cap;
    report["oracle"] = inst.oracle;
    attach_timing(report, o, t, "lastfall");
    if (res.status == LastFallResult::Status::found) std::cout << res.degree << "\n";
    emit(o, report.dump(2));
    return 0;
}

json genericity_json(const GenericityReport& rep, const RingPtr& ring) {
    json j;
    j["verdict"] = verdict_name(rep.verdict);
    j["certified"] = rep.verdict == GenericityVerdict::generic;
    j["method"] = method_name(rep.method);
    if (!rep.pure_powers.empty()) {
        json w = json::array();
        for (auto [v, d] : rep.pure_powers) {
            w.push_back({{"variable", ring ? ring->variables()[v] : std::to_string(v)},
                         {"degree", d}});
        }
        j["pure_powers"] = w;
    }
    if (rep.stalled_variable && ring) {
        j["stalled_variable"] = ring->variables()[*rep.stalled_variable];
    }
    if (rep.method == GenericityMethod::rank_criterion) {
        j["rank_achieved"] = rep.rank_achieved;
        j["rank_required"] = rep.rank_required;
    }
    if (!rep.notes.empty()) j["notes"] = rep.notes;
    return j;
}

int cmd_generic_check(const SpecOpts& s, const CommonOpts& o, const std::string& method,
                      const std::string& variant, bool sponge_example) {
    json report;
    GenericityReport rep;
    RingPtr ring;
    if (sponge_example) {
        PolySystem sys = build_spn_sponge_system(make_field(mpz_class(s.q)), s.exponent, 0);
        rep = is_generic_coordinates(sys, GenericityMethod::pure_powers, o.pair_budget);
        ring = sys.ring;
        report = base_report("generic-check", nullptr, o);
        report["instance"] = "spn_sponge_example";
    } else {
        CipherSpec spec = make_spec(s, o);
        report = base_report("generic-check", &spec, o);
        if (spec.family == CipherFamily::gmimc_erf || spec.family == CipherFamily::gmimc_crf) {
            FeistelVariant v = !variant.empty() ? feistel_variant_from_name(variant)
                               : spec.family == CipherFamily::gmimc_erf ? FeistelVariant::erf
                                                                        : FeistelVariant::crf;
            rep = feistel_rank_criterion(spec, v);
            report["variant"] = feistel_variant_name(v);
        } else {
            SampledInstance inst = sample_attack(spec, default_attack(spec.family));
            ring = inst.system.ring;
            GenericityMethod m = method == "substitution"
                                     ? GenericityMethod::substitution_procedure
                                 : method == "spn" ? GenericityMethod::spn_structure
                                                   : GenericityMethod::pure_powers;
            rep = is_generic_coordinates(inst.system, m, o.pair_budget);
        }
    }
    report["report"] = genericity_json(rep, ring);
    std::cout << (rep.verdict == GenericityVerdict::generic      ? "generic"
                  : rep.verdict == GenericityVerdict::not_generic ? "not_generic"
                                                                  : "not certified")
              << "\n";
    emit(o, report.dump(2));
    return 0;
}

int cmd_estimate(const CommonOpts& o, const std::string& attack, double log2q,
                 const std::string& q_exact, int r, int rf, int rp, int n, int d,
                 double omega, bool established) {
    AttackParams p;
    p.model = attack_model_from_name(attack);
    if (!q_exact.empty()) {
        p.log2q = double(mpz_sizeinbase(mpz_class(q_exact).get_mpz_t(), 2));
    } else {
        p.log2q = log2q;
    }
    p.rounds = r;
    p.rounds_full = rf;
    p.rounds_partial = rp;
    if (p.model == AttackModel::hades && r == 0) p.rounds = 2 * rf + rp;
    p.branches = n;
    p.exponent = d;
    ComplexityReport rep = established ? estimate_established(p, omega) : estimate_attack(p, omega);
    json report = base_report("estimate", nullptr, o);
    report["attack"] = rep.attack;
    report["nvars"] = rep.nvars;
    report["solving_degree_bound"] = rep.solving_degree_bound;
    report["omega"] = rep.omega;
    report["kappa_bits"] = rep.kappa_bits;
    report["quotient_dim_log2"] = rep.quotient_dim_log2;
    if (rep.established_bits >= 0) report["established_bits"] = rep.established_bits;
    report["provenance"] = rep.provenance;
    std::cout.setf(std::ios::fixed);
    std::cout.precision(1);
    std::cout << (established ? rep.established_bits : rep.kappa_bits) << "\n";
    emit(o, report.dump(2));
    return 0;
}

int cmd_tables(const CommonOpts& o, const std::string& which) {
    Timer t;
    std::string csv = tables_csv(which);
    std::cerr << "tables took " << t.ms() << " ms\n";
    emit(o, csv.substr(0, csv.size() - 1));  // emit adds the final newline
    return 0;
}

int cmd_witness(const SpecOpts& s, const CommonOpts& o, const std::string& construction) {
    CipherSpec spec = make_spec(s, o);
    WitnessConstruction c = construction_from_name(construction);
    AttackSystemKind kind;
    switch (c) {
        case WitnessConstruction::mimc_field_eq:
        case WitnessConstruction::mimc_remainder:
        case WitnessConstruction::conjecture: kind = AttackSystemKind::field_equation; break;
        case WitnessConstruction::feistel: kind = AttackSystemKind::feistel; break;
        case WitnessConstruction::hash: kind = AttackSystemKind::hash; break;
        default: throw PreconditionError("witness: choose a concrete construction");
    }
    SampledInstance inst = sample_attack(spec, kind);
    Timer t;
    DegreeFallRecord rec;
    switch (c) {
        case WitnessConstruction::mimc_field_eq:
            rec = witness_mimc_field_eq(inst.system, budget_of(o));
            break;
        case WitnessConstruction::mimc_remainder:
            rec = witness_mimc_remainder(inst.system, budget_of(o));
            break;
        case WitnessConstruction::feistel:
            rec = witness_feistel(inst.recovery_system, budget_of(o));
            break;
        case WitnessConstruction::hash:
            rec = witness_hash(inst.system, budget_of(o));
            break;
        case WitnessConstruction::conjecture: {
            std::vector<size_t> all_vars;
            for (size_t v = 0; v < inst.recovery_system.ring->nvars(); ++v) all_vars.push_back(v);
            PolySystem all = append_field_equations(inst.recovery_system, all_vars);
            rec = conjecture_harness(all, budget_of(o));
            break;
        }
        default: throw Error("unreachable");
    }
    json report = base_report("witness", &spec, o);
    report["construction"] = construction_name(rec.construction);
    report["witness"] = rec.witness.str();
    report["witness_degree"] = rec.witness_degree;
    report["fall_degree"] = rec.fall_degree;
    report["predicted"] = rec.predicted;
    report["is_fall"] = rec.is_fall;
    report["confirmed"] = rec.confirmed;
    report["notes"] = rec.notes;
    report["oracle"] = inst.oracle;
    attach_timing(report, o, t, "witness");
    emit(o, report.dump(2));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Groebner-basis cryptanalysis workbench for keyed iterated polynomial systems"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    CommonOpts common;
    SpecOpts spec_opts;
    std::string attack, field_eq, method, variant, construction;
    std::string which = "all";
    bool transformed = false, sponge_example = false, established = false;
    double log2q = 64.0, omega = 2.0;
    std::string q_exact;
    int est_r = 0, est_rf = 0, est_rp = 0, est_n = 0, est_d = 3;

    auto* build = app.add_subcommand("build", "construct an attack polynomial system");
    add_common(build, common);
    add_spec(build, spec_opts);
    build->add_option("--attack", attack, "field_equation|two_plaintext|feistel|hash|plain");
    build->add_flag("--transformed", transformed, "apply the family transform and eliminate");

    auto* solve = app.add_subcommand("solve", "run the shape-basis key recovery");
    add_common(solve, common);
    add_spec(solve, spec_opts);
    solve->add_option("--attack", attack, "field_equation|two_plaintext|feistel|hash");

    auto* solvdeg = app.add_subcommand("solvdeg", "measure the solving degree of an attack system");
    add_common(solvdeg, common);
    add_spec(solvdeg, spec_opts);
    solvdeg->add_option("--attack", attack, "field_equation|two_plaintext|feistel|hash|plain");
    solvdeg->add_option("--field-eq", field_eq, "key: append the key field equation (mimc)");

    auto* lastfall = app.add_subcommand("lastfall", "measure the last fall degree");
    add_common(lastfall, common);
    add_spec(lastfall, spec_opts);
    lastfall->add_option("--attack", attack, "field_equation|two_plaintext|feistel|hash|plain");

    auto* generic = app.add_subcommand("generic-check", "generic-coordinates certificates");
    add_common(generic, common);
    add_spec(generic, spec_opts);
    generic->add_option("--method", method, "pure_powers|substitution|spn");
    generic->add_option("--variant", variant, "erf|strong_crf|crf (generalized Feistel)");
    generic->add_flag("--sponge-example", sponge_example, "run the negative-control sponge");

    auto* estimate = app.add_subcommand("estimate", "closed-form complexity estimates");
    add_common(estimate, common);
    estimate->add_option("--attack", attack, "mimc_field_eq|mimc_two_plaintext|feistel|hash|hades|gmimc_erf|gmimc_crf")
        ->required();
    estimate->add_option("--log2q", log2q, "field size in bits");
    estimate->add_option("--q", q_exact, "exact field size (overrides --log2q)");
    estimate->add_option("--r", est_r, "rounds");
    estimate->add_option("--rf", est_rf, "hades full rounds");
    estimate->add_option("--rp", est_rp, "hades partial rounds");
    estimate->add_option("--n", est_n, "branches");
    estimate->add_option("--d", est_d, "exponent");
    estimate->add_option("--omega", omega, "linear algebra exponent");
    estimate->add_flag("--established", established, "established-cryptanalysis baseline");

    auto* tables = app.add_subcommand("tables", "reproduce the complexity tables as CSV");
    add_common(tables, common);
    tables->add_option("--which", which, "mimc|two_plaintext|feistel|hades|gmimc|comparison|all");

    auto* witness = app.add_subcommand("witness", "degree-fall witness constructions");
    add_common(witness, common);
    add_spec(witness, spec_opts);
    witness->add_option("--construction", construction,
                        "mimc_field_eq|mimc_remainder|feistel|hash|conjecture")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        set_max_threads(unsigned(std::max(common.threads, 1)));
        if (build->parsed()) return cmd_build(spec_opts, common, attack, transformed);
        if (solve->parsed()) return cmd_solve(spec_opts, common, attack);
        if (solvdeg->parsed()) return cmd_solvdeg(spec_opts, common, attack, field_eq);
        if (lastfall->parsed()) return cmd_lastfall(spec_opts, common, attack);
        if (generic->parsed()) {
            return cmd_generic_check(spec_opts, common, method, variant, sponge_example);
        }
        if (estimate->parsed()) {
            return cmd_estimate(common, attack, log2q, q_exact, est_r, est_rf, est_rp,
                                est_n > 0 ? est_n : (attack.rfind("gmimc", 0) == 0 ? 3 : 2),
                                est_d, omega, established);
        }
        if (tables->parsed()) return cmd_tables(common, which);
        if (witness->parsed()) return cmd_witness(spec_opts, common, construction);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const BudgetError& e) {
        std::cerr << "budget exhausted: " << e.what() << "\n";
        return 3;
    } catch (const PreconditionError& e) {
        std::cerr << "precondition failed: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
