#include "gblab/complexity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "gblab/errors.hpp"

namespace gblab {

namespace {

const double kLog2_3 = std::log2(3.0);

double binary_entropy(double p) { return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p); }

double log2_sum_exp2(double a, double b) {
    // log2(2^a + 2^b)
    const double hi = std::max(a, b), lo = std::min(a, b);
    return hi + std::log2(1.0 + std::exp2(lo - hi));
}

}  // namespace

int macaulay_bound(std::vector<int> degrees, int nvars) {
    if (degrees.empty()) throw PreconditionError("macaulay_bound: empty degree list");
    std::sort(degrees.begin(), degrees.end(), std::greater<int>());
    const int l = std::min<int>(nvars + 1, int(degrees.size()));
    int sum = 0;
    for (int i = 0; i < l; ++i) sum += degrees[size_t(i)];
    return sum - l + 1;
}

double kappa_bits(int nvars, int degree, double omega) {
    if (nvars < 2 || degree < 1) {
        throw PreconditionError("kappa_bits: needs nvars >= 2 and degree >= 1");
    }
    const double n = nvars, d = degree;
    const double m = n + d - 1.0;
    return omega * (0.5 * std::log2(m / (std::numbers::pi * d * (n - 1.0))) +
                    m * binary_entropy(d / m));
}

int ceil_log3(const mpz_class& q) {
    mpz_class p = 1;
    int k = 0;
    while (p < q) {
        p *= 3;
        ++k;
    }
    return k;
}

int ceil_log3_bits(double log2q) { return int(std::ceil(log2q / kLog2_3 - 1e-12)); }

std::string attack_model_name(AttackModel m) {
    switch (m) {
        case AttackModel::mimc_field_eq: return "mimc_field_eq";
        case AttackModel::mimc_two_plaintext: return "mimc_two_plaintext";
        case AttackModel::feistel: return "feistel";
        case AttackModel::hash: return "hash";
        case AttackModel::hades: return "hades";
        case AttackModel::gmimc_erf: return "gmimc_erf";
        case AttackModel::gmimc_crf: return "gmimc_crf";
    }
    throw Error("unreachable");
}

AttackModel attack_model_from_name(const std::string& name) {
    for (AttackModel m : {AttackModel::mimc_field_eq, AttackModel::mimc_two_plaintext,
                          AttackModel::feistel, AttackModel::hash, AttackModel::hades,
                          AttackModel::gmimc_erf, AttackModel::gmimc_crf}) {
        if (attack_model_name(m) == name) return m;
    }
    throw ParseError("unknown attack model '" + name + "'");
}

AttackParams attack_params_from_spec(const CipherSpec& spec, AttackModel model) {
    AttackParams p;
    p.model = model;
    p.log2q = double(mpz_sizeinbase(spec.q.get_mpz_t(), 2));
    p.rounds = spec.rounds;
    p.rounds_full = spec.rounds_full;
    p.rounds_partial = spec.rounds_partial;
    p.branches = spec.branches;
    p.exponent = spec.exponent;
    return p;
}

ComplexityReport estimate_attack(const AttackParams& p, double omega) {
    ComplexityReport rep;
    rep.attack = attack_model_name(p.model);
    rep.omega = omega;
    const int r = p.rounds;
    std::ostringstream prov;
    switch (p.model) {
        case AttackModel::mimc_field_eq: {
            const int rem = 2 * ceil_log3_bits(p.log2q);
            rep.nvars = r;
            rep.solving_degree_bound = rem + 2 * r;
            prov << "keyed chain + key field equation; field equation replaced by its remainder, "
                    "deg = 2*ceil(log3 q) = "
                 << rem << "; bound deg + 2r";
            break;
        }
        case AttackModel::mimc_two_plaintext:
            rep.nvars = 2 * r - 1;
            rep.solving_degree_bound = 4 * r + 1;
            prov << "joint two-sample chain; bound 4r + 1 over 2r - 1 variables";
            break;
        case AttackModel::feistel:
            rep.nvars = r;
            rep.solving_degree_bound = 2 * r + 1;
            prov << "downsized two-branch chain plus right-branch output; bound 2r + 1";
            break;
        case AttackModel::hash: {
            const int rem = 2 * ceil_log3_bits(p.log2q);
            rep.nvars = r - 1;
            rep.solving_degree_bound = rem + 2 * r - 2;
            prov << "preimage chain + output field equation (remainder form), deg = " << rem
                 << "; bound deg + 2r - 2 over r - 1 variables";
            break;
        }
        case AttackModel::hades: {
            const int nv = 2 * p.branches * p.rounds_full + p.rounds_partial;
            rep.nvars = nv;
            rep.solving_degree_bound = (p.exponent - 1) * nv + 1;
            prov << "partial-round variables eliminated, " << nv
                 << " equations/variables; Macaulay bound (d-1)*nv + 1";
            break;
        }
        case AttackModel::gmimc_erf:
        case AttackModel::gmimc_crf:
            rep.nvars = r;
            rep.solving_degree_bound = (p.exponent - 1) * r + 1;
            prov << "one nonlinear polynomial per round after elimination; Macaulay bound "
                    "(d-1)*r + 1";
            break;
    }
    rep.kappa_bits = kappa_bits(rep.nvars, rep.solving_degree_bound, omega);
    rep.quotient_dim_log2 = quotient_dim_log2(p);
    rep.provenance = prov.str();
    return rep;
}

ComplexityReport estimate_established(const AttackParams& p, double omega) {
    ComplexityReport rep = estimate_attack(p, omega);
    const int r = p.rounds;
    const double logd = std::log2(double(p.exponent));
    std::ostringstream prov;
    switch (p.model) {
        case AttackModel::mimc_field_eq:
        case AttackModel::feistel:
        case AttackModel::hash: {
            // probabilistic change-of-order on the keyed chain: n * D^omega
            // with D = d^r, plus the gcd/factoring term (log-domain sum)
            const double fglm = std::log2(double(r)) + omega * r * logd;
            const double bits_d = r * logd;
            const double factoring =
                bits_d + std::log2(p.log2q) + std::log2(bits_d) + std::log2(std::log2(bits_d));
            rep.established_bits = log2_sum_exp2(fglm, factoring);
            prov << "log2(r) + omega*r*log2(d) change-of-order plus gcd with the field "
                    "equation (dominant term kept)";
            break;
        }
        case AttackModel::mimc_two_plaintext: {
            // two change-of-order runs, then one gcd of the univariates
            const double fglm = 1.0 + std::log2(double(r)) + omega * r * logd;
            const double bits_d = r * logd;
            const double gcd_term =
                bits_d + 2.0 * std::log2(bits_d) + std::log2(std::log2(bits_d));
            rep.established_bits = log2_sum_exp2(fglm, gcd_term);
            prov << "two change-of-order runs (one extra bit) plus the univariate gcd";
            break;
        }
        case AttackModel::hades:
            rep.established_bits = rep.kappa_bits;
            prov << "designers' estimate coincides with the Macaulay-bound computation";
            break;
        case AttackModel::gmimc_erf:
        case AttackModel::gmimc_crf: {
            const int n = p.branches;
            const int e = p.model == AttackModel::gmimc_erf ? r - n : r - 2 * n + 2;
            if (e < 0) throw PreconditionError("estimate_established: too few rounds for gmimc");
            const double D = std::pow(double(p.exponent), double(e));
            double log_binom = 0.0;
            for (int i = 1; i <= n; ++i) {
                log_binom += std::log2(D + double(i)) - std::log2(double(i));
            }
            rep.established_bits = omega * log_binom;
            prov << "designers' regularity-based binomial estimate with substituted encryption "
                    "polynomials, D = d^" << e;
            break;
        }
    }
    rep.provenance = prov.str();
    return rep;
}

double quotient_dim_log2(const AttackParams& p) {
    const double logd = std::log2(double(p.exponent));
    if (p.rounds == 0) return 0.0;
    switch (p.model) {
        case AttackModel::mimc_field_eq: return p.rounds * logd;
        case AttackModel::mimc_two_plaintext: return (2 * p.rounds - 1) * logd;
        case AttackModel::feistel: return p.rounds * logd;
        case AttackModel::hash: return (p.rounds - 1) * logd;
        case AttackModel::hades:
            return (2 * p.branches * p.rounds_full + p.rounds_partial) * logd;
        case AttackModel::gmimc_erf:
        case AttackModel::gmimc_crf: return p.rounds * logd;
    }
    throw Error("unreachable");
}

namespace {

AttackParams make_params(AttackModel m, double log2q, int r, int rf, int rp, int n, int d) {
    AttackParams p;
    p.model = m;
    p.log2q = log2q;
    p.rounds = r;
    p.rounds_full = rf;
    p.rounds_partial = rp;
    p.branches = n;
    p.exponent = d;
    return p;
}

const char* kTable1Note527 =
    "the comparison table prints 527.4 while the dedicated table prints 572.4; the formula "
    "reproduces 572.4 and both values are kept as golden data";

}  // namespace

std::vector<TableCell> reference_tables() {
    std::vector<TableCell> cells;
    auto add = [&](const std::string& table, const std::string& params, const std::string& column,
                   double computed, double reference, const std::string& note = "") {
        cells.push_back(TableCell{table, params, column, computed, reference, note});
    };

    // field-equation attack on the keyed chain (remainder form)
    struct {
        double log2q;
        int r;
        double printed;
    } mimc_rows[] = {{64, 50, 337.5}, {128, 81, 572.4}, {256, 162, 1156.2}};
    for (const auto& row : mimc_rows) {
        auto p = make_params(AttackModel::mimc_field_eq, row.log2q, row.r, 0, 0, 1, 3);
        add("mimc", "log2q=" + std::to_string(int(row.log2q)) + ",r=" + std::to_string(row.r),
            "groebner", estimate_attack(p).kappa_bits, row.printed);
    }

    struct {
        int r;
        double printed;
    } two_rows[] = {{10, 99.4}, {50, 538.1}};
    for (const auto& row : two_rows) {
        auto p = make_params(AttackModel::mimc_two_plaintext, 64, row.r, 0, 0, 1, 3);
        add("two_plaintext", "r=" + std::to_string(row.r), "groebner",
            estimate_attack(p).kappa_bits, row.printed);
    }

    struct {
        int r;
        double printed;
    } feistel_rows[] = {{10, 48.6}, {50, 266.7}};
    for (const auto& row : feistel_rows) {
        auto p = make_params(AttackModel::feistel, 64, row.r, 0, 0, 2, 3);
        add("feistel", "r=" + std::to_string(row.r), "groebner", estimate_attack(p).kappa_bits,
            row.printed);
    }

    struct {
        int d, rf, rp;
        double printed;
    } hades_rows[] = {{3, 3, 13, 130.0}, {3, 4, 10, 135.4}, {3, 5, 5, 130.0},
                      {5, 3, 10, 149.0}, {5, 4, 10, 177.6}, {5, 5, 4, 163.3}};
    for (const auto& row : hades_rows) {
        auto p = make_params(AttackModel::hades, 64, 2 * row.rf + row.rp, row.rf, row.rp, 2, row.d);
        add("hades",
            "d=" + std::to_string(row.d) + ",rf=" + std::to_string(row.rf) +
                ",rp=" + std::to_string(row.rp) + ",n=2",
            "groebner", estimate_attack(p).kappa_bits, row.printed);
    }

    struct {
        int d, r;
        double printed;
    } gmimc_rows[] = {{3, 10, 48.6}, {3, 25, 130.0}, {3, 50, 266.7},
                      {5, 10, 63.5}, {5, 25, 170.5}, {5, 50, 350.0}};
    for (const auto& row : gmimc_rows) {
        auto p = make_params(AttackModel::gmimc_erf, 64, row.r, 0, 0, 3, row.d);
        add("gmimc", "d=" + std::to_string(row.d) + ",r=" + std::to_string(row.r), "groebner",
            estimate_attack(p).kappa_bits, row.printed);
    }

    // comparison table: groebner column next to established cryptanalysis
    {
        struct {
            double log2q;
            int r;
            double printed_gb;
            double printed_est;
            const char* note;
        } rows[] = {{64, 50, 337.5, 164.1, ""},
                    {128, 81, 527.4, 263.1, kTable1Note527},
                    {256, 162, 1156.2, 520.9, ""}};
        for (const auto& row : rows) {
            auto p = make_params(AttackModel::mimc_field_eq, row.log2q, row.r, 0, 0, 1, 3);
            const std::string params =
                "mimc,log2q=" + std::to_string(int(row.log2q)) + ",r=" + std::to_string(row.r);
            add("comparison", params, "groebner", estimate_attack(p).kappa_bits, row.printed_gb,
                row.note);
            add("comparison", params, "established", estimate_established(p).established_bits,
                row.printed_est);
        }
        struct {
            int r;
            double printed_gb;
            double printed_est;
        } m2_rows[] = {{10, 99.4, 36.0}, {50, 538.1, 165.1}};
        for (const auto& row : m2_rows) {
            auto p = make_params(AttackModel::mimc_two_plaintext, 64, row.r, 0, 0, 1, 3);
            const std::string params = "mimc,m=2,r=" + std::to_string(row.r);
            add("comparison", params, "groebner", estimate_attack(p).kappa_bits, row.printed_gb);
            add("comparison", params, "established", estimate_established(p).established_bits,
                row.printed_est);
        }
        struct {
            int r;
            double printed_gb;
            double printed_est;
        } f_rows[] = {{10, 48.6, 35.0}, {50, 266.7, 164.1}};
        for (const auto& row : f_rows) {
            auto p = make_params(AttackModel::feistel, 64, row.r, 0, 0, 2, 3);
            const std::string params = "feistel,r=" + std::to_string(row.r);
            add("comparison", params, "groebner", estimate_attack(p).kappa_bits, row.printed_gb);
            add("comparison", params, "established", estimate_established(p).established_bits,
                row.printed_est);
        }
        struct {
            double log2q;
            int r;
            double printed_gb;
            double printed_est;
            const char* note;
        } h_rows[] = {{64, 51, 337.5, 167.3, ""},
                      {128, 82, 527.4, 266.2, kTable1Note527},
                      {256, 163, 1156.2, 524.0, ""}};
        for (const auto& row : h_rows) {
            auto p = make_params(AttackModel::hash, row.log2q, row.r, 0, 0, 2, 3);
            const std::string params =
                "hash,log2q=" + std::to_string(int(row.log2q)) + ",r=" + std::to_string(row.r);
            add("comparison", params, "groebner", estimate_attack(p).kappa_bits, row.printed_gb,
                row.note);
            add("comparison", params, "established", estimate_established(p).established_bits,
                row.printed_est);
        }
        struct {
            int d, rf, rp;
            double printed;
        } hd_rows[] = {{3, 3, 13, 130.0}, {3, 4, 10, 135.4}, {3, 5, 5, 130.0},
                       {5, 3, 10, 149.0}, {5, 4, 10, 177.5}, {5, 5, 4, 163.3}};
        for (const auto& row : hd_rows) {
            auto p =
                make_params(AttackModel::hades, 64, 2 * row.rf + row.rp, row.rf, row.rp, 2, row.d);
            const std::string params = "hades,d=" + std::to_string(row.d) +
                                       ",rf=" + std::to_string(row.rf) +
                                       ",rp=" + std::to_string(row.rp);
            add("comparison", params, "groebner", estimate_attack(p).kappa_bits, row.printed);
            add("comparison", params, "established", estimate_established(p).established_bits,
                row.printed);
        }
        struct {
            int d, r;
            double printed_gb;
            double printed_crf;
            double printed_erf;
        } g_rows[] = {{3, 10, 48.6, 51.9, 61.4},    {3, 25, 130.0, 194.5, 204.0},
                      {3, 50, 266.7, 432.3, 441.8}, {5, 10, 63.5, 78.4, 92.4},
                      {5, 25, 170.5, 287.4, 301.3}, {5, 50, 350.0, 635.7, 649.6}};
        for (const auto& row : g_rows) {
            const std::string params =
                "gmimc,d=" + std::to_string(row.d) + ",r=" + std::to_string(row.r) + ",n=3";
            auto perf = make_params(AttackModel::gmimc_erf, 64, row.r, 0, 0, 3, row.d);
            auto pcrf = make_params(AttackModel::gmimc_crf, 64, row.r, 0, 0, 3, row.d);
            add("comparison", params, "groebner", estimate_attack(perf).kappa_bits, row.printed_gb);
            add("comparison", params + ",crf", "established",
                estimate_established(pcrf).established_bits, row.printed_crf);
            add("comparison", params + ",erf", "established",
                estimate_established(perf).established_bits, row.printed_erf);
        }
    }
    return cells;
}

std::string tables_csv(const std::string& which) {
    std::ostringstream os;
    os << "table,params,column,kappa_computed,kappa_reference,delta,note\n";
    os.setf(std::ios::fixed);
    for (const auto& c : reference_tables()) {
        if (which != "all" && c.table != which) continue;
        os.precision(1);
        os << c.table << "," << c.params << "," << c.column << "," << c.computed << ","
           << c.reference << ",";
        os.precision(2);
        os << std::abs(c.computed - c.reference) << ",";
        os << (c.note.empty() ? "" : c.note) << "\n";
    }
    return os.str();
}

}
