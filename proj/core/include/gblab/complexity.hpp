#pragma once

#include <string>
#include <vector>

#include <gmpxx.h>

#include "gblab/systems.hpp"

namespace gblab {

// Sum of the l = min(nvars + 1, m) largest degrees minus l plus one.
int macaulay_bound(std::vector<int> degrees, int nvars);

// Bit-complexity of Gaussian elimination on the Macaulay matrices at solving
// degree d in n variables via the entropy approximation of the binomial
// coefficient; omega is the linear algebra constant.
double kappa_bits(int nvars, int degree, double omega = 2.0);

// smallest k with 3^k >= q
int ceil_log3(const mpz_class& q);
int ceil_log3_bits(double log2q);

enum class AttackModel {
    mimc_field_eq,
    mimc_two_plaintext,
    feistel,
    hash,
    hades,
    gmimc_erf,
    gmimc_crf,
};

std::string attack_model_name(AttackModel m);
AttackModel attack_model_from_name(const std::string& name);

struct AttackParams {
    AttackModel model = AttackModel::mimc_field_eq;
    double log2q = 64.0;  // field size in bits; only the field-equation
                          // attacks depend on it
    int rounds = 0;
    int rounds_full = 0;     // hades
    int rounds_partial = 0;  // hades
    int branches = 1;
    int exponent = 3;
};

AttackParams attack_params_from_spec(const CipherSpec& spec, AttackModel model);

struct ComplexityReport {
    std::string attack;
    int nvars = 0;
    int solving_degree_bound = 0;
    double omega = 2.0;
    double kappa_bits = 0.0;
    double quotient_dim_log2 = 0.0;
    double established_bits = -1.0;  // < 0 when not applicable
    std::string provenance;
};

// Groebner-complexity estimate of one attack: the per-attack solving-degree
// bound and variable count feed the kappa formula.
ComplexityReport estimate_attack(const AttackParams& p, double omega = 2.0);

// Established-cryptanalysis baseline (probabilistic change-of-order plus
// factoring/gcd work, or the designers' regularity-based estimates for the
// generalized Feistel family). Flagged approximate: composition recorded in
// the provenance string.
ComplexityReport estimate_established(const AttackParams& p, double omega = 2.0);

double quotient_dim_log2(const AttackParams& p);

struct TableCell {
    std::string table;
    std::string params;
    std::string column;  // "groebner" or "established"
    double computed = 0.0;
    double reference = 0.0;
    std::string note;  // nonempty when the reference value carries a caveat
};

// every numeric table cell, evaluated and paired with the reference value
std::vector<TableCell> reference_tables();

// CSV for one table ("mimc", "two_plaintext", "feistel", "hades", "gmimc",
// "comparison") or "all"
std::string tables_csv(const std::string& which);

}
