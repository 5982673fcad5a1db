#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gblab/budget.hpp"
#include "gblab/groebner.hpp"
#include "gblab/macaulay.hpp"
#include "gblab/shapelex.hpp"
#include "gblab/systems.hpp"

namespace gblab {

enum class WitnessConstruction {
    mimc_field_eq,
    mimc_remainder,
    feistel,
    hash,
    conjecture,
    generic_scan,
};

std::string construction_name(WitnessConstruction c);
WitnessConstruction construction_from_name(const std::string& name);

struct DegreeFallRecord {
    Polynomial witness;
    int witness_degree = -1;
    int fall_degree = -1;   // measured membership degree
    int predicted = -1;     // -1 when the construction predicts no exact value
    bool is_fall = false;   // fall_degree > witness_degree
    bool confirmed = false; // predicted >= 0 and fall_degree == predicted
    WitnessConstruction construction = WitnessConstruction::generic_scan;
    std::string notes;
};

struct MembershipResult {
    enum class Status { found, exhausted };
    Status status = Status::exhausted;
    int degree = -1;
};

// Least scanned degree d with f in the row space of the degree-d Macaulay
// matrix. When an oracle basis is supplied, membership of f in the ideal is
// verified first and a PreconditionError raised if it fails.
MembershipResult membership_degree(const Polynomial& f, const PolySystem& sys,
                                   TermOrderKind order, int d_max,
                                   const Budget& budget = Budget::none(),
                                   const GroebnerBasis* ideal_oracle = nullptr);

struct LastFallResult {
    enum class Status { found, none_detected };
    Status status = Status::none_detected;
    int degree = -1;
    std::vector<int> fall_degrees;  // every degree where the row space gained
                                    // elements below the matrix degree
    int scan_cap = -1;
};

// Largest d where the degree-d row space still gains elements of degree
// < d, scanned up to d_max.
LastFallResult last_fall_degree(const PolySystem& sys, TermOrderKind order, int d_max,
                                const Budget& budget = Budget::none());

// Witness constructions. Each validates its hypothesis gates (raising
// PreconditionError when they fail), builds the multiplied S-polynomial
// witness, and confirms the predicted fall degree by membership scan.
DegreeFallRecord witness_mimc_field_eq(const PolySystem& sys_with_field_eq,
                                       const Budget& budget = Budget::none());
DegreeFallRecord witness_mimc_remainder(const PolySystem& sys_with_field_eq,
                                        const Budget& budget = Budget::none());
DegreeFallRecord witness_feistel(const PolySystem& full_feistel,
                                 const Budget& budget = Budget::none());
DegreeFallRecord witness_hash(const PolySystem& hash_chain_with_field_eq,
                              const Budget& budget = Budget::none());

// Empirical harness for the all-field-equations conjecture; records a
// per-instance verdict, never asserts the general statement.
DegreeFallRecord conjecture_harness(const PolySystem& sys_with_all_field_eqs,
                                    const Budget& budget = Budget::none());

}
