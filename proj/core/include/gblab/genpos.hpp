#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gblab/groebner.hpp"
#include "gblab/systems.hpp"

namespace gblab {

enum class GenericityVerdict { generic, not_generic, indeterminate };
enum class GenericityMethod { pure_powers, substitution_procedure, spn_structure, rank_criterion };

std::string verdict_name(GenericityVerdict v);
std::string method_name(GenericityMethod m);

struct GenericityReport {
    GenericityVerdict verdict = GenericityVerdict::indeterminate;
    GenericityMethod method = GenericityMethod::pure_powers;
    // verdict == generic: one pure-power witness per variable
    std::vector<std::pair<size_t, uint32_t>> pure_powers;
    std::optional<size_t> stalled_variable;
    size_t rank_achieved = 0;
    size_t rank_required = 0;
    std::string notes;
};

// Highest-degree components of the generators (zero generators dropped).
PolySystem top_component_system(const PolySystem& sys);

// Certificate search for the homogenized system being in generic
// coordinates. Preconditions (non-trivial, zero-dimensional) are verified
// with the Buchberger oracle; failing them yields `indeterminate`.
GenericityReport is_generic_coordinates(const PolySystem& sys, GenericityMethod method,
                                        size_t pair_budget = 200000);

// Structural certificate for SPN systems: per-round blocks, echelonized,
// must expose pure-power leading monomials covering every variable, with a
// full nonlinear first round.
GenericityReport spn_genericity(const PolySystem& sys);

enum class FeistelVariant { erf, strong_crf, crf };

std::string feistel_variant_name(FeistelVariant v);
FeistelVariant feistel_variant_from_name(const std::string& name);

// Rank certificate for generalized Feistel networks: builds the linear
// system left over after the pure-power eliminations on the transformed top
// components and compares its rank against the number of surviving
// variables. Sufficient condition only; failure reports `indeterminate`.
GenericityReport feistel_rank_criterion(const CipherSpec& spec, FeistelVariant variant);

struct RegularityDegree {
    bool finite = false;
    int value = 0;
};

// min { d : every degree-d monomial lies in the top-component ideal },
// via the Hilbert series of the initial monomial ideal.
RegularityDegree degree_of_regularity(const PolySystem& sys, size_t pair_budget = 200000);

// Hilbert series coefficients of P/I for a zero-dimensional monomial ideal
// (recursive variable splitting). Throws PreconditionError when the ideal is
// not zero-dimensional.
std::vector<uint64_t> hilbert_series_quotient(std::vector<Monomial> gens, size_t nvars);

}
