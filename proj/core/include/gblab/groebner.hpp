#pragma once

#include <optional>
#include <vector>

#include "gblab/budget.hpp"
#include "gblab/macaulay.hpp"
#include "gblab/systems.hpp"

namespace gblab {

struct GroebnerBasis {
    enum class Source { buchberger_oracle, macaulay, asserted_by_structure };

    RingPtr ring;
    std::vector<Polynomial> polys;  // reduced: monic, mutually irreducible
    TermOrderKind order = TermOrderKind::drl;
    Source source = Source::buchberger_oracle;
    int macaulay_degree = -1;  // when source == macaulay

    TermOrder term_order() const { return TermOrder{order, ring}; }
};

// Buchberger criterion: every S-polynomial of a pair with non-coprime
// leading monomials reduces to zero modulo the set.
bool is_groebner(const std::vector<Polynomial>& polys, const TermOrder& order);

// Small-instance oracle; throws BudgetError once pair_budget reductions have
// been spent. Result is the reduced basis.
GroebnerBasis buchberger(const std::vector<Polynomial>& polys, const TermOrder& order,
                         size_t pair_budget = 200000);

// Minimize (drop leading monomials divisible by another) and tail-reduce;
// all monic. Deterministic.
std::vector<Polynomial> interreduce(std::vector<Polynomial> polys, const TermOrder& order);

Polynomial normal_form(const Polynomial& f, const std::vector<Polynomial>& basis,
                       const TermOrder& order);
Polynomial normal_form(const Polynomial& f, const GroebnerBasis& gb);

bool reduces_to_zero(const Polynomial& f, const std::vector<Polynomial>& basis,
                     const TermOrder& order);

// Same ideal: mutual reduction to zero (both inputs must be Groebner bases).
bool ideal_equal(const GroebnerBasis& a, const GroebnerBasis& b);

struct LinearAlgebraGb {
    bool achieved = false;
    std::optional<GroebnerBasis> basis;
    size_t rank = 0;
};

// Gaussian elimination on the degree-d Macaulay matrix, candidate extraction
// and full Buchberger verification. achieved == false is a normal outcome.
LinearAlgebraGb linear_algebra_gb(const PolySystem& sys, TermOrderKind order, int degree,
                                  const Budget& budget = Budget::none());

struct SolvingDegreeResult {
    enum class Status { found, exhausted };
    Status status = Status::exhausted;
    int degree = -1;
    std::vector<std::pair<int, bool>> profile;  // (degree, achieved)
    std::optional<GroebnerBasis> basis;
};

// Least d (scanning upward from the maximal input degree) at which the
// Macaulay matrix elimination yields a Groebner basis.
SolvingDegreeResult solving_degree(const PolySystem& sys, TermOrderKind order, int d_max,
                                   const Budget& budget = Budget::none());

struct QuotientDimension {
    bool finite = false;
    uint64_t dimension = 0;  // number of standard monomials when finite
};

QuotientDimension quotient_dimension(const GroebnerBasis& gb);

}
