#pragma once

#include <cstdint>
#include <iosfwd>
#include <unordered_map>
#include <vector>

#include "gblab/budget.hpp"
#include "gblab/mpoly.hpp"

namespace gblab {

// All monomials of total degree exactly d (resp. at most d) in nvars
// variables, in no particular order.
std::vector<Monomial> monomials_of_degree(size_t nvars, uint32_t d);
std::vector<Monomial> monomials_up_to_degree(size_t nvars, uint32_t d);
void sort_monomials_descending(std::vector<Monomial>& ms, TermOrderKind kind);

// Bounds internal parallelism (dense elimination row chunks). Results are
// independent of the setting; pivots are chosen by position, never timing.
void set_max_threads(unsigned n);
unsigned max_threads();

enum class MacaulayMode { homogeneous, inhomogeneous };

struct MacaulayRowLabel {
    Monomial multiplier;
    size_t generator = 0;
};

// Degree-bounded coefficient matrix: columns are monomials of degree == d
// (homogeneous) or <= d, sorted descending under the order; rows are the
// products multiplier * generator within the degree budget.
struct MacaulayMatrix {
    RingPtr ring;
    TermOrderKind order = TermOrderKind::drl;
    int degree_bound = 0;
    MacaulayMode mode = MacaulayMode::inhomogeneous;
    bool reduced = false;  // true after rref; labels no longer apply

    std::vector<Monomial> columns;          // descending
    std::vector<MacaulayRowLabel> labels;   // one per row unless reduced
    std::vector<std::vector<uint64_t>> rows;  // canonical entries in [0, q)

    size_t nrows() const { return rows.size(); }
    size_t ncols() const { return columns.size(); }
};

MacaulayMatrix macaulay_build(const std::vector<Polynomial>& generators, const TermOrder& order,
                              int degree_bound, MacaulayMode mode);

// Reduced row echelon form; deterministic (leftmost pivot column, first row
// among candidates), zero rows dropped.
MacaulayMatrix rref(const MacaulayMatrix& m);

uint64_t matrix_rank(const MacaulayMatrix& m);

// One polynomial per nonzero row of a reduced matrix (triangular basis of
// the degree-bounded row space).
std::vector<Polynomial> row_space_polys(const MacaulayMatrix& m);

// Debug dump: header, row labels, CSR-style triples.
void write_dump(const MacaulayMatrix& m, std::ostream& os);

// Incremental echelon basis of the Macaulay row spaces W_{F,d} for growing
// d, specialised to degree-compatible (DRL) orders and word-sized moduli.
// Row space and leading monomials agree with rref(macaulay_build(...)) at
// every degree; only the basis representatives differ (echelon, not fully
// reduced). One scan serves a whole solving-degree / degree-fall sweep.
class MacaulayScan {
public:
    MacaulayScan(std::vector<Polynomial> generators, TermOrderKind order);

    const std::vector<Polynomial>& generators() const { return gens_; }
    int degree() const { return degree_; }
    size_t rank() const { return pivot_rows_.size(); }
    // Number of basis elements of total degree <= e.
    size_t rank_degree_le(int e) const;

    void advance_to(int d, const Budget& budget = Budget::none());

    // Reduce f against the current basis; true iff it vanishes, i.e.
    // f lies in W_{F, degree()} (degree-compatible order makes membership
    // below the current degree exact).
    bool reduces_to_zero(const Polynomial& f) const;

    // Pivot polynomials, leading monomials descending.
    std::vector<Polynomial> basis_polys() const;
    std::vector<Monomial> leading_monomials() const;

private:
    struct PivotRow {
        std::vector<uint32_t> coeffs;  // indices 0..lm, monic at lm
    };

    uint32_t column_index(const Monomial& m) const;
    void extend_columns(uint32_t d);
    // Reduce the scratch vector in place; returns the surviving pivot column
    // or -1 when it vanishes.
    int64_t reduce_scratch(std::vector<uint64_t>& scratch, int64_t top) const;
    bool insert_product(const Monomial& multiplier, const Polynomial& gen);

    RingPtr ring_;
    TermOrderKind order_;
    uint64_t q_ = 0;
    std::vector<Polynomial> gens_;
    int degree_ = -1;
    int min_gen_degree_ = 0;

    std::vector<Monomial> cols_;  // ascending under the order
    std::unordered_map<Monomial, uint32_t, MonomialHash> col_index_;
    std::vector<PivotRow> pivot_rows_;
    std::vector<int64_t> pivot_of_col_;
    std::vector<size_t> pivots_by_degree_;  // count per LM total degree
    mutable std::vector<uint64_t> scratch_;
};

}
