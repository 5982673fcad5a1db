#include "gblab/groebner.hpp"

#include <algorithm>
#include <set>

#include "gblab/errors.hpp"

namespace gblab {

namespace {

std::vector<Polynomial> drop_others(const std::vector<Polynomial>& polys, size_t skip) {
    std::vector<Polynomial> out;
    out.reserve(polys.size() - 1);
    for (size_t i = 0; i < polys.size(); ++i) {
        if (i != skip) out.push_back(polys[i]);
    }
    return out;
}

struct PairKey {
    uint32_t lcm_degree;
    size_t i, j;
    bool operator<(const PairKey& o) const {
        if (lcm_degree != o.lcm_degree) return lcm_degree < o.lcm_degree;
        if (i != o.i) return i < o.i;
        return j < o.j;
    }
};

}  // namespace

bool is_groebner(const std::vector<Polynomial>& polys, const TermOrder& order) {
    std::vector<Polynomial> basis;
    for (const auto& p : polys) {
        if (p.is_zero()) throw PreconditionError("is_groebner: zero polynomial");
        basis.push_back(p);
    }
    std::vector<PairKey> pairs;
    for (size_t i = 0; i < basis.size(); ++i) {
        for (size_t j = i + 1; j < basis.size(); ++j) {
            const auto& mi = basis[i].leading(order).mono;
            const auto& mj = basis[j].leading(order).mono;
            if (Monomial::coprime(mi, mj)) continue;  // Buchberger's first criterion
            pairs.push_back(PairKey{Monomial::lcm(mi, mj).degree, i, j});
        }
    }
    std::sort(pairs.begin(), pairs.end());
    for (const auto& pk : pairs) {
        Polynomial s = s_polynomial(basis[pk.i], basis[pk.j], order);
        if (!divide(s, basis, order).remainder.is_zero()) return false;
    }
    return true;
}

std::vector<Polynomial> interreduce(std::vector<Polynomial> polys, const TermOrder& order) {
    std::vector<Polynomial> work;
    for (auto& p : polys) {
        if (!p.is_zero()) work.push_back(p.monic());
    }
    // canonical processing order
    std::sort(work.begin(), work.end(), [&](const Polynomial& a, const Polynomial& b) {
        return order.compare(a.leading(order).mono, b.leading(order).mono) < 0;
    });
    // minimize: keep only leading monomials not divisible by an earlier kept one
    std::vector<Polynomial> minimal;
    for (auto& p : work) {
        const Monomial& lm = p.leading(order).mono;
        bool redundant = false;
        for (const auto& kept : minimal) {
            if (kept.leading(order).mono.divides(lm)) {
                redundant = true;
                break;
            }
        }
        if (!redundant) minimal.push_back(std::move(p));
    }
    // tail-reduce; leading monomials are pairwise non-divisible, so only
    // tails change and one pass per polynomial is enough
    for (size_t i = 0; i < minimal.size(); ++i) {
        Polynomial r = divide(minimal[i], drop_others(minimal, i), order).remainder;
        minimal[i] = r.monic();
    }
    return minimal;
}

Polynomial normal_form(const Polynomial& f, const std::vector<Polynomial>& basis,
                       const TermOrder& order) {
    return divide(f, basis, order).remainder;
}

Polynomial normal_form(const Polynomial& f, const GroebnerBasis& gb) {
    return normal_form(f, gb.polys, gb.term_order());
}

bool reduces_to_zero(const Polynomial& f, const std::vector<Polynomial>& basis,
                     const TermOrder& order) {
    return divide(f, basis, order).remainder.is_zero();
}

GroebnerBasis buchberger(const std::vector<Polynomial>& polys, const TermOrder& order,
                         size_t pair_budget) {
    std::vector<Polynomial> basis;
    for (const auto& p : polys) {
        if (!p.is_zero()) basis.push_back(p.monic());
    }
    if (basis.empty()) throw PreconditionError("buchberger: empty input");

    std::set<PairKey> queue;
    auto push_pairs = [&](size_t j) {
        for (size_t i = 0; i < j; ++i) {
            const auto& mi = basis[i].leading(order).mono;
            const auto& mj = basis[j].leading(order).mono;
            if (Monomial::coprime(mi, mj)) continue;
            queue.insert(PairKey{Monomial::lcm(mi, mj).degree, i, j});
        }
    };
    for (size_t j = 1; j < basis.size(); ++j) push_pairs(j);

    size_t processed = 0;
    while (!queue.empty()) {
        if (++processed > pair_budget) {
            throw BudgetError("buchberger: pair budget exceeded (" +
                              std::to_string(pair_budget) + ")");
        }
        const PairKey pk = *queue.begin();
        queue.erase(queue.begin());
        Polynomial s = s_polynomial(basis[pk.i], basis[pk.j], order);
        Polynomial r = divide(s, basis, order).remainder;
        if (r.is_zero()) continue;
        basis.push_back(r.monic());
        push_pairs(basis.size() - 1);
    }

    GroebnerBasis gb;
    gb.ring = basis.front().ring();
    gb.order = order.kind;
    gb.source = GroebnerBasis::Source::buchberger_oracle;
    gb.polys = interreduce(std::move(basis), order);
    // internal consistency: inputs are members of the computed basis' ideal
    for (const auto& p : polys) {
        if (!p.is_zero() && !reduces_to_zero(p, gb.polys, order)) {
            throw Error("buchberger: input does not reduce to zero against the result");
        }
    }
    return gb;
}

bool ideal_equal(const GroebnerBasis& a, const GroebnerBasis& b) {
    for (const auto& p : a.polys) {
        if (!reduces_to_zero(p, b.polys, b.term_order())) return false;
    }
    for (const auto& p : b.polys) {
        if (!reduces_to_zero(p, a.polys, a.term_order())) return false;
    }
    return true;
}

namespace {

// Groebner-basis decision for the extracted candidate. The candidate alone
// passing the Buchberger criterion is not enough: it must also generate the
// whole input ideal, which the generator membership check pins down.
bool candidate_achieves(const std::vector<Polynomial>& candidate,
                        const std::vector<Polynomial>& generators, const TermOrder& order) {
    if (candidate.empty()) return false;
    for (const auto& g : generators) {
        if (!reduces_to_zero(g, candidate, order)) return false;
    }
    return is_groebner(candidate, order);
}

bool word_sized(const PolySystem& sys) {
    const auto& f = *sys.ring->field();
    return f.fits_u64() && f.modulus_u64() < (uint64_t(1) << 16);
}

std::vector<Polynomial> dense_candidate(const PolySystem& sys, const TermOrder& order, int degree) {
    MacaulayMatrix m = macaulay_build(sys.polys, order, degree, MacaulayMode::inhomogeneous);
    return interreduce(row_space_polys(rref(m)), order);
}

}  // namespace

LinearAlgebraGb linear_algebra_gb(const PolySystem& sys, TermOrderKind order, int degree,
                                  const Budget& budget) {
    const TermOrder ord{order, sys.ring};
    LinearAlgebraGb out;
    std::vector<Polynomial> candidate;
    if (order == TermOrderKind::drl && word_sized(sys)) {
        MacaulayScan scan(sys.polys, order);
        scan.advance_to(degree, budget);
        out.rank = scan.rank();
        candidate = interreduce(scan.basis_polys(), ord);
    } else {
        candidate = dense_candidate(sys, ord, degree);
        out.rank = candidate.size();
    }
    out.achieved = candidate_achieves(candidate, sys.polys, ord);
    if (out.achieved) {
        GroebnerBasis gb;
        gb.ring = sys.ring;
        gb.order = order;
        gb.source = GroebnerBasis::Source::macaulay;
        gb.macaulay_degree = degree;
        gb.polys = std::move(candidate);
        out.basis = std::move(gb);
    }
    return out;
}

SolvingDegreeResult solving_degree(const PolySystem& sys, TermOrderKind order, int d_max,
                                   const Budget& budget) {
    if (sys.polys.empty()) throw PreconditionError("solving_degree: empty system");
    int d0 = 0;
    for (const auto& p : sys.polys) d0 = std::max(d0, p.degree());
    if (d_max < d0) throw PreconditionError("solving_degree: d_max below the input degree");

    const TermOrder ord{order, sys.ring};
    SolvingDegreeResult res;
    const bool fast = order == TermOrderKind::drl && word_sized(sys);
    std::optional<MacaulayScan> scan;
    if (fast) scan.emplace(sys.polys, order);

    for (int d = d0; d <= d_max; ++d) {
        budget.check("solving_degree");
        std::vector<Polynomial> candidate;
        if (fast) {
            scan->advance_to(d, budget);
            candidate = interreduce(scan->basis_polys(), ord);
        } else {
            candidate = dense_candidate(sys, ord, d);
        }
        const bool achieved = candidate_achieves(candidate, sys.polys, ord);
        res.profile.emplace_back(d, achieved);
        if (achieved) {
            res.status = SolvingDegreeResult::Status::found;
            res.degree = d;
            GroebnerBasis gb;
            gb.ring = sys.ring;
            gb.order = order;
            gb.source = GroebnerBasis::Source::macaulay;
            gb.macaulay_degree = d;
            gb.polys = std::move(candidate);
            res.basis = std::move(gb);
            return res;
        }
    }
    res.status = SolvingDegreeResult::Status::exhausted;
    return res;
}

QuotientDimension quotient_dimension(const GroebnerBasis& gb) {
    const size_t n = gb.ring->nvars();
    std::vector<Monomial> lms;
    lms.reserve(gb.polys.size());
    const TermOrder ord = gb.term_order();
    for (const auto& p : gb.polys) lms.push_back(p.leading(ord).mono);

    // zero-dimensional iff every variable carries a pure-power leading monomial
    std::vector<uint32_t> cap(n, 0);
    for (const auto& m : lms) {
        size_t nz = 0, var = 0;
        for (size_t i = 0; i < n; ++i) {
            if (m.exps[i] != 0) {
                ++nz;
                var = i;
            }
        }
        if (m.degree == 0) return {true, 0};  // unit ideal
        if (nz == 1) {
            if (cap[var] == 0 || m.exps[var] < cap[var]) cap[var] = m.exps[var];
        }
    }
    for (size_t i = 0; i < n; ++i) {
        if (cap[i] == 0) return {false, 0};
    }

    uint64_t count = 0;
    std::vector<uint32_t> cur(n, 0);
    // staircase walk bounded by the pure-power caps
    auto divisible = [&](const Monomial& m) {
        for (const auto& lm : lms) {
            if (lm.divides(m)) return true;
        }
        return false;
    };
    size_t pos = 0;
    while (true) {
        Monomial m{cur};
        if (!divisible(m)) ++count;
        // next tuple; skip subtrees once the current prefix is divisible
        pos = 0;
        while (pos < n) {
            ++cur[pos];
            if (cur[pos] < cap[pos]) break;
            cur[pos] = 0;
            ++pos;
        }
        if (pos == n) break;
    }
    return {true, count};
}

}
