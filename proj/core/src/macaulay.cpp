#include "gblab/macaulay.hpp"

#include <algorithm>
#include <atomic>
#include <ostream>
#include <thread>

#include "gblab/errors.hpp"

namespace gblab {

namespace {

void gen_monomials(size_t nvars, uint32_t d, size_t var, std::vector<uint32_t>& cur,
                   std::vector<Monomial>& out) {
    if (var + 1 == nvars) {
        cur[var] = d;
        out.emplace_back(cur);
        cur[var] = 0;
        return;
    }
    for (uint32_t e = 0; e <= d; ++e) {
        cur[var] = e;
        gen_monomials(nvars, d - e, var + 1, cur, out);
    }
    cur[var] = 0;
}

uint64_t inv_mod_u64(uint64_t a, uint64_t q) {
    int64_t t = 0, new_t = 1;
    int64_t r = int64_t(q), new_r = int64_t(a % q);
    while (new_r != 0) {
        int64_t quot = r / new_r;
        t -= quot * new_t;
        std::swap(t, new_t);
        r -= quot * new_r;
        std::swap(r, new_r);
    }
    if (r != 1) throw PreconditionError("inv_mod_u64: not invertible");
    if (t < 0) t += int64_t(q);
    return uint64_t(t);
}

unsigned g_max_threads = 1;

}  // namespace

void set_max_threads(unsigned n) { g_max_threads = n == 0 ? 1 : n; }
unsigned max_threads() { return g_max_threads; }

std::vector<Monomial> monomials_of_degree(size_t nvars, uint32_t d) {
    std::vector<Monomial> out;
    if (nvars == 0) {
        if (d == 0) out.push_back(Monomial(std::vector<uint32_t>{}));
        return out;
    }
    std::vector<uint32_t> cur(nvars, 0);
    gen_monomials(nvars, d, 0, cur, out);
    return out;
}

std::vector<Monomial> monomials_up_to_degree(size_t nvars, uint32_t d) {
    std::vector<Monomial> out;
    for (uint32_t e = 0; e <= d; ++e) {
        auto ms = monomials_of_degree(nvars, e);
        out.insert(out.end(), std::make_move_iterator(ms.begin()),
                   std::make_move_iterator(ms.end()));
    }
    return out;
}

void sort_monomials_descending(std::vector<Monomial>& ms, TermOrderKind kind) {
    std::sort(ms.begin(), ms.end(), [kind](const Monomial& a, const Monomial& b) {
        return order_compare(kind, a, b) > 0;
    });
}

MacaulayMatrix macaulay_build(const std::vector<Polynomial>& generators, const TermOrder& order,
                              int degree_bound, MacaulayMode mode) {
    if (generators.empty()) throw PreconditionError("macaulay_build: no generators");
    const RingPtr ring = generators.front().ring();
    for (const auto& g : generators) {
        if (g.is_zero()) throw PreconditionError("macaulay_build: zero generator");
        if (!(*g.ring() == *ring)) throw PreconditionError("macaulay_build: ring mismatch");
        if (mode == MacaulayMode::homogeneous && !g.is_homogeneous()) {
            throw PreconditionError("macaulay_build: homogeneous mode requires homogeneous input");
        }
    }
    if (degree_bound < 0) throw PreconditionError("macaulay_build: negative degree bound");

    MacaulayMatrix m;
    m.ring = ring;
    m.order = order.kind;
    m.degree_bound = degree_bound;
    m.mode = mode;
    const size_t n = ring->nvars();
    m.columns = mode == MacaulayMode::homogeneous
                    ? monomials_of_degree(n, uint32_t(degree_bound))
                    : monomials_up_to_degree(n, uint32_t(degree_bound));
    sort_monomials_descending(m.columns, order.kind);

    std::unordered_map<Monomial, uint32_t, MonomialHash> col_index;
    col_index.reserve(m.columns.size() * 2);
    for (uint32_t i = 0; i < m.columns.size(); ++i) col_index.emplace(m.columns[i], i);

    for (size_t gi = 0; gi < generators.size(); ++gi) {
        const Polynomial& g = generators[gi];
        const int k = degree_bound - g.degree();
        if (k < 0) continue;
        std::vector<Monomial> mults;
        if (mode == MacaulayMode::homogeneous) {
            mults = monomials_of_degree(n, uint32_t(k));
        } else {
            mults = monomials_up_to_degree(n, uint32_t(k));
        }
        sort_monomials_descending(mults, order.kind);
        for (const auto& s : mults) {
            std::vector<uint64_t> row(m.columns.size(), 0);
            for (const auto& t : g.terms()) {
                const Monomial col = s * t.mono;
                row[col_index.at(col)] = t.coeff.get_ui();
            }
            m.labels.push_back(MacaulayRowLabel{s, gi});
            m.rows.push_back(std::move(row));
        }
    }
    if (!ring->field()->fits_u64() || ring->field()->modulus_u64() >= (uint64_t(1) << 16)) {
        throw PreconditionError("macaulay_build: modulus exceeds the desk-scale word bound");
    }
    return m;
}

MacaulayMatrix rref(const MacaulayMatrix& m) {
    MacaulayMatrix r = m;
    const uint64_t q = m.ring->field()->modulus_u64();
    const size_t ncols = r.ncols();
    auto& rows = r.rows;
    size_t rank = 0;
    for (size_t col = 0; col < ncols && rank < rows.size(); ++col) {
        size_t pivot = rows.size();
        for (size_t i = rank; i < rows.size(); ++i) {
            if (rows[i][col] % q != 0) {
                pivot = i;
                break;
            }
        }
        if (pivot == rows.size()) continue;
        std::swap(rows[rank], rows[pivot]);
        auto& prow = rows[rank];
        const uint64_t inv = inv_mod_u64(prow[col] % q, q);
        for (size_t j = col; j < ncols; ++j) prow[j] = (prow[j] % q) * inv % q;

        auto eliminate = [&](size_t ibegin, size_t iend) {
            for (size_t i = ibegin; i < iend; ++i) {
                if (i == rank) continue;
                auto& row = rows[i];
                const uint64_t f = row[col] % q;
                if (f == 0) continue;
                const uint64_t g = q - f;
                for (size_t j = col; j < ncols; ++j) {
                    row[j] = (row[j] + g * prow[j]) % q;
                }
            }
        };
        const unsigned nt = std::min<unsigned>(max_threads(), 8);
        if (nt <= 1 || rows.size() < 64) {
            eliminate(0, rows.size());
        } else {
            std::vector<std::thread> pool;
            const size_t chunk = (rows.size() + nt - 1) / nt;
            for (unsigned t = 0; t < nt; ++t) {
                const size_t b = t * chunk;
                const size_t e = std::min(rows.size(), b + chunk);
                if (b < e) pool.emplace_back(eliminate, b, e);
            }
            for (auto& th : pool) th.join();
        }
        ++rank;
    }
    for (auto& row : rows) {
        for (auto& v : row) v %= q;
    }
    rows.erase(std::remove_if(rows.begin(), rows.end(),
                              [](const std::vector<uint64_t>& row) {
                                  return std::all_of(row.begin(), row.end(),
                                                     [](uint64_t v) { return v == 0; });
                              }),
               rows.end());
    // deterministic order: by leading (leftmost) column
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
        size_t ia = 0, ib = 0;
        while (ia < a.size() && a[ia] == 0) ++ia;
        while (ib < b.size() && b[ib] == 0) ++ib;
        return ia < ib;
    });
    r.labels.clear();
    r.reduced = true;
    return r;
}

uint64_t matrix_rank(const MacaulayMatrix& m) {
    if (m.reduced) return m.nrows();
    return rref(m).nrows();
}

std::vector<Polynomial> row_space_polys(const MacaulayMatrix& m) {
    if (!m.reduced) throw PreconditionError("row_space_polys: matrix not in rref");
    std::vector<Polynomial> out;
    out.reserve(m.nrows());
    for (const auto& row : m.rows) {
        std::vector<Term> ts;
        for (size_t j = 0; j < row.size(); ++j) {
            if (row[j] != 0) ts.push_back(Term{m.columns[j], mpz_class(row[j])});
        }
        out.emplace_back(m.ring, std::move(ts));
    }
    return out;
}

void write_dump(const MacaulayMatrix& m, std::ostream& os) {
    os << "macaulay d=" << m.degree_bound
       << " mode=" << (m.mode == MacaulayMode::homogeneous ? "homogeneous" : "inhomogeneous")
       << " rows=" << m.nrows() << " cols=" << m.ncols()
       << " modulus=" << m.ring->field()->modulus().get_str()
       << (m.reduced ? " reduced" : "") << "\n";
    for (size_t i = 0; i < m.labels.size(); ++i) {
        const auto& lab = m.labels[i];
        os << "row " << i << " gen " << lab.generator << " mult "
           << Polynomial::from_monomial(m.ring, lab.multiplier).str() << "\n";
    }
    for (size_t i = 0; i < m.nrows(); ++i) {
        for (size_t j = 0; j < m.ncols(); ++j) {
            if (m.rows[i][j] != 0) os << i << " " << j << " " << m.rows[i][j] << "\n";
        }
    }
}

MacaulayScan::MacaulayScan(std::vector<Polynomial> generators, TermOrderKind order)
    : order_(order), gens_(std::move(generators)) {
    if (gens_.empty()) throw PreconditionError("MacaulayScan: no generators");
    if (order_ != TermOrderKind::drl) {
        throw PreconditionError("MacaulayScan: requires a degree-compatible order (DRL)");
    }
    ring_ = gens_.front().ring();
    for (const auto& g : gens_) {
        if (g.is_zero()) throw PreconditionError("MacaulayScan: zero generator");
        if (!(*g.ring() == *ring_)) throw PreconditionError("MacaulayScan: ring mismatch");
    }
    const auto& field = *ring_->field();
    if (!field.fits_u64() || field.modulus_u64() >= (uint64_t(1) << 16)) {
        throw PreconditionError("MacaulayScan: modulus exceeds the desk-scale word bound");
    }
    q_ = field.modulus_u64();
    min_gen_degree_ = gens_.front().degree();
    for (const auto& g : gens_) min_gen_degree_ = std::min(min_gen_degree_, g.degree());
}

uint32_t MacaulayScan::column_index(const Monomial& m) const {
    auto it = col_index_.find(m);
    if (it == col_index_.end()) throw Error("MacaulayScan: column not materialised");
    return it->second;
}

void MacaulayScan::extend_columns(uint32_t d) {
    auto ms = monomials_of_degree(ring_->nvars(), d);
    sort_monomials_descending(ms, order_);
    // append in ascending order so column indexes are stable as d grows
    for (auto it = ms.rbegin(); it != ms.rend(); ++it) {
        col_index_.emplace(*it, uint32_t(cols_.size()));
        cols_.push_back(std::move(*it));
    }
    pivot_of_col_.resize(cols_.size(), -1);
}

int64_t MacaulayScan::reduce_scratch(std::vector<uint64_t>& scratch, int64_t top) const {
    while (top >= 0) {
        const uint64_t v = scratch[size_t(top)] % q_;
        if (v == 0) {
            scratch[size_t(top)] = 0;
            --top;
            continue;
        }
        const int64_t pr = pivot_of_col_[size_t(top)];
        if (pr < 0) {
            scratch[size_t(top)] = v;
            return top;
        }
        const auto& row = pivot_rows_[size_t(pr)].coeffs;
        const uint64_t g = q_ - v;
        // row is monic at `top`; the accumulated values stay below 2^63
        // because each step adds < q^2 < 2^32 and there are < 2^31 steps
        for (size_t j = 0; j < row.size(); ++j) scratch[j] += g * row[j];
        scratch[size_t(top)] = 0;
        --top;
    }
    return -1;
}

bool MacaulayScan::insert_product(const Monomial& multiplier, const Polynomial& gen) {
    auto& scratch = scratch_;
    scratch.assign(cols_.size(), 0);
    int64_t top = -1;
    for (const auto& t : gen.terms()) {
        const uint32_t idx = column_index(multiplier * t.mono);
        scratch[idx] = t.coeff.get_ui();
        top = std::max(top, int64_t(idx));
    }
    top = reduce_scratch(scratch, top);
    if (top < 0) return false;
    PivotRow row;
    row.coeffs.resize(size_t(top) + 1);
    const uint64_t inv = inv_mod_u64(scratch[size_t(top)], q_);
    for (size_t j = 0; j <= size_t(top); ++j) {
        row.coeffs[j] = uint32_t((scratch[j] % q_) * inv % q_);
    }
    pivot_of_col_[size_t(top)] = int64_t(pivot_rows_.size());
    const uint32_t lm_degree = cols_[size_t(top)].degree;
    if (pivots_by_degree_.size() <= lm_degree) pivots_by_degree_.resize(lm_degree + 1, 0);
    ++pivots_by_degree_[lm_degree];
    pivot_rows_.push_back(std::move(row));
    return true;
}

void MacaulayScan::advance_to(int d, const Budget& budget) {
    if (degree_ < 0 && d >= 0) {
        for (uint32_t e = 0; e <= uint32_t(d); ++e) extend_columns(e);
    } else {
        for (int e = degree_ + 1; e <= d; ++e) extend_columns(uint32_t(e));
    }
    for (int e = std::max(degree_ + 1, 0); e <= d; ++e) {
        for (size_t gi = 0; gi < gens_.size(); ++gi) {
            const int k = e - gens_[gi].degree();
            if (k < 0) continue;
            auto mults = monomials_of_degree(ring_->nvars(), uint32_t(k));
            sort_monomials_descending(mults, order_);
            for (const auto& s : mults) {
                budget.check("MacaulayScan");
                insert_product(s, gens_[gi]);
            }
        }
    }
    degree_ = std::max(degree_, d);
}

bool MacaulayScan::reduces_to_zero(const Polynomial& f) const {
    if (f.is_zero()) return true;
    std::vector<uint64_t> scratch(cols_.size(), 0);
    int64_t top = -1;
    for (const auto& t : f.terms()) {
        auto it = col_index_.find(t.mono);
        if (it == col_index_.end()) return false;  // beyond the scanned degree
        scratch[it->second] = t.coeff.get_ui();
        top = std::max(top, int64_t(it->second));
    }
    return reduce_scratch(scratch, top) < 0;
}

size_t MacaulayScan::rank_degree_le(int e) const {
    size_t acc = 0;
    for (size_t d = 0; d < pivots_by_degree_.size() && int(d) <= e; ++d) {
        acc += pivots_by_degree_[d];
    }
    return acc;
}

std::vector<Polynomial> MacaulayScan::basis_polys() const {
    std::vector<std::pair<int64_t, const PivotRow*>> ordered;
    ordered.reserve(pivot_rows_.size());
    for (size_t c = 0; c < pivot_of_col_.size(); ++c) {
        if (pivot_of_col_[c] >= 0) {
            ordered.emplace_back(int64_t(c), &pivot_rows_[size_t(pivot_of_col_[c])]);
        }
    }
    std::sort(ordered.begin(), ordered.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
    std::vector<Polynomial> out;
    out.reserve(ordered.size());
    for (const auto& [c, row] : ordered) {
        std::vector<Term> ts;
        for (size_t j = 0; j < row->coeffs.size(); ++j) {
            if (row->coeffs[j] != 0) ts.push_back(Term{cols_[j], mpz_class(row->coeffs[j])});
        }
        out.emplace_back(ring_, std::move(ts));
    }
    return out;
}

std::vector<Monomial> MacaulayScan::leading_monomials() const {
    std::vector<Monomial> out;
    for (size_t c = pivot_of_col_.size(); c-- > 0;) {
        if (pivot_of_col_[c] >= 0) out.push_back(cols_[c]);
    }
    return out;
}

}
