#include "gblab/genpos.hpp"

#include <algorithm>

#include "gblab/errors.hpp"

namespace gblab {

std::string verdict_name(GenericityVerdict v) {
    switch (v) {
        case GenericityVerdict::generic: return "generic";
        case GenericityVerdict::not_generic: return "not_generic";
        case GenericityVerdict::indeterminate: return "indeterminate";
    }
    throw Error("unreachable");
}

std::string method_name(GenericityMethod m) {
    switch (m) {
        case GenericityMethod::pure_powers: return "pure_powers";
        case GenericityMethod::substitution_procedure: return "substitution_procedure";
        case GenericityMethod::spn_structure: return "spn_structure";
        case GenericityMethod::rank_criterion: return "rank_criterion";
    }
    throw Error("unreachable");
}

std::string feistel_variant_name(FeistelVariant v) {
    switch (v) {
        case FeistelVariant::erf: return "erf";
        case FeistelVariant::strong_crf: return "strong_crf";
        case FeistelVariant::crf: return "crf";
    }
    throw Error("unreachable");
}

FeistelVariant feistel_variant_from_name(const std::string& name) {
    for (FeistelVariant v : {FeistelVariant::erf, FeistelVariant::strong_crf, FeistelVariant::crf}) {
        if (feistel_variant_name(v) == name) return v;
    }
    throw ParseError("unknown feistel variant '" + name + "'");
}

PolySystem top_component_system(const PolySystem& sys) {
    PolySystem out = sys;
    out.polys.clear();
    for (const auto& p : sys.polys) {
        if (p.is_zero()) continue;
        out.polys.push_back(top_component(p));
    }
    out.provenance.note += "; top components";
    return out;
}

namespace {

// missing pure-power variable if any, otherwise the per-variable witnesses
std::optional<size_t> pure_power_witnesses(const std::vector<Polynomial>& gb_polys,
                                           const TermOrder& order, size_t nvars,
                                           std::vector<std::pair<size_t, uint32_t>>& witnesses) {
    std::vector<uint32_t> cap(nvars, 0);
    for (const auto& p : gb_polys) {
        const Monomial& m = p.leading(order).mono;
        size_t nz = 0, var = 0;
        for (size_t v = 0; v < nvars; ++v) {
            if (m.exps[v] != 0) {
                ++nz;
                var = v;
            }
        }
        if (nz == 1 && (cap[var] == 0 || m.exps[var] < cap[var])) cap[var] = m.exps[var];
    }
    for (size_t v = 0; v < nvars; ++v) {
        if (cap[v] == 0) return v;
        witnesses.emplace_back(v, cap[v]);
    }
    return std::nullopt;
}

}  // namespace

GenericityReport is_generic_coordinates(const PolySystem& sys, GenericityMethod method,
                                        size_t pair_budget) {
    sys.validate();
    GenericityReport rep;
    rep.method = method;
    if (method == GenericityMethod::spn_structure) return spn_genericity(sys);
    if (method == GenericityMethod::rank_criterion) {
        throw PreconditionError("is_generic_coordinates: rank criterion works on a CipherSpec");
    }

    const TermOrder order{TermOrderKind::drl, sys.ring};
    const size_t n = sys.ring->nvars();

    // precondition check with the small oracle: non-trivial and
    // zero-dimensional, otherwise the equivalences do not apply
    GroebnerBasis gb = buchberger(sys.polys, order, pair_budget);
    if (gb.polys.size() == 1 && gb.polys.front().degree() == 0) {
        rep.notes = "trivial ideal (1), preconditions fail";
        return rep;
    }
    if (!quotient_dimension(gb).finite) {
        rep.notes = "system is not zero-dimensional, preconditions fail";
        return rep;
    }

    PolySystem tops = top_component_system(sys);
    if (method == GenericityMethod::pure_powers) {
        GroebnerBasis gbt = buchberger(tops.polys, order, pair_budget);
        auto missing = pure_power_witnesses(gbt.polys, order, n, rep.pure_powers);
        if (!missing) {
            rep.verdict = GenericityVerdict::generic;
            return rep;
        }
        rep.pure_powers.clear();
        rep.verdict = GenericityVerdict::not_generic;
        rep.stalled_variable = *missing;
        rep.notes = "variable " + sys.ring->variables()[*missing] +
                    " has no pure power in the top-component ideal";
        return rep;
    }

    // substitution procedure: repeatedly pick a generator that has become a
    // pure power and set its variable to zero
    std::vector<Polynomial> work = tops.polys;
    std::vector<bool> killed(n, false);
    bool progress = true;
    while (progress) {
        progress = false;
        for (const auto& p : work) {
            if (p.is_zero() || p.nterms() != 1) continue;
            const Monomial& m = p.terms().front().mono;
            size_t nz = 0, var = 0;
            for (size_t v = 0; v < n; ++v) {
                if (m.exps[v] != 0) {
                    ++nz;
                    var = v;
                }
            }
            if (nz != 1 || killed[var]) continue;
            killed[var] = true;
            rep.pure_powers.emplace_back(var, m.exps[var]);
            for (auto& g : work) {
                g = g.substitute(var, Polynomial::zero(sys.ring));
            }
            progress = true;
            break;
        }
    }
    for (size_t v = 0; v < n; ++v) {
        if (!killed[v]) {
            rep.stalled_variable = v;
            rep.pure_powers.clear();
            rep.notes = "substitution stalls at variable " + sys.ring->variables()[v];
            return rep;  // indeterminate: single generators stopped providing powers
        }
    }
    rep.verdict = GenericityVerdict::generic;
    std::sort(rep.pure_powers.begin(), rep.pure_powers.end());
    return rep;
}

namespace {

// echelonize one round block over the coefficient matrix of its monomials;
// returns the leading monomials of the reduced rows
std::vector<Monomial> block_leading_monomials(const std::vector<Polynomial>& block,
                                              const TermOrder& order) {
    std::vector<Monomial> cols;
    for (const auto& p : block) {
        for (const auto& t : p.terms()) cols.push_back(t.mono);
    }
    std::sort(cols.begin(), cols.end(), [&](const Monomial& a, const Monomial& b) {
        return order.compare(a, b) > 0;
    });
    cols.erase(std::unique(cols.begin(), cols.end()), cols.end());

    const auto& field = *block.front().ring()->field();
    std::vector<std::vector<mpz_class>> rows(block.size(),
                                             std::vector<mpz_class>(cols.size(), 0));
    for (size_t i = 0; i < block.size(); ++i) {
        for (const auto& t : block[i].terms()) {
            const size_t j = size_t(std::lower_bound(cols.begin(), cols.end(), t.mono,
                                                     [&](const Monomial& a, const Monomial& b) {
                                                         return order.compare(a, b) > 0;
                                                     }) -
                                    cols.begin());
            rows[i][j] = t.coeff;
        }
    }
    std::vector<Monomial> lms;
    size_t rank = 0;
    for (size_t col = 0; col < cols.size() && rank < rows.size(); ++col) {
        size_t pivot = rows.size();
        for (size_t i = rank; i < rows.size(); ++i) {
            if (rows[i][col] != 0) {
                pivot = i;
                break;
            }
        }
        if (pivot == rows.size()) continue;
        std::swap(rows[rank], rows[pivot]);
        const mpz_class inv = field.inv(rows[rank][col]);
        for (size_t j = col; j < cols.size(); ++j) rows[rank][j] = field.mul(rows[rank][j], inv);
        for (size_t i = 0; i < rows.size(); ++i) {
            if (i == rank || rows[i][col] == 0) continue;
            const mpz_class f = rows[i][col];
            for (size_t j = col; j < cols.size(); ++j) {
                rows[i][j] = field.sub(rows[i][j], field.mul(f, rows[rank][j]));
            }
        }
        lms.push_back(cols[col]);
        ++rank;
    }
    return lms;
}

}  // namespace

GenericityReport spn_genericity(const PolySystem& sys) {
    sys.validate();
    GenericityReport rep;
    rep.method = GenericityMethod::spn_structure;
    const auto& blocks = sys.provenance.round_blocks;
    if (blocks.empty()) {
        rep.notes = "system has no round-block structure";
        return rep;
    }
    const TermOrder order{sys.ring->order(), sys.ring};
    const size_t n = sys.ring->nvars();
    std::vector<uint32_t> power(n, 0);

    for (size_t bi = 0; bi < blocks.size(); ++bi) {
        const auto [b, e] = blocks[bi];
        std::vector<Polynomial> block(sys.polys.begin() + long(b), sys.polys.begin() + long(e));
        auto lms = block_leading_monomials(block, order);
        if (lms.size() != block.size()) {
            rep.notes = "round block " + std::to_string(bi + 1) + " is linearly dependent";
            return rep;
        }
        for (const auto& m : lms) {
            size_t nz = 0, var = 0;
            for (size_t v = 0; v < n; ++v) {
                if (m.exps[v] != 0) {
                    ++nz;
                    var = v;
                }
            }
            if (nz != 1 || power[var] != 0) {
                rep.notes = "round block " + std::to_string(bi + 1) +
                            " does not expose fresh pure-power leading monomials";
                return rep;
            }
            power[var] = m.exps[var];
            // first round must be fully nonlinear in the key variables
            if (bi == 0 && (sys.roles[var].kind != VariableRole::Kind::key || m.exps[var] < 2)) {
                rep.stalled_variable = var;
                rep.notes = "first round is not a full substitution layer of degree > 1";
                return rep;
            }
        }
    }
    for (size_t v = 0; v < n; ++v) {
        if (power[v] == 0) {
            rep.stalled_variable = v;
            rep.notes = "variable " + sys.ring->variables()[v] + " gets no pure power";
            return rep;
        }
        rep.pure_powers.emplace_back(v, power[v]);
    }
    rep.verdict = GenericityVerdict::generic;
    return rep;
}

namespace {

// strong contracting round layer: branch j gains x_{j+1}^d
PolySystem build_strong_crf_system(const CipherInstance& inst) {
    const auto& spec = inst.spec;
    const size_t n = size_t(spec.branches);
    const int r = spec.rounds;
    std::vector<std::string> vars;
    for (int i = 1; i < r; ++i) {
        for (size_t j = 1; j <= n; ++j) {
            vars.push_back("x" + std::to_string(j) + "_" + std::to_string(i));
        }
    }
    for (size_t j = 1; j <= n; ++j) vars.push_back("y" + std::to_string(j));
    RingPtr ring = make_ring(vars, inst.field, TermOrderKind::drl);
    const size_t key_base = size_t(r - 1) * n;
    const uint32_t d = uint32_t(spec.exponent);

    PolySystem sys;
    sys.ring = ring;
    for (int i = 1; i < r; ++i) {
        for (size_t j = 1; j <= n; ++j) {
            sys.roles.push_back({VariableRole::Kind::state, i, int(j), -1});
        }
    }
    for (size_t j = 1; j <= n; ++j) sys.roles.push_back({VariableRole::Kind::key, -1, int(j), -1});

    auto vars_of_round = [&](int i) {
        std::vector<Polynomial> s;
        for (size_t j = 0; j < n; ++j) {
            s.push_back(i == 0 ? Polynomial::variable(ring, key_base + j)
                               : Polynomial::variable(ring, size_t(i - 1) * n + j));
        }
        return s;
    };
    for (int i = 1; i <= r; ++i) {
        std::vector<Polynomial> in = vars_of_round(i - 1);  // whitening: p + y, constants drop
        std::vector<Polynomial> layered = in;
        for (size_t j = 0; j + 1 < n; ++j) layered[j] = layered[j] + in[j + 1].pow(d);
        std::vector<Polynomial> mixed;
        for (size_t row = 0; row < n; ++row) {
            Polynomial acc = Polynomial::zero(ring);
            for (size_t col = 0; col < n; ++col) {
                acc = acc + layered[col].scaled(inst.layers[size_t(i - 1)][row][col]);
            }
            mixed.push_back(acc);
        }
        const size_t begin = sys.polys.size();
        auto ki = vars_of_round(0);  // master key every round
        for (size_t j = 0; j < n; ++j) {
            Polynomial f = mixed[j] + ki[j];
            if (i < r) f = f - Polynomial::variable(ring, size_t(i - 1) * n + j);
            sys.polys.push_back(f);
        }
        sys.provenance.round_blocks.emplace_back(begin, sys.polys.size());
    }
    sys.provenance.builder = "strong_crf_criterion_model";
    sys.provenance.spec = inst.spec;
    return sys;
}

}  // namespace

GenericityReport feistel_rank_criterion(const CipherSpec& spec, FeistelVariant variant) {
    GenericityReport rep;
    rep.method = GenericityMethod::rank_criterion;
    if (spec.key_schedule != KeyScheduleKind::none &&
        spec.key_schedule != KeyScheduleKind::affine) {
        throw PreconditionError("feistel_rank_criterion: unsupported key schedule");
    }
    switch (variant) {
        case FeistelVariant::erf:
            if (spec.family != CipherFamily::gmimc_erf) {
                throw PreconditionError("feistel_rank_criterion: erf variant needs gmimc_erf");
            }
            break;
        case FeistelVariant::crf:
            if (spec.family != CipherFamily::gmimc_crf) {
                throw PreconditionError("feistel_rank_criterion: crf variant needs gmimc_crf");
            }
            break;
        case FeistelVariant::strong_crf:
            if (spec.family != CipherFamily::gmimc_erf && spec.family != CipherFamily::gmimc_crf) {
                throw PreconditionError("feistel_rank_criterion: needs a gmimc family");
            }
            if (spec.key_schedule != KeyScheduleKind::none) {
                throw PreconditionError(
                    "feistel_rank_criterion: strong_crf supports only the empty key schedule");
            }
            break;
    }
    const CipherInstance inst = resolve_spec(spec);
    const size_t n = size_t(spec.branches);
    const int r = spec.rounds;
    const auto& field = *inst.field;

    // symbolic system with dummy plain/ciphertext (constants cancel in the
    // top components), then the ideal-preserving transform of the criterion
    PolySystem sys;
    if (variant == FeistelVariant::strong_crf) {
        sys = build_strong_crf_system(inst);
    } else {
        std::vector<mpz_class> zeros(n, 0);
        sys = build_gmimc_system(inst, zeros, zeros);
        sys = variant == FeistelVariant::erf ? gmimc_erf_transform(sys) : spn_transform(sys);
    }

    const size_t nv = sys.ring->nvars();
    std::vector<Polynomial> tops;
    for (const auto& p : sys.polys) tops.push_back(top_component(p));

    // phase 1: nonlinear single-term pure powers force their variable to
    // zero; the degree-one information is kept for the rank matrix so the
    // required rank matches the criterion statement
    std::vector<bool> killed(nv, false);
    bool progress = true;
    while (progress) {
        progress = false;
        for (auto& p : tops) {
            if (p.is_zero() || p.nterms() != 1 || p.degree() < 2) continue;
            const Monomial& m = p.terms().front().mono;
            size_t nz = 0, var = 0;
            for (size_t v = 0; v < nv; ++v) {
                if (m.exps[v] != 0) {
                    ++nz;
                    var = v;
                }
            }
            if (nz != 1 || killed[var]) continue;
            killed[var] = true;
            for (auto& g : tops) g = g.substitute(var, Polynomial::zero(sys.ring));
            progress = true;
            break;
        }
    }

    // phase 2: surviving linear forms; for the contracting family also the
    // substitution-layer arguments, whose d-th powers sit in the radical
    std::vector<size_t> survivors;
    std::vector<size_t> col_of(nv, SIZE_MAX);
    for (size_t v = 0; v < nv; ++v) {
        if (!killed[v]) {
            col_of[v] = survivors.size();
            survivors.push_back(v);
        }
    }
    Matrix rows;
    auto add_row = [&](const Polynomial& linear) {
        std::vector<mpz_class> row(survivors.size(), 0);
        bool nonzero = false;
        for (const auto& t : linear.terms()) {
            if (t.mono.degree == 0) continue;
            size_t var = 0;
            while (t.mono.exps[var] == 0) ++var;
            if (killed[var]) continue;
            row[col_of[var]] = field.add(row[col_of[var]], t.coeff);
            nonzero = true;
        }
        if (nonzero) rows.push_back(std::move(row));
    };
    for (const auto& p : tops) {
        if (!p.is_zero() && p.degree() == 1) add_row(p);
    }
    if (variant == FeistelVariant::erf && spec.key_schedule == KeyScheduleKind::affine) {
        // whitening enters the expanding function through the key schedule:
        // its linearised argument joins the system instead of a plain kill
        Polynomial arg = Polynomial::zero(sys.ring);
        for (size_t t = 0; t < n; ++t) {
            arg = arg + Polynomial::variable(sys.ring, size_t(r - 1) * n + t)
                            .scaled(inst.key_matrices[0][n - 1][t]);
        }
        add_row(arg);
    }
    if (variant == FeistelVariant::crf) {
        for (int i = 1; i <= r; ++i) {
            Polynomial arg = Polynomial::zero(sys.ring);
            for (size_t j = 1; j < n; ++j) {
                Polynomial branch =
                    i == 1 ? Polynomial::variable(sys.ring, size_t(r - 1) * n + j)
                           : Polynomial::variable(sys.ring, size_t(i - 2) * n + j);
                arg = arg + branch;
            }
            // with an affine key schedule the whitening key is a linear image
            if (i == 1 && spec.key_schedule == KeyScheduleKind::affine) {
                arg = Polynomial::zero(sys.ring);
                for (size_t j = 1; j < n; ++j) {
                    for (size_t t = 0; t < n; ++t) {
                        arg = arg + Polynomial::variable(sys.ring, size_t(r - 1) * n + t)
                                        .scaled(inst.key_matrices[0][j][t]);
                    }
                }
            }
            add_row(arg);
        }
    }

    rep.rank_required = survivors.size();
    rep.rank_achieved = matrix_rank_field(rows, field);
    if (rep.rank_achieved == rep.rank_required) {
        rep.verdict = GenericityVerdict::generic;
        rep.notes = "rank " + std::to_string(rep.rank_achieved) + " of " +
                    std::to_string(rep.rank_required) + " surviving variables";
    } else {
        rep.verdict = GenericityVerdict::indeterminate;
        rep.notes = "criterion rank " + std::to_string(rep.rank_achieved) + " below " +
                    std::to_string(rep.rank_required) + ", certificate not established";
    }
    return rep;
}

std::vector<uint64_t> hilbert_series_quotient(std::vector<Monomial> gens, size_t nvars) {
    // minimalize
    std::vector<Monomial> min_gens;
    std::sort(gens.begin(), gens.end(),
              [](const Monomial& a, const Monomial& b) { return a.degree < b.degree; });
    for (const auto& g : gens) {
        bool redundant = false;
        for (const auto& kept : min_gens) {
            if (kept.divides(g)) {
                redundant = true;
                break;
            }
        }
        if (!redundant) min_gens.push_back(g);
    }
    for (const auto& g : min_gens) {
        if (g.degree == 0) return {};  // unit ideal, zero quotient
    }
    // pure-power base case
    size_t split_var = SIZE_MAX;
    const Monomial* split_gen = nullptr;
    std::vector<uint32_t> cap(nvars, 0);
    for (const auto& g : min_gens) {
        size_t nz = 0, var = 0;
        for (size_t v = 0; v < nvars; ++v) {
            if (g.exps[v] != 0) {
                ++nz;
                var = v;
            }
        }
        if (nz == 1) {
            if (cap[var] == 0 || g.exps[var] < cap[var]) cap[var] = g.exps[var];
        } else if (!split_gen) {
            split_gen = &g;
        }
    }
    if (!split_gen) {
        for (size_t v = 0; v < nvars; ++v) {
            if (cap[v] == 0) {
                throw PreconditionError("hilbert_series_quotient: ideal is not zero-dimensional");
            }
        }
        std::vector<uint64_t> h = {1};
        for (size_t v = 0; v < nvars; ++v) {
            std::vector<uint64_t> next(h.size() + cap[v] - 1, 0);
            for (size_t i = 0; i < h.size(); ++i) {
                for (uint32_t e = 0; e < cap[v]; ++e) next[i + e] += h[i];
            }
            h = std::move(next);
        }
        return h;
    }
    for (size_t v = 0; v < nvars; ++v) {
        if (split_gen->exps[v] != 0) {
            split_var = v;
            break;
        }
    }
    // HS(P/I) = HS(P/(I + (v))) + t * HS(P/(I : v))
    std::vector<Monomial> plus = min_gens;
    plus.push_back(Monomial::variable(nvars, split_var));
    std::vector<Monomial> colon;
    for (const auto& g : min_gens) {
        Monomial m = g;
        if (m.exps[split_var] > 0) {
            --m.exps[split_var];
            --m.degree;
        }
        colon.push_back(std::move(m));
    }
    std::vector<uint64_t> a = hilbert_series_quotient(std::move(plus), nvars);
    std::vector<uint64_t> b = hilbert_series_quotient(std::move(colon), nvars);
    std::vector<uint64_t> h(std::max(a.size(), b.size() + 1), 0);
    for (size_t i = 0; i < a.size(); ++i) h[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) h[i + 1] += b[i];
    while (!h.empty() && h.back() == 0) h.pop_back();
    return h;
}

RegularityDegree degree_of_regularity(const PolySystem& sys, size_t pair_budget) {
    sys.validate();
    PolySystem tops = top_component_system(sys);
    const TermOrder order{TermOrderKind::drl, sys.ring};
    GroebnerBasis gb = buchberger(tops.polys, order, pair_budget);
    std::vector<Monomial> lms;
    for (const auto& p : gb.polys) lms.push_back(p.leading(order).mono);
    // zero-dimensionality of the monomial ideal decides finiteness
    std::vector<bool> has_power(sys.ring->nvars(), false);
    for (const auto& m : lms) {
        size_t nz = 0, var = 0;
        for (size_t v = 0; v < m.nvars(); ++v) {
            if (m.exps[v] != 0) {
                ++nz;
                var = v;
            }
        }
        if (nz == 1) has_power[var] = true;
        if (m.degree == 0) return {true, 0};
    }
    for (size_t v = 0; v < sys.ring->nvars(); ++v) {
        if (!has_power[v]) return {false, 0};
    }
    auto h = hilbert_series_quotient(lms, sys.ring->nvars());
    return {true, int(h.size())};
}

}
