#include "gblab/degfall.hpp"

#include <algorithm>

#include "gblab/errors.hpp"

namespace gblab {

std::string construction_name(WitnessConstruction c) {
    switch (c) {
        case WitnessConstruction::mimc_field_eq: return "mimc_field_eq";
        case WitnessConstruction::mimc_remainder: return "mimc_remainder";
        case WitnessConstruction::feistel: return "feistel";
        case WitnessConstruction::hash: return "hash";
        case WitnessConstruction::conjecture: return "conjecture";
        case WitnessConstruction::generic_scan: return "generic_scan";
    }
    throw Error("unreachable");
}

WitnessConstruction construction_from_name(const std::string& name) {
    for (WitnessConstruction c :
         {WitnessConstruction::mimc_field_eq, WitnessConstruction::mimc_remainder,
          WitnessConstruction::feistel, WitnessConstruction::hash, WitnessConstruction::conjecture,
          WitnessConstruction::generic_scan}) {
        if (construction_name(c) == name) return c;
    }
    throw ParseError("unknown witness construction '" + name + "'");
}

MembershipResult membership_degree(const Polynomial& f, const PolySystem& sys,
                                   TermOrderKind order, int d_max, const Budget& budget,
                                   const GroebnerBasis* ideal_oracle) {
    MembershipResult res;
    if (f.is_zero()) {
        res.status = MembershipResult::Status::found;
        res.degree = 0;
        return res;
    }
    if (ideal_oracle && !normal_form(f, *ideal_oracle).is_zero()) {
        throw PreconditionError("membership_degree: polynomial is not in the ideal");
    }
    int d0 = sys.polys.front().degree();
    for (const auto& p : sys.polys) d0 = std::min(d0, p.degree());
    d0 = std::max(d0, f.degree());

    MacaulayScan scan(sys.polys, order);
    for (int d = d0; d <= d_max; ++d) {
        budget.check("membership_degree");
        scan.advance_to(d, budget);
        if (scan.reduces_to_zero(f)) {
            res.status = MembershipResult::Status::found;
            res.degree = d;
            return res;
        }
    }
    return res;
}

LastFallResult last_fall_degree(const PolySystem& sys, TermOrderKind order, int d_max,
                                const Budget& budget) {
    if (sys.polys.empty()) throw PreconditionError("last_fall_degree: empty system");
    int d0 = sys.polys.front().degree();
    for (const auto& p : sys.polys) d0 = std::min(d0, p.degree());

    LastFallResult res;
    res.scan_cap = d_max;
    MacaulayScan scan(sys.polys, order);
    size_t prev_rank = 0;
    for (int d = d0; d <= d_max; ++d) {
        budget.check("last_fall_degree");
        scan.advance_to(d, budget);
        // new basis elements of degree < d witness a fall at d
        if (scan.rank_degree_le(d - 1) > prev_rank) res.fall_degrees.push_back(d);
        prev_rank = scan.rank();
    }
    if (!res.fall_degrees.empty()) {
        res.status = LastFallResult::Status::found;
        res.degree = res.fall_degrees.back();
    } else {
        int dmax_gen = 0;
        for (const auto& p : sys.polys) dmax_gen = std::max(dmax_gen, p.degree());
        res.degree = dmax_gen;
    }
    return res;
}

namespace {

struct IteratedShape {
    std::vector<size_t> chain_vars;  // x_1 .. x_{n-1} ring indexes in chain order
    size_t key_var = 0;
    std::vector<int> degrees;        // d_1 .. d_n
    size_t chain_len = 0;            // number of chain polynomials n
};

// read off the univariate keyed iterated structure of sys.polys[0..n)
IteratedShape iterated_shape(const PolySystem& sys, size_t n_chain, const char* who) {
    IteratedShape shape;
    shape.chain_len = n_chain;
    const size_t nv = sys.ring->nvars();
    for (size_t v = 0; v < sys.roles.size(); ++v) {
        if (sys.roles[v].kind == VariableRole::Kind::key) shape.key_var = v;
    }
    for (size_t i = 0; i < n_chain; ++i) {
        const Polynomial& f = sys.polys[i];
        const int d = f.degree();
        if (d < 2) throw PreconditionError(std::string(who) + ": round degree below 2");
        shape.degrees.push_back(d);
        if (i + 1 < n_chain) {
            // output variable: the lone degree-one monomial of a fresh state
            size_t out = nv;
            for (const auto& t : f.terms()) {
                if (t.mono.degree == 1) {
                    size_t var = 0;
                    while (t.mono.exps[var] == 0) ++var;
                    if (var != shape.key_var &&
                        std::find(shape.chain_vars.begin(), shape.chain_vars.end(), var) ==
                            shape.chain_vars.end()) {
                        out = var;
                    }
                }
            }
            if (out == nv) throw PreconditionError(std::string(who) + ": chain output missing");
            shape.chain_vars.push_back(out);
        }
        if (i >= 1) {
            // pure power of the previous chain variable must be present
            const size_t in = shape.chain_vars[i - 1];
            if (f.coefficient(Monomial::variable(nv, in, uint32_t(d))) == 0) {
                throw PreconditionError(std::string(who) + ": missing pure input power in round " +
                                        std::to_string(i + 1));
            }
        }
    }
    return shape;
}

DegreeFallRecord confirm(DegreeFallRecord rec, const Polynomial& witness, const PolySystem& sys,
                         int predicted, int d_max, const Budget& budget,
                         const GroebnerBasis* oracle) {
    rec.witness = witness;
    rec.witness_degree = witness.degree();
    rec.predicted = predicted;
    auto mem = membership_degree(witness, sys, TermOrderKind::drl,
                                 std::max({predicted, witness.degree(), d_max}), budget, oracle);
    if (mem.status == MembershipResult::Status::found) {
        rec.fall_degree = mem.degree;
        rec.is_fall = mem.degree > rec.witness_degree;
        rec.confirmed = predicted >= 0 && mem.degree == predicted;
        if (!rec.confirmed && predicted >= 0) {
            rec.notes += "; measured fall degree " + std::to_string(mem.degree) +
                         " differs from the predicted " + std::to_string(predicted);
        }
    } else {
        rec.notes += "; membership scan exhausted without locating the witness";
    }
    return rec;
}

// the appended key field equation must close the system
const Polynomial& field_equation_poly(const PolySystem& sys, size_t key_var, const char* who) {
    const mpz_class& q = sys.ring->field()->modulus();
    if (!q.fits_ulong_p() || q.get_ui() > (1UL << 20)) {
        throw PreconditionError(std::string(who) + ": modulus too large for desk measurements");
    }
    const Polynomial& fe = sys.polys.back();
    const Polynomial expect = Polynomial::variable(sys.ring, key_var, uint32_t(q.get_ui())) -
                              Polynomial::variable(sys.ring, key_var);
    if (!(fe == expect)) {
        throw PreconditionError(std::string(who) + ": system must end with the key field equation");
    }
    return fe;
}

}  // namespace

DegreeFallRecord witness_mimc_field_eq(const PolySystem& sys, const Budget& budget) {
    sys.validate();
    DegreeFallRecord rec;
    rec.construction = WitnessConstruction::mimc_field_eq;
    const size_t n_chain = sys.polys.size() - 1;
    if (n_chain < 2) throw PreconditionError("witness_mimc_field_eq: need at least two rounds");
    IteratedShape shape = iterated_shape(sys, n_chain, "witness_mimc_field_eq");
    const mpz_class& q = sys.ring->field()->modulus();
    if (mpz_class(shape.degrees.front()) > q) {
        throw PreconditionError("witness_mimc_field_eq: d_1 exceeds the field size");
    }
    const Polynomial& fe = field_equation_poly(sys, shape.key_var, "witness_mimc_field_eq");

    // chain polynomials form a Groebner basis; oracle for the gates
    std::vector<Polynomial> chain(sys.polys.begin(), sys.polys.end() - 1);
    const TermOrder order{TermOrderKind::drl, sys.ring};
    if (!is_groebner(chain, order)) {
        throw PreconditionError("witness_mimc_field_eq: chain is not a Groebner basis");
    }
    if (normal_form(fe, chain, order).is_zero()) {
        throw PreconditionError("witness_mimc_field_eq: field equation already in the chain ideal");
    }
    // root-count gate on the univariate of the LEX basis
    PolySystem chain_sys = sys;
    chain_sys.polys = chain;
    ShapeBasis lex = lex_gb_iterated(chain_sys);
    RootsResult roots = field_gcd_roots(lex.univariate, *sys.ring->field());
    if (int(roots.roots.size()) >= shape.degrees.front()) {
        throw PreconditionError("witness_mimc_field_eq: univariate has at least d_1 roots in F_q");
    }

    Monomial gamma = Monomial::one(sys.ring->nvars());
    int predicted = int(q.get_ui());
    for (size_t i = 0; i + 1 < shape.chain_len; ++i) {
        gamma = gamma * Monomial::variable(sys.ring->nvars(), shape.chain_vars[i],
                                           uint32_t(shape.degrees[i + 1] - 1));
        predicted += shape.degrees[i + 1] - 1;
    }
    Polynomial s = s_polynomial(sys.polys.front(), fe, order).times_monomial(gamma);

    GroebnerBasis oracle = buchberger(sys.polys, order);
    rec.notes = "s = x^gamma * S(f_1, key field equation)";
    return confirm(std::move(rec), s, sys, predicted, predicted + 2, budget, &oracle);
}

DegreeFallRecord witness_mimc_remainder(const PolySystem& sys, const Budget& budget) {
    sys.validate();
    DegreeFallRecord rec;
    rec.construction = WitnessConstruction::mimc_remainder;
    const size_t n_chain = sys.polys.size() - 1;
    if (n_chain < 2) throw PreconditionError("witness_mimc_remainder: need at least two rounds");
    IteratedShape shape = iterated_shape(sys, n_chain, "witness_mimc_remainder");
    const Polynomial& fe = field_equation_poly(sys, shape.key_var, "witness_mimc_remainder");

    std::vector<Polynomial> chain(sys.polys.begin(), sys.polys.end() - 1);
    const TermOrder order{TermOrderKind::drl, sys.ring};
    if (!is_groebner(chain, order)) {
        throw PreconditionError("witness_mimc_remainder: chain is not a Groebner basis");
    }
    Polynomial r_y = normal_form(fe, chain, order);
    if (r_y.is_zero()) {
        throw PreconditionError("witness_mimc_remainder: field equation already in the chain ideal");
    }
    // gate: the top of the remainder is a single monomial
    // y^{d_1 - 1} x_1^{d_2 - 1} ... x_k^{d_{k+1} - 1}
    Polynomial top = top_component(r_y);
    if (top.nterms() != 1) {
        throw PreconditionError("witness_mimc_remainder: remainder top is not a monomial");
    }
    const Monomial& tm = top.leading_monomial();
    if (tm.exps[shape.key_var] != uint32_t(shape.degrees.front() - 1)) {
        throw PreconditionError("witness_mimc_remainder: remainder top lacks y^{d_1 - 1}");
    }
    size_t k = 0;
    for (; k + 1 < shape.chain_len; ++k) {
        const uint32_t e = tm.exps[shape.chain_vars[k]];
        if (e == 0) break;
        if (e != uint32_t(shape.degrees[k + 1] - 1)) {
            throw PreconditionError("witness_mimc_remainder: remainder top has unexpected shape");
        }
    }
    if (k + 2 > shape.chain_len) {
        throw PreconditionError("witness_mimc_remainder: remainder top touches the last round");
    }
    const size_t j = k + 1;  // first multiplier index, 1-based chain position

    // gcd gate against prod_{i <= j} d_i - 1
    PolySystem chain_sys = sys;
    chain_sys.polys = chain;
    ShapeBasis lex = lex_gb_iterated(chain_sys);
    RootsResult roots = field_gcd_roots(lex.univariate, *sys.ring->field());
    uint64_t bound = 1;
    for (size_t i = 0; i < j; ++i) bound *= uint64_t(shape.degrees[i]);
    if (uint64_t(roots.gcd_degree) + 1 >= bound) {
        throw PreconditionError("witness_mimc_remainder: gcd degree gate fails");
    }

    Monomial gamma = Monomial::one(sys.ring->nvars());
    int predicted = r_y.degree() + 1;
    for (size_t m = j - 1; m + 1 < shape.chain_len; ++m) {
        gamma = gamma * Monomial::variable(sys.ring->nvars(), shape.chain_vars[m],
                                           uint32_t(shape.degrees[m + 1] - 1));
        predicted += shape.degrees[m + 1] - 1;
    }
    Polynomial s = s_polynomial(sys.polys.front(), r_y, order).times_monomial(gamma);

    GroebnerBasis oracle = buchberger(sys.polys, order);
    rec.notes = "s = x^gamma * S(f_1, remainder of the key field equation); predicted value is "
                "the lower bound of the construction, membership may close higher";
    const int cap = int(sys.ring->field()->modulus().get_ui()) + 2 * int(shape.chain_len) + 1;
    return confirm(std::move(rec), s, sys, predicted, cap, budget, &oracle);
}

DegreeFallRecord witness_feistel(const PolySystem& sys, const Budget& budget) {
    sys.validate();
    DegreeFallRecord rec;
    rec.construction = WitnessConstruction::feistel;
    if (!sys.provenance.spec || (sys.provenance.spec->family != CipherFamily::feistel_mimc)) {
        throw PreconditionError("witness_feistel: needs a full feistel_mimc system");
    }
    const int r = sys.provenance.spec->rounds;
    const RingPtr ring = sys.ring;
    const auto& field = *ring->field();
    const TermOrder order{TermOrderKind::drl, ring};

    // downsized chain (validates degree and monomial hypotheses)
    PolySystem down = downsized_drl_feistel(sys);
    std::vector<int> degrees;
    for (const auto& p : down.polys) degrees.push_back(p.degree());
    const int d1 = degrees.front();
    const int dn = degrees.back();
    const size_t key = ring->index_of("y");
    if (d1 > dn) throw PreconditionError("witness_feistel: d_1 exceeds d_n");
    if (sys.polys[size_t(2 * (r - 1))].coefficient(
            Monomial::variable(ring->nvars(), key, uint32_t(dn))) == 0) {
        throw PreconditionError("witness_feistel: last round lacks the key power monomial");
    }
    // gcd gate between the branch univariates
    {
        ShapeBasis lex = lex_gb_feistel(sys);
        const Polynomial& frn = sys.polys.back();
        const mpz_class cr = field.neg(frn.coefficient(Monomial::one(ring->nvars())));
        UniPoly right = lex.linear_part.back().second -
                        UniPoly::constant(ring->field(), cr);
        UniPoly g = UniPoly::gcd(lex.univariate, right);
        if (g.degree() >= d1) {
            throw PreconditionError("witness_feistel: branch gcd degree gate fails");
        }
    }

    // t: last chain polynomial with the surviving left state replaced by the
    // right ciphertext block (adds a multiple of the removed linear poly)
    const Polynomial& frn = sys.polys.back();
    const mpz_class cr = field.neg(frn.coefficient(Monomial::one(ring->nvars())));
    Polynomial chain_last = sys.polys[size_t(2 * (r - 1))];
    // apply the downsizing substitutions inside the full ring
    const mpz_class pl = sys.polys[1].coefficient(Monomial::one(ring->nvars()));
    if (auto xr1 = ring->find("xR1")) {
        chain_last = chain_last.substitute(*xr1, Polynomial::constant(ring, pl));
    }
    for (int jj = 1; jj + 1 < r; ++jj) {
        chain_last = chain_last.substitute(
            ring->index_of("xL" + std::to_string(jj)),
            Polynomial::variable(ring, ring->index_of("xR" + std::to_string(jj + 1))));
    }
    Polynomial t = chain_last.substitute(ring->index_of("xL" + std::to_string(r - 1)),
                                         Polynomial::constant(ring, cr));
    Polynomial chain_first = sys.polys[0];
    if (r >= 3) {
        chain_first = chain_first.substitute(
            ring->index_of("xL1"), Polynomial::variable(ring, ring->index_of("xR2")));
    }

    Monomial gamma = Monomial::one(ring->nvars());
    int predicted = dn;
    for (int i = 2; i < r; ++i) {
        gamma = gamma * Monomial::variable(ring->nvars(), ring->index_of("xR" + std::to_string(i)),
                                           uint32_t(degrees[size_t(i - 1)] - 1));
        predicted += degrees[size_t(i - 1)] - 1;
    }
    Polynomial s = s_polynomial(t, chain_first, order).times_monomial(gamma);

    GroebnerBasis oracle = buchberger(sys.polys, order);
    rec.notes = "s = x^gamma * S(t, first round polynomial)";
    return confirm(std::move(rec), s, sys, predicted, predicted + 2, budget, &oracle);
}

DegreeFallRecord witness_hash(const PolySystem& sys, const Budget& budget) {
    sys.validate();
    DegreeFallRecord rec;
    rec.construction = WitnessConstruction::hash;
    if (!sys.provenance.spec || sys.provenance.spec->family != CipherFamily::feistel_hash) {
        throw PreconditionError("witness_hash: needs a feistel_hash system");
    }
    const int r = sys.provenance.spec->rounds;
    if (r < 3) throw PreconditionError("witness_hash: needs at least three rounds");
    // reduced chain plus the output field equation
    PolySystem chain = sys;
    bool has_affine = false;
    for (const auto& p : chain.polys) has_affine |= (p.degree() == 1);
    if (has_affine) {
        throw PreconditionError("witness_hash: pass the reduced chain with the field equation");
    }
    const RingPtr ring = chain.ring;
    const size_t x2 = ring->index_of("x2");
    const size_t x1 = ring->index_of("x1");
    const mpz_class& q = ring->field()->modulus();

    const size_t n_chain = chain.polys.size() - 1;
    const Polynomial& fe2 = chain.polys.back();
    {
        const Polynomial expect = Polynomial::variable(ring, x2, uint32_t(q.get_ui())) -
                                  Polynomial::variable(ring, x2);
        if (!(fe2 == expect)) {
            throw PreconditionError("witness_hash: system must end with the x2 field equation");
        }
    }
    std::vector<Polynomial> chain_polys(chain.polys.begin(), chain.polys.end() - 1);
    const TermOrder order{TermOrderKind::drl, ring};
    if (!is_groebner(chain_polys, order)) {
        throw PreconditionError("witness_hash: chain is not a Groebner basis");
    }
    std::vector<int> degrees;
    for (const auto& p : chain_polys) degrees.push_back(p.degree());

    // root gate on the closing univariate (in the output variable)
    {
        PolySystem only_chain = chain;
        only_chain.polys = chain_polys;
        std::vector<size_t> rev(chain_polys.size());
        for (size_t i = 0; i < rev.size(); ++i) rev[i] = rev.size() - 1 - i;
        // reuse the key-recovery ordering: iterate backwards keyed on x2
        ShapeBasis shape = lex_gb_iterated(
            [&] {
                PolySystem reordered = only_chain;
                std::reverse(reordered.polys.begin(), reordered.polys.end());
                // mark x2 as the key for the chain engine
                for (auto& role : reordered.roles) {
                    if (role.kind == VariableRole::Kind::hash_output_unknown) {
                        role.kind = VariableRole::Kind::key;
                    } else if (role.kind == VariableRole::Kind::key) {
                        role.kind = VariableRole::Kind::state;
                    }
                }
                return reordered;
            }());
        RootsResult roots = field_gcd_roots(shape.univariate, *ring->field());
        if (int(roots.roots.size()) >= degrees.front()) {
            throw PreconditionError("witness_hash: closing univariate has too many roots");
        }
    }

    // head field equation x1^q - x1 lies in the ideal once x2 is confined
    Polynomial fe1 = Polynomial::variable(ring, x1, uint32_t(q.get_ui())) -
                     Polynomial::variable(ring, x1);
    GroebnerBasis oracle = buchberger(chain.polys, order);
    if (!normal_form(fe1, oracle).is_zero()) {
        throw PreconditionError("witness_hash: head field equation is not in the ideal");
    }

    // gamma runs over the chain states past the head
    Monomial gamma = Monomial::one(ring->nvars());
    int predicted = int(q.get_ui());
    for (size_t i = 1; i < n_chain; ++i) {
        size_t var;
        if (i + 1 < n_chain) {
            var = ring->index_of("xL" + std::to_string(i + 1));
        } else {
            var = x2;
        }
        gamma = gamma * Monomial::variable(ring->nvars(), var, uint32_t(degrees[i] - 1));
        predicted += degrees[i] - 1;
    }
    Polynomial s = s_polynomial(chain_polys.front(), fe1, order).times_monomial(gamma);

    rec.notes = "s = x^gamma * S(first chain polynomial, head field equation); measured on the "
                "substituted attack system, whose row space sits inside the full one, so the "
                "membership degree can exceed the predicted bound";
    const int cap = int(q.get_ui()) + 2 * r;
    return confirm(std::move(rec), s, chain, predicted, cap, budget, &oracle);
}

DegreeFallRecord conjecture_harness(const PolySystem& sys, const Budget& budget) {
    sys.validate();
    DegreeFallRecord rec;
    rec.construction = WitnessConstruction::conjecture;
    const size_t nv = sys.ring->nvars();
    if (sys.polys.size() < 2 * nv) {
        throw PreconditionError("conjecture_harness: expected the chain plus all field equations");
    }
    const size_t n_chain = sys.polys.size() - nv;
    IteratedShape shape = iterated_shape(sys, n_chain, "conjecture_harness");
    const mpz_class& q = sys.ring->field()->modulus();

    std::vector<Polynomial> chain(sys.polys.begin(), sys.polys.begin() + long(n_chain));
    const TermOrder order{TermOrderKind::drl, sys.ring};
    bool some_fe_outside = false;
    for (size_t i = n_chain; i < sys.polys.size(); ++i) {
        if (!normal_form(sys.polys[i], chain, order).is_zero()) some_fe_outside = true;
    }
    if (!some_fe_outside) {
        throw PreconditionError("conjecture_harness: field equations already inside the chain ideal");
    }
    PolySystem chain_sys = sys;
    chain_sys.polys = chain;
    ShapeBasis lex = lex_gb_iterated(chain_sys);
    RootsResult roots = field_gcd_roots(lex.univariate, *sys.ring->field());
    if (int(roots.roots.size()) >= shape.degrees.front()) {
        throw PreconditionError("conjecture_harness: univariate has at least d_1 roots in F_q");
    }

    Polynomial fe_key = Polynomial::variable(sys.ring, shape.key_var, uint32_t(q.get_ui())) -
                        Polynomial::variable(sys.ring, shape.key_var);
    Monomial gamma = Monomial::one(nv);
    for (size_t i = 0; i + 1 < shape.chain_len; ++i) {
        gamma = gamma * Monomial::variable(nv, shape.chain_vars[i], 1);
    }
    Polynomial s = s_polynomial(sys.polys.front(), fe_key, order).times_monomial(gamma);

    GroebnerBasis oracle = buchberger(sys.polys, order);
    rec.notes = "witness (prod of state variables) * S(f_1, key field equation)";
    const int cap = int(q.get_ui()) + 2 * int(shape.chain_len) + 1;
    DegreeFallRecord out = confirm(std::move(rec), s, sys, -1, cap, budget, &oracle);
    out.notes += out.is_fall ? "; instance supports the degree-fall statement"
                             : "; instance does not exhibit the degree fall";
    return out;
}

}
