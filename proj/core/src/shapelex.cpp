#include "gblab/shapelex.hpp"

#include <algorithm>

#include "gblab/errors.hpp"

namespace gblab {

UniPoly::UniPoly(FieldPtr field, std::vector<mpz_class> coeffs)
    : field_(std::move(field)), c_(std::move(coeffs)) {
    for (auto& v : c_) v = field_->reduce(v);
    trim();
}

void UniPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

UniPoly UniPoly::constant(FieldPtr field, const mpz_class& c) {
    return UniPoly(std::move(field), {c});
}

UniPoly UniPoly::monomial(FieldPtr field, size_t e, const mpz_class& c) {
    std::vector<mpz_class> v(e + 1, 0);
    v[e] = c;
    return UniPoly(std::move(field), std::move(v));
}

const mpz_class& UniPoly::leading_coeff() const {
    if (c_.empty()) throw PreconditionError("UniPoly: leading coefficient of zero");
    return c_.back();
}

UniPoly UniPoly::operator+(const UniPoly& o) const {
    const auto& f = *field_;
    std::vector<mpz_class> v(std::max(c_.size(), o.c_.size()), 0);
    for (size_t i = 0; i < v.size(); ++i) v[i] = f.add(coeff(i), o.coeff(i));
    UniPoly r(field_);
    r.c_ = std::move(v);
    r.trim();
    return r;
}

UniPoly UniPoly::operator-(const UniPoly& o) const { return *this + (-o); }

UniPoly UniPoly::operator-() const {
    UniPoly r = *this;
    for (auto& v : r.c_) v = field_->neg(v);
    return r;
}

UniPoly UniPoly::operator*(const UniPoly& o) const {
    if (is_zero() || o.is_zero()) return UniPoly(field_);
    const auto& f = *field_;
    std::vector<mpz_class> v(c_.size() + o.c_.size() - 1, 0);
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (size_t j = 0; j < o.c_.size(); ++j) {
            v[i + j] = f.add(v[i + j], f.mul(c_[i], o.c_[j]));
        }
    }
    UniPoly r(field_);
    r.c_ = std::move(v);
    r.trim();
    return r;
}

UniPoly UniPoly::scaled(const mpz_class& s) const {
    const mpz_class sr = field_->reduce(s);
    UniPoly r(field_);
    if (sr == 0) return r;
    r.c_ = c_;
    for (auto& v : r.c_) v = field_->mul(v, sr);
    return r;
}

UniPoly UniPoly::monic() const { return scaled(field_->inv(leading_coeff())); }

UniPoly UniPoly::pow(uint32_t e) const {
    UniPoly r = UniPoly::constant(field_, 1);
    UniPoly base = *this;
    while (e) {
        if (e & 1) r = r * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return r;
}

bool UniPoly::operator==(const UniPoly& o) const { return c_ == o.c_; }

mpz_class UniPoly::evaluate(const mpz_class& x) const {
    const auto& f = *field_;
    mpz_class acc = 0;
    for (size_t i = c_.size(); i-- > 0;) acc = f.add(f.mul(acc, x), c_[i]);
    return acc;
}

std::pair<UniPoly, UniPoly> UniPoly::divrem(const UniPoly& a, const UniPoly& b) {
    if (b.is_zero()) throw PreconditionError("UniPoly: division by zero");
    const auto& f = *a.field_;
    if (a.degree() < b.degree()) return {UniPoly(a.field_), a};
    std::vector<mpz_class> rem = a.c_;
    const size_t db = size_t(b.degree());
    std::vector<mpz_class> quot(rem.size() - db, 0);
    const mpz_class lead_inv = f.inv(b.leading_coeff());
    for (size_t i = rem.size(); i-- > db;) {
        if (rem[i] == 0) continue;
        const mpz_class factor = f.mul(rem[i], lead_inv);
        const size_t shift = i - db;
        quot[shift] = factor;
        for (size_t j = 0; j <= db; ++j) {
            rem[shift + j] = f.sub(rem[shift + j], f.mul(factor, b.c_[j]));
        }
    }
    UniPoly q(a.field_), r(a.field_);
    q.c_ = std::move(quot);
    q.trim();
    r.c_ = std::move(rem);
    r.trim();
    return {q, r};
}

UniPoly UniPoly::gcd(UniPoly a, UniPoly b) {
    if (a.is_zero() && b.is_zero()) return a;
    while (!b.is_zero()) {
        auto [q, r] = divrem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

UniPoly UniPoly::power_mod(const UniPoly& base, const mpz_class& e, const UniPoly& m) {
    if (m.degree() < 1) throw PreconditionError("UniPoly: power_mod needs a nonconstant modulus");
    UniPoly acc = UniPoly::constant(base.field_, 1);
    UniPoly b = divrem(base, m).second;
    const size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (size_t i = bits; i-- > 0;) {
        acc = divrem(acc * acc, m).second;
        if (mpz_tstbit(e.get_mpz_t(), i)) acc = divrem(acc * b, m).second;
    }
    return acc;
}

Polynomial UniPoly::to_polynomial(const RingPtr& ring, size_t var) const {
    std::vector<Term> ts;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        ts.push_back(Term{Monomial::variable(ring->nvars(), var, uint32_t(i)), c_[i]});
    }
    return Polynomial(ring, std::move(ts));
}

UniPoly UniPoly::from_polynomial(const Polynomial& p, size_t var) {
    std::vector<mpz_class> c;
    for (const auto& t : p.terms()) {
        if (t.mono.degree != t.mono.exps[var]) {
            throw PreconditionError("UniPoly: polynomial is not univariate in the given variable");
        }
        const size_t e = t.mono.exps[var];
        if (c.size() <= e) c.resize(e + 1, 0);
        c[e] = t.coeff;
    }
    return UniPoly(p.ring()->field(), std::move(c));
}

namespace {

// Shared chain-substitution engine. Processes polynomials in the given
// order; each one (but the last) must define a fresh variable linearly with
// a constant coefficient, everything else already expressed in the key
// variable. The closing polynomial becomes the univariate.
ShapeBasis chain_shape_basis(const PolySystem& sys, const std::vector<size_t>& poly_order,
                             size_t key_var, uint64_t degree_budget, const char* who) {
    const RingPtr& ring = sys.ring;
    const FieldPtr& field = ring->field();
    const size_t n = ring->nvars();

    std::vector<bool> defined(n, false);
    std::vector<UniPoly> image(n, UniPoly(field));
    defined[key_var] = true;
    image[key_var] = UniPoly::monomial(field, 1);

    ShapeBasis shape;
    shape.ring = ring;
    shape.key_var = key_var;
    shape.provenance = who;

    for (size_t step = 0; step < poly_order.size(); ++step) {
        const Polynomial& p = sys.polys[poly_order[step]];
        const bool closing = step + 1 == poly_order.size();
        // locate the fresh variable
        size_t fresh = n;
        for (const auto& t : p.terms()) {
            for (size_t v = 0; v < n; ++v) {
                if (t.mono.exps[v] == 0 || defined[v]) continue;
                if (fresh == n) {
                    fresh = v;
                } else if (fresh != v) {
                    throw PreconditionError(std::string(who) +
                                            ": polynomial touches two undefined variables");
                }
            }
        }
        if (closing) {
            if (fresh != n) {
                throw PreconditionError(std::string(who) +
                                        ": closing polynomial has an undefined variable");
            }
        } else if (fresh == n) {
            throw PreconditionError(std::string(who) + ": no fresh variable to define");
        }

        UniPoly rest(field);
        mpz_class fresh_coeff = 0;
        for (const auto& t : p.terms()) {
            if (!closing && t.mono.exps[fresh] > 0) {
                if (t.mono.exps[fresh] != 1 || t.mono.degree != 1) {
                    throw PreconditionError(std::string(who) +
                                            ": defined variable does not occur linearly");
                }
                fresh_coeff = field->add(fresh_coeff, t.coeff);
                continue;
            }
            UniPoly term = UniPoly::constant(field, t.coeff);
            for (size_t v = 0; v < n; ++v) {
                if (t.mono.exps[v] == 0) continue;
                term = term * image[v].pow(t.mono.exps[v]);
            }
            rest = rest + term;
            if (rest.degree() > int(degree_budget)) {
                throw BudgetError(std::string(who) + ": univariate degree budget exceeded");
            }
        }
        if (closing) {
            shape.univariate = -rest;
        } else {
            if (fresh_coeff == 0) {
                throw PreconditionError(std::string(who) + ": degenerate chain polynomial");
            }
            image[fresh] = rest.scaled(field->neg(field->inv(fresh_coeff)));
            if (image[fresh].degree() < 1) {
                throw PreconditionError(std::string(who) +
                                        ": degenerate round polynomial (constant image)");
            }
            defined[fresh] = true;
            shape.linear_part.emplace_back(fresh, image[fresh]);
        }
    }
    return shape;
}

size_t find_key_var(const PolySystem& sys, const char* who) {
    size_t key = sys.ring->nvars();
    for (size_t v = 0; v < sys.roles.size(); ++v) {
        if (sys.roles[v].kind == VariableRole::Kind::key) {
            if (key != sys.ring->nvars()) {
                throw PreconditionError(std::string(who) + ": several key variables");
            }
            key = v;
        }
    }
    if (key == sys.ring->nvars()) {
        throw PreconditionError(std::string(who) + ": no key variable");
    }
    return key;
}

}  // namespace

ShapeBasis lex_gb_iterated(const PolySystem& sys, uint64_t degree_budget) {
    sys.validate();
    const size_t key = find_key_var(sys, "lex_gb_iterated");
    std::vector<size_t> order(sys.polys.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    return chain_shape_basis(sys, order, key, degree_budget, "lex_gb_iterated");
}

PolySystem downsized_drl_feistel(const PolySystem& sys) {
    sys.validate();
    if (!sys.provenance.spec || (sys.provenance.spec->family != CipherFamily::feistel_mimc &&
                                 sys.provenance.spec->family != CipherFamily::feistel_hash)) {
        throw PreconditionError("downsized_drl_feistel: not a Feistel system");
    }
    const int r = sys.provenance.spec->rounds;
    if (int(sys.polys.size()) != 2 * r) {
        throw PreconditionError("downsized_drl_feistel: unexpected system size");
    }
    const RingPtr ring = sys.ring;

    // round-polynomial hypotheses: deg >= 2 and the pure power of the
    // substituted input monomial must be present
    for (int i = 2; i <= r; ++i) {
        const Polynomial& fl = sys.polys[size_t(2 * (i - 1))];
        const int d = fl.degree();
        if (d < 2) throw PreconditionError("downsized_drl_feistel: round degree below 2");
        const size_t in_var = ring->index_of("xL" + std::to_string(i - 1));
        if (fl.coefficient(Monomial::variable(ring->nvars(), in_var, uint32_t(d))) == 0) {
            throw PreconditionError("downsized_drl_feistel: missing pure input power in round " +
                                    std::to_string(i));
        }
    }

    // substitutions from the linear right-branch polynomials
    // xR1 -> pL and xL_i -> xR_{i+1} (i = 1..r-2)
    const Polynomial& fr1 = sys.polys[1];
    const mpz_class pl = fr1.coefficient(Monomial::one(ring->nvars()));

    std::vector<std::string> vars;
    for (int i = 2; i < r; ++i) vars.push_back("xR" + std::to_string(i));
    vars.push_back("xL" + std::to_string(r - 1));
    vars.push_back("y");
    RingPtr target = make_ring(vars, ring->field(), TermOrderKind::drl);

    PolySystem out;
    out.ring = target;
    for (int i = 2; i < r; ++i) {
        out.roles.push_back({VariableRole::Kind::state, i, 2, -1});
    }
    out.roles.push_back({VariableRole::Kind::state, r - 1, 1, -1});
    out.roles.push_back({VariableRole::Kind::key, -1, -1, -1});

    for (int i = 1; i <= r; ++i) {
        Polynomial f = sys.polys[size_t(2 * (i - 1))];
        if (auto xr1 = ring->find("xR1")) {
            f = f.substitute(*xr1, Polynomial::constant(ring, pl));
        }
        for (int j = 1; j + 1 < r; ++j) {
            f = f.substitute(ring->index_of("xL" + std::to_string(j)),
                             Polynomial::variable(ring, ring->index_of("xR" + std::to_string(j + 1))));
        }
        out.polys.push_back(f.into_ring(target));
    }
    out.provenance.builder = "downsized_drl_feistel";
    out.provenance.spec = sys.provenance.spec;
    out.provenance.note = "DRL, xR2 > ... > xR_{r-1} > xL_{r-1} > y; right-branch output "
                          "polynomial removed, linear polynomials substituted";
    return out;
}

ShapeBasis lex_gb_feistel(const PolySystem& sys, uint64_t degree_budget) {
    PolySystem down = downsized_drl_feistel(sys);
    const size_t key = find_key_var(down, "lex_gb_feistel");
    std::vector<size_t> order(down.polys.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    ShapeBasis shape = chain_shape_basis(down, order, key, degree_budget, "lex_gb_feistel");
    return shape;
}

PolySystem iterated_from_lex(const ShapeBasis& shape) {
    const size_t n = shape.linear_part.size() + 1;
    for (size_t i = 0; i + 1 < shape.linear_part.size(); ++i) {
        if (shape.linear_part[i].second.degree() > shape.linear_part[i + 1].second.degree()) {
            throw PreconditionError("iterated_from_lex: degrees must be weakly increasing");
        }
    }
    if (!shape.linear_part.empty() &&
        shape.linear_part.back().second.degree() > shape.univariate.degree()) {
        throw PreconditionError("iterated_from_lex: univariate degree below the last image");
    }
    if (!shape.linear_part.empty() && shape.linear_part.front().second.degree() < 1) {
        throw PreconditionError("iterated_from_lex: constant first image");
    }

    // fresh DRL ring x1 > ... > x_{n-1} > y
    std::vector<std::string> vars;
    for (size_t i = 1; i < n; ++i) vars.push_back("x" + std::to_string(i));
    vars.push_back("y");
    RingPtr ring = make_ring(vars, shape.ring->field(), TermOrderKind::drl);
    const size_t key = n - 1;
    const TermOrder order{TermOrderKind::drl, ring};

    PolySystem out;
    out.ring = ring;
    for (size_t i = 1; i < n; ++i) {
        out.roles.push_back({VariableRole::Kind::state, int(i), 1, -1});
    }
    out.roles.push_back({VariableRole::Kind::key, -1, -1, -1});

    std::vector<Polynomial> basis;  // previously produced iterated polynomials
    for (size_t i = 0; i < n; ++i) {
        Polynomial neg_f = i + 1 < n
                               ? shape.linear_part[i].second.to_polynomial(ring, key) -
                                     Polynomial::variable(ring, i)
                               : -shape.univariate.to_polynomial(ring, key);
        // reduce preferring the latest chain polynomial
        std::vector<Polynomial> divisors(basis.rbegin(), basis.rend());
        Polynomial reduced = divisors.empty() ? neg_f : divide(neg_f, divisors, order).remainder;
        out.polys.push_back(reduced);
        basis.push_back(reduced);
    }
    out.provenance.builder = "iterated_from_lex";
    out.provenance.note = "DRL, x1 > ... > x_{n-1} > y";
    return out;
}

RootsResult field_gcd_roots(const UniPoly& f, const PrimeField& field) {
    if (f.is_zero()) throw PreconditionError("field_gcd_roots: zero polynomial");
    const mpz_class& q = field.modulus();
    if (!q.fits_ulong_p() || q.get_ui() > (1UL << 20)) {
        throw PreconditionError("field_gcd_roots: modulus too large for exhaustive evaluation");
    }
    RootsResult res;
    UniPoly g(f.field());
    if (f.degree() < 1) {
        res.gcd_degree = 0;
        return res;  // nonzero constant: no roots
    }
    // gcd(f, y^q - y) = gcd(f, (y^q mod f) - y)
    UniPoly yq = UniPoly::power_mod(UniPoly::monomial(f.field(), 1), q, f);
    g = UniPoly::gcd(f, yq - UniPoly::monomial(f.field(), 1));
    res.gcd_degree = std::max(g.degree(), 0);
    if (g.degree() < 1) return res;
    const uint64_t qu = q.get_ui();
    for (uint64_t a = 0; a < qu; ++a) {
        if (g.evaluate(mpz_class(a)) == 0) res.roots.emplace_back(a);
    }
    return res;
}

std::string attack_name(AttackKind k) {
    switch (k) {
        case AttackKind::field_equation: return "field_equation";
        case AttackKind::two_plaintext: return "two_plaintext";
        case AttackKind::feistel: return "feistel";
        case AttackKind::hash: return "hash";
    }
    throw Error("unreachable");
}

AttackKind attack_from_name(const std::string& name) {
    for (AttackKind k : {AttackKind::field_equation, AttackKind::two_plaintext,
                         AttackKind::feistel, AttackKind::hash}) {
        if (attack_name(k) == name) return k;
    }
    throw ParseError("unknown attack '" + name + "'");
}

namespace {

// two_plaintext: split the joint system into its per-sample chains
PolySystem sample_subsystem(const PolySystem& sys, int sample) {
    std::vector<std::string> vars;
    std::vector<VariableRole> roles;
    for (size_t v = 0; v < sys.roles.size(); ++v) {
        const auto& role = sys.roles[v];
        if (role.sample == sample || role.kind == VariableRole::Kind::key) {
            vars.push_back(sys.ring->variables()[v]);
            roles.push_back(role);
        }
    }
    RingPtr sub = make_ring(vars, sys.ring->field(), sys.ring->order());
    PolySystem out;
    out.ring = sub;
    out.roles = std::move(roles);
    const int r = sys.provenance.spec ? sys.provenance.spec->rounds : int(sys.polys.size() / 2);
    const size_t base = sample == 1 ? 0 : size_t(r);
    for (size_t i = 0; i < size_t(r); ++i) out.polys.push_back(sys.polys[base + i].into_ring(sub));
    out.provenance = sys.provenance;
    out.provenance.note += "; sample " + std::to_string(sample) + " chain";
    return out;
}

std::vector<mpz_class> eval_roots(const UniPoly& g, const PrimeField& field) {
    std::vector<mpz_class> roots;
    const uint64_t q = field.modulus().get_ui();
    for (uint64_t a = 0; a < q; ++a) {
        if (g.evaluate(mpz_class(a)) == 0) roots.emplace_back(a);
    }
    return roots;
}

}  // namespace

KeyRecovery recover_key(const PolySystem& sys, AttackKind kind, uint64_t degree_budget) {
    KeyRecovery out;
    out.kind = kind;
    const FieldPtr field = sys.ring->field();
    switch (kind) {
        case AttackKind::field_equation: {
            ShapeBasis shape = lex_gb_iterated(sys, degree_budget);
            out.univariate_degrees = {shape.univariate.degree()};
            RootsResult rr = field_gcd_roots(shape.univariate, *field);
            out.gcd_degree = rr.gcd_degree;
            out.solutions = std::move(rr.roots);
            return out;
        }
        case AttackKind::two_plaintext: {
            ShapeBasis s1 = lex_gb_iterated(sample_subsystem(sys, 1), degree_budget);
            ShapeBasis s2 = lex_gb_iterated(sample_subsystem(sys, 2), degree_budget);
            out.univariate_degrees = {s1.univariate.degree(), s2.univariate.degree()};
            UniPoly g = UniPoly::gcd(s1.univariate, s2.univariate);
            out.gcd_degree = std::max(g.degree(), 0);
            if (g.degree() >= 1) out.solutions = eval_roots(g, *field);
            return out;
        }
        case AttackKind::feistel: {
            ShapeBasis shape = lex_gb_feistel(sys, degree_budget);
            // right-branch univariate: image of xL_{r-1} minus the right
            // ciphertext block, read off the removed linear polynomial
            const Polynomial& frn = sys.polys.back();
            const mpz_class cr = field->neg(frn.coefficient(Monomial::one(sys.ring->nvars())));
            const UniPoly& left = shape.univariate;
            if (shape.linear_part.empty()) {
                throw PreconditionError("recover_key: feistel chain too short");
            }
            UniPoly right = shape.linear_part.back().second - UniPoly::constant(field, cr);
            out.univariate_degrees = {left.degree(), right.degree()};
            UniPoly g = UniPoly::gcd(left, right);
            out.gcd_degree = std::max(g.degree(), 0);
            if (g.degree() >= 1) out.solutions = eval_roots(g, *field);
            return out;
        }
        case AttackKind::hash: {
            if (!sys.provenance.spec ||
                sys.provenance.spec->family != CipherFamily::feistel_hash) {
                throw PreconditionError("recover_key: hash attack needs a feistel_hash system");
            }
            PolySystem chain = sys;
            bool has_affine = false;
            for (const auto& p : chain.polys) has_affine |= (p.degree() == 1);
            if (has_affine) chain = eliminate_linear(chain);
            // appended field equations are not part of the round chain; the
            // field-equation gcd happens during root extraction anyway
            {
                const mpz_class& q = field->modulus();
                std::vector<Polynomial> kept;
                for (const auto& p : chain.polys) {
                    bool is_field_eq = false;
                    if (q.fits_ulong_p() && q.get_ui() <= (1UL << 20)) {
                        for (size_t v = 0; v < chain.ring->nvars(); ++v) {
                            const Polynomial fe =
                                Polynomial::variable(chain.ring, v, uint32_t(q.get_ui())) -
                                Polynomial::variable(chain.ring, v);
                            if (p == fe) is_field_eq = true;
                        }
                    }
                    if (!is_field_eq) kept.push_back(p);
                }
                chain.polys = std::move(kept);
            }
            // the hash chain closes on the preimage side; iterate from the
            // last round backwards with the free output x2 as key variable
            size_t x2 = chain.ring->nvars();
            for (size_t v = 0; v < chain.roles.size(); ++v) {
                if (chain.roles[v].kind == VariableRole::Kind::hash_output_unknown) x2 = v;
            }
            if (x2 == chain.ring->nvars()) {
                throw PreconditionError("recover_key: hash system lacks the output unknown");
            }
            std::vector<size_t> order(chain.polys.size());
            for (size_t i = 0; i < order.size(); ++i) order[i] = order.size() - 1 - i;
            ShapeBasis shape = chain_shape_basis(chain, order, x2, degree_budget, "recover_key");
            out.univariate_degrees = {shape.univariate.degree()};
            RootsResult rr = field_gcd_roots(shape.univariate, *field);
            out.gcd_degree = rr.gcd_degree;
            // back-substitute the preimage variable through the chain images;
            // at two rounds it was substituted away and follows the first
            // round relation x1 = x2 - c_1^d directly
            const CipherInstance inst = resolve_spec(*sys.provenance.spec);
            const auto& fld = *field;
            auto x1 = chain.ring->find("x1");
            const UniPoly* image = nullptr;
            if (x1) {
                for (const auto& [v, img] : shape.linear_part) {
                    if (v == *x1) image = &img;
                }
            }
            const mpz_class c1_pow =
                fld.pow(inst.constants[0][0], mpz_class(inst.spec.exponent));
            for (const auto& root : rr.roots) {
                if (image) {
                    out.solutions.push_back(image->evaluate(root));
                } else {
                    out.solutions.push_back(fld.sub(root, c1_pow));
                }
            }
            return out;
        }
    }
    throw Error("unreachable");
}

}
