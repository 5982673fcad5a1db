#include "gblab/mpoly.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "gblab/errors.hpp"

namespace gblab {

Monomial::Monomial(std::vector<uint32_t> e) : exps(std::move(e)) {
    degree = std::accumulate(exps.begin(), exps.end(), uint32_t(0));
}

Monomial Monomial::variable(size_t nvars, size_t idx, uint32_t e) {
    std::vector<uint32_t> v(nvars, 0);
    v.at(idx) = e;
    return Monomial(std::move(v));
}

bool Monomial::divides(const Monomial& m) const {
    if (exps.size() != m.exps.size() || degree > m.degree) return false;
    for (size_t i = 0; i < exps.size(); ++i) {
        if (exps[i] > m.exps[i]) return false;
    }
    return true;
}

Monomial Monomial::operator*(const Monomial& o) const {
    Monomial r;
    r.exps.resize(exps.size());
    for (size_t i = 0; i < exps.size(); ++i) r.exps[i] = exps[i] + o.exps[i];
    r.degree = degree + o.degree;
    return r;
}

Monomial Monomial::div_exact(const Monomial& o) const {
    Monomial r;
    r.exps.resize(exps.size());
    for (size_t i = 0; i < exps.size(); ++i) r.exps[i] = exps[i] - o.exps[i];
    r.degree = degree - o.degree;
    return r;
}

Monomial Monomial::lcm(const Monomial& a, const Monomial& b) {
    Monomial r;
    r.exps.resize(a.exps.size());
    uint32_t deg = 0;
    for (size_t i = 0; i < a.exps.size(); ++i) {
        r.exps[i] = std::max(a.exps[i], b.exps[i]);
        deg += r.exps[i];
    }
    r.degree = deg;
    return r;
}

bool Monomial::coprime(const Monomial& a, const Monomial& b) {
    for (size_t i = 0; i < a.exps.size(); ++i) {
        if (a.exps[i] != 0 && b.exps[i] != 0) return false;
    }
    return true;
}

size_t MonomialHash::operator()(const Monomial& m) const {
    uint64_t h = 1469598103934665603ULL;
    for (uint32_t e : m.exps) {
        h ^= e;
        h *= 1099511628211ULL;
    }
    return size_t(h);
}

int drl_compare(const Monomial& a, const Monomial& b) {
    if (a.degree != b.degree) return a.degree < b.degree ? -1 : 1;
    // reverse lexicographic tiebreak: last nonzero difference, smaller
    // exponent there means greater monomial
    for (size_t i = a.exps.size(); i-- > 0;) {
        if (a.exps[i] != b.exps[i]) return a.exps[i] > b.exps[i] ? -1 : 1;
    }
    return 0;
}

int lex_compare(const Monomial& a, const Monomial& b) {
    for (size_t i = 0; i < a.exps.size(); ++i) {
        if (a.exps[i] != b.exps[i]) return a.exps[i] < b.exps[i] ? -1 : 1;
    }
    return 0;
}

int order_compare(TermOrderKind kind, const Monomial& a, const Monomial& b) {
    if (a.exps.size() != b.exps.size()) {
        throw PreconditionError("monomial comparison across different rings");
    }
    return kind == TermOrderKind::drl ? drl_compare(a, b) : lex_compare(a, b);
}

Ring::Ring(std::vector<std::string> variables, FieldPtr field, TermOrderKind order,
           std::optional<size_t> homogenization_slot)
    : vars_(std::move(variables)), field_(std::move(field)), order_(order),
      hslot_(homogenization_slot) {
    if (!field_) throw PreconditionError("Ring requires a field");
    std::unordered_set<std::string> seen;
    for (const auto& v : vars_) {
        if (v.empty()) throw PreconditionError("Ring: empty variable name");
        if (!seen.insert(v).second) {
            throw PreconditionError("Ring: duplicate variable name '" + v + "'");
        }
    }
    if (hslot_) {
        if (*hslot_ >= vars_.size()) throw PreconditionError("Ring: homogenization slot out of range");
        if (*hslot_ + 1 != vars_.size()) {
            throw PreconditionError("Ring: homogenization variable must be the least variable");
        }
    }
}

size_t Ring::index_of(const std::string& name) const {
    auto idx = find(name);
    if (!idx) throw PreconditionError("Ring: unknown variable '" + name + "'");
    return *idx;
}

std::optional<size_t> Ring::find(const std::string& name) const {
    for (size_t i = 0; i < vars_.size(); ++i) {
        if (vars_[i] == name) return i;
    }
    return std::nullopt;
}

bool Ring::operator==(const Ring& o) const {
    return vars_ == o.vars_ && order_ == o.order_ && hslot_ == o.hslot_ &&
           field_->modulus() == o.field_->modulus();
}

RingPtr make_ring(std::vector<std::string> variables, FieldPtr field, TermOrderKind order,
                  std::optional<size_t> homogenization_slot) {
    return std::make_shared<const Ring>(std::move(variables), std::move(field), order,
                                        homogenization_slot);
}

int TermOrder::compare(const Monomial& a, const Monomial& b) const {
    return order_compare(kind, a, b);
}

namespace {

void require_same_ring(const Polynomial& f, const Polynomial& g) {
    if (!f.ring() || !g.ring() || !(*f.ring() == *g.ring())) {
        throw PreconditionError("polynomial operation across different rings");
    }
}

}  // namespace

Polynomial::Polynomial(RingPtr ring, std::vector<Term> terms)
    : ring_(std::move(ring)), terms_(std::move(terms)) {
    if (!ring_) throw PreconditionError("Polynomial requires a ring");
    normalize();
}

void Polynomial::normalize() {
    const auto& field = *ring_->field();
    const size_t n = ring_->nvars();
    for (auto& t : terms_) {
        if (t.mono.nvars() != n) throw PreconditionError("Polynomial: term arity mismatch");
        t.coeff = field.reduce(t.coeff);
    }
    const TermOrderKind kind = ring_->order();
    std::sort(terms_.begin(), terms_.end(), [&](const Term& a, const Term& b) {
        return order_compare(kind, a.mono, b.mono) > 0;
    });
    std::vector<Term> merged;
    merged.reserve(terms_.size());
    for (auto& t : terms_) {
        if (!merged.empty() && merged.back().mono == t.mono) {
            merged.back().coeff = field.add(merged.back().coeff, t.coeff);
        } else {
            merged.push_back(std::move(t));
        }
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(),
                                [](const Term& t) { return t.coeff == 0; }),
                 merged.end());
    terms_ = std::move(merged);
}

Polynomial Polynomial::constant(RingPtr ring, const mpz_class& c) {
    size_t n = ring->nvars();
    return Polynomial(std::move(ring), {Term{Monomial::one(n), c}});
}

Polynomial Polynomial::variable(RingPtr ring, size_t idx, uint32_t e) {
    size_t n = ring->nvars();
    return Polynomial(std::move(ring), {Term{Monomial::variable(n, idx, e), 1}});
}

Polynomial Polynomial::from_monomial(RingPtr ring, Monomial m, const mpz_class& c) {
    return Polynomial(std::move(ring), {Term{std::move(m), c}});
}

int Polynomial::degree() const {
    int d = -1;
    for (const auto& t : terms_) d = std::max(d, int(t.mono.degree));
    return d;
}

bool Polynomial::is_homogeneous() const {
    if (terms_.empty()) return true;
    const uint32_t d = terms_.front().mono.degree;
    return std::all_of(terms_.begin(), terms_.end(),
                       [&](const Term& t) { return t.mono.degree == d; });
}

const Term& Polynomial::leading() const {
    if (terms_.empty()) throw PreconditionError("leading term of the zero polynomial");
    return terms_.front();
}

const Term& Polynomial::leading(const TermOrder& order) const {
    if (terms_.empty()) throw PreconditionError("leading term of the zero polynomial");
    if (order.kind == ring_->order()) return terms_.front();
    const Term* best = &terms_.front();
    for (const auto& t : terms_) {
        if (order.compare(t.mono, best->mono) > 0) best = &t;
    }
    return *best;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    require_same_ring(*this, o);
    std::vector<Term> ts = terms_;
    ts.insert(ts.end(), o.terms_.begin(), o.terms_.end());
    return Polynomial(ring_, std::move(ts));
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator-() const {
    const auto& field = *ring_->field();
    std::vector<Term> ts = terms_;
    for (auto& t : ts) t.coeff = field.neg(t.coeff);
    Polynomial r(ring_);
    r.terms_ = std::move(ts);  // already sorted and pruned
    return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    require_same_ring(*this, o);
    const auto& field = *ring_->field();
    std::unordered_map<Monomial, mpz_class, MonomialHash> acc;
    acc.reserve(terms_.size() * o.terms_.size());
    for (const auto& a : terms_) {
        for (const auto& b : o.terms_) {
            Monomial m = a.mono * b.mono;
            auto [it, fresh] = acc.try_emplace(std::move(m), 0);
            it->second = field.add(it->second, field.mul(a.coeff, b.coeff));
        }
    }
    std::vector<Term> ts;
    ts.reserve(acc.size());
    for (auto& [m, c] : acc) {
        if (c != 0) ts.push_back(Term{m, c});
    }
    return Polynomial(ring_, std::move(ts));
}

Polynomial Polynomial::scaled(const mpz_class& c) const {
    const auto& field = *ring_->field();
    const mpz_class cr = field.reduce(c);
    if (cr == 0) return Polynomial::zero(ring_);
    std::vector<Term> ts = terms_;
    for (auto& t : ts) t.coeff = field.mul(t.coeff, cr);
    Polynomial r(ring_);
    r.terms_ = std::move(ts);
    return r;
}

Polynomial Polynomial::monic() const { return scaled(ring_->field()->inv(leading_coeff())); }

Polynomial Polynomial::times_monomial(const Monomial& m, const mpz_class& c) const {
    const auto& field = *ring_->field();
    const mpz_class cr = field.reduce(c);
    if (cr == 0) return Polynomial::zero(ring_);
    std::vector<Term> ts = terms_;
    for (auto& t : ts) {
        t.mono = t.mono * m;
        t.coeff = field.mul(t.coeff, cr);
    }
    Polynomial r(ring_);
    r.terms_ = std::move(ts);  // multiplying by a monomial preserves order
    return r;
}

Polynomial Polynomial::pow(uint32_t e) const {
    Polynomial r = Polynomial::constant(ring_, 1);
    Polynomial base = *this;
    while (e) {
        if (e & 1) r = r * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return r;
}

bool Polynomial::operator==(const Polynomial& o) const {
    if (!ring_ || !o.ring_) return terms_.empty() && o.terms_.empty();
    if (!(*ring_ == *o.ring_) || terms_.size() != o.terms_.size()) return false;
    for (size_t i = 0; i < terms_.size(); ++i) {
        if (!(terms_[i].mono == o.terms_[i].mono) || terms_[i].coeff != o.terms_[i].coeff) {
            return false;
        }
    }
    return true;
}

mpz_class Polynomial::coefficient(const Monomial& m) const {
    for (const auto& t : terms_) {
        if (t.mono == m) return t.coeff;
    }
    return 0;
}

mpz_class Polynomial::evaluate(const std::vector<mpz_class>& point) const {
    if (point.size() != ring_->nvars()) throw PreconditionError("evaluate: wrong point arity");
    const auto& field = *ring_->field();
    mpz_class acc = 0;
    for (const auto& t : terms_) {
        mpz_class v = t.coeff;
        for (size_t i = 0; i < point.size(); ++i) {
            if (t.mono.exps[i] == 0) continue;
            v = field.mul(v, field.pow(point[i], t.mono.exps[i]));
        }
        acc = field.add(acc, v);
    }
    return acc;
}

Polynomial Polynomial::substitute(size_t var, const Polynomial& value) const {
    require_same_ring(*this, value);
    // cache powers of the substituted value
    std::vector<Polynomial> powers = {Polynomial::constant(ring_, 1)};
    Polynomial acc = Polynomial::zero(ring_);
    for (const auto& t : terms_) {
        const uint32_t e = t.mono.exps[var];
        while (powers.size() <= e) powers.push_back(powers.back() * value);
        Monomial rest = t.mono;
        rest.degree -= rest.exps[var];
        rest.exps[var] = 0;
        acc = acc + powers[e].times_monomial(rest, t.coeff);
    }
    return acc;
}

Polynomial Polynomial::into_ring(const RingPtr& target) const {
    if (ring_->field()->modulus() != target->field()->modulus()) {
        throw PreconditionError("into_ring: field mismatch");
    }
    // variables the polynomial actually uses must exist in the target
    std::vector<std::optional<size_t>> map(ring_->nvars());
    for (size_t i = 0; i < ring_->nvars(); ++i) map[i] = target->find(ring_->variables()[i]);
    std::vector<Term> ts;
    ts.reserve(terms_.size());
    for (const auto& t : terms_) {
        std::vector<uint32_t> e(target->nvars(), 0);
        for (size_t i = 0; i < map.size(); ++i) {
            if (t.mono.exps[i] == 0) continue;
            if (!map[i]) {
                throw PreconditionError("into_ring: variable '" + ring_->variables()[i] +
                                        "' is absent from the target ring");
            }
            e[*map[i]] = t.mono.exps[i];
        }
        ts.push_back(Term{Monomial(std::move(e)), t.coeff});
    }
    return Polynomial(target, std::move(ts));
}

std::string Polynomial::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms_) {
        if (!first) os << " + ";
        first = false;
        if (t.mono.is_one()) {
            os << t.coeff.get_str();
            continue;
        }
        bool lead = true;
        if (t.coeff != 1) {
            os << t.coeff.get_str();
            lead = false;
        }
        for (size_t i = 0; i < t.mono.exps.size(); ++i) {
            const uint32_t e = t.mono.exps[i];
            if (e == 0) continue;
            if (!lead) os << "*";
            lead = false;
            os << ring_->variables()[i];
            if (e > 1) os << "^" << e;
        }
    }
    return os.str();
}

int compare(const TermOrder& order, const Monomial& a, const Monomial& b) {
    return order.compare(a, b);
}

Polynomial poly_arith(const Polynomial& f, const Polynomial& g, PolyArithOp op) {
    switch (op) {
        case PolyArithOp::add: return f + g;
        case PolyArithOp::sub: return f - g;
        case PolyArithOp::mul: return f * g;
        case PolyArithOp::scalar_mul:
            if (g.nterms() > 1 || (g.nterms() == 1 && !g.terms().front().mono.is_one())) {
                throw PreconditionError("scalar_mul expects a constant second operand");
            }
            return f.scaled(g.is_zero() ? mpz_class(0) : g.terms().front().coeff);
    }
    throw Error("unreachable");
}

Polynomial poly_arith(const Polynomial& f, const mpz_class& scalar) { return f.scaled(scalar); }

std::pair<Monomial, mpz_class> leading_term(const Polynomial& f, const TermOrder& order) {
    const Term& t = f.leading(order);
    return {t.mono, t.coeff};
}

DivisionResult divide(const Polynomial& f, const std::vector<Polynomial>& divisors,
                      const TermOrder& order) {
    for (const auto& g : divisors) {
        if (g.is_zero()) throw PreconditionError("divide: zero divisor");
        require_same_ring(f, g);
    }
    const RingPtr& ring = f.ring();
    const auto& field = *ring->field();
    const TermOrderKind kind = order.kind;

    struct Desc {
        TermOrderKind kind;
        bool operator()(const Monomial& a, const Monomial& b) const {
            return order_compare(kind, a, b) > 0;
        }
    };
    std::map<Monomial, mpz_class, Desc> work{Desc{kind}};
    for (const auto& t : f.terms()) work.emplace(t.mono, t.coeff);

    std::vector<std::pair<Monomial, mpz_class>> lts;
    lts.reserve(divisors.size());
    for (const auto& g : divisors) {
        const Term& lt = g.leading(order);
        lts.emplace_back(lt.mono, lt.coeff);
    }

    std::vector<std::map<Monomial, mpz_class, Desc>> quot(divisors.size(),
                                                          std::map<Monomial, mpz_class, Desc>{Desc{kind}});
    std::vector<Term> remainder;

    auto it = work.begin();
    while (it != work.end()) {
        if (it->second == 0) {
            it = work.erase(it);
            continue;
        }
        size_t who = divisors.size();
        for (size_t k = 0; k < divisors.size(); ++k) {
            if (lts[k].first.divides(it->first)) {
                who = k;
                break;
            }
        }
        if (who == divisors.size()) {
            // irreducible; every later term is smaller, so this is final
            remainder.push_back(Term{it->first, it->second});
            ++it;
            continue;
        }
        const Monomial shift = it->first.div_exact(lts[who].first);
        const mpz_class factor = field.div(it->second, lts[who].second);
        {
            auto [qit, fresh] = quot[who].try_emplace(shift, 0);
            qit->second = field.add(qit->second, factor);
        }
        const Monomial head = it->first;
        it = work.erase(it);
        for (const auto& t : divisors[who].terms()) {
            Monomial m = t.mono * shift;
            if (m == head) continue;  // cancelled by construction
            auto [wit, fresh] = work.try_emplace(std::move(m), 0);
            wit->second = field.sub(wit->second, field.mul(factor, t.coeff));
        }
        // new terms are strictly smaller than head; iterator stays valid at
        // the first remaining position not yet classified
        it = work.upper_bound(head);
        // terms before `head` were already classified as remainder
    }

    DivisionResult res;
    res.quotients.reserve(divisors.size());
    for (auto& q : quot) {
        std::vector<Term> ts;
        ts.reserve(q.size());
        for (auto& [m, c] : q) {
            if (c != 0) ts.push_back(Term{m, c});
        }
        res.quotients.emplace_back(ring, std::move(ts));
    }
    res.remainder = Polynomial(ring, std::move(remainder));
    return res;
}

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g, const TermOrder& order) {
    if (f.is_zero() || g.is_zero()) throw PreconditionError("s_polynomial of zero");
    require_same_ring(f, g);
    const auto& field = *f.ring()->field();
    const Term& lf = f.leading(order);
    const Term& lg = g.leading(order);
    const Monomial gamma = Monomial::lcm(lf.mono, lg.mono);
    Polynomial a = f.times_monomial(gamma.div_exact(lf.mono), field.inv(lf.coeff));
    Polynomial b = g.times_monomial(gamma.div_exact(lg.mono), field.inv(lg.coeff));
    return a - b;
}

Polynomial homogenize(const Polynomial& f) {
    const RingPtr& ring = f.ring();
    auto slot = ring->homogenization_slot();
    if (!slot) throw PreconditionError("homogenize: ring has no homogenization slot");
    if (f.is_zero()) return f;
    const size_t h = *slot;
    uint32_t d = 0;
    for (const auto& t : f.terms()) {
        if (t.mono.exps[h] != 0) {
            throw PreconditionError("homogenize: input already uses the homogenization variable");
        }
        d = std::max(d, t.mono.degree);
    }
    std::vector<Term> ts = f.terms();
    for (auto& t : ts) {
        t.mono.exps[h] = d - t.mono.degree;
        t.mono.degree = d;
    }
    return Polynomial(ring, std::move(ts));
}

Polynomial dehomogenize(const Polynomial& f) {
    const RingPtr& ring = f.ring();
    auto slot = ring->homogenization_slot();
    if (!slot) throw PreconditionError("dehomogenize: ring has no homogenization slot");
    const size_t h = *slot;
    std::vector<Term> ts = f.terms();
    for (auto& t : ts) {
        t.mono.degree -= t.mono.exps[h];
        t.mono.exps[h] = 0;
    }
    return Polynomial(ring, std::move(ts));
}

Polynomial top_component(const Polynomial& f) {
    if (f.is_zero()) throw PreconditionError("top_component of the zero polynomial");
    const uint32_t d = uint32_t(f.degree());
    std::vector<Term> ts;
    for (const auto& t : f.terms()) {
        if (t.mono.degree == d) ts.push_back(t);
    }
    return Polynomial(f.ring(), std::move(ts));
}

namespace {

struct Lexer {
    const std::string& s;
    size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eof() {
        skip_ws();
        return pos >= s.size();
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    bool accept(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    std::string number() {
        skip_ws();
        size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (start == pos) throw ParseError("polynomial: expected a number at position " +
                                           std::to_string(start) + " in '" + s + "'");
        return s.substr(start, pos - start);
    }
    std::string ident() {
        skip_ws();
        size_t start = pos;
        while (pos < s.size() &&
               (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_')) {
            ++pos;
        }
        if (start == pos) throw ParseError("polynomial: expected a variable at position " +
                                           std::to_string(start) + " in '" + s + "'");
        return s.substr(start, pos - start);
    }
};

}  // namespace

Polynomial parse_polynomial(const RingPtr& ring, const std::string& text) {
    Lexer lx{text};
    std::vector<Term> terms;
    bool negate = false;
    if (lx.accept('-')) negate = true;
    while (true) {
        mpz_class coeff = 1;
        Monomial mono = Monomial::one(ring->nvars());
        bool saw_factor = false;
        if (std::isdigit(static_cast<unsigned char>(lx.peek()))) {
            coeff = mpz_class(lx.number());
            saw_factor = true;
        }
        while (true) {
            if (saw_factor && !lx.accept('*')) break;
            if (!saw_factor && !(std::isalpha(static_cast<unsigned char>(lx.peek())) ||
                                 lx.peek() == '_')) {
                break;
            }
            std::string name = lx.ident();
            auto idx = ring->find(name);
            if (!idx) throw ParseError("polynomial: unknown variable '" + name + "'");
            uint32_t e = 1;
            if (lx.accept('^')) e = uint32_t(std::stoul(lx.number()));
            mono = mono * Monomial::variable(ring->nvars(), *idx, e);
            saw_factor = true;
        }
        if (!saw_factor) throw ParseError("polynomial: empty term in '" + text + "'");
        if (negate) coeff = -coeff;
        terms.push_back(Term{std::move(mono), std::move(coeff)});
        if (lx.eof()) break;
        if (lx.accept('+')) {
            negate = false;
        } else if (lx.accept('-')) {
            negate = true;
        } else {
            throw ParseError("polynomial: unexpected character '" + std::string(1, lx.peek()) +
                             "' in '" + text + "'");
        }
    }
    return Polynomial(ring, std::move(terms));
}

}
