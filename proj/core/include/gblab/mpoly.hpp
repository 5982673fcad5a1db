#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "gblab/gf.hpp"

namespace gblab {

enum class TermOrderKind { drl, lex };

// Dense exponent vector with cached total degree. Desk instances stay well
// below ~60 variables, so dense wins on simplicity and locality.
struct Monomial {
    std::vector<uint32_t> exps;
    uint32_t degree = 0;

    Monomial() = default;
    explicit Monomial(std::vector<uint32_t> e);

    static Monomial one(size_t nvars) { return Monomial(std::vector<uint32_t>(nvars, 0)); }
    static Monomial variable(size_t nvars, size_t idx, uint32_t e = 1);

    size_t nvars() const { return exps.size(); }
    bool is_one() const { return degree == 0; }
    bool divides(const Monomial& m) const;
    Monomial operator*(const Monomial& o) const;
    // Exact division; caller guarantees divisibility.
    Monomial div_exact(const Monomial& o) const;
    static Monomial lcm(const Monomial& a, const Monomial& b);
    static bool coprime(const Monomial& a, const Monomial& b);

    bool operator==(const Monomial& o) const { return exps == o.exps; }
};

struct MonomialHash {
    size_t operator()(const Monomial& m) const;
};

// -1 / 0 / +1 for a < b / a == b / a > b.
int drl_compare(const Monomial& a, const Monomial& b);
int lex_compare(const Monomial& a, const Monomial& b);
int order_compare(TermOrderKind kind, const Monomial& a, const Monomial& b);

// Polynomial ring metadata. Index 0 is the greatest variable under the
// declared order. A homogenization slot, when present, must be the least
// variable so that homogenization is compatible with DRL.
class Ring {
public:
    Ring(std::vector<std::string> variables, FieldPtr field, TermOrderKind order,
         std::optional<size_t> homogenization_slot = std::nullopt);

    const std::vector<std::string>& variables() const { return vars_; }
    size_t nvars() const { return vars_.size(); }
    const FieldPtr& field() const { return field_; }
    TermOrderKind order() const { return order_; }
    std::optional<size_t> homogenization_slot() const { return hslot_; }
    size_t index_of(const std::string& name) const;  // throws if absent
    std::optional<size_t> find(const std::string& name) const;

    bool operator==(const Ring& o) const;

private:
    std::vector<std::string> vars_;
    FieldPtr field_;
    TermOrderKind order_;
    std::optional<size_t> hslot_;
};

using RingPtr = std::shared_ptr<const Ring>;

RingPtr make_ring(std::vector<std::string> variables, FieldPtr field,
                  TermOrderKind order = TermOrderKind::drl,
                  std::optional<size_t> homogenization_slot = std::nullopt);

struct TermOrder {
    TermOrderKind kind = TermOrderKind::drl;
    RingPtr ring;

    int compare(const Monomial& a, const Monomial& b) const;
    bool less(const Monomial& a, const Monomial& b) const { return compare(a, b) < 0; }
    bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }
};

struct Term {
    Monomial mono;
    mpz_class coeff;  // canonical representative in [0, q)
};

// Immutable multivariate polynomial; terms sorted descending under the
// ring's declared order and free of zero coefficients.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {}
    // Normalizes: reduces coefficients, merges duplicates, sorts, prunes.
    Polynomial(RingPtr ring, std::vector<Term> terms);

    static Polynomial zero(RingPtr ring) { return Polynomial(std::move(ring)); }
    static Polynomial constant(RingPtr ring, const mpz_class& c);
    static Polynomial variable(RingPtr ring, size_t idx, uint32_t e = 1);
    static Polynomial from_monomial(RingPtr ring, Monomial m, const mpz_class& c = 1);

    const RingPtr& ring() const { return ring_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t nterms() const { return terms_.size(); }
    // Total degree; -1 for the zero polynomial.
    int degree() const;
    bool is_homogeneous() const;

    // Leading data under the ring's declared order (O(1)).
    const Term& leading() const;
    const Monomial& leading_monomial() const { return leading().mono; }
    const mpz_class& leading_coeff() const { return leading().coeff; }
    // Leading term under an arbitrary order (linear scan when it differs).
    const Term& leading(const TermOrder& order) const;

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial operator-() const;
    Polynomial scaled(const mpz_class& c) const;
    Polynomial monic() const;  // throws on zero
    Polynomial times_monomial(const Monomial& m, const mpz_class& c = 1) const;
    Polynomial pow(uint32_t e) const;

    bool operator==(const Polynomial& o) const;

    mpz_class coefficient(const Monomial& m) const;
    mpz_class evaluate(const std::vector<mpz_class>& point) const;
    // Substitute a polynomial for one variable (others untouched).
    Polynomial substitute(size_t var, const Polynomial& value) const;
    // Map this polynomial into another ring; variables are matched by name
    // and must all exist there. Field moduli must agree.
    Polynomial into_ring(const RingPtr& target) const;

    std::string str() const;  // canonical text rendering

private:
    void normalize();

    RingPtr ring_;
    std::vector<Term> terms_;
};

// --- spec operations -------------------------------------------------------

int compare(const TermOrder& order, const Monomial& a, const Monomial& b);

enum class PolyArithOp { add, sub, mul, scalar_mul };
Polynomial poly_arith(const Polynomial& f, const Polynomial& g, PolyArithOp op);
Polynomial poly_arith(const Polynomial& f, const mpz_class& scalar);  // scalar_mul

std::pair<Monomial, mpz_class> leading_term(const Polynomial& f, const TermOrder& order);

struct DivisionResult {
    std::vector<Polynomial> quotients;
    Polynomial remainder;
};

// Deterministic multivariate division: repeatedly reduce the greatest
// reducible term by the first divisor (list order) whose leading monomial
// divides it. Satisfies f == sum q_i g_i + r exactly.
DivisionResult divide(const Polynomial& f, const std::vector<Polynomial>& divisors,
                      const TermOrder& order);

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g, const TermOrder& order);

Polynomial homogenize(const Polynomial& f);
Polynomial dehomogenize(const Polynomial& f);
Polynomial top_component(const Polynomial& f);

// Canonical text parsing (inverse of Polynomial::str); accepts "-" signs and
// unreduced integer coefficients for convenience.
Polynomial parse_polynomial(const RingPtr& ring, const std::string& text);

}
