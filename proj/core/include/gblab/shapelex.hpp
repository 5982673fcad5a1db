#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "gblab/groebner.hpp"
#include "gblab/systems.hpp"

namespace gblab {

// Dense univariate polynomial over a prime field; coefficient i belongs to
// power i, canonical representatives, trailing zeros trimmed.
class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(FieldPtr field) : field_(std::move(field)) {}
    UniPoly(FieldPtr field, std::vector<mpz_class> coeffs);

    static UniPoly constant(FieldPtr field, const mpz_class& c);
    static UniPoly monomial(FieldPtr field, size_t e, const mpz_class& c = 1);

    const FieldPtr& field() const { return field_; }
    const std::vector<mpz_class>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return int(c_.size()) - 1; }
    mpz_class coeff(size_t i) const { return i < c_.size() ? c_[i] : mpz_class(0); }
    const mpz_class& leading_coeff() const;

    UniPoly operator+(const UniPoly& o) const;
    UniPoly operator-(const UniPoly& o) const;
    UniPoly operator*(const UniPoly& o) const;
    UniPoly operator-() const;
    UniPoly scaled(const mpz_class& s) const;
    UniPoly monic() const;
    UniPoly pow(uint32_t e) const;

    bool operator==(const UniPoly& o) const;

    mpz_class evaluate(const mpz_class& x) const;

    // this -> this mod m (euclidean remainder)
    static std::pair<UniPoly, UniPoly> divrem(const UniPoly& a, const UniPoly& b);
    static UniPoly gcd(UniPoly a, UniPoly b);  // monic gcd, gcd(f, 0) = monic f
    // y^e mod m by square-and-multiply
    static UniPoly power_mod(const UniPoly& base, const mpz_class& e, const UniPoly& m);

    Polynomial to_polynomial(const RingPtr& ring, size_t var) const;
    static UniPoly from_polynomial(const Polynomial& p, size_t var);

private:
    void trim();

    FieldPtr field_;
    std::vector<mpz_class> c_;
};

// LEX Groebner basis in shape form: linear parts var - g_var(key) plus one
// univariate polynomial in the key variable.
struct ShapeBasis {
    RingPtr ring;
    size_t key_var = 0;
    std::vector<std::pair<size_t, UniPoly>> linear_part;  // (variable, image)
    UniPoly univariate;
    std::string provenance;
};

// Shape basis of a univariate keyed iterated system via the substitution
// iteration; the result has pairwise coprime LEX leading monomials.
ShapeBasis lex_gb_iterated(const PolySystem& sys, uint64_t degree_budget = (1u << 20));

// The downsized DRL basis of a Feistel-2n/n system with the right-branch
// output polynomial removed: linear polynomials substituted into the round
// polynomials, leading monomials pairwise coprime pure powers.
PolySystem downsized_drl_feistel(const PolySystem& sys);

ShapeBasis lex_gb_feistel(const PolySystem& sys, uint64_t degree_budget = (1u << 20));

// Inverse direction: rebuild a keyed iterated basis from a shape-form LEX
// basis with weakly increasing degrees.
PolySystem iterated_from_lex(const ShapeBasis& shape);

struct RootsResult {
    std::vector<mpz_class> roots;  // sorted ascending
    int gcd_degree = 0;
};

// gcd(f, y^q - y) via modular exponentiation, then exhaustive evaluation of
// the (square-free) gcd over F_q.
RootsResult field_gcd_roots(const UniPoly& f, const PrimeField& field);

enum class AttackKind { field_equation, two_plaintext, feistel, hash };

std::string attack_name(AttackKind k);
AttackKind attack_from_name(const std::string& name);

struct KeyRecovery {
    AttackKind kind = AttackKind::field_equation;
    std::vector<mpz_class> solutions;  // candidate keys (hash: preimages)
    std::vector<int> univariate_degrees;
    int gcd_degree = 0;
};

KeyRecovery recover_key(const PolySystem& sys, AttackKind kind,
                        uint64_t degree_budget = (1u << 20));

}
