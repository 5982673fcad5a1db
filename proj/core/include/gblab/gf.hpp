#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include <gmpxx.h>

namespace gblab {

// Deterministic primality test (trial division, fixed-base Miller-Rabin,
// strong Lucas for moduli past the proven base range).
bool is_prime(const mpz_class& n);

// gcd(d, q - 1) == 1, i.e. x -> x^d permutes the field of size q.
bool is_permutation_exponent(const mpz_class& d, const mpz_class& q);

// Prime field F_q with exact arithmetic on canonical representatives in
// [0, q). Arbitrary-precision moduli share one code path; a 64-bit fast path
// kicks in transparently (bit-identical results) when q fits.
class PrimeField {
public:
    explicit PrimeField(mpz_class modulus);

    const mpz_class& modulus() const { return q_; }
    bool fits_u64() const { return small_; }
    uint64_t modulus_u64() const { return q64_; }

    mpz_class reduce(const mpz_class& a) const;
    mpz_class add(const mpz_class& a, const mpz_class& b) const;
    mpz_class sub(const mpz_class& a, const mpz_class& b) const;
    mpz_class mul(const mpz_class& a, const mpz_class& b) const;
    mpz_class neg(const mpz_class& a) const;
    // Extended Euclid; throws PreconditionError on 0.
    mpz_class inv(const mpz_class& a) const;
    mpz_class div(const mpz_class& a, const mpz_class& b) const;
    mpz_class pow(const mpz_class& a, const mpz_class& e) const;

    bool operator==(const PrimeField& other) const { return q_ == other.q_; }

private:
    mpz_class q_;
    bool small_ = false;
    uint64_t q64_ = 0;
};

using FieldPtr = std::shared_ptr<const PrimeField>;

FieldPtr make_field(const mpz_class& modulus);
FieldPtr make_field(uint64_t modulus);

// Immutable field element; canonical value in [0, q).
class FieldElement {
public:
    FieldElement(mpz_class value, FieldPtr field);

    const mpz_class& value() const { return value_; }
    const FieldPtr& field() const { return field_; }
    bool is_zero() const { return value_ == 0; }

    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement operator/(const FieldElement& o) const;
    FieldElement operator-() const;
    FieldElement inverse() const;
    FieldElement pow(const mpz_class& e) const;

    bool operator==(const FieldElement& o) const;
    bool operator!=(const FieldElement& o) const { return !(*this == o); }

    std::string str() const { return value_.get_str(); }

private:
    void require_same_field(const FieldElement& o) const;

    mpz_class value_;
    FieldPtr field_;
};

}
