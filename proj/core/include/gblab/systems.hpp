#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gblab/mpoly.hpp"
#include "gblab/rng.hpp"

namespace gblab {

enum class CipherFamily { mimc, feistel_mimc, gmimc_erf, gmimc_crf, hades, feistel_hash };
enum class AffineLayerKind { shift, circulant, seeded };
enum class KeyScheduleKind { none, affine };

std::string family_name(CipherFamily f);
CipherFamily family_from_name(const std::string& name);

// Parameters of one cipher instance. Round constants and affine layers are
// drawn from a documented SplitMix64 stream seeded by `seed` unless given
// explicitly, so every experiment is reproducible from the spec alone.
struct CipherSpec {
    CipherFamily family = CipherFamily::mimc;
    mpz_class q = 11;
    int rounds = 2;          // total rounds r (hades: r = 2*rounds_full + rounds_partial)
    int rounds_full = 0;     // hades only
    int rounds_partial = 0;  // hades only
    int branches = 1;
    int exponent = 3;
    uint64_t seed = 1;
    std::vector<std::vector<mpz_class>> explicit_constants;  // rounds x branches, optional
    AffineLayerKind affine_layer = AffineLayerKind::shift;
    KeyScheduleKind key_schedule = KeyScheduleKind::none;

    void validate() const;  // throws PreconditionError
    std::string digest() const;  // FNV-1a over the canonical encoding
};

using Matrix = std::vector<std::vector<mpz_class>>;

Matrix shift_matrix(size_t n);              // (x1..xn) -> (xn, x1, .., x_{n-1})
Matrix circulant_matrix(size_t n);          // circulant(1..n), right-shift rows
Matrix identity_matrix(size_t n);
Matrix matrix_mul(const Matrix& a, const Matrix& b, const PrimeField& f);
std::vector<mpz_class> matrix_apply(const Matrix& a, const std::vector<mpz_class>& v,
                                    const PrimeField& f);
Matrix matrix_inverse(const Matrix& a, const PrimeField& f);  // throws if singular
size_t matrix_rank_field(Matrix a, const PrimeField& f);

// Spec with all derived data materialised: field, per-round constants,
// affine layers, key-schedule maps.
struct CipherInstance {
    CipherSpec spec;
    FieldPtr field;
    std::vector<std::vector<mpz_class>> constants;  // rounds x branches
    std::vector<Matrix> layers;                     // rounds x (n x n), multivariate families
    // Affine key schedule k_i = M_i * y + b_i, i = 0..rounds (0 = whitening).
    std::vector<Matrix> key_matrices;
    std::vector<std::vector<mpz_class>> key_offsets;
};

CipherInstance resolve_spec(const CipherSpec& spec);

// Reference evaluation; ground truth for all attack tests.
std::vector<mpz_class> encrypt(const CipherInstance& inst, const std::vector<mpz_class>& key,
                               const std::vector<mpz_class>& plaintext);

// Sponge digest of the two-branch Feistel permutation with key 0; the
// preimage block enters the branch that skips the first round function.
// Returns (digest, second output branch).
std::pair<mpz_class, mpz_class> hash_digest(const CipherInstance& inst, const mpz_class& preimage);

struct VariableRole {
    enum class Kind { key, state, plaintext_unknown, hash_output_unknown, homogenizer };
    Kind kind = Kind::state;
    int round = -1;
    int branch = -1;
    int sample = -1;  // two-plaintext systems: 1 or 2

    std::string str() const;
};

// One cipher model: ring, ordered generators, per-variable roles, and the
// provenance needed to reproduce or transform it.
struct PolySystem {
    RingPtr ring;
    std::vector<Polynomial> polys;
    std::vector<VariableRole> roles;

    struct Provenance {
        std::string builder;
        std::optional<CipherSpec> spec;
        std::string note;  // frozen variable-order convention
        std::vector<std::pair<size_t, size_t>> round_blocks;  // [begin, end) per round
    } provenance;

    TermOrder order() const { return TermOrder{ring->order(), ring}; }
    void validate() const;
};

PolySystem build_mimc_system(const CipherInstance& inst, const mpz_class& plaintext,
                             const mpz_class& ciphertext);
PolySystem build_feistel_system(const CipherInstance& inst, const mpz_class& pl,
                                const mpz_class& pr, const mpz_class& cl, const mpz_class& cr);
PolySystem build_two_plaintext_system(const CipherInstance& inst,
                                      const std::pair<mpz_class, mpz_class>& pair1,
                                      const std::pair<mpz_class, mpz_class>& pair2);
PolySystem build_gmimc_system(const CipherInstance& inst, const std::vector<mpz_class>& plaintext,
                              const std::vector<mpz_class>& ciphertext);
PolySystem build_hades_system(const CipherInstance& inst, const std::vector<mpz_class>& plaintext,
                              const std::vector<mpz_class>& ciphertext);
PolySystem build_hash_preimage_system(const CipherInstance& inst, const mpz_class& alpha);

// Negative control: SPN sponge preimage model (two branches, full/partial/
// full rounds, circulant mixing applied before the first substitution).
PolySystem build_spn_sponge_system(const FieldPtr& field, int exponent, const mpz_class& alpha);

PolySystem append_field_equations(const PolySystem& sys, const std::vector<size_t>& vars);

// Ideal-preserving transformations.
PolySystem spn_transform(const PolySystem& sys);        // A_i^{-1} per round block
PolySystem gmimc_erf_transform(const PolySystem& sys);  // branch differences per round
// Substitutes each affine polynomial with a linear leading variable into the
// rest (listed order) and drops it together with the variable.
PolySystem eliminate_linear(const PolySystem& sys);

}
