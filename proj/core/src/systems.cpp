#include "gblab/systems.hpp"

#include <algorithm>
#include <sstream>

#include "gblab/errors.hpp"

namespace gblab {

std::string family_name(CipherFamily f) {
    switch (f) {
        case CipherFamily::mimc: return "mimc";
        case CipherFamily::feistel_mimc: return "feistel_mimc";
        case CipherFamily::gmimc_erf: return "gmimc_erf";
        case CipherFamily::gmimc_crf: return "gmimc_crf";
        case CipherFamily::hades: return "hades";
        case CipherFamily::feistel_hash: return "feistel_hash";
    }
    throw Error("unreachable");
}

CipherFamily family_from_name(const std::string& name) {
    for (CipherFamily f : {CipherFamily::mimc, CipherFamily::feistel_mimc, CipherFamily::gmimc_erf,
                           CipherFamily::gmimc_crf, CipherFamily::hades,
                           CipherFamily::feistel_hash}) {
        if (family_name(f) == name) return f;
    }
    throw ParseError("unknown cipher family '" + name + "'");
}

void CipherSpec::validate() const {
    if (!is_prime(q)) throw PreconditionError("CipherSpec: q must be prime");
    if (exponent < 2) throw PreconditionError("CipherSpec: exponent must be >= 2");
    const bool needs_permutation =
        family == CipherFamily::mimc || family == CipherFamily::hades;
    if (needs_permutation && !is_permutation_exponent(exponent, q)) {
        throw PreconditionError("CipherSpec: gcd(d, q-1) != 1, x^d is not a permutation of F_q");
    }
    switch (family) {
        case CipherFamily::mimc:
            if (branches != 1) throw PreconditionError("CipherSpec: mimc has one branch");
            if (rounds < 1) throw PreconditionError("CipherSpec: mimc needs rounds >= 1");
            break;
        case CipherFamily::feistel_mimc:
        case CipherFamily::feistel_hash:
            if (branches != 2) throw PreconditionError("CipherSpec: feistel has two branches");
            if (rounds < 2) throw PreconditionError("CipherSpec: feistel needs rounds >= 2");
            break;
        case CipherFamily::gmimc_erf:
        case CipherFamily::gmimc_crf:
            if (branches < 2) throw PreconditionError("CipherSpec: gmimc needs branches >= 2");
            if (rounds < 1) throw PreconditionError("CipherSpec: gmimc needs rounds >= 1");
            break;
        case CipherFamily::hades:
            if (branches < 2) throw PreconditionError("CipherSpec: hades needs branches >= 2");
            if (rounds_full < 1) throw PreconditionError("CipherSpec: hades needs full rounds");
            if (rounds_partial < 0) throw PreconditionError("CipherSpec: negative partial rounds");
            if (rounds != 2 * rounds_full + rounds_partial) {
                throw PreconditionError("CipherSpec: hades rounds != 2*rounds_full + rounds_partial");
            }
            break;
    }
    if (!explicit_constants.empty()) {
        if (int(explicit_constants.size()) != rounds) {
            throw PreconditionError("CipherSpec: explicit constants must cover every round");
        }
        for (const auto& row : explicit_constants) {
            if (int(row.size()) != branches) {
                throw PreconditionError("CipherSpec: constants row arity mismatch");
            }
        }
    }
}

std::string CipherSpec::digest() const {
    std::ostringstream os;
    os << family_name(family) << "|q=" << q.get_str() << "|r=" << rounds << "|rf=" << rounds_full
       << "|rp=" << rounds_partial << "|n=" << branches << "|d=" << exponent << "|seed=" << seed
       << "|layer=" << int(affine_layer) << "|ks=" << int(key_schedule) << "|";
    for (const auto& row : explicit_constants) {
        for (const auto& c : row) os << c.get_str() << ",";
        os << ";";
    }
    const std::string s = os.str();
    uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    std::ostringstream hex;
    hex << std::hex << h;
    return hex.str();
}

Matrix shift_matrix(size_t n) {
    Matrix m(n, std::vector<mpz_class>(n, 0));
    for (size_t i = 0; i < n; ++i) m[i][(i + n - 1) % n] = 1;
    return m;
}

Matrix circulant_matrix(size_t n) {
    Matrix m(n, std::vector<mpz_class>(n, 0));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) m[i][j] = mpz_class(long((j + n - i) % n + 1));
    }
    return m;
}

Matrix identity_matrix(size_t n) {
    Matrix m(n, std::vector<mpz_class>(n, 0));
    for (size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

Matrix matrix_mul(const Matrix& a, const Matrix& b, const PrimeField& f) {
    const size_t n = a.size(), k = b.size(), c = b.front().size();
    Matrix r(n, std::vector<mpz_class>(c, 0));
    for (size_t i = 0; i < n; ++i) {
        for (size_t t = 0; t < k; ++t) {
            if (a[i][t] == 0) continue;
            for (size_t j = 0; j < c; ++j) {
                r[i][j] = f.add(r[i][j], f.mul(a[i][t], b[t][j]));
            }
        }
    }
    return r;
}

std::vector<mpz_class> matrix_apply(const Matrix& a, const std::vector<mpz_class>& v,
                                    const PrimeField& f) {
    std::vector<mpz_class> r(a.size(), 0);
    for (size_t i = 0; i < a.size(); ++i) {
        for (size_t j = 0; j < v.size(); ++j) {
            r[i] = f.add(r[i], f.mul(a[i][j], v[j]));
        }
    }
    return r;
}

Matrix matrix_inverse(const Matrix& a, const PrimeField& f) {
    const size_t n = a.size();
    Matrix work = a;
    Matrix inv = identity_matrix(n);
    for (auto& row : work) {
        for (auto& v : row) v = f.reduce(v);
    }
    for (size_t col = 0; col < n; ++col) {
        size_t pivot = n;
        for (size_t i = col; i < n; ++i) {
            if (work[i][col] != 0) {
                pivot = i;
                break;
            }
        }
        if (pivot == n) throw PreconditionError("matrix_inverse: singular matrix");
        std::swap(work[pivot], work[col]);
        std::swap(inv[pivot], inv[col]);
        const mpz_class s = f.inv(work[col][col]);
        for (size_t j = 0; j < n; ++j) {
            work[col][j] = f.mul(work[col][j], s);
            inv[col][j] = f.mul(inv[col][j], s);
        }
        for (size_t i = 0; i < n; ++i) {
            if (i == col || work[i][col] == 0) continue;
            const mpz_class factor = work[i][col];
            for (size_t j = 0; j < n; ++j) {
                work[i][j] = f.sub(work[i][j], f.mul(factor, work[col][j]));
                inv[i][j] = f.sub(inv[i][j], f.mul(factor, inv[col][j]));
            }
        }
    }
    return inv;
}

size_t matrix_rank_field(Matrix a, const PrimeField& f) {
    if (a.empty()) return 0;
    const size_t cols = a.front().size();
    for (auto& row : a) {
        for (auto& v : row) v = f.reduce(v);
    }
    size_t rank = 0;
    for (size_t col = 0; col < cols && rank < a.size(); ++col) {
        size_t pivot = a.size();
        for (size_t i = rank; i < a.size(); ++i) {
            if (a[i][col] != 0) {
                pivot = i;
                break;
            }
        }
        if (pivot == a.size()) continue;
        std::swap(a[rank], a[pivot]);
        const mpz_class s = f.inv(a[rank][col]);
        for (size_t j = col; j < cols; ++j) a[rank][j] = f.mul(a[rank][j], s);
        for (size_t i = 0; i < a.size(); ++i) {
            if (i == rank || a[i][col] == 0) continue;
            const mpz_class factor = a[i][col];
            for (size_t j = col; j < cols; ++j) {
                a[i][j] = f.sub(a[i][j], f.mul(factor, a[rank][j]));
            }
        }
        ++rank;
    }
    return rank;
}

namespace {

bool is_multivariate(CipherFamily f) {
    return f == CipherFamily::gmimc_erf || f == CipherFamily::gmimc_crf ||
           f == CipherFamily::hades;
}

Matrix seeded_invertible_matrix(SplitMix64& rng, size_t n, const PrimeField& field) {
    while (true) {
        Matrix m(n, std::vector<mpz_class>(n));
        for (auto& row : m) {
            for (auto& v : row) v = rng.below(field.modulus());
        }
        try {
            matrix_inverse(m, field);
            return m;
        } catch (const PreconditionError&) {
            // singular draw, take the next one
        }
    }
}

}  // namespace

CipherInstance resolve_spec(const CipherSpec& spec) {
    spec.validate();
    CipherInstance inst;
    inst.spec = spec;
    inst.field = make_field(spec.q);
    const auto& field = *inst.field;
    const size_t n = size_t(spec.branches);
    SplitMix64 rng(spec.seed);

    // draw order is frozen: constants round by round, then affine layers,
    // then the key schedule
    if (!spec.explicit_constants.empty()) {
        inst.constants = spec.explicit_constants;
        for (auto& row : inst.constants) {
            for (auto& v : row) v = field.reduce(v);
        }
    } else {
        inst.constants.resize(size_t(spec.rounds));
        for (auto& row : inst.constants) {
            row.resize(n);
            for (auto& v : row) v = rng.below(spec.q);
        }
    }
    if (is_multivariate(spec.family)) {
        inst.layers.reserve(size_t(spec.rounds));
        for (int i = 0; i < spec.rounds; ++i) {
            switch (spec.affine_layer) {
                case AffineLayerKind::shift: inst.layers.push_back(shift_matrix(n)); break;
                case AffineLayerKind::circulant: inst.layers.push_back(circulant_matrix(n)); break;
                case AffineLayerKind::seeded:
                    inst.layers.push_back(seeded_invertible_matrix(rng, n, field));
                    break;
            }
            matrix_inverse(inst.layers.back(), field);  // invertibility invariant
        }
    }
    if (spec.key_schedule == KeyScheduleKind::affine) {
        for (int i = 0; i <= spec.rounds; ++i) {
            inst.key_matrices.push_back(seeded_invertible_matrix(rng, n, field));
            std::vector<mpz_class> off(n);
            for (auto& v : off) v = rng.below(spec.q);
            inst.key_offsets.push_back(std::move(off));
        }
    }
    return inst;
}

namespace {

// round key as a value, i = 0 is the whitening key
std::vector<mpz_class> round_key(const CipherInstance& inst, const std::vector<mpz_class>& key,
                                 int i) {
    if (inst.spec.key_schedule == KeyScheduleKind::none) return key;
    const auto& field = *inst.field;
    auto k = matrix_apply(inst.key_matrices[size_t(i)], key, field);
    for (size_t j = 0; j < k.size(); ++j) {
        k[j] = field.add(k[j], inst.key_offsets[size_t(i)][j]);
    }
    return k;
}

std::vector<mpz_class> apply_layer_values(const CipherInstance& inst, int round,
                                          const std::vector<mpz_class>& state) {
    const auto& field = *inst.field;
    const auto& spec = inst.spec;
    const size_t n = state.size();
    const mpz_class d = spec.exponent;
    std::vector<mpz_class> s = state;
    switch (spec.family) {
        case CipherFamily::gmimc_erf: {
            const mpz_class t = field.pow(s[n - 1], d);
            for (size_t j = 0; j + 1 < n; ++j) s[j] = field.add(s[j], t);
            break;
        }
        case CipherFamily::gmimc_crf: {
            mpz_class arg = 0;
            for (size_t j = 1; j < n; ++j) arg = field.add(arg, s[j]);
            s[0] = field.add(s[0], field.pow(arg, d));
            break;
        }
        case CipherFamily::hades: {
            const bool full = round <= spec.rounds_full ||
                              round > spec.rounds_full + spec.rounds_partial;
            if (full) {
                for (auto& v : s) v = field.pow(v, d);
            } else {
                s[0] = field.pow(s[0], d);
            }
            break;
        }
        default: throw Error("apply_layer_values: univariate family");
    }
    return s;
}

}  // namespace

std::vector<mpz_class> encrypt(const CipherInstance& inst, const std::vector<mpz_class>& key,
                               const std::vector<mpz_class>& plaintext) {
    const auto& spec = inst.spec;
    const auto& field = *inst.field;
    const mpz_class d = spec.exponent;
    switch (spec.family) {
        case CipherFamily::mimc: {
            if (key.size() != 1 || plaintext.size() != 1) {
                throw PreconditionError("encrypt: mimc expects one key and one plaintext block");
            }
            mpz_class x = field.reduce(plaintext[0]);
            const mpz_class k = field.reduce(key[0]);
            for (int i = 1; i <= spec.rounds; ++i) {
                x = field.pow(field.add(field.add(x, k), inst.constants[size_t(i - 1)][0]), d);
                if (i == spec.rounds) x = field.add(x, k);
            }
            return {x};
        }
        case CipherFamily::feistel_mimc:
        case CipherFamily::feistel_hash: {
            if (key.size() != 1 || plaintext.size() != 2) {
                throw PreconditionError("encrypt: feistel expects one key and two blocks");
            }
            mpz_class xl = field.reduce(plaintext[0]);
            mpz_class xr = field.reduce(plaintext[1]);
            const mpz_class k = field.reduce(key[0]);
            for (int i = 1; i <= spec.rounds; ++i) {
                mpz_class t = field.pow(
                    field.add(field.add(xl, k), inst.constants[size_t(i - 1)][0]), d);
                t = field.add(t, xr);
                if (i == spec.rounds) t = field.add(t, k);
                xr = xl;
                xl = t;
            }
            return {xl, xr};
        }
        case CipherFamily::gmimc_erf:
        case CipherFamily::gmimc_crf:
        case CipherFamily::hades: {
            const size_t n = size_t(spec.branches);
            if (key.size() != n || plaintext.size() != n) {
                throw PreconditionError("encrypt: block arity mismatch");
            }
            std::vector<mpz_class> state(n);
            auto k0 = round_key(inst, key, 0);
            for (size_t j = 0; j < n; ++j) {
                state[j] = field.add(field.reduce(plaintext[j]), k0[j]);
            }
            for (int i = 1; i <= spec.rounds; ++i) {
                state = apply_layer_values(inst, i, state);
                state = matrix_apply(inst.layers[size_t(i - 1)], state, field);
                auto ki = round_key(inst, key, i);
                for (size_t j = 0; j < n; ++j) {
                    state[j] = field.add(field.add(state[j], inst.constants[size_t(i - 1)][j]),
                                         ki[j]);
                }
            }
            return state;
        }
    }
    throw Error("unreachable");
}

std::pair<mpz_class, mpz_class> hash_digest(const CipherInstance& inst, const mpz_class& preimage) {
    if (inst.spec.family != CipherFamily::feistel_hash) {
        throw PreconditionError("hash_digest: spec is not feistel_hash");
    }
    auto out = encrypt(inst, {0}, {0, preimage});
    return {out[0], out[1]};
}

std::string VariableRole::str() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::key: os << "key"; break;
        case Kind::state: os << "state"; break;
        case Kind::plaintext_unknown: os << "plaintext_unknown"; break;
        case Kind::hash_output_unknown: os << "hash_output_unknown"; break;
        case Kind::homogenizer: os << "homogenizer"; break;
    }
    if (round >= 0) os << ":round=" << round;
    if (branch >= 0) os << ":branch=" << branch;
    if (sample >= 0) os << ":sample=" << sample;
    return os.str();
}

void PolySystem::validate() const {
    if (!ring) throw PreconditionError("PolySystem: missing ring");
    if (roles.size() != ring->nvars()) {
        throw PreconditionError("PolySystem: roles must cover all variables");
    }
    for (const auto& p : polys) {
        if (!(*p.ring() == *ring)) throw PreconditionError("PolySystem: polynomial ring mismatch");
    }
}

namespace {

// (base + y + c)^d as a polynomial, base either a constant or a variable
Polynomial round_power(const RingPtr& ring, const Polynomial& base, std::optional<size_t> key_var,
                       const mpz_class& c, int d) {
    Polynomial acc = base + Polynomial::constant(ring, c);
    if (key_var) acc = acc + Polynomial::variable(ring, *key_var);
    return acc.pow(uint32_t(d));
}

std::vector<Polynomial> key_polys(const CipherInstance& inst, const RingPtr& ring,
                                  size_t key_base, int i) {
    const size_t n = size_t(inst.spec.branches);
    std::vector<Polynomial> y;
    y.reserve(n);
    for (size_t j = 0; j < n; ++j) y.push_back(Polynomial::variable(ring, key_base + j));
    if (inst.spec.key_schedule == KeyScheduleKind::none) return y;
    const auto& m = inst.key_matrices[size_t(i)];
    const auto& b = inst.key_offsets[size_t(i)];
    std::vector<Polynomial> out;
    out.reserve(n);
    for (size_t r = 0; r < n; ++r) {
        Polynomial acc = Polynomial::constant(ring, b[r]);
        for (size_t j = 0; j < n; ++j) acc = acc + y[j].scaled(m[r][j]);
        out.push_back(acc);
    }
    return out;
}

std::vector<Polynomial> matrix_apply_polys(const Matrix& a, const std::vector<Polynomial>& v,
                                           const RingPtr& ring) {
    std::vector<Polynomial> out;
    out.reserve(a.size());
    for (size_t i = 0; i < a.size(); ++i) {
        Polynomial acc = Polynomial::zero(ring);
        for (size_t j = 0; j < v.size(); ++j) acc = acc + v[j].scaled(a[i][j]);
        out.push_back(acc);
    }
    return out;
}

std::vector<Polynomial> apply_layer_polys(const CipherInstance& inst, int round,
                                          const std::vector<Polynomial>& state,
                                          const RingPtr& ring) {
    const auto& spec = inst.spec;
    const size_t n = state.size();
    const uint32_t d = uint32_t(spec.exponent);
    std::vector<Polynomial> s = state;
    switch (spec.family) {
        case CipherFamily::gmimc_erf: {
            const Polynomial t = s[n - 1].pow(d);
            for (size_t j = 0; j + 1 < n; ++j) s[j] = s[j] + t;
            break;
        }
        case CipherFamily::gmimc_crf: {
            Polynomial arg = Polynomial::zero(ring);
            for (size_t j = 1; j < n; ++j) arg = arg + s[j];
            s[0] = s[0] + arg.pow(d);
            break;
        }
        case CipherFamily::hades: {
            const bool full = round <= spec.rounds_full ||
                              round > spec.rounds_full + spec.rounds_partial;
            if (full) {
                for (auto& p : s) p = p.pow(d);
            } else {
                s[0] = s[0].pow(d);
            }
            break;
        }
        default: throw Error("apply_layer_polys: univariate family");
    }
    return s;
}

}  // namespace

PolySystem build_mimc_system(const CipherInstance& inst, const mpz_class& plaintext,
                             const mpz_class& ciphertext) {
    if (inst.spec.family != CipherFamily::mimc) {
        throw PreconditionError("build_mimc_system: wrong family");
    }
    const int r = inst.spec.rounds;
    const int d = inst.spec.exponent;
    std::vector<std::string> vars;
    for (int i = 1; i < r; ++i) vars.push_back("x" + std::to_string(i));
    vars.push_back("y");
    RingPtr ring = make_ring(vars, inst.field, TermOrderKind::drl);
    const size_t key = vars.size() - 1;

    PolySystem sys;
    sys.ring = ring;
    for (int i = 1; i < r; ++i) {
        sys.roles.push_back({VariableRole::Kind::state, i, 1, -1});
    }
    sys.roles.push_back({VariableRole::Kind::key, -1, -1, -1});

    const mpz_class p = inst.field->reduce(plaintext);
    const mpz_class c = inst.field->reduce(ciphertext);
    for (int i = 1; i <= r; ++i) {
        Polynomial base = i == 1 ? Polynomial::constant(ring, p)
                                 : Polynomial::variable(ring, size_t(i - 2));
        Polynomial f = round_power(ring, base, key, inst.constants[size_t(i - 1)][0], d);
        if (i < r) {
            f = f - Polynomial::variable(ring, size_t(i - 1));
        } else {
            f = f + Polynomial::variable(ring, key) - Polynomial::constant(ring, c);
        }
        sys.polys.push_back(f);
        sys.provenance.round_blocks.emplace_back(size_t(i - 1), size_t(i));
    }
    sys.provenance.builder = "build_mimc_system";
    sys.provenance.spec = inst.spec;
    sys.provenance.note = "DRL, x1 > ... > x_{r-1} > y";
    return sys;
}

PolySystem build_feistel_system(const CipherInstance& inst, const mpz_class& pl,
                                const mpz_class& pr, const mpz_class& cl, const mpz_class& cr) {
    if (inst.spec.family != CipherFamily::feistel_mimc &&
        inst.spec.family != CipherFamily::feistel_hash) {
        throw PreconditionError("build_feistel_system: wrong family");
    }
    const int r = inst.spec.rounds;
    const int d = inst.spec.exponent;
    std::vector<std::string> vars;
    for (int i = 1; i < r; ++i) {
        vars.push_back("xL" + std::to_string(i));
        vars.push_back("xR" + std::to_string(i));
    }
    vars.push_back("y");
    RingPtr ring = make_ring(vars, inst.field, TermOrderKind::drl);
    const size_t key = vars.size() - 1;
    auto xl = [&](int i) { return Polynomial::variable(ring, size_t(2 * (i - 1))); };
    auto xr = [&](int i) { return Polynomial::variable(ring, size_t(2 * (i - 1) + 1)); };

    PolySystem sys;
    sys.ring = ring;
    for (int i = 1; i < r; ++i) {
        sys.roles.push_back({VariableRole::Kind::state, i, 1, -1});
        sys.roles.push_back({VariableRole::Kind::state, i, 2, -1});
    }
    sys.roles.push_back({VariableRole::Kind::key, -1, -1, -1});

    const auto& field = *inst.field;
    const mpz_class PL = field.reduce(pl), PR = field.reduce(pr);
    const mpz_class CL = field.reduce(cl), CR = field.reduce(cr);
    for (int i = 1; i <= r; ++i) {
        Polynomial sbox_in = i == 1 ? Polynomial::constant(ring, PL) : xl(i - 1);
        Polynomial fl = round_power(ring, sbox_in, key, inst.constants[size_t(i - 1)][0], d);
        if (i == r) fl = fl + Polynomial::variable(ring, key);
        fl = fl + (i == 1 ? Polynomial::constant(ring, PR) : xr(i - 1));
        fl = fl - (i == r ? Polynomial::constant(ring, CL) : xl(i));
        Polynomial fr = (i == 1 ? Polynomial::constant(ring, PL) : xl(i - 1)) -
                        (i == r ? Polynomial::constant(ring, CR) : xr(i));
        sys.polys.push_back(fl);
        sys.polys.push_back(fr);
        sys.provenance.round_blocks.emplace_back(size_t(2 * (i - 1)), size_t(2 * i));
    }
    sys.provenance.builder = "build_feistel_system";
    sys.provenance.spec = inst.spec;
    sys.provenance.note = "DRL, xL1 > xR1 > ... > xL_{r-1} > xR_{r-1} > y";
    return sys;
}

PolySystem build_two_plaintext_system(const CipherInstance& inst,
                                      const std::pair<mpz_class, mpz_class>& pair1,
                                      const std::pair<mpz_class, mpz_class>& pair2) {
    if (inst.spec.family != CipherFamily::mimc) {
        throw PreconditionError("build_two_plaintext_system: wrong family");
    }
    const auto& field = *inst.field;
    if (field.reduce(pair1.first) == field.reduce(pair2.first) &&
        field.reduce(pair1.second) == field.reduce(pair2.second)) {
        throw PreconditionError("build_two_plaintext_system: identical plain/ciphertext pairs");
    }
    const int r = inst.spec.rounds;
    const int d = inst.spec.exponent;
    std::vector<std::string> vars;
    for (int i = 1; i < r; ++i) vars.push_back("u" + std::to_string(i));
    for (int i = 1; i < r; ++i) vars.push_back("v" + std::to_string(i));
    vars.push_back("y");
    RingPtr ring = make_ring(vars, inst.field, TermOrderKind::drl);
    const size_t key = vars.size() - 1;

    PolySystem sys;
    sys.ring = ring;
    for (int s = 1; s <= 2; ++s) {
        for (int i = 1; i < r; ++i) {
            sys.roles.push_back({VariableRole::Kind::state, i, 1, s});
        }
    }
    sys.roles.push_back({VariableRole::Kind::key, -1, -1, -1});

    auto chain = [&](size_t base, const mpz_class& p, const mpz_class& c) {
        for (int i = 1; i <= r; ++i) {
            Polynomial in = i == 1 ? Polynomial::constant(ring, field.reduce(p))
                                   : Polynomial::variable(ring, base + size_t(i - 2));
            Polynomial f = round_power(ring, in, key, inst.constants[size_t(i - 1)][0], d);
            if (i < r) {
                f = f - Polynomial::variable(ring, base + size_t(i - 1));
            } else {
                f = f + Polynomial::variable(ring, key) -
                    Polynomial::constant(ring, field.reduce(c));
            }
            sys.polys.push_back(f);
        }
    };
    chain(0, pair1.first, pair1.second);
    chain(size_t(r - 1), pair2.first, pair2.second);
    sys.provenance.builder = "build_two_plaintext_system";
    sys.provenance.spec = inst.spec;
    sys.provenance.note = "DRL, u1 > ... > u_{r-1} > v1 > ... > v_{r-1} > y";
    return sys;
}

namespace {

PolySystem build_multivariate_system(const CipherInstance& inst,
                                     const std::vector<mpz_class>& plaintext,
                                     const std::vector<mpz_class>& ciphertext,
                                     const std::string& builder) {
    const auto& spec = inst.spec;
    const size_t n = size_t(spec.branches);
    if (plaintext.size() != n || ciphertext.size() != n) {
        throw PreconditionError(builder + ": block arity mismatch");
    }
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

    PolySystem sys;
    sys.ring = ring;
    for (int i = 1; i < r; ++i) {
        for (size_t j = 1; j <= n; ++j) {
            sys.roles.push_back({VariableRole::Kind::state, i, int(j), -1});
        }
    }
    for (size_t j = 1; j <= n; ++j) {
        sys.roles.push_back({VariableRole::Kind::key, -1, int(j), -1});
    }

    const auto& field = *inst.field;
    auto state_vars = [&](int i) {
        std::vector<Polynomial> s;
        for (size_t j = 0; j < n; ++j) {
            s.push_back(Polynomial::variable(ring, size_t(i - 1) * n + j));
        }
        return s;
    };

    auto k0 = key_polys(inst, ring, key_base, 0);
    std::vector<Polynomial> input;
    for (size_t j = 0; j < n; ++j) {
        input.push_back(Polynomial::constant(ring, field.reduce(plaintext[j])) + k0[j]);
    }
    for (int i = 1; i <= r; ++i) {
        std::vector<Polynomial> prev = i == 1 ? input : state_vars(i - 1);
        auto mixed = matrix_apply_polys(inst.layers[size_t(i - 1)],
                                        apply_layer_polys(inst, i, prev, ring), ring);
        auto ki = key_polys(inst, ring, key_base, i);
        const size_t begin = sys.polys.size();
        for (size_t j = 0; j < n; ++j) {
            Polynomial f = mixed[j] + Polynomial::constant(ring, inst.constants[size_t(i - 1)][j]) +
                           ki[j];
            if (i == r) {
                f = f - Polynomial::constant(ring, field.reduce(ciphertext[j]));
            } else {
                f = f - Polynomial::variable(ring, size_t(i)*n - n + j);
            }
            sys.polys.push_back(f);
        }
        sys.provenance.round_blocks.emplace_back(begin, sys.polys.size());
    }
    sys.provenance.builder = builder;
    sys.provenance.spec = inst.spec;
    sys.provenance.note = "DRL, x^(1) > ... > x^(r-1) > y; constants added after the affine layer";
    return sys;
}

}  // namespace

PolySystem build_gmimc_system(const CipherInstance& inst, const std::vector<mpz_class>& plaintext,
                              const std::vector<mpz_class>& ciphertext) {
    if (inst.spec.family != CipherFamily::gmimc_erf &&
        inst.spec.family != CipherFamily::gmimc_crf) {
        throw PreconditionError("build_gmimc_system: wrong family");
    }
    return build_multivariate_system(inst, plaintext, ciphertext, "build_gmimc_system");
}

PolySystem build_hades_system(const CipherInstance& inst, const std::vector<mpz_class>& plaintext,
                              const std::vector<mpz_class>& ciphertext) {
    if (inst.spec.family != CipherFamily::hades) {
        throw PreconditionError("build_hades_system: wrong family");
    }
    return build_multivariate_system(inst, plaintext, ciphertext, "build_hades_system");
}

PolySystem build_hash_preimage_system(const CipherInstance& inst, const mpz_class& alpha) {
    if (inst.spec.family != CipherFamily::feistel_hash) {
        throw PreconditionError("build_hash_preimage_system: wrong family");
    }
    const int r = inst.spec.rounds;
    const int d = inst.spec.exponent;
    const auto& field = *inst.field;
    std::vector<std::string> vars;
    for (int i = r - 1; i >= 1; --i) {
        vars.push_back("xR" + std::to_string(i));
        vars.push_back("xL" + std::to_string(i));
    }
    vars.push_back("x1");
    vars.push_back("x2");
    RingPtr ring = make_ring(vars, inst.field, TermOrderKind::drl);
    const size_t x1 = vars.size() - 2;
    const size_t x2 = vars.size() - 1;
    auto xl = [&](int i) { return Polynomial::variable(ring, size_t(2 * (r - 1 - i)) + 1); };
    auto xr = [&](int i) { return Polynomial::variable(ring, size_t(2 * (r - 1 - i))); };

    PolySystem sys;
    sys.ring = ring;
    for (int i = r - 1; i >= 1; --i) {
        sys.roles.push_back({VariableRole::Kind::state, i, 2, -1});
        sys.roles.push_back({VariableRole::Kind::state, i, 1, -1});
    }
    sys.roles.push_back({VariableRole::Kind::plaintext_unknown, -1, -1, -1});
    sys.roles.push_back({VariableRole::Kind::hash_output_unknown, -1, -1, -1});

    // permutation inputs: the unknown block enters the branch that skips the
    // first round function, the other branch is zero, y = 0
    const Polynomial pl = Polynomial::constant(ring, 0);
    const Polynomial pr = Polynomial::variable(ring, x1);
    for (int i = 1; i <= r; ++i) {
        Polynomial sbox_in = i == 1 ? pl : xl(i - 1);
        Polynomial fl = round_power(ring, sbox_in, std::nullopt,
                                    inst.constants[size_t(i - 1)][0], d);
        fl = fl + (i == 1 ? pr : xr(i - 1));
        fl = fl - (i == r ? Polynomial::constant(ring, field.reduce(alpha)) : xl(i));
        Polynomial fr = (i == 1 ? pl : xl(i - 1)) -
                        (i == r ? Polynomial::variable(ring, x2) : xr(i));
        sys.polys.push_back(fl);
        sys.polys.push_back(fr);
        sys.provenance.round_blocks.emplace_back(size_t(2 * (i - 1)), size_t(2 * i));
    }
    sys.provenance.builder = "build_hash_preimage_system";
    sys.provenance.spec = inst.spec;
    sys.provenance.note =
        "DRL, xR_{r-1} > xL_{r-1} > ... > xR1 > xL1 > x1 > x2; preimage x1 in the branch "
        "outside the first round function, digest branch fixed to alpha, x2 free output";
    return sys;
}

PolySystem build_spn_sponge_system(const FieldPtr& field, int exponent, const mpz_class& alpha) {
    const auto& f = *field;
    if (!is_permutation_exponent(exponent, f.modulus())) {
        throw PreconditionError("build_spn_sponge_system: exponent must permute F_q");
    }
    RingPtr ring = make_ring({"x1_1", "x2_1", "x1_2", "x2_2", "xin", "yout"}, field,
                             TermOrderKind::drl);
    const Matrix a = circulant_matrix(2);
    const Matrix ainv = matrix_inverse(a, f);
    const uint32_t d = uint32_t(exponent);

    PolySystem sys;
    sys.ring = ring;
    sys.roles = {{VariableRole::Kind::state, 1, 1, -1}, {VariableRole::Kind::state, 1, 2, -1},
                 {VariableRole::Kind::state, 2, 1, -1}, {VariableRole::Kind::state, 2, 2, -1},
                 {VariableRole::Kind::plaintext_unknown, -1, -1, -1},
                 {VariableRole::Kind::hash_output_unknown, -1, -1, -1}};

    auto var = [&](size_t i) { return Polynomial::variable(ring, i); };
    // mixing applied before the first substitution layer
    std::vector<Polynomial> s0 = {var(4).scaled(a[0][0]), var(4).scaled(a[1][0])};
    std::vector<Polynomial> out1 = {var(0), var(1)};
    std::vector<Polynomial> out2 = {var(2), var(3)};
    std::vector<Polynomial> out3 = {Polynomial::constant(ring, f.reduce(alpha)), var(5)};

    auto emit_round = [&](const std::vector<Polynomial>& in, bool full,
                          const std::vector<Polynomial>& out) {
        std::vector<Polynomial> sb = {in[0].pow(d), full ? in[1].pow(d) : in[1]};
        auto rhs = matrix_apply_polys(ainv, out, ring);
        const size_t begin = sys.polys.size();
        for (size_t j = 0; j < 2; ++j) sys.polys.push_back(sb[j] - rhs[j]);
        sys.provenance.round_blocks.emplace_back(begin, sys.polys.size());
    };
    emit_round(s0, true, out1);
    emit_round(out1, false, out2);
    emit_round(out2, true, out3);

    sys.provenance.builder = "build_spn_sponge_system";
    sys.provenance.note =
        "two-branch SPN sponge preimage model, rounds full/partial/full, circulant(1,2) mixing "
        "(also before round 1), rate xin, digest alpha, free output yout";
    return sys;
}

PolySystem append_field_equations(const PolySystem& sys, const std::vector<size_t>& vars) {
    const mpz_class& q = sys.ring->field()->modulus();
    if (!q.fits_ulong_p() || q.get_ui() > (1UL << 30)) {
        throw PreconditionError("append_field_equations: modulus too large for desk work");
    }
    const uint32_t e = uint32_t(q.get_ui());
    PolySystem out = sys;
    for (size_t v : vars) {
        if (v >= sys.ring->nvars()) throw PreconditionError("append_field_equations: bad variable");
        out.polys.push_back(Polynomial::variable(sys.ring, v, e) -
                            Polynomial::variable(sys.ring, v));
    }
    if (!vars.empty()) {
        out.provenance.note += "; field equations appended";
        out.provenance.round_blocks.clear();
    }
    return out;
}

namespace {

std::vector<Matrix> provenance_layers(const PolySystem& sys, const char* who) {
    if (!sys.provenance.spec) throw PreconditionError(std::string(who) + ": system has no spec");
    CipherInstance inst = resolve_spec(*sys.provenance.spec);
    if (inst.layers.empty()) throw PreconditionError(std::string(who) + ": family has no layers");
    return inst.layers;
}

}  // namespace

PolySystem spn_transform(const PolySystem& sys) {
    auto layers = provenance_layers(sys, "spn_transform");
    const auto& field = *sys.ring->field();
    if (sys.provenance.round_blocks.size() != layers.size()) {
        throw PreconditionError("spn_transform: round structure missing");
    }
    PolySystem out = sys;
    for (size_t i = 0; i < layers.size(); ++i) {
        const auto [b, e] = sys.provenance.round_blocks[i];
        const Matrix inv = matrix_inverse(layers[i], field);
        std::vector<Polynomial> block(sys.polys.begin() + long(b), sys.polys.begin() + long(e));
        auto transformed = matrix_apply_polys(inv, block, sys.ring);
        std::copy(transformed.begin(), transformed.end(), out.polys.begin() + long(b));
    }
    out.provenance.note += "; per-round inverse affine transform applied";
    return out;
}

PolySystem gmimc_erf_transform(const PolySystem& sys) {
    if (!sys.provenance.spec || sys.provenance.spec->family != CipherFamily::gmimc_erf) {
        throw PreconditionError("gmimc_erf_transform: not a gmimc_erf system");
    }
    PolySystem out = spn_transform(sys);
    const size_t n = size_t(sys.provenance.spec->branches);
    for (const auto& [b, e] : out.provenance.round_blocks) {
        for (size_t j = 1; j + 1 < n; ++j) {
            out.polys[b + j] = out.polys[b + j] - out.polys[b];
        }
    }
    out.provenance.note += "; erf branch differences applied";
    return out;
}

PolySystem eliminate_linear(const PolySystem& sys) {
    RingPtr ring = sys.ring;
    std::vector<Polynomial> polys = sys.polys;
    std::vector<VariableRole> roles = sys.roles;
    std::vector<std::string> vars = ring->variables();
    const auto& field = *ring->field();

    while (true) {
        size_t which = polys.size();
        for (size_t i = 0; i < polys.size(); ++i) {
            if (!polys[i].is_zero() && polys[i].degree() == 1) {
                which = i;
                break;
            }
        }
        if (which == polys.size()) break;
        const Polynomial f = polys[which];
        const Monomial lm = f.leading_monomial();
        size_t var = 0;
        while (lm.exps[var] == 0) ++var;
        // value = -(f - lc*var)/lc
        Polynomial rest = f - Polynomial::variable(ring, var).scaled(f.leading_coeff());
        Polynomial value = (-rest).scaled(field.inv(f.leading_coeff()));
        polys.erase(polys.begin() + long(which));
        for (auto& p : polys) p = p.substitute(var, value);

        // shrink the ring
        std::vector<std::string> new_vars = vars;
        new_vars.erase(new_vars.begin() + long(var));
        RingPtr new_ring = make_ring(new_vars, ring->field(), ring->order());
        for (auto& p : polys) p = p.into_ring(new_ring);
        roles.erase(roles.begin() + long(var));
        vars = std::move(new_vars);
        ring = new_ring;
    }
    std::vector<Polynomial> kept;
    for (auto& p : polys) {
        if (!p.is_zero()) kept.push_back(std::move(p));
    }

    PolySystem out;
    out.ring = ring;
    out.polys = std::move(kept);
    out.roles = std::move(roles);
    out.provenance = sys.provenance;
    out.provenance.round_blocks.clear();
    out.provenance.note += "; affine polynomials substituted and dropped";
    return out;
}

}
