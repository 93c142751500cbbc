#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qcrypt/entropy.hpp"
#include "qcrypt/matcore.hpp"
#include "qcrypt/pistar.hpp"

namespace qcrypt {

// ---------------------------------------------------------------------------
// Two-universal affine hashing y = Ax xor c over GF(2).

class AffineHash {
  public:
    AffineHash(int n, std::vector<std::vector<uint64_t>> rows, uint32_t shift)
        : n_(n), rows_(std::move(rows)), shift_(shift) {
        if (n_ < 1 || n_ > 1 << 16) throw ValidationError("AffineHash: n out of range");
        for (const auto& r : rows_)
            if (r.size() != words()) throw ValidationError("AffineHash: row width mismatch");
    }

    // Convenience constructor for small n with bitmask rows.
    AffineHash(int n, std::vector<uint32_t> rows, uint32_t shift)
        : AffineHash(n, widen(rows), shift) {
        if (n > 30) throw ValidationError("AffineHash: bitmask constructor limited to n <= 30");
    }

    static AffineHash sample(int n, int ell, Rng& rng) {
        const size_t nw = (static_cast<size_t>(n) + 63) / 64;
        std::vector<std::vector<uint64_t>> rows(ell, std::vector<uint64_t>(nw, 0));
        for (auto& row : rows) {
            for (size_t w = 0; w < nw; ++w) row[w] = rng.bits();
            const int tail = n % 64;
            if (tail) row[nw - 1] &= (uint64_t(1) << tail) - 1;
        }
        const uint32_t c = static_cast<uint32_t>(rng.integer(1u << ell));
        return AffineHash(n, std::move(rows), c);
    }

    static AffineHash identity(int n) {
        const size_t nw = (static_cast<size_t>(n) + 63) / 64;
        std::vector<std::vector<uint64_t>> rows(n, std::vector<uint64_t>(nw, 0));
        for (int i = 0; i < n; ++i) rows[i][i / 64] = uint64_t(1) << (i % 64);
        return AffineHash(n, std::move(rows), 0);
    }

    int input_bits() const { return n_; }
    int output_bits() const { return static_cast<int>(rows_.size()); }

    uint32_t apply_bits(const std::vector<int>& bits) const {
        std::vector<uint64_t> x(words(), 0);
        for (size_t i = 0; i < bits.size() && static_cast<int>(i) < n_; ++i)
            if (bits[i] & 1) x[i / 64] |= uint64_t(1) << (i % 64);
        uint32_t y = shift_;
        for (size_t r = 0; r < rows_.size(); ++r) {
            int parity = 0;
            for (size_t w = 0; w < x.size(); ++w) parity ^= __builtin_popcountll(rows_[r][w] & x[w]) & 1;
            y ^= static_cast<uint32_t>(parity) << r;
        }
        return y;
    }

    uint32_t apply(uint32_t packed) const {
        std::vector<int> bits(n_, 0);
        for (int i = 0; i < n_ && i < 32; ++i) bits[i] = (packed >> i) & 1;
        return apply_bits(bits);
    }

  private:
    size_t words() const { return (static_cast<size_t>(n_) + 63) / 64; }
    static std::vector<std::vector<uint64_t>> widen(const std::vector<uint32_t>& rows) {
        std::vector<std::vector<uint64_t>> out;
        for (uint32_t r : rows) out.push_back({static_cast<uint64_t>(r)});
        return out;
    }

    int n_;
    std::vector<std::vector<uint64_t>> rows_;
    uint32_t shift_;
};

// Exhaustive two-universality check of the full affine family: for every
// pair x != y the collision probability is exactly 2^-ell, established by
// counting the rows orthogonal to each difference z = x xor y.
inline bool affine_family_two_universal(int n, int ell) {
    if (n < 1 || n > 12) throw ValidationError("affine_family_two_universal: n cap is 12");
    const uint32_t rows = 1u << n;
    for (uint32_t z = 1; z < rows; ++z) {
        uint32_t zero_rows = 0;
        for (uint32_t r = 0; r < rows; ++r)
            if ((__builtin_popcount(r & z) & 1) == 0) ++zero_rows;
        // Each of the ell independent rows hits 0 with probability 1/2.
        const double p_row = static_cast<double>(zero_rows) / rows;
        if (std::pow(p_row, ell) > std::pow(2.0, -ell) + 1e-12) return false;
    }
    return true;
}

// Privacy-amplification bound d(F(X)|F, D, rho_E) <= 2^{(ell+k)/2 - 1} sqrt(P_g).
inline double pa_bound(int ell, int k_leaked_bits, double p_guess) {
    if (p_guess <= 0.0 || p_guess > 1.0) throw ValidationError("pa_bound: p_guess out of (0,1]");
    return std::pow(2.0, 0.5 * (ell + k_leaked_bits) - 1.0) * std::sqrt(p_guess);
}

// Non-uniformity d(X|rho_E) = 1/2 || I/|X| (x) rho - sum_x p_x |x><x| (x) rho_x ||_1
// of a cq-state, given the label weights and conditional states. The operator
// is block diagonal over x, so the norm splits per label.
inline double nonuniformity(const std::vector<double>& weights, const std::vector<Mat>& conditional_states) {
    const size_t labels = conditional_states.size();
    if (weights.size() != labels || labels == 0) throw ValidationError("nonuniformity: length mismatch");
    const int d = conditional_states.front().rows();
    Mat avg(d, d);
    for (size_t x = 0; x < labels; ++x) avg += weights[x] * conditional_states[x];
    double tn = 0.0;
    for (size_t x = 0; x < labels; ++x)
        tn += trace_norm_hermitian(weights[x] * conditional_states[x] - (1.0 / labels) * avg);
    return 0.5 * tn;
}

inline double nonuniformity(const std::vector<Mat>& conditional_states) {
    return nonuniformity(std::vector<double>(conditional_states.size(), 1.0 / conditional_states.size()),
                         conditional_states);
}

// ---------------------------------------------------------------------------
// Per-qubit storage attacks and the uncertainty parameter Delta.

inline Mat bb84_state(int bit, int basis) {
    Vec v = basis == 0 ? (bit == 0 ? Vec{1.0, 0.0} : Vec{0.0, 1.0})
                       : (bit == 0 ? Vec{1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)}
                                   : Vec{1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0)});
    return projector(v);
}

inline Vec breidbart_vector(int m) {
    const double c = std::cos(M_PI / 8.0);
    const double s = std::sin(M_PI / 8.0);
    return m == 0 ? Vec{c, s} : Vec{s, -c};
}

// Guessing probability of a uniform bit sent in basis b after the channel:
// P_g(X | S(sigma_b)) = 1/2 (1 + || S(sigma_{0,b}) - S(sigma_{1,b}) ||_1 / 2).
inline double guessing_probability(const KrausChannel& s, int basis) {
    if (s.in_dim() != 2) throw ValidationError("guessing_probability: single-qubit channels only");
    const Mat d0 = s.apply_raw(bb84_state(0, basis));
    const Mat d1 = s.apply_raw(bb84_state(1, basis));
    return 0.5 * (1.0 + 0.5 * trace_norm_hermitian(d0 - d1));
}

// Delta(S) = sqrt(P_g(X|S(sigma_+)) P_g(X|S(sigma_x))).
inline double channel_delta(const KrausChannel& s) {
    return std::sqrt(guessing_probability(s, 0) * guessing_probability(s, 1));
}

// Product attack: P_g(X|rho_E) = prod_i P_g(X_i|rho_{E_i}) for basis b.
inline double guessing_product(const std::vector<KrausChannel>& channels, int basis) {
    if (channels.empty()) throw ValidationError("guessing_product: no channels");
    double p = 1.0;
    for (const auto& c : channels) p *= guessing_probability(c, basis);
    return p;
}

// Closed form of the depolarizing-storage theorem.
inline double depolarizing_delta_max(double r) {
    if (r < 0.0 || r > 1.0) throw ValidationError("depolarizing_delta_max: r out of [0,1]");
    const double breidbart = 0.5 + 0.5 / std::sqrt(2.0);
    const double store = 0.5 * (1.0 + r);
    return std::max(breidbart, store);
}

// Measurement instrument F = beta I + (alpha - beta)|phi><phi| symmetrized
// over {I, X, Z, XZ}, followed by depolarizing storage at rate r. The
// classical outcome is kept in an ancillary register.
inline KrausChannel symmetrized_attack_instrument(double alpha, double bloch_angle, double r) {
    if (alpha < 0.0 || alpha > 1.0 / std::sqrt(2.0) + 1e-12)
        throw ValidationError("symmetrized_attack_instrument: alpha out of range");
    const double beta = std::sqrt(std::max(0.0, 0.5 - alpha * alpha));
    const double x = std::cos(bloch_angle);
    const double z = std::sin(bloch_angle);
    const Mat phi = 0.5 * (Mat::identity(2) + x * ops::pauli_x() + z * ops::pauli_z());
    const Mat f = beta * Mat::identity(2) + (alpha - beta) * phi;
    const std::vector<Mat> gs = {Mat::identity(2), ops::pauli_x(), ops::pauli_z(), ops::pauli_x() * ops::pauli_z()};
    const KrausChannel depol = depolarizing_channel(r);
    std::vector<Mat> kraus;
    for (int g = 0; g < 4; ++g) {
        const Mat fg = gs[g] * f * gs[g].adjoint();
        for (const auto& nk : depol.operators()) {
            Mat v(8, 2); // outcome register (dim 4) (x) stored qubit
            const Mat op = nk * fg;
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) v(g * 2 + i, j) = op(i, j);
            kraus.push_back(std::move(v));
        }
    }
    return KrausChannel(std::move(kraus));
}

struct DepolarizingVerification {
    double max_delta = 0.0;
    double argmax_alpha = 0.0;
    double argmax_angle = 0.0;
    double closed_form = 0.0;
    bool within_bound = false;   // max_delta <= closed_form + 1e-4
    bool attains_bound = false;  // |max_delta - closed_form| <= 2e-3
};

// Grid search over the symmetrized two-parameter attack family; the grid
// never exceeds the closed form and attains it at the theorem's optimizers.
inline DepolarizingVerification verify_depolarizing_theorem(double r, int grid = 200) {
    if (r < 0.0 || r > 1.0) throw ValidationError("verify_depolarizing_theorem: r out of [0,1]");
    if (grid < 50) throw ValidationError("verify_depolarizing_theorem: grid too coarse");
    DepolarizingVerification v;
    v.closed_form = depolarizing_delta_max(r);
    const double alpha_max = 1.0 / std::sqrt(2.0);
    for (int i = 0; i <= grid; ++i) {
        const double alpha = alpha_max * i / grid;
        for (int j = 0; j <= grid; ++j) {
            const double angle = 0.5 * M_PI * j / grid;
            const double delta = channel_delta(symmetrized_attack_instrument(alpha, angle, r));
            if (delta > v.max_delta) {
                v.max_delta = delta;
                v.argmax_alpha = alpha;
                v.argmax_angle = angle;
            }
        }
    }
    v.within_bound = v.max_delta <= v.closed_form + 1e-4;
    v.attains_bound = std::abs(v.max_delta - v.closed_form) <= 2e-3;
    return v;
}

// ---------------------------------------------------------------------------
// Security bound formulas.

// delta_sec <= 2^{ell/2 - 1} Delta_max^{log2(4/3) n / 2}.
inline double security_bound_perfect(int n, int ell, double delta_max) {
    if (delta_max <= 0.0 || delta_max > 1.0) throw ValidationError("security_bound_perfect: delta out of (0,1]");
    const double lam = std::log2(4.0 / 3.0);
    return std::pow(2.0, 0.5 * ell - 1.0) * std::pow(delta_max, 0.5 * lam * n);
}

// delta_sec <= 2^{ell/2 - 1 + h(p_error) m / 4} Delta_max^{log2(4/3) m / 2}.
inline double security_bound_practical(int m, int ell, double p_error, double delta_max) {
    if (p_error < 0.0 || p_error >= 0.5) throw ValidationError("security_bound_practical: p_error out of [0, 1/2)");
    if (delta_max <= 0.0 || delta_max > 1.0) throw ValidationError("security_bound_practical: delta out of (0,1]");
    const double lam = std::log2(4.0 / 3.0);
    return std::pow(2.0, 0.5 * ell - 1.0 + binary_entropy(p_error) * m / 4.0) * std::pow(delta_max, 0.5 * lam * m);
}

// Exponent of the practical bound per transmitted qubit; security requires
// it to be negative.
inline double practical_security_exponent(double p_error, double delta_max) {
    return binary_entropy(p_error) / 4.0 + std::log2(delta_max) * std::log2(4.0 / 3.0) / 2.0;
}

// Largest tolerable p_error for a given Delta_max, by bisection on the
// crossover h(p) = -2 log2(Delta) log2(4/3).
inline double practical_crossover_p_error(double delta_max) {
    if (delta_max <= 0.0 || delta_max >= 1.0) throw ValidationError("practical_crossover_p_error: delta out of (0,1)");
    double lo = 0.0, hi = 0.5 - 1e-12;
    if (practical_security_exponent(hi, delta_max) < 0.0) return hi;
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (practical_security_exponent(mid, delta_max) < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

// ---------------------------------------------------------------------------
// Linear codes with brute-force syndrome decoding.

class LinearCode {
  public:
    LinearCode(int blocklength, std::vector<uint32_t> parity_rows)
        : m_(blocklength), h_(std::move(parity_rows)) {
        if (m_ < 1 || m_ > 20) throw ValidationError("LinearCode: blocklength out of range");
        // Full row rank over GF(2).
        std::vector<uint32_t> rows = h_;
        int rank = 0;
        for (int bit = m_ - 1; bit >= 0 && rank < static_cast<int>(rows.size()); --bit) {
            int pivot = -1;
            for (int i = rank; i < static_cast<int>(rows.size()); ++i)
                if ((rows[i] >> bit) & 1) {
                    pivot = i;
                    break;
                }
            if (pivot < 0) continue;
            std::swap(rows[rank], rows[pivot]);
            for (int i = 0; i < static_cast<int>(rows.size()); ++i)
                if (i != rank && ((rows[i] >> bit) & 1)) rows[i] ^= rows[rank];
            ++rank;
        }
        if (rank != static_cast<int>(h_.size())) throw ValidationError("LinearCode: parity check not full rank");
        build_table();
    }

    static LinearCode hamming74() {
        // Columns are the binary numbers 1..7 (bit i of row j = bit j of i+1).
        std::vector<uint32_t> rows(3, 0);
        for (int col = 0; col < 7; ++col) {
            const int label = col + 1;
            for (int j = 0; j < 3; ++j)
                if ((label >> j) & 1) rows[j] |= 1u << col;
        }
        return LinearCode(7, rows);
    }

    static LinearCode repetition3() { return LinearCode(3, {0b011, 0b101}); }

    // Error rate the preset is designed for: one correctable flip per block.
    double design_p_error() const { return static_cast<double>(radius_) / m_; }

    // Syndrome length stays within h(p) * blocklength * (1 + margin) at the
    // code's own design error rate.
    bool syndrome_rate_ok(double margin = 0.5) const {
        const double p = design_p_error();
        const double h = -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
        return syndrome_bits() <= h * m_ * (1.0 + margin);
    }

    int blocklength() const { return m_; }
    int syndrome_bits() const { return static_cast<int>(h_.size()); }
    int decoding_radius() const { return radius_; }

    uint32_t syndrome(uint32_t word) const {
        uint32_t s = 0;
        for (size_t i = 0; i < h_.size(); ++i)
            s |= static_cast<uint32_t>(__builtin_popcount(h_[i] & word) & 1) << i;
        return s;
    }

    // Minimum-weight coset representative for a syndrome.
    uint32_t coset_leader(uint32_t syn) const { return table_.at(syn); }

    // Recover x from a noisy copy given syn(x).
    uint32_t correct(uint32_t noisy, uint32_t syndrome_of_x) const {
        return noisy ^ coset_leader(syndrome(noisy) ^ syndrome_of_x);
    }

  private:
    void build_table() {
        const uint32_t nsyn = 1u << h_.size();
        table_.assign(nsyn, UINT32_MAX);
        uint32_t found = 0;
        for (int weight = 0; found < nsyn && weight <= m_; ++weight) {
            for (uint32_t w = 0; w < (1u << m_); ++w) {
                if (__builtin_popcount(w) != weight) continue;
                const uint32_t s = syndrome(w);
                if (table_[s] == UINT32_MAX) {
                    table_[s] = w;
                    ++found;
                }
            }
        }
        // Decoding radius: largest t such that every pattern of weight <= t
        // is the leader of its coset.
        radius_ = 0;
        for (int t = 1; t <= m_; ++t) {
            bool all = true;
            for (uint32_t w = 0; w < (1u << m_) && all; ++w)
                if (__builtin_popcount(w) == t && table_[syndrome(w)] != w) all = false;
            if (all)
                radius_ = t;
            else
                break;
        }
    }

    int m_;
    std::vector<uint32_t> h_;
    std::vector<uint32_t> table_;
    int radius_ = 0;
};

// Round trip through syndrome decoding; throws if the pattern is outside
// the decoding radius and fails to recover.
inline uint32_t syndrome_roundtrip(const LinearCode& code, uint32_t x, uint32_t error_pattern) {
    const uint32_t noisy = x ^ error_pattern;
    return code.correct(noisy, code.syndrome(x));
}

// ---------------------------------------------------------------------------
// 1-2 ROT protocol simulation.

enum class Attack { None, Breidbart, Store };

enum class CodePreset { None, Hamming74, Repetition3 };

struct RotParams {
    int n = 64;              // transmitted qubits
    int ell = 1;             // output string length
    int wait_time = 0;       // T, a label only: basis reveal happens at t = n + T
    bool practical = false;  // erasure reporting + syndromes
    double p_erase = 0.0;    // agreed system parameter; sets the abort rule
    double p_erase_actual = -1.0; // channel erasure rate; defaults to p_erase
    double p_error = 0.0;
    CodePreset code = CodePreset::Hamming74;
    double storage_r = 0.5; // depolarizing rate for Attack::Store
    uint64_t seed = Rng::kDefaultSeed;

    double channel_erase_rate() const { return p_erase_actual < 0.0 ? p_erase : p_erase_actual; }

    void validate() const {
        if (n < 1 || n > 4096) throw ValidationError("RotParams: n out of range");
        if (ell < 1 || ell > 20) throw ValidationError("RotParams: ell out of range");
        if (p_erase < 0.0 || p_erase >= 1.0) throw ValidationError("RotParams: p_erase out of [0,1)");
        if (channel_erase_rate() >= 1.0) throw ValidationError("RotParams: p_erase_actual out of [0,1)");
        if (p_error < 0.0 || p_error >= 0.5) throw ValidationError("RotParams: p_error out of [0,1/2)");
        if (storage_r < 0.0 || storage_r > 1.0) throw ValidationError("RotParams: storage_r out of [0,1]");
    }
};

struct RotStats {
    int trials = 0;
    int aborts = 0;
    int honest_correct = 0;     // over non-aborted honest trials
    int honest_completed = 0;
    int adversary_correct = 0;  // guesses of the non-chosen string
    int adversary_trials = 0;
    double correctness_rate = 0.0;
    double abort_rate = 0.0;
    double adversary_guess_rate = 0.0;
    double adversary_advantage = 0.0; // guess rate minus 2^-ell
    double delta_sec_bound = 0.0;     // analytic envelope for the attack
};

namespace detail {

struct AliceDraw {
    std::vector<int> x;
    std::vector<int> theta;
    AffineHash f0;
    AffineHash f1;
};

// Alice's randomness never depends on Bob's choice bit; her inputs are the
// protocol parameters and the (basis-independent) erasure report only.
inline AliceDraw draw_alice(const RotParams& p, Rng& rng) {
    AliceDraw a{std::vector<int>(p.n), std::vector<int>(p.n), AffineHash::identity(1), AffineHash::identity(1)};
    for (int i = 0; i < p.n; ++i) a.x[i] = rng.bit();
    for (int i = 0; i < p.n; ++i) a.theta[i] = rng.bit();
    // Hash inputs are padded to n bits, so the family is fixed per protocol.
    a.f0 = AffineHash::sample(p.n, p.ell, rng);
    a.f1 = AffineHash::sample(p.n, p.ell, rng);
    return a;
}

inline uint32_t pack_bits(const std::vector<int>& bits) {
    uint32_t w = 0;
    for (size_t i = 0; i < bits.size(); ++i) w |= static_cast<uint32_t>(bits[i] & 1) << i;
    return w;
}

struct SyndromeMessage {
    std::vector<uint32_t> block_syndromes;
    std::vector<int> leftover_bits; // transmitted in clear
};

inline SyndromeMessage encode_syndromes(const std::vector<int>& bits, const LinearCode* code) {
    SyndromeMessage msg;
    if (code == nullptr) {
        msg.leftover_bits = bits;
        return msg;
    }
    const int bl = code->blocklength();
    size_t i = 0;
    for (; i + bl <= bits.size(); i += bl) {
        std::vector<int> chunk(bits.begin() + i, bits.begin() + i + bl);
        msg.block_syndromes.push_back(code->syndrome(pack_bits(chunk)));
    }
    for (; i < bits.size(); ++i) msg.leftover_bits.push_back(bits[i]);
    return msg;
}

inline std::vector<int> decode_with_syndromes(const std::vector<int>& noisy, const SyndromeMessage& msg,
                                              const LinearCode* code) {
    std::vector<int> out;
    size_t i = 0;
    if (code != nullptr) {
        const int bl = code->blocklength();
        for (uint32_t syn : msg.block_syndromes) {
            std::vector<int> chunk(noisy.begin() + i, noisy.begin() + i + bl);
            const uint32_t fixed = code->correct(pack_bits(chunk), syn);
            for (int b = 0; b < bl; ++b) out.push_back((fixed >> b) & 1);
            i += bl;
        }
    }
    for (int bit : msg.leftover_bits) out.push_back(bit);
    return out;
}

inline uint32_t hash_block(const AffineHash& f, const std::vector<int>& bits, int n) {
    std::vector<int> padded = bits;
    padded.resize(n, 0);
    return f.apply_bits(padded);
}

} // namespace detail

// Monte-Carlo simulation of the randomized OT protocol; honest runs track
// correctness and aborts, adversarial runs the guessing rate of the
// non-chosen string.
inline RotStats simulate_rot(const RotParams& params, Attack attack, int trials) {
    params.validate();
    if (trials < 1) throw ValidationError("simulate_rot: trials must be >= 1");
    if (attack != Attack::None && params.n > 24) throw ValidationError("simulate_rot: adversarial n cap is 24");

    const LinearCode hamming = LinearCode::hamming74();
    const LinearCode rep = LinearCode::repetition3();
    const LinearCode* code = nullptr;
    if (params.practical) {
        if (params.code == CodePreset::Hamming74) code = &hamming;
        if (params.code == CodePreset::Repetition3) code = &rep;
    }

    RotStats stats;
    stats.trials = trials;
    const double breidbart_correct = 0.5 + 0.5 / std::sqrt(2.0);
    const double attack_delta = attack == Attack::Breidbart ? breidbart_correct
                                                            : depolarizing_delta_max(params.storage_r);
    if (attack != Attack::None) stats.delta_sec_bound = security_bound_perfect(params.n, params.ell, attack_delta);

    Rng base(params.seed);
    for (int trial = 0; trial < trials; ++trial) {
        Rng alice_rng = base.child(3 * trial);
        Rng channel_rng = base.child(3 * trial + 1);
        Rng bob_rng = base.child(3 * trial + 2);
        const detail::AliceDraw alice = detail::draw_alice(params, alice_rng);

        // Erasure report: i.i.d. per slot, independent of bases by model.
        std::vector<int> received(params.n, 1);
        if (params.practical && attack == Attack::None)
            for (int i = 0; i < params.n; ++i)
                received[i] = channel_rng.bernoulli(params.channel_erase_rate()) ? 0 : 1;

        std::vector<int> idx_b[2];
        for (int i = 0; i < params.n; ++i)
            if (received[i]) idx_b[alice.theta[i]].push_back(i);

        // Alice's abort rule on the reported counts.
        if (params.practical) {
            const double threshold = (1.0 - params.p_erase) * params.n / 2.0 - 2.0 * std::sqrt(params.n);
            if (static_cast<double>(idx_b[0].size()) <= threshold ||
                static_cast<double>(idx_b[1].size()) <= threshold) {
                ++stats.aborts;
                continue;
            }
        }

        auto alice_bits = [&](int b) {
            std::vector<int> bits;
            for (int i : idx_b[b]) bits.push_back(alice.x[i]);
            return bits;
        };
        const std::vector<int> xb0 = alice_bits(0);
        const std::vector<int> xb1 = alice_bits(1);
        const uint32_t s0 = detail::hash_block(alice.f0, xb0, params.n);
        const uint32_t s1 = detail::hash_block(alice.f1, xb1, params.n);

        if (attack == Attack::None) {
            // Honest Bob measures everything in basis C.
            const int c = bob_rng.bit();
            std::vector<int> noisy;
            for (int i : idx_b[c]) {
                int v = alice.theta[i] == c ? alice.x[i] : bob_rng.bit();
                if (params.practical && bob_rng.bernoulli(params.p_error)) v ^= 1;
                noisy.push_back(v);
            }
            std::vector<int> corrected = noisy;
            if (params.practical) {
                const detail::SyndromeMessage msg = detail::encode_syndromes(c == 0 ? xb0 : xb1, code);
                corrected = detail::decode_with_syndromes(noisy, msg, code);
            }
            const uint32_t sc = detail::hash_block(c == 0 ? alice.f0 : alice.f1, corrected, params.n);
            ++stats.honest_completed;
            if (sc == (c == 0 ? s0 : s1)) ++stats.honest_correct;
        } else {
            // Collective product attack; the adversary sees every qubit over
            // a perfect channel and learns Theta afterwards. With a
            // basis-symmetric attack C' = +; the target is S_x.
            std::vector<int> guesses;
            for (int i : idx_b[1]) {
                const double correct_prob = attack == Attack::Breidbart ? breidbart_correct
                                                                        : 0.5 * (1.0 + params.storage_r);
                guesses.push_back(bob_rng.bernoulli(correct_prob) ? alice.x[i] : 1 - alice.x[i]);
            }
            const uint32_t guess_hash = detail::hash_block(alice.f1, guesses, params.n);
            ++stats.adversary_trials;
            if (guess_hash == s1) ++stats.adversary_correct;
        }
    }

    stats.abort_rate = static_cast<double>(stats.aborts) / trials;
    if (stats.honest_completed > 0)
        stats.correctness_rate = static_cast<double>(stats.honest_correct) / stats.honest_completed;
    if (stats.adversary_trials > 0) {
        stats.adversary_guess_rate = static_cast<double>(stats.adversary_correct) / stats.adversary_trials;
        stats.adversary_advantage = stats.adversary_guess_rate - std::pow(2.0, -params.ell);
    }
    return stats;
}

} // namespace qcrypt
