#pragma once

#include <string>
#include <vector>

#include "qcrypt/entropy.hpp"
#include "qcrypt/mub.hpp"
#include "qcrypt/uncertainty.hpp"

namespace qcrypt {

enum class LockingFamily {
    TwoBasis,        // {I, H}^(x)n
    ThreeBasis,      // {I, H, K}^(x)n, n even
    PauliPrime,      // generalized-Pauli MUBs in prime dimension
    LatinSquare,     // Latin-square MUBs in square dimension
    ProductSquare,   // {U (x) U^*} product MUBs
};

inline const char* locking_family_name(LockingFamily f) {
    switch (f) {
        case LockingFamily::TwoBasis: return "two-basis";
        case LockingFamily::ThreeBasis: return "three-basis";
        case LockingFamily::PauliPrime: return "pauli-prime";
        case LockingFamily::LatinSquare: return "latin-square";
        case LockingFamily::ProductSquare: return "product-square";
    }
    return "?";
}

struct LockingResult {
    std::string family;
    int dim = 0;
    int n_bases = 0;
    double upper = 0.0; // log d - (analytic bound on the min average entropy)
    double lower = 0.0; // mutual information of the explicit measurement
    bool tight = false;
    double value() const { return upper; }
};

namespace detail {

// Exact mutual information between the uniform ensemble label (k, t) and
// the outcome of a rank-one POVM {weight_i |phi_i><phi_i|}.
inline double ensemble_measurement_information(const MubSet& m, const std::vector<Vec>& povm_vectors,
                                               const std::vector<double>& povm_weights) {
    const int d = m.dim();
    const int nt = static_cast<int>(m.size());
    const double p_kt = 1.0 / (d * nt);
    const size_t no = povm_vectors.size();
    std::vector<double> p_out(no, 0.0);
    std::vector<std::vector<double>> joint(no, std::vector<double>(static_cast<size_t>(d) * nt, 0.0));
    for (size_t i = 0; i < no; ++i) {
        for (int t = 0; t < nt; ++t)
            for (int k = 0; k < d; ++k) {
                const double pr = povm_weights[i] * std::norm(dot(povm_vectors[i], m[t][k]));
                joint[i][static_cast<size_t>(t) * d + k] = p_kt * pr;
                p_out[i] += p_kt * pr;
            }
    }
    double mi = 0.0;
    for (size_t i = 0; i < no; ++i)
        for (int t = 0; t < nt; ++t)
            for (int k = 0; k < d; ++k) {
                const double j = joint[i][static_cast<size_t>(t) * d + k];
                if (j > 1e-300) mi += j * std::log2(j / (p_out[i] * p_kt));
            }
    return mi;
}

// Tensor-power Bell basis on n qubits (n even): pairs of qubits measured in
// the two-qubit Bell basis.
inline std::vector<Vec> bell_povm(int n) {
    if (n % 2 != 0) throw ValidationError("bell_povm: n must be even");
    const double s = 1.0 / std::sqrt(2.0);
    const std::vector<Vec> bell2 = {
        {s, 0, 0, s}, {s, 0, 0, -s}, {0, s, s, 0}, {0, s, -s, 0}};
    std::vector<Vec> out = {{1.0}};
    for (int pair = 0; pair < n / 2; ++pair) {
        std::vector<Vec> next;
        for (const auto& prefix : out)
            for (const auto& b : bell2) next.push_back(kron_vec(prefix, b));
        out = std::move(next);
    }
    return out;
}

inline std::vector<Vec> computational_povm(int d) {
    std::vector<Vec> out;
    for (int k = 0; k < d; ++k) out.push_back(basis_state(d, k).amplitudes());
    return out;
}

} // namespace detail

// Accessible-information bounds for the uniform MUB locking ensemble.
// The upper bound is log d minus the Maassen-Uffink entropy bound (valid
// for every MubSet); the lower bound is the mutual information of an
// explicit measurement chosen per family.
inline LockingResult locking_accessible_info(const MubSet& m, LockingFamily family,
                                             uint64_t seed = Rng::kDefaultSeed) {
    if (m.dim() > 16) throw ValidationError("locking_accessible_info: dimension cap is 16");
    if (m.size() < 2) throw ValidationError("locking_accessible_info: need at least two bases");
    LockingResult r;
    r.family = locking_family_name(family);
    r.dim = m.dim();
    r.n_bases = static_cast<int>(m.size());
    const double logd = std::log2(static_cast<double>(m.dim()));
    r.upper = logd - 0.5 * logd;

    std::vector<Vec> povm;
    std::vector<double> weights;
    switch (family) {
        case LockingFamily::ThreeBasis: {
            const int n = static_cast<int>(std::lround(logd));
            if (n % 2 != 0) throw ValidationError("locking_accessible_info: three-basis family needs even n");
            povm = detail::bell_povm(n);
            weights.assign(povm.size(), 1.0);
            break;
        }
        case LockingFamily::TwoBasis:
        case LockingFamily::LatinSquare: {
            povm = detail::computational_povm(m.dim());
            weights.assign(povm.size(), 1.0);
            break;
        }
        case LockingFamily::ProductSquare: {
            const int n = static_cast<int>(std::lround(logd));
            if ((1 << n) != m.dim() || n % 2 != 0)
                throw ValidationError("locking_accessible_info: product family needs dimension 4^k");
            povm = detail::bell_povm(n);
            weights.assign(povm.size(), 1.0);
            break;
        }
        case LockingFamily::PauliPrime: {
            // Covariant POVM built from the numerical entropy minimizer.
            MinimizerOptions opt;
            opt.seed = seed;
            opt.restarts = 32;
            const UncertaintyResult u = min_avg_shannon(m, opt);
            const int d = m.dim();
            const Mat x = generalized_x(d);
            const Mat z = generalized_z(d);
            for (int a = 0; a < d; ++a) {
                Mat xa = Mat::identity(d);
                for (int k = 0; k < a; ++k) xa = xa * x;
                for (int b = 0; b < d; ++b) {
                    Mat zb = Mat::identity(d);
                    for (int k = 0; k < b; ++k) zb = zb * z;
                    povm.push_back(mat_vec((xa * zb).adjoint(), u.minimizer));
                    weights.push_back(1.0 / d);
                }
            }
            break;
        }
    }
    r.lower = detail::ensemble_measurement_information(m, povm, weights);
    if (r.lower > r.upper + 1e-7) throw NonConvergence("locking_accessible_info: sandwich violated");
    r.tight = std::abs(r.upper - r.lower) <= 1e-3;
    return r;
}

struct NonuniformGap {
    double baseline = 0.0;     // n/2
    double single_basis = 0.0; // max_t p_t * n from measuring the likeliest basis
    bool strict = false;       // single_basis > baseline
};

// Second clause of the three-basis locking lemma: a basis prior with
// max p_t > 1/2 beats the n/2 locking value by measuring that basis.
inline NonuniformGap nonuniform_prior_gap(const std::vector<double>& p_bases, int n) {
    if (n < 2 || n % 2 != 0) throw ValidationError("nonuniform_prior_gap: n must be even and >= 2");
    if (p_bases.size() != 3) throw ValidationError("nonuniform_prior_gap: three bases expected");
    double sum = 0.0, pmax = 0.0;
    for (double p : p_bases) {
        if (p < 0.0) throw ValidationError("nonuniform_prior_gap: invalid prior");
        sum += p;
        pmax = std::max(pmax, p);
    }
    if (std::abs(sum - 1.0) > 1e-9) throw ValidationError("nonuniform_prior_gap: invalid prior");
    NonuniformGap g;
    g.baseline = 0.5 * n;
    g.single_basis = pmax * n;
    g.strict = pmax > 0.5 && g.single_basis > g.baseline;
    return g;
}

struct LockcomParams {
    double a = 0.0; // binding: 2^a <= |U|
    double b = 0.0; // concealing: accessible-information bound
};

inline LockcomParams lockcom_params(int n_unitaries, double iacc_bound) {
    if (n_unitaries < 1) throw ValidationError("lockcom_params: need at least one unitary");
    return {std::log2(static_cast<double>(n_unitaries)), iacc_bound};
}

inline constexpr double qbsc_constant() { return 5.0 * 2.321928094887362 - 4.0; } // 5 log2 5 - 4

struct QbscVerdict {
    bool possible = true; // not ruled out
    double slack = 0.0;   // a + b + c - n
};

// (n,a,b)-QBSC schemes with a + b + c < n do not exist, c = 5 log 5 - 4.
inline QbscVerdict qbsc_impossibility(double n, double a, double b) {
    if (n < 0 || a < 0 || b < 0) throw ValidationError("qbsc_impossibility: negative parameter");
    QbscVerdict v;
    v.slack = a + b + qbsc_constant() - n;
    v.possible = v.slack >= 0.0;
    return v;
}

// xi(E) = n - H2(rho_AB | rho) for an ensemble over n-bit labels.
inline double qbsc_xi(const CqState& e, int n) {
    if (static_cast<size_t>(1) << n != e.size()) throw ValidationError("qbsc_xi: label/size mismatch");
    return n - quantum_collision_cond(e);
}

} // namespace qcrypt
