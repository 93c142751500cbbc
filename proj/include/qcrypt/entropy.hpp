#pragma once

#include <limits>
#include <vector>

#include "qcrypt/matcore.hpp"

namespace qcrypt {

class ProbDist {
  public:
    explicit ProbDist(std::vector<double> p) : p_(std::move(p)) {
        double sum = 0.0;
        for (double x : p_) {
            if (x < -1e-12) throw ValidationError("ProbDist: negative entry");
            sum += x;
        }
        if (std::abs(sum - 1.0) > tol::trace_one) throw ValidationError("ProbDist: sum != 1");
    }
    size_t size() const { return p_.size(); }
    double operator[](size_t i) const { return p_[i]; }
    const std::vector<double>& probs() const { return p_; }

  private:
    std::vector<double> p_;
};

// Base-2 Shannon entropy, 0 log 0 = 0.
inline double shannon(const ProbDist& p) {
    double h = 0.0;
    for (double x : p.probs()) h -= xlog2(x);
    return h;
}

inline double shannon_raw(const std::vector<double>& p) {
    double h = 0.0;
    for (double x : p) h -= xlog2(x);
    return h;
}

// Sentinel for the min-entropy order.
inline constexpr double renyi_infinity = std::numeric_limits<double>::infinity();

inline double renyi(const ProbDist& p, double alpha) {
    if (alpha == renyi_infinity) {
        double m = 0.0;
        for (double x : p.probs()) m = std::max(m, x);
        return -std::log2(m);
    }
    if (alpha <= 0.0) throw ValidationError("renyi: alpha must be positive");
    if (alpha == 1.0) throw ValidationError("renyi: alpha = 1 is the Shannon entropy");
    double s = 0.0;
    for (double x : p.probs()) s += std::pow(x, alpha);
    return std::log2(s) / (1.0 - alpha);
}

inline double collision_entropy(const ProbDist& p) { return renyi(p, 2.0); }
inline double min_entropy(const ProbDist& p) { return renyi(p, renyi_infinity); }

inline double binary_entropy(double p) {
    if (p < 0.0 || p > 1.0) throw ValidationError("binary_entropy: p out of [0,1]");
    return -xlog2(p) - xlog2(1.0 - p);
}

// Outcome distribution of measuring a pure state in an orthonormal basis.
inline std::vector<double> basis_outcome_probs(const std::vector<Vec>& basis, const Vec& psi) {
    std::vector<double> p;
    p.reserve(basis.size());
    for (const auto& b : basis) {
        if (b.size() != psi.size()) throw ValidationError("measurement: dimension mismatch");
        p.push_back(std::norm(dot(b, psi)));
    }
    return p;
}

inline double measurement_entropy(const std::vector<Vec>& basis, const PureState& psi) {
    return shannon_raw(basis_outcome_probs(basis, psi.amplitudes()));
}

// Classical-quantum ensemble: labels with weights and conditional states.
class CqState {
  public:
    CqState(std::vector<double> weights, std::vector<Mat> conditionals)
        : weights_(std::move(weights)), states_(std::move(conditionals)) {
        if (weights_.size() != states_.size() || states_.empty())
            throw ValidationError("CqState: length mismatch");
        double sum = 0.0;
        for (double w : weights_) {
            if (w < 0.0) throw ValidationError("CqState: negative weight");
            sum += w;
        }
        if (sum <= 0.0) throw ValidationError("CqState: degenerate ensemble");
        if (std::abs(sum - 1.0) > 1e-9) throw ValidationError("CqState: weights do not sum to 1");
        const int d = states_.front().rows();
        for (const auto& s : states_)
            if (s.rows() != d || s.cols() != d) throw ValidationError("CqState: dimension mismatch");
    }

    size_t size() const { return states_.size(); }
    int dim() const { return states_.front().rows(); }
    double weight(size_t i) const { return weights_[i]; }
    const Mat& state(size_t i) const { return states_[i]; }

    Mat average() const {
        Mat r(dim(), dim());
        for (size_t i = 0; i < size(); ++i) r += weights_[i] * states_[i];
        return r;
    }

  private:
    std::vector<double> weights_;
    std::vector<Mat> states_;
};

// H_2(rho_AB | rho) = -log Tr([(I (x) rho^{-1/2}) rho_AB]^2) for the block
// classical-quantum state rho_AB = sum_x p_x |x><x| (x) rho_x. The inverse
// square root acts on the support only.
inline double quantum_collision_cond(const CqState& s) {
    const Mat rho = s.average();
    const Mat w = invsqrt_psd(rho, 1e-10);
    double t = 0.0;
    for (size_t x = 0; x < s.size(); ++x) {
        const Mat m = w * s.state(x);
        t += s.weight(x) * s.weight(x) * trace_product(m, m).real();
    }
    if (t <= 0.0) throw ValidationError("quantum_collision_cond: degenerate ensemble");
    return -std::log2(t);
}

// Square-root measurement success probability for a cq ensemble.
inline double srm_guessing_probability(const CqState& s) {
    const Mat w = invsqrt_psd(s.average(), 1e-10);
    double p = 0.0;
    for (size_t x = 0; x < s.size(); ++x) {
        const Mat mx = s.weight(x) * (w * s.state(x) * w);
        p += s.weight(x) * trace_product(mx, s.state(x)).real();
    }
    return p;
}

// Von Neumann entropy in bits.
inline double von_neumann(const Mat& rho) {
    const EigResult e = eig_hermitian(rho, 1e-7);
    double h = 0.0;
    for (double x : e.values) h -= xlog2(std::max(0.0, x));
    return h;
}

// Holevo quantity chi = S(rho) - sum_x p_x S(rho_x). Convenience only; no
// result in this library depends on it.
inline double holevo(const CqState& s) {
    double chi = von_neumann(s.average());
    for (size_t x = 0; x < s.size(); ++x) chi -= s.weight(x) * von_neumann(s.state(x));
    return chi;
}

} // namespace qcrypt
