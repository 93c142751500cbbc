#pragma once

#include <functional>
#include <string>

#include "qcrypt/clifford.hpp"
#include "qcrypt/entropy.hpp"
#include "qcrypt/mub.hpp"

namespace qcrypt {

struct UncertaintyResult {
    std::string relation;
    double bound = 0.0;    // analytic lower bound, bits
    double achieved = 0.0; // numerical minimum, bits
    Vec minimizer;         // pure state attaining `achieved`
    bool tight(double eps = 1e-3) const { return std::abs(achieved - bound) <= eps; }
};

struct MinimizerOptions {
    int restarts = 64;
    int max_iterations = 2000;
    double fd_step = 1e-5;
    double grad_tol = 1e-7;
    uint64_t seed = Rng::kDefaultSeed;
};

namespace detail {

// Multi-start projected gradient descent on the unit sphere of complex
// amplitudes with central finite-difference gradients and Armijo
// backtracking. Restarts are independent; the minimum is kept.
inline std::pair<double, Vec> minimize_over_pure_states(const std::function<double(const Vec&)>& f, int dim,
                                                        const MinimizerOptions& opt) {
    auto eval = [&](const std::vector<double>& raw) {
        Vec v(dim);
        double n = 0.0;
        for (int i = 0; i < dim; ++i) {
            v[i] = cplx(raw[2 * i], raw[2 * i + 1]);
            n += std::norm(v[i]);
        }
        n = std::sqrt(n);
        for (auto& x : v) x /= n;
        return std::pair<double, Vec>(f(v), std::move(v));
    };

    double best = 1e300;
    Vec best_state;
    bool converged_once = false;
    Rng base(opt.seed);
    for (int restart = 0; restart < opt.restarts; ++restart) {
        Rng rng = base.child(restart);
        std::vector<double> x(2 * dim);
        double n = 0.0;
        for (double& c : x) {
            c = rng.gaussian();
            n += c * c;
        }
        for (double& c : x) c /= std::sqrt(n);

        double fx = eval(x).first;
        double step0 = 0.5;
        for (int iter = 0; iter < opt.max_iterations; ++iter) {
            // Central differences with radial component projected out.
            std::vector<double> g(2 * dim);
            for (int i = 0; i < 2 * dim; ++i) {
                std::vector<double> xp = x, xm = x;
                xp[i] += opt.fd_step;
                xm[i] -= opt.fd_step;
                g[i] = (eval(xp).first - eval(xm).first) / (2.0 * opt.fd_step);
            }
            double gx = 0.0;
            for (int i = 0; i < 2 * dim; ++i) gx += g[i] * x[i];
            double gnorm2 = 0.0;
            for (int i = 0; i < 2 * dim; ++i) {
                g[i] -= gx * x[i];
                gnorm2 += g[i] * g[i];
            }
            if (std::sqrt(gnorm2) < opt.grad_tol) {
                converged_once = true;
                break;
            }
            // Armijo backtracking.
            double step = step0;
            bool moved = false;
            for (int bt = 0; bt < 40; ++bt) {
                std::vector<double> cand = x;
                for (int i = 0; i < 2 * dim; ++i) cand[i] -= step * g[i];
                double cn = 0.0;
                for (double c : cand) cn += c * c;
                cn = std::sqrt(cn);
                for (double& c : cand) c /= cn;
                const double fc = eval(cand).first;
                if (fc <= fx - 1e-4 * step * gnorm2) {
                    x = std::move(cand);
                    fx = fc;
                    moved = true;
                    step0 = std::min(0.5, step * 2.0);
                    break;
                }
                step *= 0.5;
            }
            if (!moved) {
                converged_once = true;
                break;
            }
        }
        if (fx < best) {
            auto [v, state] = eval(x);
            best = v;
            best_state = std::move(state);
        }
    }
    if (!converged_once) throw NonConvergence("uncertainty minimizer: restarts exhausted without stationarity");
    return {best, best_state};
}

} // namespace detail

// -log max |<b1_k|b2_l>|; (log d)/2 for a mutually unbiased pair.
inline double maassen_uffink_bound(const OrthonormalBasis& b1, const OrthonormalBasis& b2) {
    if (b1.dim() != b2.dim()) throw ValidationError("maassen_uffink_bound: dimension mismatch");
    double c = 0.0;
    for (int k = 0; k < b1.dim(); ++k)
        for (int l = 0; l < b2.dim(); ++l) c = std::max(c, std::abs(dot(b1[k], b2[l])));
    return -std::log2(c);
}

inline double average_shannon(const MubSet& m, const Vec& psi) {
    double s = 0.0;
    for (const auto& b : m.bases()) s += shannon_raw(basis_outcome_probs(b.vectors(), psi));
    return s / static_cast<double>(m.size());
}

// Numerical minimum of (1/m) sum_t H(B_t | psi) over pure states, against
// the (log d)/2 bound valid for any set of MUBs.
inline UncertaintyResult min_avg_shannon(const MubSet& m, const MinimizerOptions& opt = {}) {
    if (m.dim() > 16) throw ValidationError("min_avg_shannon: dimension cap is 16");
    UncertaintyResult r;
    r.relation = "mub-shannon";
    r.bound = m.size() >= 2 ? 0.5 * std::log2(static_cast<double>(m.dim())) : 0.0;
    auto f = [&m](const Vec& psi) { return average_shannon(m, psi); };
    auto [val, state] = detail::minimize_over_pure_states(f, m.dim(), opt);
    r.achieved = val;
    r.minimizer = std::move(state);
    if (r.achieved < r.bound - 1e-6)
        throw NonConvergence("min_avg_shannon: numerical minimum beats the analytic bound");
    return r;
}

// -log((N + d - 1)/(d N)) for N mutually unbiased bases in dimension d.
inline double full_mub_collision_bound(const MubSet& m) {
    const double n = static_cast<double>(m.size());
    const double d = static_cast<double>(m.dim());
    return -std::log2((n + d - 1.0) / (d * n));
}

inline double average_collision(const MubSet& m, const Vec& psi) {
    double s = 0.0;
    for (const auto& b : m.bases()) {
        double sq = 0.0;
        for (double p : basis_outcome_probs(b.vectors(), psi)) sq += p * p;
        s += -std::log2(sq);
    }
    return s / static_cast<double>(m.size());
}

namespace detail {

inline double clifford_entropy_average(const std::vector<Mat>& obs, const Mat& rho, bool collision) {
    double s = 0.0;
    for (const auto& gamma : obs) {
        const double g = trace_product(rho, gamma).real();
        const double p0 = 0.5 * (1.0 + g);
        const double p1 = 0.5 * (1.0 - g);
        if (collision)
            s += -std::log2(p0 * p0 + p1 * p1);
        else
            s += -xlog2(p0) - xlog2(p1);
    }
    return s / static_cast<double>(obs.size());
}

inline UncertaintyResult clifford_relation(int n, int k, bool collision, const MinimizerOptions& opt) {
    const CliffordGenerators g(n);
    const std::vector<Mat> obs = g.observables(k);
    UncertaintyResult r;
    r.relation = collision ? "clifford-collision" : "clifford-shannon";
    r.bound = collision ? 1.0 - std::log2(1.0 + 1.0 / k) : 1.0 - 1.0 / k;
    if (k == 1) r.bound = 0.0;
    // The objective depends on rho only through the vector components, and
    // it is concave in rho, so the minimum over states is attained on pure
    // states and the sphere search below is exhaustive.
    auto f = [&](const Vec& psi) { return clifford_entropy_average(obs, projector(psi), collision); };
    auto [val, state] = detail::minimize_over_pure_states(f, g.dim(), opt);
    r.achieved = val;
    r.minimizer = std::move(state);
    if (r.achieved < r.bound - 1e-6)
        throw NonConvergence("clifford relation: numerical minimum beats the analytic bound");
    return r;
}

} // namespace detail

// min over states of (1/K) sum_j H(Gamma_j | rho) with bound 1 - 1/K.
inline UncertaintyResult clifford_shannon_relation(int n, int k, const MinimizerOptions& opt = {}) {
    return detail::clifford_relation(n, k, false, opt);
}

// Collision-entropy variant with bound 1 - log(1 + 1/K).
inline UncertaintyResult clifford_collision_relation(int n, int k, const MinimizerOptions& opt = {}) {
    return detail::clifford_relation(n, k, true, opt);
}

} // namespace qcrypt
