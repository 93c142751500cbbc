#pragma once

#include <string>
#include <vector>

#include "qcrypt/entropy.hpp"
#include "qcrypt/sdp.hpp"

namespace qcrypt {

// Two-player XOR game G(V, pi): the predicate depends only on c = a xor b.
class XorGame {
  public:
    XorGame(int ns, int nt, std::vector<std::vector<double>> pi, std::vector<std::vector<int>> win_c0,
            std::vector<std::vector<int>> win_c1)
        : ns_(ns), nt_(nt), pi_(std::move(pi)), v0_(std::move(win_c0)), v1_(std::move(win_c1)) {
        if (ns_ < 1 || nt_ < 1) throw ValidationError("XorGame: empty question sets");
        auto check_table = [&](const auto& t, const char* name) {
            if (static_cast<int>(t.size()) != ns_) throw ValidationError(std::string("XorGame: bad ") + name);
            for (const auto& row : t)
                if (static_cast<int>(row.size()) != nt_) throw ValidationError(std::string("XorGame: bad ") + name);
        };
        check_table(pi_, "pi");
        check_table(v0_, "V(0|s,t)");
        check_table(v1_, "V(1|s,t)");
        double sum = 0.0;
        for (const auto& row : pi_)
            for (double x : row) {
                if (x < 0.0) throw ValidationError("XorGame: negative probability");
                sum += x;
            }
        if (std::abs(sum - 1.0) > tol::trace_one) throw ValidationError("XorGame: pi does not sum to 1");
        for (const auto* t : {&v0_, &v1_})
            for (const auto& row : *t)
                for (int x : row)
                    if (x != 0 && x != 1) throw ValidationError("XorGame: predicate entries must be 0/1");
    }

    int ns() const { return ns_; }
    int nt() const { return nt_; }
    double pi(int s, int t) const { return pi_[s][t]; }
    int v(int c, int s, int t) const { return c == 0 ? v0_[s][t] : v1_[s][t]; }

    // Constant part and signed weights of the win probability
    //   1/2 sum_{s,t,c} pi V(c|s,t) (1 + (-1)^c x_s.y_t).
    double constant_part() const {
        double k = 0.0;
        for (int s = 0; s < ns_; ++s)
            for (int t = 0; t < nt_; ++t) k += 0.5 * pi_[s][t] * (v0_[s][t] + v1_[s][t]);
        return k;
    }
    double weight(int s, int t) const { return 0.5 * pi_[s][t] * (v0_[s][t] - v1_[s][t]); }

    // Total weight magnitude used to convert between a correlation sum and a
    // win probability.
    double weight_scale() const {
        double w = 0.0;
        for (int s = 0; s < ns_; ++s)
            for (int t = 0; t < nt_; ++t) w += std::abs(weight(s, t));
        return w;
    }

  private:
    int ns_, nt_;
    std::vector<std::vector<double>> pi_;
    std::vector<std::vector<int>> v0_, v1_;
};

struct ClassicalValue {
    double value = 0.0;       // win probability
    double correlation = 0.0; // 2*value - 1, the normalized correlation form
    std::vector<int> answers_a;
    std::vector<int> answers_b;
};

// Exact maximum over deterministic strategies. For fixed Alice answers the
// optimal Bob answer decouples per question, so only 2^nS strategies are
// enumerated. Ties resolve to the lexicographically smallest tables.
inline ClassicalValue classical_value(const XorGame& g) {
    if (g.ns() > 16 || g.nt() > 16) throw ValidationError("classical_value: size cap exceeded");
    ClassicalValue best;
    best.value = -1.0;
    for (uint32_t fa = 0; fa < (1u << g.ns()); ++fa) {
        // Bit ns-1-s holds a_s, so ascending fa enumerates answer tables in
        // lexicographic order and the first maximum wins ties.
        double total = 0.0;
        std::vector<int> fb(g.nt(), 0);
        for (int t = 0; t < g.nt(); ++t) {
            double win[2] = {0.0, 0.0};
            for (int s = 0; s < g.ns(); ++s) {
                const int a = (fa >> (g.ns() - 1 - s)) & 1;
                win[0] += g.pi(s, t) * g.v(a ^ 0, s, t);
                win[1] += g.pi(s, t) * g.v(a ^ 1, s, t);
            }
            if (win[1] > win[0]) {
                fb[t] = 1;
                total += win[1];
            } else {
                total += win[0];
            }
        }
        if (total > best.value + 1e-15) {
            best.value = total;
            best.answers_b = fb;
            best.answers_a.assign(g.ns(), 0);
            for (int s = 0; s < g.ns(); ++s) best.answers_a[s] = (fa >> (g.ns() - 1 - s)) & 1;
        }
    }
    best.correlation = 2.0 * best.value - 1.0;
    return best;
}

struct QuantumValue {
    double value = 0.0;             // win probability
    double correlation_bound = 0.0; // raw SDP objective sum_{s,t} w_st x_s.y_t (unnormalized weights)
    std::vector<std::vector<double>> xs;
    std::vector<std::vector<double>> ys;
    Mat gram;
};

inline sdp::Problem game_gram_problem(const XorGame& g) {
    const int n = g.ns() + g.nt();
    Mat w(n, n);
    for (int s = 0; s < g.ns(); ++s)
        for (int t = 0; t < g.nt(); ++t) {
            w(s, g.ns() + t) = g.weight(s, t);
            w(g.ns() + t, s) = g.weight(s, t);
        }
    sdp::Problem p;
    p.C = 0.5 * w;
    for (int i = 0; i < n; ++i) {
        Mat e(n, n);
        e(i, i) = 1.0;
        p.A.push_back(e);
        p.b.push_back(1.0);
    }
    return p;
}

// Quantum value via the Gram-matrix SDP; strategy vectors are recovered by
// factorizing the optimum and re-evaluating the game formula on them.
inline QuantumValue quantum_value(const XorGame& g, double tolerance = 1e-9) {
    if (g.ns() + g.nt() > 64) throw ValidationError("quantum_value: size cap exceeded");
    const sdp::Problem p = game_gram_problem(g);
    const sdp::Solution s = sdp::solve(p, tolerance);
    QuantumValue q;
    q.correlation_bound = s.primal_value;
    q.value = g.constant_part() + s.primal_value;
    q.gram = s.M;
    auto vs = sdp::gram_factorize(s.M, 1e-8);
    // Unit-normalize against the solver's diagonal residual and keep the
    // construction's natural dimension nS + nT.
    for (auto& v : vs) {
        double n2 = 0.0;
        for (double x : v) n2 += x * x;
        const double n = std::sqrt(n2);
        for (double& x : v) x /= n;
        v.resize(static_cast<size_t>(g.ns()) + g.nt(), 0.0);
    }
    q.xs.assign(vs.begin(), vs.begin() + g.ns());
    q.ys.assign(vs.begin() + g.ns(), vs.end());
    return q;
}

// Winning probability of the single-quantum-prover simulation with given
// strategy vectors: 1/2 sum pi V(c|s,t) (1 + (-1)^c x_s.y_t).
inline double simulate_single_prover(const XorGame& g, const std::vector<std::vector<double>>& xs,
                                     const std::vector<std::vector<double>>& ys) {
    if (static_cast<int>(xs.size()) != g.ns() || static_cast<int>(ys.size()) != g.nt())
        throw ValidationError("simulate_single_prover: shape mismatch");
    const size_t dim = xs.front().size();
    for (const auto& v : xs)
        if (v.size() != dim) throw ValidationError("simulate_single_prover: shape mismatch");
    for (const auto& v : ys)
        if (v.size() != dim) throw ValidationError("simulate_single_prover: shape mismatch");
    auto unit = [](const std::vector<double>& v) {
        double s = 0.0;
        for (double x : v) s += x * x;
        return std::abs(s - 1.0) <= 1e-6;
    };
    for (const auto& v : xs)
        if (!unit(v)) throw ValidationError("simulate_single_prover: non-unit vector");
    for (const auto& v : ys)
        if (!unit(v)) throw ValidationError("simulate_single_prover: non-unit vector");

    double p = 0.0;
    for (int s = 0; s < g.ns(); ++s)
        for (int t = 0; t < g.nt(); ++t) {
            double ip = 0.0;
            for (size_t j = 0; j < dim; ++j) ip += xs[s][j] * ys[t][j];
            p += 0.5 * g.pi(s, t) * (g.v(0, s, t) * (1.0 + ip) + g.v(1, s, t) * (1.0 - ip));
        }
    return p;
}

// Built-in games.
inline XorGame chsh_game() {
    std::vector<std::vector<double>> pi(2, std::vector<double>(2, 0.25));
    std::vector<std::vector<int>> v0(2, std::vector<int>(2, 0));
    std::vector<std::vector<int>> v1(2, std::vector<int>(2, 0));
    for (int s = 0; s < 2; ++s)
        for (int t = 0; t < 2; ++t) {
            if ((s & t) == 0)
                v0[s][t] = 1;
            else
                v1[s][t] = 1;
        }
    return XorGame(2, 2, pi, v0, v1);
}

// Chained CHSH with n settings per side: uniform over the 2n chained pairs,
// parity 0 required everywhere except the pair (1, n).
inline XorGame chained_game(int n) {
    if (n < 2) throw ValidationError("chained_game: n must be >= 2");
    std::vector<std::vector<double>> pi(n, std::vector<double>(n, 0.0));
    std::vector<std::vector<int>> v0(n, std::vector<int>(n, 0));
    std::vector<std::vector<int>> v1(n, std::vector<int>(n, 0));
    const double w = 1.0 / (2.0 * n);
    for (int i = 0; i < n; ++i) {
        pi[i][i] = w;
        v0[i][i] = 1;
        if (i + 1 < n) {
            pi[i + 1][i] = w;
            v0[i + 1][i] = 1;
        }
    }
    pi[0][n - 1] = w;
    v1[0][n - 1] = 1;
    return XorGame(n, n, pi, v0, v1);
}

// Gisin's inequality: the sign matrix has +1 in the upper-left half
// including the anti-diagonal and -1 below it. Uniform question pairs.
inline XorGame gisin_game(int n) {
    if (n < 1) throw ValidationError("gisin_game: n must be >= 1");
    std::vector<std::vector<double>> pi(n, std::vector<double>(n, 1.0 / (n * n)));
    std::vector<std::vector<int>> v0(n, std::vector<int>(n, 0));
    std::vector<std::vector<int>> v1(n, std::vector<int>(n, 0));
    for (int s = 0; s < n; ++s)
        for (int t = 0; t < n; ++t) {
            if (s + t <= n - 1)
                v0[s][t] = 1;
            else
                v1[s][t] = 1;
        }
    return XorGame(n, n, pi, v0, v1);
}

// XOR-composition of n CHSH games: Gram SDP built from A^{(x)n} with
// A = [[1,1],[1,-1]]; the optimal value is (2 sqrt 2)^n. Solved directly in
// small dimension, certified analytically otherwise.
struct CompositionValue {
    double value = 0.0;
    bool certified = false;
};

inline CompositionValue xor_composition_value(int n) {
    if (n < 1 || n > 6) throw ValidationError("xor_composition_value: size cap");
    Mat a(2, 2, {1, 1, 1, -1});
    const Mat an = kron_pow(a, n);
    const int m = an.rows();
    Mat w(2 * m, 2 * m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            w(m + i, j) = an(i, j);
            w(j, m + i) = an(i, j);
        }
    sdp::Problem p;
    p.C = 0.5 * w;
    for (int i = 0; i < 2 * m; ++i) {
        Mat e(2 * m, 2 * m);
        e(i, i) = 1.0;
        p.A.push_back(e);
        p.b.push_back(1.0);
    }
    CompositionValue out;
    const double sqrt2n = std::pow(std::sqrt(2.0), n);
    if (n <= 3) {
        const sdp::Solution s = sdp::solve(p, 1e-8);
        out.value = s.primal_value;
    } else {
        // Analytic certificate: G = I + W/sqrt(2)^n is feasible because W has
        // spectrum +-sqrt(2)^n; lambda = (sqrt(2)^n / 2) * 1 matches it.
        const Mat g = Mat::identity(2 * m) + (1.0 / sqrt2n) * w;
        const std::vector<double> lambda(2 * m, sqrt2n / 2.0);
        const sdp::CertificateReport r = sdp::verify_certificate(p, g, lambda, 1e-6);
        if (!r.optimal) throw NonConvergence("xor_composition_value: certificate rejected");
        out.value = r.primal_value;
        out.certified = true;
    }
    return out;
}

// Fano-type dimension bound for random access codes built from one-to-one
// independent games: log2 d >= (log|A| - h(p) - (1-p) log(|A|-1)) |S|.
inline double rac_dimension_bound(int n_settings, int n_outcomes, double p) {
    if (n_settings < 1 || n_outcomes < 2) throw ValidationError("rac_dimension_bound: bad counts");
    if (p < 1.0 / n_outcomes - 1e-12 || p > 1.0 + 1e-12)
        throw ValidationError("rac_dimension_bound: p out of range");
    p = std::min(1.0, std::max(p, 1.0 / n_outcomes));
    const double term =
        std::log2(static_cast<double>(n_outcomes)) - binary_entropy(p) - (1.0 - p) * std::log2(n_outcomes - 1.0);
    return std::max(0.0, term * n_settings);
}

// Unbalanced random access code bound: m >= sum_t H(X_t) - h(p_t) -
// (1-p_t) log(|Sigma|-1), clamped at zero.
inline double urac_bound(const std::vector<ProbDist>& dists, const std::vector<double>& ps, int alphabet) {
    if (dists.size() != ps.size()) throw ValidationError("urac_bound: length mismatch");
    if (alphabet < 2) throw ValidationError("urac_bound: alphabet too small");
    double m = 0.0;
    for (size_t t = 0; t < ps.size(); ++t) {
        if (ps[t] < 1.0 / alphabet - 1e-12 || ps[t] > 1.0 + 1e-12)
            throw ValidationError("urac_bound: p out of range");
        m += shannon(dists[t]) - binary_entropy(std::min(1.0, ps[t])) -
             (1.0 - std::min(1.0, ps[t])) * std::log2(alphabet - 1.0);
    }
    return std::max(0.0, m);
}

} // namespace qcrypt
