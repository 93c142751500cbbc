#pragma once

#include <string>
#include <vector>

#include "qcrypt/eig.hpp"
#include "qcrypt/matrix.hpp"

namespace qcrypt::sdp {

// Standard form: maximize Tr(C M) subject to Tr(A_i M) = b_i, M >= 0.
struct Problem {
    Mat C;
    std::vector<Mat> A;
    std::vector<double> b;

    void validate() const {
        if (!C.square()) throw ValidationError("SdpProblem: C not square");
        if (A.size() != b.size()) throw ValidationError("SdpProblem: constraint length mismatch");
        const double s = std::max(1.0, C.max_abs());
        if (!C.is_hermitian(1e-9 * s)) throw ValidationError("SdpProblem: C not Hermitian");
        for (const auto& a : A) {
            if (a.rows() != C.rows() || a.cols() != C.cols())
                throw ValidationError("SdpProblem: constraint dimension mismatch");
            if (!a.is_hermitian(1e-9 * std::max(1.0, a.max_abs())))
                throw ValidationError("SdpProblem: constraint not Hermitian");
        }
    }
    int dim() const { return C.rows(); }
};

struct Solution {
    Mat M;                  // primal optimum
    std::vector<double> y;  // dual multipliers
    double primal_value = 0.0;
    double dual_value = 0.0;
    double gap = 0.0;       // dual_value - primal_value
    int iterations = 0;
};

struct CertificateReport {
    bool feasible_primal = false;
    bool feasible_dual = false;
    bool optimal = false;
    double primal_value = 0.0;
    double dual_value = 0.0;
    double gap = 0.0;
    double primal_eq_residual = 0.0;  // max |Tr(A_i M) - b_i|
    double primal_psd_residual = 0.0; // max(0, -lambda_min(M))
    double dual_psd_residual = 0.0;   // max(0, -lambda_min(sum y_i A_i - C))
};

namespace detail {

inline void solve_spd_system(std::vector<std::vector<double>>& m, std::vector<double>& rhs) {
    const int n = static_cast<int>(rhs.size());
    // Cholesky with diagonal regularization fallback.
    double reg = 0.0;
    for (int attempt = 0; attempt < 4; ++attempt) {
        std::vector<std::vector<double>> l(n, std::vector<double>(n, 0.0));
        bool ok = true;
        for (int i = 0; i < n && ok; ++i) {
            for (int j = 0; j <= i; ++j) {
                double s = m[i][j] + (i == j ? reg : 0.0);
                for (int k = 0; k < j; ++k) s -= l[i][k] * l[j][k];
                if (i == j) {
                    if (s <= 0.0) {
                        ok = false;
                        break;
                    }
                    l[i][i] = std::sqrt(s);
                } else {
                    l[i][j] = s / l[j][j];
                }
            }
        }
        if (!ok) {
            double scale = 0.0;
            for (int i = 0; i < n; ++i) scale = std::max(scale, std::abs(m[i][i]));
            reg = std::max(reg * 10.0, 1e-13 * std::max(1.0, scale));
            continue;
        }
        std::vector<double> z(n);
        for (int i = 0; i < n; ++i) {
            double s = rhs[i];
            for (int k = 0; k < i; ++k) s -= l[i][k] * z[k];
            z[i] = s / l[i][i];
        }
        for (int i = n - 1; i >= 0; --i) {
            double s = z[i];
            for (int k = i + 1; k < n; ++k) s -= l[k][i] * rhs[k];
            rhs[i] = s / l[i][i];
        }
        return;
    }
    throw NonConvergence("sdp: Schur system is numerically singular");
}

// Largest alpha in (0,1] keeping X + alpha dX positive definite, with a
// 0.98 fraction-to-boundary margin.
inline double step_to_boundary(const Mat& x, const Mat& dx) {
    const Mat xi = invsqrt_psd(x, 1e-300);
    const double lmin = min_eigenvalue(xi * dx * xi);
    if (lmin >= -1e-14) return 1.0;
    return std::min(1.0, -0.98 / lmin);
}

} // namespace detail

// Primal-dual path-following interior point with Nesterov-Todd scaling.
// Fixed iteration cap 200, centering factor 0.3.
inline Solution solve(const Problem& p, double tolerance = 1e-9) {
    p.validate();
    const int d = p.dim();
    const int m = static_cast<int>(p.A.size());

    const double cnorm = std::max(1.0, p.C.max_abs());
    double bnorm = 1.0;
    for (double bi : p.b) bnorm = std::max(bnorm, std::abs(bi));

    Mat X = Mat::identity(d) * bnorm;
    Mat S = Mat::identity(d) * cnorm;
    std::vector<double> y(m, 0.0);

    const int max_iter = 200;
    const double sigma = 0.3;
    double best_resid = 1e300;
    int stall = 0;

    for (int iter = 0; iter < max_iter; ++iter) {
        // Residuals.
        std::vector<double> rp(m);
        double rp_max = 0.0;
        for (int i = 0; i < m; ++i) {
            rp[i] = p.b[i] - trace_product(p.A[i], X).real();
            rp_max = std::max(rp_max, std::abs(rp[i]));
        }
        Mat Rd = p.C + S;
        for (int i = 0; i < m; ++i) Rd -= y[i] * p.A[i];
        const double rd_max = Rd.max_abs();
        const double mu = trace_product(X, S).real() / d;

        const double primal_value = trace_product(p.C, X).real();
        double dual_value = 0.0;
        for (int i = 0; i < m; ++i) dual_value += y[i] * p.b[i];

        const bool feas = rp_max <= 1e-10 * bnorm && rd_max <= 1e-10 * cnorm;
        if (feas && mu * d <= 0.5 * tolerance) {
            Solution sol;
            sol.M = X;
            sol.y = y;
            sol.primal_value = primal_value;
            sol.dual_value = dual_value;
            sol.gap = dual_value - primal_value;
            sol.iterations = iter;
            return sol;
        }

        const double resid = rp_max / bnorm + rd_max / cnorm + mu;
        if (resid < best_resid * 0.9999) {
            best_resid = resid;
            stall = 0;
        } else if (++stall > 30) {
            throw NonConvergence("sdp: residuals stalled; problem may be infeasible or ill-posed");
        }

        // Nesterov-Todd scaling point W with W S W = X.
        const Mat s_half = sqrt_psd(S);
        const Mat s_inv_half = invsqrt_psd(S, 1e-300);
        const Mat inner = sqrt_psd(s_half * X * s_half);
        const Mat W = s_inv_half * inner * s_inv_half;

        const Mat s_inv = invsqrt_psd(S, 1e-300) * invsqrt_psd(S, 1e-300);
        const Mat Rc = (sigma * mu) * s_inv - X;

        // Schur complement M_ij = Tr(A_i W A_j W).
        std::vector<Mat> waw(m);
        for (int j = 0; j < m; ++j) waw[j] = W * p.A[j] * W;
        std::vector<std::vector<double>> schur(m, std::vector<double>(m, 0.0));
        for (int i = 0; i < m; ++i)
            for (int j = 0; j <= i; ++j) {
                const double v = trace_product(p.A[i], waw[j]).real();
                schur[i][j] = v;
                schur[j][i] = v;
            }
        const Mat wrdw = W * Rd * W;
        std::vector<double> rhs(m);
        for (int i = 0; i < m; ++i)
            rhs[i] = trace_product(p.A[i], Rc).real() + trace_product(p.A[i], wrdw).real() - rp[i];

        detail::solve_spd_system(schur, rhs); // rhs now holds dy

        Mat dS = Mat::zero(d, d) - Rd;
        for (int i = 0; i < m; ++i) dS += rhs[i] * p.A[i];
        const Mat dX_raw = Rc - W * dS * W;
        // Symmetrize against numerical drift.
        const Mat dX = 0.5 * (dX_raw + dX_raw.adjoint());

        const double ap = detail::step_to_boundary(X, dX);
        const double ad = detail::step_to_boundary(S, dS);
        X += ap * dX;
        S += ad * dS;
        X = 0.5 * (X + X.adjoint());
        S = 0.5 * (S + S.adjoint());
        for (int i = 0; i < m; ++i) y[i] += ad * rhs[i];
    }
    throw NonConvergence("sdp: no convergence within iteration cap");
}

inline CertificateReport verify_certificate(const Problem& p, const Mat& primal, const std::vector<double>& dual,
                                            double tolerance) {
    p.validate();
    if (primal.rows() != p.dim() || primal.cols() != p.dim())
        throw ValidationError("verify_certificate: primal shape mismatch");
    if (dual.size() != p.A.size()) throw ValidationError("verify_certificate: dual shape mismatch");

    CertificateReport r;
    r.primal_value = trace_product(p.C, primal).real();
    for (size_t i = 0; i < dual.size(); ++i) r.dual_value += dual[i] * p.b[i];
    r.gap = r.dual_value - r.primal_value;

    for (size_t i = 0; i < p.A.size(); ++i)
        r.primal_eq_residual =
            std::max(r.primal_eq_residual, std::abs(trace_product(p.A[i], primal).real() - p.b[i]));
    r.primal_psd_residual = std::max(0.0, -min_eigenvalue(primal));

    Mat z = Mat::zero(p.dim(), p.dim()) - p.C;
    for (size_t i = 0; i < p.A.size(); ++i) z += dual[i] * p.A[i];
    r.dual_psd_residual = std::max(0.0, -min_eigenvalue(z));

    r.feasible_primal = r.primal_eq_residual <= tolerance && r.primal_psd_residual <= tolerance;
    r.feasible_dual = r.dual_psd_residual <= tolerance;
    r.optimal = r.feasible_primal && r.feasible_dual && std::abs(r.gap) <= tolerance;
    return r;
}

// Factor a real symmetric PSD Gram matrix into vectors with x_i . x_j = G_ij
// via the spectral decomposition, truncating eigenvalues below tolerance.
inline std::vector<std::vector<double>> gram_factorize(const Mat& g, double tolerance = 1e-9) {
    if (!g.square()) throw ValidationError("gram_factorize: not square");
    if (g.max_imag_abs() > 1e-8) throw ValidationError("gram_factorize: not real");
    const EigResult e = eig_hermitian(g, 1e-7);
    if (e.values.front() < -std::max(tolerance, 1e-7)) throw ValidationError("gram_factorize: not PSD");
    const int n = g.rows();
    std::vector<int> keep;
    for (int k = 0; k < n; ++k)
        if (e.values[k] > tolerance) keep.push_back(k);
    std::vector<std::vector<double>> xs(n, std::vector<double>(keep.size(), 0.0));
    for (size_t c = 0; c < keep.size(); ++c) {
        const double w = std::sqrt(e.values[keep[c]]);
        for (int i = 0; i < n; ++i) xs[i][c] = w * e.vectors(i, keep[c]).real();
    }
    return xs;
}

} // namespace qcrypt::sdp
