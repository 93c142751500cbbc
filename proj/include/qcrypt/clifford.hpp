#pragma once

#include <vector>

#include "qcrypt/matcore.hpp"

namespace qcrypt {

// Generators of the Clifford algebra on n qubits via the Jordan-Wigner
// representation, plus the pseudo-scalar Gamma_0 = i^n Gamma_1 ... Gamma_2n.
class CliffordGenerators {
  public:
    explicit CliffordGenerators(int n) : n_(n) {
        if (n < 1 || n > 5) throw ValidationError("clifford_generators: n out of range [1,5]");
        const int d = 1 << n;
        for (int j = 1; j <= n; ++j) {
            Mat odd = Mat::identity(1);
            Mat even = Mat::identity(1);
            for (int k = 1; k < j; ++k) {
                odd = kron(odd, ops::pauli_y());
                even = kron(even, ops::pauli_y());
            }
            odd = kron(odd, ops::pauli_x());
            even = kron(even, ops::pauli_z());
            for (int k = j + 1; k <= n; ++k) {
                odd = kron(odd, Mat::identity(2));
                even = kron(even, Mat::identity(2));
            }
            gammas_.push_back(odd);
            gammas_.push_back(even);
        }
        Mat prod = Mat::identity(d);
        for (const auto& g : gammas_) prod = prod * g;
        cplx phase(1.0, 0.0);
        for (int k = 0; k < n; ++k) phase *= cplx(0.0, 1.0);
        gamma0_ = phase * prod;
    }

    int n() const { return n_; }
    int dim() const { return 1 << n_; }
    int count() const { return 2 * n_; }
    const Mat& gamma(int j) const { return gammas_[j - 1]; } // 1-based, matching the algebra
    const Mat& gamma0() const { return gamma0_; }
    const std::vector<Mat>& gammas() const { return gammas_; }

    // Gamma_1..Gamma_2n followed by Gamma_0 when k = 2n+1 observables are
    // requested.
    std::vector<Mat> observables(int k) const {
        if (k < 1 || k > 2 * n_ + 1) throw ValidationError("CliffordGenerators: K out of range");
        std::vector<Mat> obs;
        for (int j = 1; j <= std::min(k, 2 * n_); ++j) obs.push_back(gamma(j));
        if (k == 2 * n_ + 1) obs.push_back(gamma0_);
        return obs;
    }

  private:
    int n_;
    std::vector<Mat> gammas_;
    Mat gamma0_;
};

inline CliffordGenerators clifford_generators(int n) { return CliffordGenerators(n); }

// Components (g_1, ..., g_2n, g_0) with g_j = Tr(rho Gamma_j).
inline std::vector<double> vector_components(const DensityMatrix& rho, const CliffordGenerators& g) {
    if (rho.dim() != g.dim()) throw ValidationError("vector_components: dimension mismatch");
    std::vector<double> out;
    for (const auto& gamma : g.gammas()) out.push_back(trace_product(rho.mat(), gamma).real());
    out.push_back(trace_product(rho.mat(), g.gamma0()).real());
    return out;
}

// Projects onto the identity + vector part: (I + sum_j g_j Gamma_j)/d. The
// output is positive by the vector-part lemma.
inline DensityMatrix project_vector_part(const DensityMatrix& rho, const CliffordGenerators& g) {
    if (rho.dim() != g.dim()) throw ValidationError("project_vector_part: dimension mismatch");
    const std::vector<double> comps = vector_components(rho, g);
    Mat m = Mat::identity(g.dim());
    for (int j = 1; j <= g.count(); ++j) m += comps[j - 1] * g.gamma(j);
    m += comps.back() * g.gamma0();
    m *= cplx(1.0 / g.dim(), 0.0);
    return DensityMatrix(m);
}

// Sum of squared vector components including the Gamma_0 term.
inline double meta_uncertainty_check(const DensityMatrix& rho, const CliffordGenerators& g) {
    double s = 0.0;
    for (double c : vector_components(rho, g)) s += c * c;
    return s;
}

// State (I + sum_j g_j Gamma_j)/d from prescribed vector components
// (g_1..g_2n, g_0); positive semidefinite whenever sum g_j^2 <= 1.
inline Mat state_from_vector_part(const std::vector<double>& comps, const CliffordGenerators& g) {
    if (static_cast<int>(comps.size()) != g.count() + 1)
        throw ValidationError("state_from_vector_part: component count mismatch");
    Mat m = Mat::identity(g.dim());
    for (int j = 1; j <= g.count(); ++j) m += comps[j - 1] * g.gamma(j);
    m += comps.back() * g.gamma0();
    m *= cplx(1.0 / g.dim(), 0.0);
    return m;
}

// Tsirelson's construction: observables X_s = sum_j x_s^j Gamma_j^T and
// Y_t = sum_j y_t^j Gamma_j reproduce x_s . y_t as correlations on the
// maximally entangled state of dimension 2^{floor(N/2)}.
struct TsirelsonModel {
    std::vector<Mat> alice;
    std::vector<Mat> bob;
    Vec max_entangled; // on C^d (x) C^d
    int local_dim = 0;

    double correlation(size_t s, size_t t) const {
        return trace_product(alice[s].transpose(), bob[t]).real() / local_dim;
    }
};

inline TsirelsonModel observables_from_vectors(const std::vector<std::vector<double>>& xs,
                                               const std::vector<std::vector<double>>& ys) {
    if (xs.empty() || ys.empty()) throw ValidationError("observables_from_vectors: empty input");
    const int n_comp = static_cast<int>(xs.front().size());
    if (n_comp < 1 || n_comp > 10) throw ValidationError("observables_from_vectors: N out of range [1,10]");
    auto check_unit = [n_comp](const std::vector<double>& v) {
        if (static_cast<int>(v.size()) != n_comp)
            throw ValidationError("observables_from_vectors: inconsistent vector length");
        double s = 0.0;
        for (double x : v) s += x * x;
        if (std::abs(s - 1.0) > 1e-8) throw ValidationError("observables_from_vectors: non-unit vector");
    };
    for (const auto& v : xs) check_unit(v);
    for (const auto& v : ys) check_unit(v);

    const int n = std::max(1, n_comp / 2);
    const CliffordGenerators g(n);
    std::vector<Mat> basis;
    for (int j = 1; j <= 2 * n; ++j) basis.push_back(g.gamma(j));
    if (n_comp == 2 * n + 1) basis.push_back(g.gamma0());
    if (static_cast<int>(basis.size()) < n_comp)
        throw ValidationError("observables_from_vectors: N exceeds available generators");

    TsirelsonModel model;
    model.local_dim = g.dim();
    auto build = [&](const std::vector<double>& v, bool transpose_gamma) {
        Mat m(g.dim(), g.dim());
        for (int j = 0; j < n_comp; ++j) m += v[j] * (transpose_gamma ? basis[j].transpose() : basis[j]);
        return m;
    };
    for (const auto& v : xs) model.alice.push_back(build(v, true));
    for (const auto& v : ys) model.bob.push_back(build(v, false));
    Vec psi(static_cast<size_t>(g.dim()) * g.dim(), 0.0);
    for (int k = 0; k < g.dim(); ++k) psi[static_cast<size_t>(k) * g.dim() + k] = 1.0 / std::sqrt(g.dim());
    model.max_entangled = std::move(psi);
    return model;
}

} // namespace qcrypt
