#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <vector>

#include "qcrypt/matrix.hpp"

namespace qcrypt {

struct EigResult {
    std::vector<double> values; // ascending
    Mat vectors;                // orthonormal columns, vectors.col(i) <-> values[i]
};

// Cyclic Jacobi for complex Hermitian matrices. Each rotation first absorbs
// the phase of the pivot into column q, then applies a real Givens rotation.
inline EigResult eig_hermitian(const Mat& m, double herm_tol = 1e-8) {
    if (!m.square()) throw ValidationError("eig_hermitian: matrix not square");
    const int n = m.rows();
    const double scale = std::max(1.0, m.max_abs());
    if (!m.is_hermitian(herm_tol * scale))
        throw ValidationError("eig_hermitian: matrix not Hermitian within tolerance");

    Mat a = m;
    Mat v = Mat::identity(n);

    auto off_norm = [&]() {
        double s = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) s += std::norm(a(i, j));
        return std::sqrt(2.0 * s);
    };

    const double stop = 1e-15 * std::max(1.0, a.frobenius());
    const int max_sweeps = 100;
    for (int sweep = 0; sweep < max_sweeps && off_norm() > stop; ++sweep) {
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const cplx apq = a(p, q);
                const double abs_apq = std::abs(apq);
                if (abs_apq <= 1e-300) continue;
                // Phase so the pivot becomes real positive.
                const cplx phase = apq / abs_apq;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double tau = (aqq - app) / (2.0 * abs_apq);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                // Columns transform as  col_p <- c*col_p - s*conj(phase)... we
                // implement J with J(p,p)=c, J(q,p)=-s*conj(phase), J(p,q)=s*phase, J(q,q)=c
                // acting by A <- J^dagger A J and V <- V J.
                const cplx sp = s * phase;
                for (int k = 0; k < n; ++k) {
                    const cplx akp = a(k, p);
                    const cplx akq = a(k, q);
                    a(k, p) = c * akp - std::conj(sp) * akq;
                    a(k, q) = sp * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const cplx apk = a(p, k);
                    const cplx aqk = a(q, k);
                    a(p, k) = c * apk - sp * aqk;
                    a(q, k) = std::conj(sp) * apk + c * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    const cplx vkp = v(k, p);
                    const cplx vkq = v(k, q);
                    v(k, p) = c * vkp - std::conj(sp) * vkq;
                    v(k, q) = sp * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> diag(n);
    for (int i = 0; i < n; ++i) diag[i] = a(i, i).real();
    std::sort(order.begin(), order.end(), [&](int i, int j) { return diag[i] < diag[j]; });

    EigResult r;
    r.values.resize(n);
    r.vectors = Mat(n, n);
    for (int col = 0; col < n; ++col) {
        r.values[col] = diag[order[col]];
        for (int row = 0; row < n; ++row) r.vectors(row, col) = v(row, order[col]);
    }
    return r;
}

inline Vec eig_column(const EigResult& e, int col) {
    Vec v(e.vectors.rows());
    for (int i = 0; i < e.vectors.rows(); ++i) v[i] = e.vectors(i, col);
    return v;
}

// V f(diag) V^dagger for Hermitian input.
inline Mat hermitian_function(const Mat& m, const std::function<double(double)>& f, double herm_tol = 1e-8) {
    const EigResult e = eig_hermitian(m, herm_tol);
    const int n = m.rows();
    Mat r(n, n);
    for (int k = 0; k < n; ++k) {
        const double fk = f(e.values[k]);
        if (fk == 0.0) continue;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) r(i, j) += fk * e.vectors(i, k) * std::conj(e.vectors(j, k));
    }
    return r;
}

inline Mat sqrt_psd(const Mat& m) {
    return hermitian_function(m, [](double x) { return x > 0.0 ? std::sqrt(x) : 0.0; });
}

// Pseudo-inverse square root: eigenvalues below cut are treated as zero.
inline Mat invsqrt_psd(const Mat& m, double cut = 1e-10) {
    return hermitian_function(m, [cut](double x) { return x > cut ? 1.0 / std::sqrt(x) : 0.0; });
}

inline double trace_norm_hermitian(const Mat& m) {
    const EigResult e = eig_hermitian(m);
    double s = 0.0;
    for (double x : e.values) s += std::abs(x);
    return s;
}

inline double min_eigenvalue(const Mat& m) { return eig_hermitian(m).values.front(); }
inline double max_eigenvalue(const Mat& m) { return eig_hermitian(m).values.back(); }

// Real nullspace basis of an M x N real system given as row-major entries.
// Returns orthonormal columns spanning { x : A x ~ 0 } using the spectral
// decomposition of A^T A. Vectors with eigenvalue <= cut * max_ev are kept.
inline std::vector<std::vector<double>> real_nullspace(const std::vector<std::vector<double>>& a_rows, int ncols,
                                                       double cut = 1e-10) {
    Mat ata(ncols, ncols);
    for (const auto& row : a_rows) {
        for (int i = 0; i < ncols; ++i) {
            if (row[i] == 0.0) continue;
            for (int j = 0; j < ncols; ++j) ata(i, j) += row[i] * row[j];
        }
    }
    const EigResult e = eig_hermitian(ata);
    const double top = std::max(1e-300, e.values.back());
    std::vector<std::vector<double>> basis;
    for (int k = 0; k < ncols; ++k) {
        if (e.values[k] <= cut * std::max(1.0, top)) {
            std::vector<double> v(ncols);
            for (int i = 0; i < ncols; ++i) v[i] = e.vectors(i, k).real();
            basis.push_back(std::move(v));
        }
    }
    return basis;
}

} // namespace qcrypt
