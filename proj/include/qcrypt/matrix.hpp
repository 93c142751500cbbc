#pragma once

#include <algorithm>
#include <cassert>
#include <initializer_list>
#include <vector>

#include "qcrypt/common.hpp"

namespace qcrypt {

// Dense complex matrix, row-major. Small dimensions only (d <= 256).
class Mat {
  public:
    Mat() = default;
    Mat(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}
    Mat(int rows, int cols, std::initializer_list<cplx> entries) : Mat(rows, cols) {
        if (static_cast<int>(entries.size()) != rows * cols)
            throw ValidationError("Mat: initializer size mismatch");
        std::copy(entries.begin(), entries.end(), a_.begin());
    }

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }
    static Mat zero(int rows, int cols) { return Mat(rows, cols); }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    cplx& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    const cplx& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    const std::vector<cplx>& data() const { return a_; }
    std::vector<cplx>& data() { return a_; }

    Mat& operator+=(const Mat& o) {
        check_same_shape(o);
        for (size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
        return *this;
    }
    Mat& operator-=(const Mat& o) {
        check_same_shape(o);
        for (size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
        return *this;
    }
    Mat& operator*=(cplx s) {
        for (auto& x : a_) x *= s;
        return *this;
    }

    friend Mat operator+(Mat a, const Mat& b) { return a += b; }
    friend Mat operator-(Mat a, const Mat& b) { return a -= b; }
    friend Mat operator*(Mat a, cplx s) { return a *= s; }
    friend Mat operator*(cplx s, Mat a) { return a *= s; }
    friend Mat operator*(Mat a, double s) { return a *= cplx(s, 0.0); }
    friend Mat operator*(double s, Mat a) { return a *= cplx(s, 0.0); }

    friend Mat operator*(const Mat& a, const Mat& b) {
        if (a.cols_ != b.rows_) throw ValidationError("Mat: product shape mismatch");
        Mat c(a.rows_, b.cols_);
        for (int i = 0; i < a.rows_; ++i) {
            for (int k = 0; k < a.cols_; ++k) {
                const cplx aik = a(i, k);
                if (aik == cplx(0.0)) continue;
                for (int j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
            }
        }
        return c;
    }

    Mat adjoint() const {
        Mat m(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
        return m;
    }
    Mat transpose() const {
        Mat m(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
        return m;
    }
    Mat conjugate() const {
        Mat m(rows_, cols_);
        for (size_t k = 0; k < a_.size(); ++k) m.a_[k] = std::conj(a_[k]);
        return m;
    }

    cplx trace() const {
        cplx t = 0.0;
        for (int i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
        return t;
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto& x : a_) m = std::max(m, std::abs(x));
        return m;
    }
    double frobenius() const {
        double s = 0.0;
        for (const auto& x : a_) s += std::norm(x);
        return std::sqrt(s);
    }

    bool is_hermitian(double eps = tol::hermiticity) const {
        if (!square()) return false;
        for (int i = 0; i < rows_; ++i)
            for (int j = i; j < cols_; ++j)
                if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > eps) return false;
        return true;
    }

    double max_imag_abs() const {
        double m = 0.0;
        for (const auto& x : a_) m = std::max(m, std::abs(x.imag()));
        return m;
    }

  private:
    void check_same_shape(const Mat& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw ValidationError("Mat: shape mismatch");
    }

    int rows_ = 0;
    int cols_ = 0;
    std::vector<cplx> a_;
};

inline Mat kron(const Mat& a, const Mat& b) {
    Mat c(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
            const cplx aij = a(i, j);
            if (aij == cplx(0.0)) continue;
            for (int k = 0; k < b.rows(); ++k)
                for (int l = 0; l < b.cols(); ++l)
                    c(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
    return c;
}

inline Mat kron_pow(const Mat& a, int n) {
    Mat r = Mat::identity(1);
    for (int i = 0; i < n; ++i) r = kron(r, a);
    return r;
}

inline cplx trace_product(const Mat& a, const Mat& b) {
    if (a.cols() != b.rows() || a.rows() != b.cols())
        throw ValidationError("trace_product: shape mismatch");
    cplx t = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) t += a(i, k) * b(k, i);
    return t;
}

// Column/state vector helpers.
using Vec = std::vector<cplx>;

inline cplx dot(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw ValidationError("dot: size mismatch");
    cplx s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

inline double norm2(const Vec& a) { return std::sqrt(std::abs(dot(a, a))); }

inline Vec normalized(Vec a) {
    const double n = norm2(a);
    if (n == 0.0) throw ValidationError("normalized: zero vector");
    for (auto& x : a) x /= n;
    return a;
}

inline Vec mat_vec(const Mat& m, const Vec& v) {
    if (m.cols() != static_cast<int>(v.size())) throw ValidationError("mat_vec: shape mismatch");
    Vec r(m.rows(), 0.0);
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r[i] += m(i, j) * v[j];
    return r;
}

inline Mat outer(const Vec& a, const Vec& b) {
    Mat m(static_cast<int>(a.size()), static_cast<int>(b.size()));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) m(static_cast<int>(i), static_cast<int>(j)) = a[i] * std::conj(b[j]);
    return m;
}

inline Mat projector(const Vec& a) { return outer(a, a); }

inline Vec kron_vec(const Vec& a, const Vec& b) {
    Vec r(a.size() * b.size());
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i * b.size() + j] = a[i] * b[j];
    return r;
}

// Fixed single-qubit operators.
namespace ops {
inline Mat pauli_x() { return Mat(2, 2, {0, 1, 1, 0}); }
inline Mat pauli_y() { return Mat(2, 2, {0, cplx(0, -1), cplx(0, 1), 0}); }
inline Mat pauli_z() { return Mat(2, 2, {1, 0, 0, -1}); }
inline Mat hadamard() {
    const double s = 1.0 / std::sqrt(2.0);
    return Mat(2, 2, {s, s, s, -s});
}
// K = (I + i sigma_x)/sqrt(2)
inline Mat k_transform() {
    const double s = 1.0 / std::sqrt(2.0);
    return Mat(2, 2, {s, cplx(0, s), cplx(0, s), s});
}
} // namespace ops

} // namespace qcrypt
