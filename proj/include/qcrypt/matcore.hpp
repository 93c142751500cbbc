#pragma once

#include <array>
#include <utility>
#include <vector>

#include "qcrypt/eig.hpp"
#include "qcrypt/matrix.hpp"
#include "qcrypt/rng.hpp"

namespace qcrypt {

// Hermitian matrix wrapper; validates on construction.
class HermitianMatrix {
  public:
    explicit HermitianMatrix(Mat m) : m_(std::move(m)) {
        if (!m_.square()) throw ValidationError("HermitianMatrix: not square");
        const double scale = std::max(1.0, m_.max_abs());
        if (!m_.is_hermitian(tol::hermiticity * scale))
            throw ValidationError("HermitianMatrix: not Hermitian within 1e-10");
    }
    int dim() const { return m_.rows(); }
    const Mat& mat() const { return m_; }

  private:
    Mat m_;
};

class DensityMatrix {
  public:
    explicit DensityMatrix(Mat m) : m_(std::move(m)) {
        if (!m_.square()) throw ValidationError("DensityMatrix: not square");
        const double scale = std::max(1.0, m_.max_abs());
        if (!m_.is_hermitian(tol::hermiticity * scale * 10))
            throw ValidationError("DensityMatrix: not Hermitian");
        if (std::abs(m_.trace().real() - 1.0) > tol::trace_one || std::abs(m_.trace().imag()) > tol::trace_one)
            throw ValidationError("DensityMatrix: trace != 1");
        if (min_eigenvalue(m_) < tol::psd_eigenvalue) throw ValidationError("DensityMatrix: not PSD");
    }
    int dim() const { return m_.rows(); }
    const Mat& mat() const { return m_; }

  private:
    Mat m_;
};

class PureState {
  public:
    explicit PureState(Vec amps) : v_(std::move(amps)) {
        if (std::abs(norm2(v_) - 1.0) > tol::unit_norm) throw ValidationError("PureState: norm != 1");
    }
    int dim() const { return static_cast<int>(v_.size()); }
    const Vec& amplitudes() const { return v_; }
    DensityMatrix density() const { return DensityMatrix(projector(v_)); }

  private:
    Vec v_;
};

class Povm {
  public:
    explicit Povm(std::vector<Mat> elements) : e_(std::move(elements)) {
        if (e_.empty()) throw ValidationError("Povm: empty");
        const int d = e_.front().rows();
        Mat sum(d, d);
        for (const auto& m : e_) {
            if (m.rows() != d || m.cols() != d) throw ValidationError("Povm: dimension mismatch");
            if (!m.is_hermitian(1e-9 * std::max(1.0, m.max_abs()))) throw ValidationError("Povm: element not Hermitian");
            if (min_eigenvalue(m) < tol::psd_eigenvalue) throw ValidationError("Povm: element not PSD");
            sum += m;
        }
        if ((sum - Mat::identity(d)).max_abs() > tol::povm_sum)
            throw ValidationError("Povm: elements do not sum to identity");
    }
    int dim() const { return e_.front().rows(); }
    size_t size() const { return e_.size(); }
    const Mat& operator[](size_t i) const { return e_[i]; }
    const std::vector<Mat>& elements() const { return e_; }

  private:
    std::vector<Mat> e_;
};

class KrausChannel {
  public:
    explicit KrausChannel(std::vector<Mat> operators) : k_(std::move(operators)) {
        if (k_.empty()) throw ValidationError("KrausChannel: empty");
        in_ = k_.front().cols();
        out_ = k_.front().rows();
        Mat sum(in_, in_);
        Mat sum_out(out_, out_);
        for (const auto& v : k_) {
            if (v.cols() != in_ || v.rows() != out_) throw ValidationError("KrausChannel: shape mismatch");
            sum += v.adjoint() * v;
            sum_out += v * v.adjoint();
        }
        if ((sum - Mat::identity(in_)).max_abs() > tol::kraus_sum)
            throw ValidationError("KrausChannel: not trace preserving");
        unital_ = in_ == out_ && (sum_out - Mat::identity(out_)).max_abs() <= tol::kraus_sum;
    }
    int in_dim() const { return in_; }
    int out_dim() const { return out_; }
    bool unital() const { return unital_; }
    const std::vector<Mat>& operators() const { return k_; }

    Mat apply_raw(const Mat& rho) const {
        Mat r(out_, out_);
        for (const auto& v : k_) r += v * rho * v.adjoint();
        return r;
    }

  private:
    std::vector<Mat> k_;
    int in_ = 0;
    int out_ = 0;
    bool unital_ = false;
};

inline DensityMatrix apply_channel(const KrausChannel& c, const DensityMatrix& rho) {
    if (c.in_dim() != rho.dim()) throw ValidationError("apply_channel: dimension mismatch");
    return DensityMatrix(c.apply_raw(rho.mat()));
}

// D(a,b) = 1/2 ||a - b||_1 via eigenvalues of the difference.
inline double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
    if (a.dim() != b.dim()) throw ValidationError("trace_distance: dimension mismatch");
    return 0.5 * trace_norm_hermitian(a.mat() - b.mat());
}

// F(a,b) = Tr sqrt(a^1/2 b a^1/2).
inline double fidelity(const DensityMatrix& a, const DensityMatrix& b) {
    if (a.dim() != b.dim()) throw ValidationError("fidelity: dimension mismatch");
    const Mat ra = sqrt_psd(a.mat());
    const Mat inner = ra * b.mat() * ra;
    const EigResult e = eig_hermitian(inner, 1e-7);
    double f = 0.0;
    for (double x : e.values) f += x > 0.0 ? std::sqrt(x) : 0.0;
    return f;
}

enum class Subsystem { A, B };

inline Mat partial_trace_raw(const Mat& m, int da, int db, Subsystem keep) {
    if (m.rows() != da * db) throw ValidationError("partial_trace: dim not factorable as given");
    if (keep == Subsystem::A) {
        Mat r(da, da);
        for (int i = 0; i < da; ++i)
            for (int j = 0; j < da; ++j)
                for (int k = 0; k < db; ++k) r(i, j) += m(i * db + k, j * db + k);
        return r;
    }
    Mat r(db, db);
    for (int i = 0; i < db; ++i)
        for (int j = 0; j < db; ++j)
            for (int k = 0; k < da; ++k) r(i, j) += m(k * db + i, k * db + j);
    return r;
}

inline DensityMatrix partial_trace(const DensityMatrix& m, int da, int db, Subsystem keep) {
    return DensityMatrix(partial_trace_raw(m.mat(), da, db, keep));
}

struct BlochVector {
    double x, y, z;
    double norm() const { return std::sqrt(x * x + y * y + z * z); }
};

inline BlochVector bloch_vector(const DensityMatrix& q) {
    if (q.dim() != 2) throw ValidationError("bloch_vector: dim != 2");
    const Mat& r = q.mat();
    BlochVector b{};
    b.x = trace_product(r, ops::pauli_x()).real();
    b.y = trace_product(r, ops::pauli_y()).real();
    b.z = trace_product(r, ops::pauli_z()).real();
    if (b.norm() > 1.0 + 1e-9) throw ValidationError("bloch_vector: outside Bloch ball");
    return b;
}

inline DensityMatrix bloch_state(const BlochVector& b) {
    Mat m = 0.5 * (Mat::identity(2) + b.x * ops::pauli_x() + b.y * ops::pauli_y() + b.z * ops::pauli_z());
    return DensityMatrix(m);
}

// Spectral decomposition of a validated Hermitian operator: ascending
// eigenvalues, orthonormal eigenvector columns.
inline EigResult eig(const HermitianMatrix& m) { return eig_hermitian(m.mat()); }

// Depolarizing storage channel N(rho) = r rho + (1-r) I/2.
inline KrausChannel depolarizing_channel(double r) {
    if (r < 0.0 || r > 1.0) throw ValidationError("depolarizing_channel: r out of [0,1]");
    std::vector<Mat> k;
    k.push_back(std::sqrt((1.0 + 3.0 * r) / 4.0) * Mat::identity(2));
    k.push_back(std::sqrt((1.0 - r) / 4.0) * ops::pauli_x());
    k.push_back(std::sqrt((1.0 - r) / 4.0) * ops::pauli_y());
    k.push_back(std::sqrt((1.0 - r) / 4.0) * ops::pauli_z());
    return KrausChannel(std::move(k));
}

// Sampling follows the documented recipe: GG^dagger normalized for states,
// normalized Gaussian vectors for pure states, QR of a Gaussian matrix with
// phase-fixed diagonal for unitaries.
inline DensityMatrix random_density(Rng& rng, int dim) {
    const Mat g = random_gaussian_matrix(rng, dim, dim);
    Mat m = g * g.adjoint();
    m *= cplx(1.0 / m.trace().real(), 0.0);
    return DensityMatrix(m);
}

inline PureState random_pure(Rng& rng, int dim) {
    Vec v(dim);
    for (auto& x : v) x = rng.gaussian_cplx();
    return PureState(normalized(v));
}

inline Mat random_unitary(Rng& rng, int dim) {
    Mat g = random_gaussian_matrix(rng, dim, dim);
    // Modified Gram-Schmidt; R diagonal phases folded back into Q.
    Mat q(dim, dim);
    for (int j = 0; j < dim; ++j) {
        Vec col(dim);
        for (int i = 0; i < dim; ++i) col[i] = g(i, j);
        for (int k = 0; k < j; ++k) {
            Vec prev(dim);
            for (int i = 0; i < dim; ++i) prev[i] = q(i, k);
            const cplx proj = dot(prev, col);
            for (int i = 0; i < dim; ++i) col[i] -= proj * prev[i];
        }
        // MGS leaves R with a real positive diagonal, which is exactly the
        // phase fix that makes the distribution Haar.
        const double rjj = norm2(col);
        for (int i = 0; i < dim; ++i) q(i, j) = col[i] / rjj;
    }
    return q;
}

inline PureState basis_state(int dim, int k) {
    Vec v(dim, 0.0);
    v[k] = 1.0;
    return PureState(std::move(v));
}

} // namespace qcrypt
