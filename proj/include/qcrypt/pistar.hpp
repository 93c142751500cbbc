#pragma once

#include <numeric>
#include <string>
#include <vector>

#include "qcrypt/mub.hpp"
#include "qcrypt/rng.hpp"
#include "qcrypt/sdp.hpp"

namespace qcrypt {

struct HelstromResult {
    double p_success = 0.0;
    Mat m0; // projector onto the positive eigenspace of q rho0 - (1-q) rho1
    Mat m1;
};

// Two-state discrimination optimum: p = 1/2 [1 + ||q rho0 - (1-q) rho1||_1].
inline HelstromResult helstrom(const DensityMatrix& rho0, const DensityMatrix& rho1, double q = 0.5) {
    if (rho0.dim() != rho1.dim()) throw ValidationError("helstrom: dimension mismatch");
    if (q < 0.0 || q > 1.0) throw ValidationError("helstrom: prior out of [0,1]");
    const Mat delta = q * rho0.mat() - (1.0 - q) * rho1.mat();
    const EigResult e = eig_hermitian(delta);
    HelstromResult r;
    double tn = 0.0;
    Mat m0(rho0.dim(), rho0.dim());
    for (int k = 0; k < rho0.dim(); ++k) {
        tn += std::abs(e.values[k]);
        if (e.values[k] >= 0.0) {
            const Vec v = eig_column(e, k);
            m0 += projector(v);
        }
    }
    r.p_success = 0.5 * (1.0 + tn);
    r.m0 = m0;
    r.m1 = Mat::identity(rho0.dim()) - m0;
    return r;
}

// Guess-the-basis baseline p = 1/|B| + (1 - 1/|B|)/|Y|.
inline double guess_basis_baseline(int n_bases, int n_outcomes) {
    if (n_bases < 1 || n_outcomes < 1) throw ValidationError("guess_basis_baseline: counts must be >= 1");
    return 1.0 / n_bases + (1.0 - 1.0 / n_bases) / n_outcomes;
}

// STAR upper bound for balanced Boolean functions: 1/2 + 1/(2 sqrt|B|).
inline double star_boolean_upper(int n_bases) {
    if (n_bases < 1) throw ValidationError("star_boolean_upper: need at least one basis");
    return 0.5 + 0.5 / std::sqrt(static_cast<double>(n_bases));
}

// Square-root-measurement lower bound of the PI0-STAR theorem for m bases
// and |Y| outcomes (balanced functions, mutually unbiased encodings):
//   p >= [G(1) + (6 + 1/|Y|) G(2) + 6 G(3) + G(4)] / (m [G(1) + 3 G(2) + G(3)])
// with G(i) = m!/(m-i)! |Y|^{m-i}. Independent of the string length, it
// strictly beats the basis-guessing baseline; for m = 2 it simplifies to
// p_guess + (|Y|-1)/(|Y|(|Y|+3)).
inline double srm_closed_form_bound(int m, int y) {
    if (m < 2 || y < 2) throw ValidationError("srm_closed_form_bound: need m >= 2, |Y| >= 2");
    auto g = [m, y](int i) {
        if (i > m) return 0.0;
        double falling = 1.0;
        for (int j = 0; j < i; ++j) falling *= m - j;
        return falling * std::pow(static_cast<double>(y), m - i);
    };
    const double num = g(1) + (6.0 + 1.0 / y) * g(2) + 6.0 * g(3) + g(4);
    const double den = m * (g(1) + 3.0 * g(2) + g(3));
    return num / den;
}

// Hidden-function ensemble rho_{yb} = sum_{x in f^-1(y)} P_X(x) U_b|x><x|U_b^dagger.
class HiddenFunctionEnsemble {
  public:
    HiddenFunctionEnsemble(int n, std::vector<int> f_table, std::vector<Mat> basis_unitaries,
                           std::vector<double> prior_x = {}, std::vector<double> prior_b = {})
        : n_(n), f_(std::move(f_table)), u_(std::move(basis_unitaries)) {
        const int dim = 1 << n_;
        if (static_cast<int>(f_.size()) != dim) throw ValidationError("HiddenFunctionEnsemble: f not total");
        n_outcomes_ = *std::max_element(f_.begin(), f_.end()) + 1;
        for (int y : f_)
            if (y < 0) throw ValidationError("HiddenFunctionEnsemble: negative outcome");
        if (u_.empty()) throw ValidationError("HiddenFunctionEnsemble: no bases");
        for (const auto& u : u_)
            if (u.rows() != dim || u.cols() != dim) throw ValidationError("HiddenFunctionEnsemble: bad unitary");
        px_ = prior_x.empty() ? std::vector<double>(dim, 1.0 / dim) : std::move(prior_x);
        pb_ = prior_b.empty() ? std::vector<double>(u_.size(), 1.0 / u_.size()) : std::move(prior_b);
        if (static_cast<int>(px_.size()) != dim)
            throw ValidationError("HiddenFunctionEnsemble: prior length mismatch");
        if (pb_.size() != u_.size()) throw ValidationError("HiddenFunctionEnsemble: basis prior length mismatch");
        for (const auto* prior : {&px_, &pb_}) {
            double sum = 0.0;
            for (double p : *prior) {
                if (p < 0.0) throw ValidationError("HiddenFunctionEnsemble: negative prior");
                sum += p;
            }
            if (std::abs(sum - 1.0) > 1e-9) throw ValidationError("HiddenFunctionEnsemble: prior does not sum to 1");
        }
    }

    int n() const { return n_; }
    int dim() const { return 1 << n_; }
    int n_outcomes() const { return n_outcomes_; }
    int n_bases() const { return static_cast<int>(u_.size()); }
    double prior_x(int x) const { return px_[x]; }
    double prior_b(int b) const { return pb_[b]; }
    int f(int x) const { return f_[x]; }

    double prior_y(int y) const {
        double p = 0.0;
        for (int x = 0; x < dim(); ++x)
            if (f_[x] == y) p += px_[x];
        return p;
    }

    bool balanced() const {
        std::vector<int> count(n_outcomes_, 0);
        for (int y : f_) ++count[y];
        for (int c : count)
            if (c != count[0]) return false;
        return true;
    }

    // Support projector of rho_{yb}.
    Mat support_projector(int y, int b) const {
        Mat p(dim(), dim());
        for (int x = 0; x < dim(); ++x) {
            if (f_[x] != y) continue;
            Vec col(dim());
            for (int i = 0; i < dim(); ++i) col[i] = u_[b](i, x);
            p += projector(col);
        }
        return p;
    }

    // Normalized conditional state given (y, b).
    Mat state(int y, int b) const {
        Mat rho(dim(), dim());
        const double py = prior_y(y);
        if (py <= 0.0) throw ValidationError("HiddenFunctionEnsemble: empty outcome class");
        for (int x = 0; x < dim(); ++x) {
            if (f_[x] != y) continue;
            Vec col(dim());
            for (int i = 0; i < dim(); ++i) col[i] = u_[b](i, x);
            rho += (px_[x] / py) * projector(col);
        }
        return rho;
    }

    // Basis-averaged state of outcome class y.
    Mat averaged_state(int y) const {
        Mat rho(dim(), dim());
        for (int b = 0; b < n_bases(); ++b) rho += pb_[b] * state(y, b);
        return rho;
    }

  private:
    int n_;
    int n_outcomes_ = 0;
    std::vector<int> f_;
    std::vector<Mat> u_;
    std::vector<double> px_;
    std::vector<double> pb_;
};

inline std::vector<int> function_table_and(int n) {
    std::vector<int> f(1 << n, 0);
    f.back() = 1;
    return f;
}

inline std::vector<int> function_table_xor(int n) {
    std::vector<int> f(1 << n);
    for (int x = 0; x < (1 << n); ++x) f[x] = __builtin_popcount(static_cast<unsigned>(x)) & 1;
    return f;
}

inline std::vector<int> function_table_bit(int n, int i) {
    if (i < 0 || i >= n) throw ValidationError("function_table_bit: index out of range");
    std::vector<int> f(1 << n);
    for (int x = 0; x < (1 << n); ++x) f[x] = (x >> (n - 1 - i)) & 1;
    return f;
}

// AND prior: the all-ones string carries probability 1/2.
inline std::vector<double> and_prior(int n) {
    const int dim = 1 << n;
    std::vector<double> p(dim, 1.0 / (2.0 * (dim - 1)));
    p.back() = 0.5;
    return p;
}

inline std::vector<Mat> two_basis_unitaries(int n) {
    return {Mat::identity(1 << n), kron_pow(ops::hadamard(), n)};
}

inline std::vector<Mat> three_basis_unitaries(int n) {
    return {Mat::identity(1 << n), kron_pow(ops::hadamard(), n), kron_pow(ops::k_transform(), n)};
}

// Direct success probability of the square-root type measurement
// M_{o_1..o_m} = S^{-1/2} (sum_b P_{o_b b})^3 S^{-1/2}.
inline double srm_success(const HiddenFunctionEnsemble& e) {
    if (e.dim() > 16) throw ValidationError("srm_success: dimension cap is 16");
    const int m = e.n_bases();
    const int ny = e.n_outcomes();
    std::vector<std::vector<Mat>> p(ny, std::vector<Mat>());
    for (int y = 0; y < ny; ++y)
        for (int b = 0; b < m; ++b) p[y].push_back(e.support_projector(y, b));

    long long tuples = 1;
    for (int b = 0; b < m; ++b) tuples *= ny;

    Mat s(e.dim(), e.dim());
    std::vector<Mat> cubes;
    cubes.reserve(tuples);
    for (long long o = 0; o < tuples; ++o) {
        Mat sum(e.dim(), e.dim());
        long long rest = o;
        for (int b = 0; b < m; ++b) {
            sum += p[rest % ny][b];
            rest /= ny;
        }
        const Mat cube = sum * sum * sum;
        s += cube;
        cubes.push_back(cube);
    }
    const Mat si = invsqrt_psd(s, 1e-12);
    double success = 0.0;
    for (long long o = 0; o < tuples; ++o) {
        const Mat mop = si * cubes[o] * si;
        long long rest = o;
        for (int b = 0; b < m; ++b) {
            const int ob = static_cast<int>(rest % ny);
            rest /= ny;
            success += e.prior_b(b) * e.prior_y(ob) * trace_product(mop, e.state(ob, b)).real();
        }
    }
    return success;
}

// Closed-form PI0-STAR optimum for the AND function with two bases:
// p = 1/2 [2 + 1/(2^n + 2^{n/2} - 2) - 1/(2^n - 1)].
inline double pistar_and_value(int n) {
    if (n < 1) throw ValidationError("pistar_and_value: n must be >= 1");
    const double dn = std::pow(2.0, n);
    const double dn2 = std::pow(2.0, 0.5 * n);
    if (n == 1) return 0.5 + 0.5 / std::sqrt(2.0); // announcing the basis does not help
    return 0.5 * (2.0 + 1.0 / (dn + dn2 - 2.0) - 1.0 / (dn - 1.0));
}

// The 4-outcome POVM SDP of the AND proof, in block-embedded standard form.
inline double pistar_and_sdp_value(int n, double tolerance = 1e-9) {
    if (n < 1 || n > 4) throw ValidationError("pistar_and_sdp_value: n out of range");
    const HiddenFunctionEnsemble e(n, function_table_and(n), two_basis_unitaries(n), and_prior(n));
    const int d = e.dim();
    std::vector<Mat> b;
    for (int oplus = 0; oplus < 2; ++oplus)
        for (int ocross = 0; ocross < 2; ++ocross) b.push_back(e.state(oplus, 0) + e.state(ocross, 1));

    const int nd = 4 * d;
    sdp::Problem p;
    p.C = Mat::zero(nd, nd);
    for (int k = 0; k < 4; ++k)
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) p.C(k * d + i, k * d + j) = 0.25 * b[k](i, j);

    // POVM completeness sum_k M_k = I expressed against a Hermitian basis.
    auto push_constraint = [&](const Mat& elem, double rhs) {
        Mat a(nd, nd);
        for (int k = 0; k < 4; ++k)
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) a(k * d + i, k * d + j) = elem(i, j);
        p.A.push_back(a);
        p.b.push_back(rhs);
    };
    for (int i = 0; i < d; ++i) {
        Mat eii(d, d);
        eii(i, i) = 1.0;
        push_constraint(eii, 1.0);
    }
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
            Mat sym(d, d);
            sym(i, j) = sym(j, i) = 1.0;
            push_constraint(sym, 0.0);
            Mat asym(d, d);
            asym(i, j) = cplx(0.0, 1.0);
            asym(j, i) = cplx(0.0, -1.0);
            push_constraint(asym, 0.0);
        }
    return sdp::solve(p, tolerance).primal_value;
}

struct PistarXorValues {
    double star = 0.0;
    double pistar = 0.0;
};

// STAR and PI0-STAR optima for the XOR function with 2 or 3 standard bases.
inline PistarXorValues pistar_xor_value(int n, int n_bases) {
    if (n < 1) throw ValidationError("pistar_xor_value: n must be >= 1");
    if (n_bases != 2 && n_bases != 3) throw ValidationError("pistar_xor_value: 2 or 3 bases");
    PistarXorValues v;
    if (n % 2 == 0) {
        v.star = 0.75;
        v.pistar = 1.0;
    } else {
        v.star = 0.5 + 0.5 / std::sqrt(static_cast<double>(n_bases));
        v.pistar = v.star; // post-measurement information is useless for odd n
    }
    return v;
}

// STAR value recomputed from the explicitly built ensemble by Helstrom.
inline double pistar_xor_star_direct(int n, int n_bases) {
    if (n < 1 || n > 4) throw ValidationError("pistar_xor_star_direct: n out of range");
    const auto us = n_bases == 2 ? two_basis_unitaries(n) : three_basis_unitaries(n);
    const HiddenFunctionEnsemble e(n, function_table_xor(n), us);
    const DensityMatrix s0 = DensityMatrix(e.averaged_state(0));
    const DensityMatrix s1 = DensityMatrix(e.averaged_state(1));
    return helstrom(s0, s1, 0.5).p_success;
}

// Orthogonal projector blocks of a direct-sum decomposition.
struct BlockDecomposition {
    std::vector<Mat> projectors;

    int dim() const { return projectors.empty() ? 0 : projectors.front().rows(); }
    std::vector<int> ranks() const {
        std::vector<int> r;
        for (const auto& p : projectors) r.push_back(static_cast<int>(std::lround(p.trace().real())));
        return r;
    }
    int max_rank() const {
        int m = 0;
        for (int r : ranks()) m = std::max(m, r);
        return m;
    }

    // Residuals for the invariants; the largest is returned.
    double invariant_residual(const std::vector<Mat>& invariant_under) const {
        double worst = 0.0;
        Mat sum(dim(), dim());
        for (size_t i = 0; i < projectors.size(); ++i) {
            sum += projectors[i];
            for (size_t j = 0; j < projectors.size(); ++j) {
                const Mat prod = projectors[i] * projectors[j];
                worst = std::max(worst, (prod - (i == j ? projectors[i] : Mat::zero(dim(), dim()))).max_abs());
            }
        }
        worst = std::max(worst, (sum - Mat::identity(dim())).max_abs());
        for (const auto& p : invariant_under) {
            Mat rebuilt(dim(), dim());
            for (const auto& pi : projectors) rebuilt += pi * p * pi;
            worst = std::max(worst, (rebuilt - p).max_abs());
        }
        return worst;
    }
};

struct MinStorageResult {
    int qubits = 0;
    BlockDecomposition blocks;
    double commutation_residual = 0.0; // max ||[Pi_j, P_yb]||
};

namespace detail {

// Basis of { X : [X, P] = 0 for all P } over the complex matrices, returned
// as matrices. Computed from the real nullspace of the stacked commutator
// equations.
inline std::vector<Mat> commutant_basis(const std::vector<Mat>& ps, int d) {
    const int nvar = 2 * d * d; // Re X, Im X
    std::vector<std::vector<double>> rows;
    auto re_index = [d](int i, int j) { return i * d + j; };
    auto im_index = [d](int i, int j) { return d * d + i * d + j; };
    for (const auto& p : ps) {
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b) {
                std::vector<double> re_row(nvar, 0.0), im_row(nvar, 0.0);
                for (int k = 0; k < d; ++k) {
                    const cplx pkb = p(k, b);
                    const cplx pak = p(a, k);
                    // [X, P](a,b) = sum_k X(a,k) P(k,b) - P(a,k) X(k,b)
                    re_row[re_index(a, k)] += pkb.real();
                    re_row[im_index(a, k)] -= pkb.imag();
                    re_row[re_index(k, b)] -= pak.real();
                    re_row[im_index(k, b)] += pak.imag();
                    im_row[re_index(a, k)] += pkb.imag();
                    im_row[im_index(a, k)] += pkb.real();
                    im_row[re_index(k, b)] -= pak.imag();
                    im_row[im_index(k, b)] -= pak.real();
                }
                rows.push_back(std::move(re_row));
                rows.push_back(std::move(im_row));
            }
    }
    const auto null_basis = real_nullspace(rows, nvar, 1e-12);
    std::vector<Mat> out;
    for (const auto& v : null_basis) {
        Mat x(d, d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) x(i, j) = cplx(v[re_index(i, j)], v[im_index(i, j)]);
        out.push_back(std::move(x));
    }
    return out;
}

inline Mat random_hermitian_commutant_element(const std::vector<Mat>& basis, int d, Rng& rng) {
    Mat m(d, d);
    for (const auto& b : basis) {
        const Mat h = 0.5 * (b + b.adjoint());
        const Mat ah = cplx(0.0, 0.5) * (b - b.adjoint());
        m += rng.gaussian() * h + rng.gaussian() * ah;
    }
    return m;
}

// Split block columns (orthonormal, d x r) by the eigenspaces of the
// compression of a Hermitian element.
inline std::vector<std::vector<Vec>> split_by_compression(const std::vector<Vec>& cols, const Mat& element,
                                                          double gap_tol) {
    const int r = static_cast<int>(cols.size());
    const int d = static_cast<int>(cols.front().size());
    Mat comp(r, r);
    for (int i = 0; i < r; ++i) {
        const Vec ei = mat_vec(element, cols[i]);
        for (int j = 0; j < r; ++j) comp(j, i) = dot(cols[j], ei);
    }
    comp = 0.5 * (comp + comp.adjoint());
    const EigResult e = eig_hermitian(comp);
    std::vector<std::vector<Vec>> groups;
    for (int k = 0; k < r; ++k) {
        Vec newcol(d, 0.0);
        for (int i = 0; i < r; ++i)
            for (int l = 0; l < d; ++l) newcol[l] += e.vectors(i, k) * cols[i][l];
        if (k == 0 || e.values[k] - e.values[k - 1] > gap_tol) groups.emplace_back();
        groups.back().push_back(std::move(newcol));
    }
    return groups;
}

} // namespace detail

// Finest decomposition H = (+)_j J_j (x) K_j of the algebra generated by the
// per-basis support projectors, via iteratively refined eigenspaces of
// random commutant elements. Returns q with 2^q = max_j dim J_j and the
// commutant-POVM blocks.
inline MinStorageResult min_storage(const std::vector<std::vector<Mat>>& projectors_by_basis,
                                    uint64_t seed = Rng::kDefaultSeed) {
    std::vector<Mat> ps;
    for (const auto& group : projectors_by_basis)
        for (const auto& p : group) ps.push_back(p);
    if (ps.empty()) throw ValidationError("min_storage: no projectors");
    const int d = ps.front().rows();
    if (d > 16) throw ValidationError("min_storage: dimension cap is 16");
    for (const auto& p : ps) {
        if (p.rows() != d || p.cols() != d) throw ValidationError("min_storage: dimension mismatch");
        if (!p.is_hermitian(1e-8) || (p * p - p).max_abs() > 1e-7)
            throw ValidationError("min_storage: inputs not projectors");
    }
    for (const auto& group : projectors_by_basis)
        for (size_t i = 0; i < group.size(); ++i)
            for (size_t j = i + 1; j < group.size(); ++j)
                if ((group[i] * group[j]).max_abs() > 1e-7)
                    throw ValidationError("min_storage: per-basis projectors not orthogonal");

    const std::vector<Mat> basis = detail::commutant_basis(ps, d);
    Rng rng(seed);

    // Initial split from one generic element, then refine with fresh
    // elements until stable.
    std::vector<std::vector<Vec>> blocks;
    {
        std::vector<Vec> all;
        for (int i = 0; i < d; ++i) {
            Vec e(d, 0.0);
            e[i] = 1.0;
            all.push_back(std::move(e));
        }
        blocks.push_back(std::move(all));
    }
    const double gap_tol = 1e-6;
    for (int round = 0; round < 6; ++round) {
        const Mat element = detail::random_hermitian_commutant_element(basis, d, rng);
        std::vector<std::vector<Vec>> next;
        bool split = false;
        for (const auto& blk : blocks) {
            auto groups = detail::split_by_compression(blk, element, gap_tol);
            if (groups.size() > 1) split = true;
            for (auto& g : groups) next.push_back(std::move(g));
        }
        blocks = std::move(next);
        if (!split && round >= 2) break;
    }

    MinStorageResult result;
    for (const auto& blk : blocks) {
        Mat p(d, d);
        for (const auto& col : blk) p += projector(col);
        result.blocks.projectors.push_back(std::move(p));
    }
    for (const auto& pi : result.blocks.projectors)
        for (const auto& p : ps)
            result.commutation_residual = std::max(result.commutation_residual, (pi * p - p * pi).max_abs());
    if (result.commutation_residual > 1e-7)
        throw NonConvergence("min_storage: block refinement failed the commutation check");
    const int max_rank = result.blocks.max_rank();
    result.qubits = static_cast<int>(std::ceil(std::log2(std::max(1, max_rank))));
    return result;
}

// Rank <= 2 direct-sum decomposition for two projectors, built from the
// singular value decomposition of the off-diagonal block of P01 in the
// eigenbasis of P00. Degenerate singular-value clusters are re-diagonalized
// against the diagonal block.
inline BlockDecomposition two_basis_decomposition(const Mat& p00, const Mat& p01) {
    const int d = p00.rows();
    if (!p00.square() || p01.rows() != d || p01.cols() != d)
        throw ValidationError("two_basis_decomposition: shape mismatch");
    for (const Mat* p : {&p00, &p01})
        if (!p->is_hermitian(1e-8) || ((*p) * (*p) - *p).max_abs() > 1e-7)
            throw ValidationError("two_basis_decomposition: inputs not projectors");

    // Basis ordered as [range(P00) | complement].
    const EigResult e0 = eig_hermitian(p00);
    std::vector<Vec> range0, comp0;
    for (int k = 0; k < d; ++k) {
        const Vec v = eig_column(e0, k);
        if (e0.values[k] > 0.5)
            range0.push_back(v);
        else
            comp0.push_back(v);
    }
    const int n0 = static_cast<int>(range0.size());
    const int n1 = d - n0;
    Mat w(d, d);
    for (int j = 0; j < n0; ++j)
        for (int i = 0; i < d; ++i) w(i, j) = range0[j][i];
    for (int j = 0; j < n1; ++j)
        for (int i = 0; i < d; ++i) w(i, n0 + j) = comp0[j][i];
    const Mat pt = w.adjoint() * p01 * w;

    Mat a00(std::max(n0, 1), std::max(n0, 1)), a11(std::max(n1, 1), std::max(n1, 1)), a01(std::max(n0, 1), std::max(n1, 1));
    for (int i = 0; i < n0; ++i)
        for (int j = 0; j < n0; ++j) a00(i, j) = pt(i, j);
    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n1; ++j) a11(i, j) = pt(n0 + i, n0 + j);
    for (int i = 0; i < n0; ++i)
        for (int j = 0; j < n1; ++j) a01(i, j) = pt(i, n0 + j);

    const double sv_tol = 1e-8;
    // Eigenbasis of A01 A01^dagger on the range side, clustered by sigma^2;
    // within each cluster re-diagonalize the compression of A00.
    std::vector<Vec> us;       // columns in C^{n0}
    std::vector<double> sigma; // matching singular values
    if (n0 > 0) {
        const Mat gram = a01 * a01.adjoint();
        const EigResult eg = eig_hermitian(gram, 1e-6);
        int k = 0;
        while (k < n0) {
            int k2 = k + 1;
            while (k2 < n0 && eg.values[k2] - eg.values[k2 - 1] <= 1e-9) ++k2;
            std::vector<Vec> cluster;
            for (int i = k; i < k2; ++i) cluster.push_back(eig_column(eg, i));
            // Re-diagonalize A00 inside the cluster (no-op for size 1).
            {
                const int r = static_cast<int>(cluster.size());
                Mat comp(r, r);
                for (int i = 0; i < r; ++i) {
                    const Vec ai = mat_vec(a00, cluster[i]);
                    for (int j = 0; j < r; ++j) comp(j, i) = dot(cluster[j], ai);
                }
                comp = 0.5 * (comp + comp.adjoint());
                const EigResult ec = eig_hermitian(comp);
                std::vector<Vec> rotated;
                for (int c = 0; c < r; ++c) {
                    Vec col(n0, 0.0);
                    for (int i = 0; i < r; ++i)
                        for (int l = 0; l < n0; ++l) col[l] += ec.vectors(i, c) * cluster[i][l];
                    rotated.push_back(std::move(col));
                }
                cluster = std::move(rotated);
            }
            for (const auto& u : cluster) {
                us.push_back(u);
                sigma.push_back(std::sqrt(std::max(0.0, eg.values[k])));
            }
            k = k2;
        }
    }

    BlockDecomposition out;
    auto lift0 = [&](const Vec& u) {
        Vec full(d, 0.0);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < n0; ++j) full[i] += w(i, j) * u[j];
        return full;
    };
    auto lift1 = [&](const Vec& v) {
        Vec full(d, 0.0);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < n1; ++j) full[i] += w(i, n0 + j) * v[j];
        return full;
    };

    std::vector<Vec> vs_used; // coupled partners in C^{n1}
    for (size_t k = 0; k < us.size(); ++k) {
        if (sigma[k] > sv_tol) {
            Vec v = mat_vec(a01.adjoint(), us[k]);
            for (auto& x : v) x /= sigma[k];
            vs_used.push_back(v);
            out.projectors.push_back(projector(lift0(us[k])) + projector(lift1(v)));
        } else {
            out.projectors.push_back(projector(lift0(us[k])));
        }
    }
    // Complement of the coupled partners inside C^{n1}: diagonalize the A11
    // compression there; each eigenvector is a rank-1 block.
    if (n1 > 0) {
        std::vector<Vec> comp_basis;
        for (int i = 0; i < n1; ++i) {
            Vec cand(n1, 0.0);
            cand[i] = 1.0;
            for (const auto& v : vs_used) {
                const cplx ip = dot(v, cand);
                for (int l = 0; l < n1; ++l) cand[l] -= ip * v[l];
            }
            for (const auto& v : comp_basis) {
                const cplx ip = dot(v, cand);
                for (int l = 0; l < n1; ++l) cand[l] -= ip * v[l];
            }
            const double nn = norm2(cand);
            if (nn > 1e-7) {
                for (auto& x : cand) x /= nn;
                comp_basis.push_back(std::move(cand));
            }
        }
        if (!comp_basis.empty()) {
            const int r = static_cast<int>(comp_basis.size());
            Mat comp(r, r);
            for (int i = 0; i < r; ++i) {
                const Vec ai = mat_vec(a11, comp_basis[i]);
                for (int j = 0; j < r; ++j) comp(j, i) = dot(comp_basis[j], ai);
            }
            comp = 0.5 * (comp + comp.adjoint());
            const EigResult ec = eig_hermitian(comp);
            for (int c = 0; c < r; ++c) {
                Vec col(n1, 0.0);
                for (int i = 0; i < r; ++i)
                    for (int l = 0; l < n1; ++l) col[l] += ec.vectors(i, c) * comp_basis[i][l];
                out.projectors.push_back(projector(lift1(col)));
            }
        }
    }

    if (out.invariant_residual({p00, p01}) > 1e-7)
        throw NonConvergence("two_basis_decomposition: invariants not met");
    return out;
}

// Grouped support projectors for a Boolean function under a set of basis
// unitaries, as consumed by min_storage.
inline std::vector<std::vector<Mat>> support_projectors(const HiddenFunctionEnsemble& e) {
    std::vector<std::vector<Mat>> out(e.n_bases());
    for (int b = 0; b < e.n_bases(); ++b)
        for (int y = 0; y < e.n_outcomes(); ++y) out[b].push_back(e.support_projector(y, b));
    return out;
}

// Three-basis construction that forces full storage: U1 couples
// |0 x> with |1 x> through distinct rotation angles, U2 does the same for
// the Hadamard-transformed pairs.
inline std::vector<Mat> full_storage_unitaries(int n) {
    if (n < 2) throw ValidationError("full_storage_unitaries: n must be >= 2");
    const int d = 1 << n;
    const int half = d / 2;
    const Mat hn1 = kron_pow(ops::hadamard(), n - 1);

    auto rotation_sum = [&](const std::vector<Vec>& xs, const std::vector<Vec>& sxs, double offset) {
        Mat u(d, d);
        for (int k = 0; k < half; ++k) {
            const double a = (k + offset) / (half + 1.0);
            const double b = std::sqrt(1.0 - a * a);
            u += a * (projector(xs[k]) + projector(sxs[k]));
            u += b * (outer(xs[k], sxs[k]) - outer(sxs[k], xs[k]));
        }
        return u;
    };

    std::vector<Vec> comp0(half), comp1(half), had0(half), had1(half);
    for (int k = 0; k < half; ++k) {
        Vec x(d, 0.0), sx(d, 0.0);
        x[k] = 1.0;       // |0>|k>
        sx[half + k] = 1.0; // |1>|k>
        comp0[k] = x;
        comp1[k] = sx;
        Vec hx(d, 0.0), hsx(d, 0.0);
        for (int i = 0; i < half; ++i) {
            hx[i] = hn1(i, k);
            hsx[half + i] = hn1(i, k);
        }
        had0[k] = hx;
        had1[k] = hsx;
    }
    const Mat u1 = rotation_sum(comp0, comp1, 1.0);
    const Mat u2 = rotation_sum(had0, had1, 0.5);
    return {Mat::identity(d), u1, u2};
}

} // namespace qcrypt
