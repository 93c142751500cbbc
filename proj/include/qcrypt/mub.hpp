#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "qcrypt/matcore.hpp"

namespace qcrypt {

class OrthonormalBasis {
  public:
    explicit OrthonormalBasis(std::vector<Vec> vectors) : v_(std::move(vectors)) {
        if (v_.empty()) throw ValidationError("OrthonormalBasis: empty");
        const size_t d = v_.front().size();
        if (v_.size() != d) throw ValidationError("OrthonormalBasis: vector count != dim");
        for (size_t i = 0; i < d; ++i) {
            if (v_[i].size() != d) throw ValidationError("OrthonormalBasis: dimension mismatch");
            for (size_t j = i; j < d; ++j) {
                const cplx ip = dot(v_[i], v_[j]);
                const cplx target = i == j ? cplx(1.0) : cplx(0.0);
                if (std::abs(ip - target) > 1e-9) throw ValidationError("OrthonormalBasis: not orthonormal");
            }
        }
    }
    int dim() const { return static_cast<int>(v_.size()); }
    const Vec& operator[](size_t k) const { return v_[k]; }
    const std::vector<Vec>& vectors() const { return v_; }

    static OrthonormalBasis from_unitary_columns(const Mat& u) {
        std::vector<Vec> vs;
        for (int k = 0; k < u.cols(); ++k) {
            Vec v(u.rows());
            for (int i = 0; i < u.rows(); ++i) v[i] = u(i, k);
            vs.push_back(std::move(v));
        }
        return OrthonormalBasis(std::move(vs));
    }

  private:
    std::vector<Vec> v_;
};

struct MubCheckReport {
    bool unbiased = false;
    double worst_deviation = 0.0; // max | |<b|b'>|^2 - 1/d |
    int worst_pair_first = -1;
    int worst_pair_second = -1;
};

class MubSet {
  public:
    explicit MubSet(std::vector<OrthonormalBasis> bases, double overlap_tol = tol::mub_overlap)
        : b_(std::move(bases)) {
        if (b_.empty()) throw ValidationError("MubSet: empty");
        for (const auto& basis : b_)
            if (basis.dim() != b_.front().dim()) throw ValidationError("MubSet: dimension mismatch");
        const MubCheckReport r = check(overlap_tol);
        if (!r.unbiased) throw ValidationError("MubSet: bases not mutually unbiased");
    }

    int dim() const { return b_.front().dim(); }
    size_t size() const { return b_.size(); }
    const OrthonormalBasis& operator[](size_t t) const { return b_[t]; }
    const std::vector<OrthonormalBasis>& bases() const { return b_; }

    MubCheckReport check(double overlap_tol) const { return check_mutually_unbiased(b_, overlap_tol); }

    static MubCheckReport check_mutually_unbiased(const std::vector<OrthonormalBasis>& bases, double overlap_tol) {
        MubCheckReport r;
        r.unbiased = true;
        const double target = 1.0 / bases.front().dim();
        for (size_t s = 0; s < bases.size(); ++s)
            for (size_t t = s + 1; t < bases.size(); ++t)
                for (int k = 0; k < bases[s].dim(); ++k)
                    for (int l = 0; l < bases[t].dim(); ++l) {
                        const double ov = std::norm(dot(bases[s][k], bases[t][l]));
                        const double dev = std::abs(ov - target);
                        if (dev > r.worst_deviation) {
                            r.worst_deviation = dev;
                            r.worst_pair_first = static_cast<int>(s);
                            r.worst_pair_second = static_cast<int>(t);
                        }
                        if (dev > overlap_tol) r.unbiased = false;
                    }
        return r;
    }

  private:
    std::vector<OrthonormalBasis> b_;
};

// Deterministic phase convention: first amplitude of magnitude > eps made
// real positive.
inline Vec phase_fixed(Vec v, double eps = 1e-12) {
    for (const cplx& a : v) {
        if (std::abs(a) > eps) {
            const cplx ph = std::conj(a) / std::abs(a);
            for (auto& x : v) x *= ph;
            break;
        }
    }
    return v;
}

inline OrthonormalBasis phase_fixed(const OrthonormalBasis& b) {
    std::vector<Vec> vs;
    for (const auto& v : b.vectors()) vs.push_back(phase_fixed(v));
    return OrthonormalBasis(std::move(vs));
}

// The three bases generated by I, H^(x)n and K^(x)n.
inline MubSet standard_bases(int n) {
    if (n < 1) throw ValidationError("standard_bases: n must be >= 1");
    const Mat h = kron_pow(ops::hadamard(), n);
    const Mat k = kron_pow(ops::k_transform(), n);
    std::vector<OrthonormalBasis> bases;
    bases.push_back(OrthonormalBasis::from_unitary_columns(Mat::identity(1 << n)));
    bases.push_back(phase_fixed(OrthonormalBasis::from_unitary_columns(h)));
    bases.push_back(phase_fixed(OrthonormalBasis::from_unitary_columns(k)));
    return MubSet(std::move(bases));
}

// s x s grid over symbols 1..s. Latin squares have each row and column a
// permutation; the helper row/column squares used by the MUB construction
// are not Latin but satisfy the pair-coverage condition.
struct SymbolSquare {
    int s = 0;
    std::vector<int> cells; // row-major, values 1..s

    int at(int i, int j) const { return cells[static_cast<size_t>(i) * s + j]; }

    bool symbol_counts_ok() const {
        std::vector<int> count(s + 1, 0);
        for (int v : cells) {
            if (v < 1 || v > s) return false;
            ++count[v];
        }
        for (int v = 1; v <= s; ++v)
            if (count[v] != s) return false;
        return true;
    }
};

class LatinSquare {
  public:
    explicit LatinSquare(SymbolSquare sq) : sq_(std::move(sq)) {
        if (sq_.s < 1 || static_cast<int>(sq_.cells.size()) != sq_.s * sq_.s)
            throw ValidationError("LatinSquare: bad shape");
        for (int i = 0; i < sq_.s; ++i) {
            std::vector<bool> row(sq_.s + 1, false), col(sq_.s + 1, false);
            for (int j = 0; j < sq_.s; ++j) {
                const int rv = sq_.at(i, j);
                const int cv = sq_.at(j, i);
                if (rv < 1 || rv > sq_.s || row[rv]) throw ValidationError("LatinSquare: row not a permutation");
                if (cv < 1 || cv > sq_.s || col[cv]) throw ValidationError("LatinSquare: column not a permutation");
                row[rv] = col[cv] = true;
            }
        }
    }
    int side() const { return sq_.s; }
    const SymbolSquare& square() const { return sq_; }

  private:
    SymbolSquare sq_;
};

// Plain-text grid of integers 1..s, whitespace separated.
inline LatinSquare parse_latin_square(const std::string& text) {
    std::istringstream in(text);
    std::vector<int> values;
    int v;
    while (in >> v) values.push_back(v);
    const int s = static_cast<int>(std::lround(std::sqrt(static_cast<double>(values.size()))));
    if (s < 1 || static_cast<size_t>(s) * s != values.size())
        throw ValidationError("parse_latin_square: cell count is not a square");
    return LatinSquare(SymbolSquare{s, values});
}

inline SymbolSquare row_square(int s) {
    SymbolSquare q{s, std::vector<int>(static_cast<size_t>(s) * s)};
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j) q.cells[static_cast<size_t>(i) * s + j] = i + 1;
    return q;
}

inline SymbolSquare column_square(int s) {
    SymbolSquare q{s, std::vector<int>(static_cast<size_t>(s) * s)};
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j) q.cells[static_cast<size_t>(i) * s + j] = j + 1;
    return q;
}

// Pair-coverage condition: overlaying both squares produces every pair once.
inline bool squares_mutually_orthogonal(const SymbolSquare& a, const SymbolSquare& b) {
    if (a.s != b.s) return false;
    std::vector<int> seen(static_cast<size_t>(a.s) * a.s, 0);
    for (size_t k = 0; k < a.cells.size(); ++k) {
        const int idx = (a.cells[k] - 1) * a.s + (b.cells[k] - 1);
        if (seen[idx]++) return false;
    }
    return true;
}

// One basis of C^{s^2} per square: |v_{1,l}> = 1/sqrt(s) sum_{L_ij = l} |i,j>
// and the s-1 Fourier-shifted companions with coefficients w^{(t-1)(m-1)}.
inline OrthonormalBasis square_basis(const SymbolSquare& sq) {
    const int s = sq.s;
    const int d = s * s;
    std::vector<Vec> vectors;
    for (int sym = 1; sym <= s; ++sym) {
        std::vector<int> cells;
        for (int i = 0; i < s; ++i)
            for (int j = 0; j < s; ++j)
                if (sq.at(i, j) == sym) cells.push_back(i * s + j);
        if (static_cast<int>(cells.size()) != s) throw ValidationError("square_basis: symbol count != s");
        for (int t = 0; t < s; ++t) {
            Vec v(d, 0.0);
            for (int m = 0; m < s; ++m) {
                // Powers of w computed per entry to avoid phase drift.
                const double ang = 2.0 * M_PI * ((static_cast<long long>(t) * m) % s) / s;
                v[cells[m]] = cplx(std::cos(ang), std::sin(ang)) / std::sqrt(static_cast<double>(s));
            }
            vectors.push_back(phase_fixed(std::move(v)));
        }
    }
    return OrthonormalBasis(std::move(vectors));
}

// MUBs in dimension s^2 from mutually orthogonal Latin squares, optionally
// together with the two non-Latin row/column squares.
inline MubSet latin_square_mub(int s, const std::vector<LatinSquare>& squares, bool include_row_and_column = true) {
    if (s < 2) throw ValidationError("latin_square_mub: s must be >= 2");
    for (const auto& l : squares)
        if (l.side() != s) throw ValidationError("latin_square_mub: side mismatch");
    if (squares.empty() && !include_row_and_column) throw ValidationError("latin_square_mub: no squares");
    std::vector<SymbolSquare> all;
    for (const auto& l : squares) all.push_back(l.square());
    if (include_row_and_column) {
        all.push_back(row_square(s));
        all.push_back(column_square(s));
    }
    for (size_t a = 0; a < all.size(); ++a) {
        if (!all[a].symbol_counts_ok()) throw ValidationError("latin_square_mub: bad symbol counts");
        for (size_t b = a + 1; b < all.size(); ++b)
            if (!squares_mutually_orthogonal(all[a], all[b]))
                throw ValidationError("latin_square_mub: squares not mutually orthogonal");
    }
    std::vector<OrthonormalBasis> bases;
    for (const auto& q : all) bases.push_back(square_basis(q));
    return MubSet(std::move(bases));
}

inline bool is_prime(int d) {
    if (d < 2) return false;
    for (int k = 2; k * k <= d; ++k)
        if (d % k == 0) return false;
    return true;
}

// Generalized Pauli operators on C^d.
inline Mat generalized_x(int d) {
    Mat x(d, d);
    for (int k = 0; k < d; ++k) x((k + 1) % d, k) = 1.0;
    return x;
}

inline Mat generalized_z(int d) {
    Mat z(d, d);
    for (int k = 0; k < d; ++k) {
        const double ang = 2.0 * M_PI * k / d;
        z(k, k) = cplx(std::cos(ang), std::sin(ang));
    }
    return z;
}

// d+1 MUBs in prime dimension d as the eigenbases of Z, X, XZ, ..., XZ^{d-1}.
inline MubSet pauli_mub(int d) {
    if (!is_prime(d)) throw ValidationError("pauli_mub: d must be prime");
    if (d > 31) throw ValidationError("pauli_mub: d too large");
    std::vector<OrthonormalBasis> bases;
    bases.push_back(OrthonormalBasis::from_unitary_columns(Mat::identity(d))); // Z eigenbasis
    if (d == 2) {
        const double s = 1.0 / std::sqrt(2.0);
        bases.push_back(OrthonormalBasis({{s, s}, {s, -s}}));                    // X
        bases.push_back(OrthonormalBasis({{s, cplx(0, -s)}, {s, cplx(0, s)}})); // XZ
    } else {
        for (int b = 0; b < d; ++b) {
            std::vector<Vec> vs;
            for (int mu = 0; mu < d; ++mu) {
                Vec v(d);
                for (int l = 0; l < d; ++l) {
                    // s_l = b l(l-1)/2 - mu l (mod d); integer because d is odd.
                    const long long sl = (static_cast<long long>(b) * l * (l - 1) / 2 - static_cast<long long>(mu) * l) % d;
                    const double ang = 2.0 * M_PI * ((sl % d + d) % d) / d;
                    v[l] = cplx(std::cos(ang), std::sin(ang)) / std::sqrt(static_cast<double>(d));
                }
                vs.push_back(phase_fixed(std::move(v)));
            }
            bases.push_back(OrthonormalBasis(std::move(vs)));
        }
    }
    return MubSet(std::move(bases));
}

// Square-dimension product MUBs {U_t (x) U_t^*} from a set of unitaries that
// generate MUBs in dimension s.
inline MubSet product_mub(const std::vector<Mat>& unitaries) {
    std::vector<OrthonormalBasis> bases;
    for (const auto& u : unitaries)
        bases.push_back(phase_fixed(OrthonormalBasis::from_unitary_columns(kron(u, u.conjugate()))));
    return MubSet(std::move(bases));
}

inline Mat basis_projector(const OrthonormalBasis& b, int k) { return projector(b[k]); }

} // namespace qcrypt
