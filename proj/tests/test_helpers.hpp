#pragma once

#include <doctest.h>

#include "qcrypt/matcore.hpp"

namespace qtest {

using namespace qcrypt;

inline void check_close_mat(const Mat& a, const Mat& b, double eps) {
    REQUIRE(a.rows() == b.rows());
    REQUIRE(a.cols() == b.cols());
    CHECK((a - b).max_abs() <= eps);
}

inline DensityMatrix dm(const Mat& m) { return DensityMatrix(m); }

inline DensityMatrix pure_dm(const Vec& v) { return DensityMatrix(projector(normalized(v))); }

inline Vec ket0() { return {1.0, 0.0}; }
inline Vec ket1() { return {0.0, 1.0}; }
inline Vec ket_plus() { return {1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)}; }
inline Vec ket_minus() { return {1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0)}; }

} // namespace qtest
