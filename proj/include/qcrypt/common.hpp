#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace qcrypt {

using cplx = std::complex<double>;

// Thrown when an input violates a documented precondition.
class ValidationError : public std::invalid_argument {
  public:
    explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

// Thrown when an iterative routine exhausts its iteration budget.
class NonConvergence : public std::runtime_error {
  public:
    explicit NonConvergence(const std::string& what) : std::runtime_error(what) {}
};

namespace tol {
inline constexpr double hermiticity = 1e-10;
inline constexpr double psd_eigenvalue = -1e-9;
inline constexpr double trace_one = 1e-9;
inline constexpr double unit_norm = 1e-10;
inline constexpr double povm_sum = 1e-8;
inline constexpr double kraus_sum = 1e-8;
inline constexpr double mub_overlap = 1e-8;
} // namespace tol

inline double log2_safe(double x) { return std::log2(x); }

// x * log2(x) with the 0 log 0 = 0 convention.
inline double xlog2(double x) { return x <= 0.0 ? 0.0 : x * std::log2(x); }

inline bool nearly_equal(double a, double b, double eps) { return std::abs(a - b) <= eps; }

} // namespace qcrypt
