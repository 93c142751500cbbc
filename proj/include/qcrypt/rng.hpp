#pragma once

#include <cstdint>
#include <random>

#include "qcrypt/common.hpp"
#include "qcrypt/matrix.hpp"

namespace qcrypt {

// Deterministic random source. Uniform doubles and gaussians are produced
// from the raw 64-bit stream directly so results are identical across
// standard library implementations.
class Rng {
  public:
    explicit Rng(uint64_t seed = kDefaultSeed) : gen_(seed), seed_mix_(seed) {}

    static constexpr uint64_t kDefaultSeed = 12345;

    // Independent substream for restart/trial i.
    Rng child(uint64_t stream) const {
        uint64_t z = seed_mix_ ^ (stream + 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        z = z ^ (z >> 31);
        return Rng(z, true);
    }

    uint64_t bits() { return gen_(); }

    // Uniform in [0,1).
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform integer in [0, n).
    uint64_t integer(uint64_t n) {
        // Rejection sampling keeps the distribution exact.
        const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        uint64_t v = gen_();
        while (v >= limit) v = gen_();
        return v % n;
    }

    bool bernoulli(double p) { return uniform() < p; }
    int bit() { return static_cast<int>(gen_() >> 63); }

    // Standard normal via Box-Muller on our own uniforms.
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 1e-300) u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double th = 2.0 * M_PI * u2;
        spare_ = r * std::sin(th);
        have_spare_ = true;
        return r * std::cos(th);
    }

    cplx gaussian_cplx() { return cplx(gaussian(), gaussian()); }

  private:
    Rng(uint64_t mixed, bool) : gen_(mixed), seed_mix_(mixed) {}

    std::mt19937_64 gen_;
    uint64_t seed_mix_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

inline Mat random_gaussian_matrix(Rng& rng, int rows, int cols) {
    Mat g(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) g(i, j) = rng.gaussian_cplx();
    return g;
}

} // namespace qcrypt
