#include <doctest.h>

#include "qcrypt/uncertainty.hpp"
#include "test_helpers.hpp"

using namespace qcrypt;
using namespace qtest;

namespace {

const char* kSquareA = "1 2 3\n2 3 1\n3 1 2\n";
const char* kSquareB = "1 2 3\n3 1 2\n2 3 1\n";

MubSet latin9(int m) {
    const MubSet full = latin_square_mub(3, {parse_latin_square(kSquareA), parse_latin_square(kSquareB)}, true);
    std::vector<OrthonormalBasis> subset(full.bases().begin(), full.bases().begin() + m);
    return MubSet(std::move(subset));
}

} // namespace

TEST_CASE("Maassen-Uffink bound") {
    const MubSet m1 = standard_bases(1);
    CHECK(maassen_uffink_bound(m1[0], m1[0]) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(maassen_uffink_bound(m1[0], m1[1]) == doctest::Approx(0.5).epsilon(1e-10));
    const MubSet m2 = standard_bases(2);
    CHECK(maassen_uffink_bound(m2[0], m2[1]) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK_THROWS_AS(maassen_uffink_bound(m1[0], m2[0]), ValidationError);
}

TEST_CASE("min average Shannon entropy: product MUBs d=4 are tight") {
    const MubSet prod = product_mub({Mat::identity(2), ops::hadamard(), ops::k_transform()});
    MinimizerOptions opt;
    opt.restarts = 24;
    const UncertaintyResult r = min_avg_shannon(prod, opt);
    CHECK(r.bound == doctest::Approx(1.0));
    CHECK(r.achieved == doctest::Approx(1.0).epsilon(1e-3));
    // Minimizer is (close to) a maximally entangled state: its reduced state
    // is nearly maximally mixed.
    const Mat red = partial_trace_raw(projector(r.minimizer), 2, 2, Subsystem::A);
    CHECK((red - 0.5 * Mat::identity(2)).max_abs() <= 5e-2);
}

TEST_CASE("min average Shannon entropy: Latin-square MUBs d=9") {
    // |1,1> attains |T| log(d)/2 exactly, for any subset with m >= 2.
    for (int m : {2, 3, 4}) {
        const MubSet mub = latin9(m);
        Vec e11(9, 0.0);
        e11[0] = 1.0; // |1,1>
        CHECK(average_shannon(mub, e11) == doctest::Approx(std::log2(3.0)).epsilon(1e-10));
    }
    MinimizerOptions opt;
    opt.restarts = 20;
    const UncertaintyResult r = min_avg_shannon(latin9(2), opt);
    CHECK(r.bound == doctest::Approx(std::log2(3.0)));
    CHECK(r.achieved == doctest::Approx(std::log2(3.0)).epsilon(1e-3));
}

TEST_CASE("single basis minimum is zero") {
    const MubSet comp({OrthonormalBasis::from_unitary_columns(Mat::identity(2))});
    MinimizerOptions opt;
    opt.restarts = 8;
    const UncertaintyResult r = min_avg_shannon(comp, opt);
    CHECK(r.bound == doctest::Approx(0.0));
    CHECK(r.achieved == doctest::Approx(0.0).epsilon(1e-6));
}

TEST_CASE("MU bound holds for 500 random pure states") {
    Rng rng(61);
    const MubSet m = standard_bases(1);
    const MubSet p2 = pauli_mub(3);
    for (int trial = 0; trial < 500; ++trial) {
        const Vec psi2 = random_pure(rng, 2).amplitudes();
        CHECK(average_shannon(m, psi2) >= 0.5 - 1e-9);
        const Vec psi3 = random_pure(rng, 3).amplitudes();
        CHECK(average_shannon(p2, psi3) >= 0.5 * std::log2(3.0) - 1e-9);
    }
}

TEST_CASE("full-MUB collision bound") {
    CHECK(full_mub_collision_bound(pauli_mub(2)) == doctest::Approx(std::log2(1.5)).epsilon(1e-10));
    CHECK(full_mub_collision_bound(pauli_mub(2)) == doctest::Approx(0.58496).epsilon(1e-4));
    const MubSet two({standard_bases(1)[0], standard_bases(1)[1]});
    CHECK(full_mub_collision_bound(two) == doctest::Approx(-std::log2(0.75)).epsilon(1e-10));
    CHECK(full_mub_collision_bound(two) == doctest::Approx(0.415).epsilon(1e-3));
    const MubSet five = pauli_mub(5);
    // N = d+1 = 6, d = 5 -> log((d+1)/2) = log 3.
    CHECK(full_mub_collision_bound(five) == doctest::Approx(std::log2(3.0)).epsilon(1e-10));
    // d=4 full set via the product construction has N=3 only; check the
    // formula value log(5/2) for N = d+1 = 5 with d = 4 directly.
    CHECK(-std::log2((5.0 + 4.0 - 1.0) / (4.0 * 5.0)) == doctest::Approx(std::log2(2.5)).epsilon(1e-12));
    CHECK(std::log2(2.5) == doctest::Approx(1.3219).epsilon(1e-4));

    // Property: (1/N) sum_b H2(B_b|psi) >= bound for sampled psi.
    Rng rng(67);
    for (int trial = 0; trial < 200; ++trial) {
        const Vec psi = random_pure(rng, 2).amplitudes();
        CHECK(average_collision(pauli_mub(2), psi) >= full_mub_collision_bound(pauli_mub(2)) - 1e-9);
        const Vec psi5 = random_pure(rng, 5).amplitudes();
        CHECK(average_collision(five, psi5) >= full_mub_collision_bound(five) - 1e-9);
    }
}

TEST_CASE("clifford Shannon relation") {
    MinimizerOptions opt;
    opt.restarts = 16;
    const UncertaintyResult k2 = clifford_shannon_relation(1, 2, opt);
    CHECK(k2.bound == doctest::Approx(0.5));
    CHECK(k2.achieved == doctest::Approx(0.5).epsilon(1e-3));

    const UncertaintyResult k3 = clifford_shannon_relation(1, 3, opt);
    CHECK(k3.bound == doctest::Approx(2.0 / 3.0));
    CHECK(k3.achieved == doctest::Approx(2.0 / 3.0).epsilon(1e-3));
    // rho = (I+X)/2 attains it.
    const CliffordGenerators g1(1);
    CHECK(detail::clifford_entropy_average(g1.observables(3), 0.5 * (Mat::identity(2) + ops::pauli_x()), false) ==
          doctest::Approx(2.0 / 3.0).epsilon(1e-12));

    const UncertaintyResult k5 = clifford_shannon_relation(2, 5, opt);
    CHECK(k5.bound == doctest::Approx(0.8));
    CHECK(k5.achieved == doctest::Approx(0.8).epsilon(1e-3));

    CHECK_THROWS_AS(clifford_shannon_relation(1, 4), ValidationError);
}

TEST_CASE("clifford collision relation") {
    MinimizerOptions opt;
    opt.restarts = 16;
    const UncertaintyResult k1 = clifford_collision_relation(1, 1, opt);
    CHECK(k1.bound == doctest::Approx(0.0));
    CHECK(k1.achieved == doctest::Approx(0.0).epsilon(1e-3));

    const UncertaintyResult k3 = clifford_collision_relation(1, 3, opt);
    CHECK(k3.bound == doctest::Approx(1.0 - std::log2(4.0 / 3.0)));
    CHECK(k3.bound == doctest::Approx(0.58496).epsilon(1e-4));
    CHECK(k3.achieved == doctest::Approx(k3.bound).epsilon(1e-3));
    // Minimizer has all |g_j| = 1/sqrt(K) within 1e-3.
    const CliffordGenerators g1(1);
    const auto comps = vector_components(DensityMatrix(projector(k3.minimizer)), g1);
    for (double c : comps) CHECK(std::abs(std::abs(c) - 1.0 / std::sqrt(3.0)) <= 1e-3);

    const UncertaintyResult k5 = clifford_collision_relation(2, 5, opt);
    CHECK(k5.bound == doctest::Approx(1.0 - std::log2(1.2)));
    CHECK(k5.bound == doctest::Approx(0.73697).epsilon(1e-4));
    CHECK(k5.achieved == doctest::Approx(k5.bound).epsilon(1e-3));
}

TEST_CASE("meta-uncertainty and its converse") {
    Rng rng(71);
    for (int n : {1, 2}) {
        const CliffordGenerators g(n);
        for (int trial = 0; trial < 1000; ++trial) {
            const DensityMatrix rho = random_density(rng, g.dim());
            CHECK(meta_uncertainty_check(rho, g) <= 1.0 + 1e-9);
        }
        // Pure qubit states sit exactly on the sphere.
        if (n == 1) {
            for (int trial = 0; trial < 50; ++trial)
                CHECK(meta_uncertainty_check(random_pure(rng, 2).density(), g) == doctest::Approx(1.0).epsilon(1e-10));
        }
        // Converse: random admissible vector parts give PSD states.
        for (int trial = 0; trial < 1000; ++trial) {
            std::vector<double> comps(2 * n + 1);
            double s = 0.0;
            for (double& c : comps) {
                c = rng.gaussian();
                s += c * c;
            }
            const double scale = rng.uniform() / std::sqrt(s);
            for (double& c : comps) c *= scale;
            const Mat sigma = state_from_vector_part(comps, g);
            CHECK(min_eigenvalue(sigma) >= -1e-9);
        }
    }
}
