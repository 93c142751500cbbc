#include <doctest.h>

#include "qcrypt/games.hpp"
#include "test_helpers.hpp"

using namespace qcrypt;
using namespace qtest;

namespace {

XorGame random_game(Rng& rng, int ns, int nt) {
    std::vector<std::vector<double>> pi(ns, std::vector<double>(nt));
    double sum = 0.0;
    for (auto& row : pi)
        for (double& x : row) sum += (x = rng.uniform() + 0.01);
    for (auto& row : pi)
        for (double& x : row) x /= sum;
    std::vector<std::vector<int>> v0(ns, std::vector<int>(nt));
    std::vector<std::vector<int>> v1(ns, std::vector<int>(nt));
    for (int s = 0; s < ns; ++s)
        for (int t = 0; t < nt; ++t) {
            v0[s][t] = rng.bit();
            v1[s][t] = rng.bit();
        }
    return XorGame(ns, nt, pi, v0, v1);
}

// Dense grid search over planar strategy vectors; valid oracle for 2x2
// games since dimension min{nS, nT} = 2 suffices.
double angle_grid_oracle(const XorGame& g) {
    auto value = [&](double a2, double b1, double b2) {
        const double ang[2][2] = {{0.0, a2}, {b1, b2}};
        double p = 0.0;
        for (int s = 0; s < 2; ++s)
            for (int t = 0; t < 2; ++t) {
                const double ip = std::cos(ang[0][s] - ang[1][t]);
                p += 0.5 * g.pi(s, t) * (g.v(0, s, t) * (1.0 + ip) + g.v(1, s, t) * (1.0 - ip));
            }
        return p;
    };
    double best = -1.0;
    double ba = 0, bb = 0, bc = 0;
    const int grid = 80;
    for (int i = 0; i < grid; ++i)
        for (int j = 0; j < grid; ++j)
            for (int k = 0; k < grid; ++k) {
                const double v = value(2 * M_PI * i / grid, 2 * M_PI * j / grid, 2 * M_PI * k / grid);
                if (v > best) {
                    best = v;
                    ba = 2 * M_PI * i / grid;
                    bb = 2 * M_PI * j / grid;
                    bc = 2 * M_PI * k / grid;
                }
            }
    double step = 2 * M_PI / grid;
    while (step > 1e-7) {
        bool improved = false;
        for (int dim = 0; dim < 3; ++dim)
            for (double sgn : {1.0, -1.0}) {
                double a = ba + (dim == 0 ? sgn * step : 0.0);
                double b = bb + (dim == 1 ? sgn * step : 0.0);
                double c = bc + (dim == 2 ? sgn * step : 0.0);
                const double v = value(a, b, c);
                if (v > best + 1e-15) {
                    best = v;
                    ba = a;
                    bb = b;
                    bc = c;
                    improved = true;
                }
            }
        if (!improved) step *= 0.5;
    }
    return best;
}

} // namespace

TEST_CASE("CHSH classical value is exactly 3/4") {
    const ClassicalValue c = classical_value(chsh_game());
    CHECK(c.value == doctest::Approx(0.75).epsilon(1e-15));
    // All-zero answers attain it and are the lexicographic tie-break.
    for (int a : c.answers_a) CHECK(a == 0);
    for (int b : c.answers_b) CHECK(b == 0);
}

TEST_CASE("trivial game has value 1") {
    std::vector<std::vector<double>> pi(2, std::vector<double>(2, 0.25));
    std::vector<std::vector<int>> ones(2, std::vector<int>(2, 1));
    const XorGame g(2, 2, pi, ones, ones);
    CHECK(classical_value(g).value == doctest::Approx(1.0));
    CHECK(quantum_value(g).value == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("chained game classical value") {
    // Win probability (2n-1)/(2n); correlation form (2n-2)/(2n).
    const ClassicalValue c3 = classical_value(chained_game(3));
    CHECK(c3.value == doctest::Approx(5.0 / 6.0).epsilon(1e-12));
    CHECK(c3.correlation == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    const ClassicalValue c4 = classical_value(chained_game(4));
    CHECK(c4.correlation == doctest::Approx(6.0 / 8.0).epsilon(1e-12));
}

TEST_CASE("CHSH quantum value") {
    const QuantumValue q = quantum_value(chsh_game(), 1e-10);
    CHECK(q.value == doctest::Approx(0.5 + 0.5 / std::sqrt(2.0)).epsilon(1e-8));
    // Re-evaluating the game formula on the extracted vectors reproduces it.
    CHECK(simulate_single_prover(chsh_game(), q.xs, q.ys) == doctest::Approx(q.value).epsilon(1e-7));
}

TEST_CASE("chained quantum value n=3") {
    const QuantumValue q = quantum_value(chained_game(3), 1e-10);
    CHECK(q.value == doctest::Approx(0.5 * (1.0 + std::cos(M_PI / 6.0))).epsilon(1e-8));
    CHECK(q.value == doctest::Approx(0.93301).epsilon(1e-5));
}

TEST_CASE("single-prover simulation") {
    // CHSH optimal vectors give the quantum value.
    const QuantumValue q = quantum_value(chsh_game(), 1e-10);
    CHECK(simulate_single_prover(chsh_game(), q.xs, q.ys) == doctest::Approx(0.853553).epsilon(1e-6));

    // All vectors equal with V == 1 -> 1.
    std::vector<std::vector<double>> pi(2, std::vector<double>(2, 0.25));
    std::vector<std::vector<int>> ones(2, std::vector<int>(2, 1));
    const XorGame g(2, 2, pi, ones, ones);
    const std::vector<std::vector<double>> e = {{1.0, 0.0}, {1.0, 0.0}};
    CHECK(simulate_single_prover(g, e, e) == doctest::Approx(1.0));

    // Random unit vectors never beat the quantum value.
    Rng rng(73);
    const double qv = quantum_value(chsh_game()).value;
    for (int trial = 0; trial < 100; ++trial) {
        auto unit = [&] {
            std::vector<double> v(4);
            double s = 0.0;
            for (double& x : v) {
                x = rng.gaussian();
                s += x * x;
            }
            for (double& x : v) x /= std::sqrt(s);
            return v;
        };
        const double p = simulate_single_prover(chsh_game(), {unit(), unit()}, {unit(), unit()});
        CHECK(p <= qv + 1e-7);
    }

    CHECK_THROWS_AS(simulate_single_prover(chsh_game(), {{1.0, 0.0}}, {{1.0, 0.0}}), ValidationError);
    CHECK_THROWS_AS(simulate_single_prover(g, {{0.5, 0.0}, {1.0, 0.0}}, e), ValidationError);
}

TEST_CASE("classical <= quantum on random games") {
    Rng rng(79);
    for (int trial = 0; trial < 200; ++trial) {
        const XorGame g = random_game(rng, 3, 3);
        const double c = classical_value(g).value;
        const double q = quantum_value(g, 1e-8).value;
        CHECK(c <= q + 1e-6);
        CHECK(q <= 1.0 + 1e-6);
    }
}

TEST_CASE("quantum value is invariant under question relabeling") {
    Rng rng(83);
    for (int trial = 0; trial < 10; ++trial) {
        const XorGame g = random_game(rng, 3, 3);
        // Swap Alice questions 0 and 2 and Bob questions 0 and 1.
        const int pa[3] = {2, 1, 0};
        const int pb[3] = {1, 0, 2};
        std::vector<std::vector<double>> pi(3, std::vector<double>(3));
        std::vector<std::vector<int>> v0(3, std::vector<int>(3));
        std::vector<std::vector<int>> v1(3, std::vector<int>(3));
        for (int s = 0; s < 3; ++s)
            for (int t = 0; t < 3; ++t) {
                pi[s][t] = g.pi(pa[s], pb[t]);
                v0[s][t] = g.v(0, pa[s], pb[t]);
                v1[s][t] = g.v(1, pa[s], pb[t]);
            }
        const XorGame relabeled(3, 3, pi, v0, v1);
        CHECK(quantum_value(relabeled, 1e-9).value == doctest::Approx(quantum_value(g, 1e-9).value).epsilon(1e-7));
    }
}

TEST_CASE("2x2 quantum values match the planar angle-grid oracle") {
    Rng rng(89);
    for (int trial = 0; trial < 4; ++trial) {
        const XorGame g = random_game(rng, 2, 2);
        CHECK(quantum_value(g, 1e-9).value == doctest::Approx(angle_grid_oracle(g)).epsilon(1e-3));
    }
    CHECK(quantum_value(chsh_game(), 1e-9).value == doctest::Approx(angle_grid_oracle(chsh_game())).epsilon(1e-4));
}

TEST_CASE("XOR composition of CHSH") {
    CHECK(xor_composition_value(1).value == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-7));
    CHECK(xor_composition_value(2).value == doctest::Approx(8.0).epsilon(1e-7));
    const CompositionValue c3 = xor_composition_value(3);
    CHECK(c3.value == doctest::Approx(16.0 * std::sqrt(2.0)).epsilon(1e-7));
    const CompositionValue c4 = xor_composition_value(4);
    CHECK(c4.certified);
    CHECK(c4.value == doctest::Approx(std::pow(2.0 * std::sqrt(2.0), 4)).epsilon(1e-9));
    CHECK_THROWS_AS(xor_composition_value(7), ValidationError);
}

TEST_CASE("gisin game is solvable and sane") {
    const XorGame g = gisin_game(3);
    const double c = classical_value(g).value;
    const double q = quantum_value(g, 1e-8).value;
    CHECK(c <= q + 1e-7);
    CHECK(q <= 1.0 + 1e-7);
}

TEST_CASE("rac dimension bound") {
    const double p_chsh = 0.5 + 0.5 / std::sqrt(2.0);
    CHECK(rac_dimension_bound(2, 2, p_chsh) == doctest::Approx(0.8).epsilon(2e-2));
    CHECK(rac_dimension_bound(2, 2, 0.5) == doctest::Approx(0.0));
    CHECK(rac_dimension_bound(3, 2, 1.0) == doctest::Approx(3.0));
    CHECK(rac_dimension_bound(2, 4, 1.0) == doctest::Approx(4.0));
    CHECK_THROWS_AS(rac_dimension_bound(2, 2, 0.2), ValidationError);
}

TEST_CASE("urac bound") {
    // Uniform binary with equal p reduces to Nayak: n(1 - h(p)).
    const ProbDist half({0.5, 0.5});
    const double p = 0.9;
    CHECK(urac_bound({half, half, half}, {p, p, p}, 2) == doctest::Approx(3.0 * (1.0 - binary_entropy(p))).epsilon(1e-12));
    // n=2 with p = (1, 1/2): 1 + 0.
    CHECK(urac_bound({half, half}, {1.0, 0.5}, 2) == doctest::Approx(1.0).epsilon(1e-12));
    // Ternary uniform with p = 1/3 clamps to zero.
    const ProbDist third({1.0 / 3, 1.0 / 3, 1.0 / 3});
    CHECK(urac_bound({third, third}, {1.0 / 3, 1.0 / 3}, 3) == doctest::Approx(0.0).epsilon(1e-9));
    CHECK_THROWS_AS(urac_bound({half}, {0.9, 0.9}, 2), ValidationError);
}

TEST_CASE("quantum strategy vectors come back in dimension nS + nT") {
    const QuantumValue q = quantum_value(chsh_game(), 1e-9);
    for (const auto& v : q.xs) CHECK(v.size() == 4);
    for (const auto& v : q.ys) CHECK(v.size() == 4);
    const QuantumValue q3 = quantum_value(chained_game(3), 1e-8);
    for (const auto& v : q3.xs) CHECK(v.size() == 6);
}

TEST_CASE("asymmetric question sets") {
    Rng rng(983);
    for (int trial = 0; trial < 10; ++trial) {
        const XorGame g = random_game(rng, 2, 4);
        const double c = classical_value(g).value;
        const QuantumValue q = quantum_value(g, 1e-8);
        CHECK(c <= q.value + 1e-6);
        CHECK(q.value <= 1.0 + 1e-6);
        CHECK(q.xs.size() == 2);
        CHECK(q.ys.size() == 4);
        for (const auto& v : q.xs) CHECK(v.size() == 6);
        CHECK(simulate_single_prover(g, q.xs, q.ys) == doctest::Approx(q.value).epsilon(1e-6));
    }
}
