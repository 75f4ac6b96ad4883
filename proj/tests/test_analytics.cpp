#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pldpc/analytics.hpp"
#include "pldpc/errors.hpp"
#include "pldpc/rng.hpp"

using namespace pldpc;

namespace {

constexpr double kPi = 3.14159265358979323846;

// quadrature oracle for the normal tail: composite Simpson over [x, x+40]
double q_by_quadrature(double x) {
    const int steps = 40000;
    const double hi = x + 40.0;
    const double h = (hi - x) / steps;
    auto pdf = [](double t) { return std::exp(-0.5 * t * t) / std::sqrt(2.0 * kPi); };
    double acc = pdf(x) + pdf(hi);
    for (int i = 1; i < steps; ++i)
        acc += pdf(x + i * h) * (i % 2 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

// invert a decreasing function by bisection
template <typename Fn>
double solve_decreasing(Fn fn, double target, double lo, double hi) {
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        (fn(mid) > target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

TEST_CASE("q function anchors") {
    CHECK(q_function(0.0) == doctest::Approx(0.5));
    CHECK(q_function(4.2649) == doctest::Approx(1.0e-5).epsilon(0.005));
    for (double x : {-2.0, -0.5, 0.3, 1.7, 4.0})
        CHECK(q_function(-x) == doctest::Approx(1.0 - q_function(x)).epsilon(1e-12));
}

TEST_CASE("q function against quadrature") {
    for (double x : {0.0, 0.5, 1.0, 2.0, 3.0, 5.0})
        CHECK(q_function(x) == doctest::Approx(q_by_quadrature(x)).epsilon(1e-8));
}

TEST_CASE("q function against a monte carlo tail estimate") {
    Rng rng(313);
    const int n = 1000000;
    int counts[3] = {0, 0, 0};
    const double xs[3] = {0.0, 1.0, 2.0};
    for (int i = 0; i < n; ++i) {
        double z = rng.gaussian();
        for (int j = 0; j < 3; ++j)
            counts[j] += z > xs[j];
    }
    for (int j = 0; j < 3; ++j) {
        double p = q_function(xs[j]);
        double se = std::sqrt(p * (1 - p) / n);
        CHECK(std::abs(static_cast<double>(counts[j]) / n - p) < 3 * se);
    }
}

TEST_CASE("uncoded dtb ber anchor at 28 nodes") {
    double ber = uncoded_dtb_ber(28, -3.0);
    CHECK(ber > 0.8e-5);
    CHECK(ber < 1.2e-5);
}

TEST_CASE("uncoded dtb ber is strictly decreasing in both arguments") {
    for (std::uint32_t m = 1; m < 40; ++m)
        CHECK(uncoded_dtb_ber(m + 1, -2.0) < uncoded_dtb_ber(m, -2.0));
    for (double e = -8.0; e < 8.0; e += 0.5)
        CHECK(uncoded_dtb_ber(12, e + 0.5) < uncoded_dtb_ber(12, e));
}

TEST_CASE("ten nodes reach 1e-5 near 3.6 dB") {
    double e_star = solve_decreasing([](double e) { return uncoded_dtb_ber(10, e); }, 1e-5, -10, 20);
    CHECK(e_star == doctest::Approx(3.6).epsilon(0.03));
    CHECK(uncoded_dtb_ber(10, e_star) == doctest::Approx(1e-5).epsilon(1e-3));
}

TEST_CASE("high-snr ber floor") {
    for (std::uint32_t m : {4u, 10u, 28u}) {
        double floor = q_function(std::sqrt(kPi * m / (4.0 - kPi)));
        CHECK(uncoded_dtb_ber(m, 200.0) == doctest::Approx(floor).epsilon(1e-6));
    }
}

TEST_CASE("min nodes anchors") {
    CHECK(min_nodes(-3.0, 1e-5) == 28);
    double e_star = solve_decreasing([](double e) { return uncoded_dtb_ber(10, e); }, 1e-5, -10, 20);
    CHECK(min_nodes(e_star, 1e-5) == 10);
}

TEST_CASE("min nodes boundary property") {
    Rng rng(717);
    for (int trial = 0; trial < 200; ++trial) {
        double e = -5.0 + 10.0 * rng.uniform();
        double t = std::pow(10.0, -6.0 + 4.0 * rng.uniform());
        const double tol = 0.05;
        std::uint32_t m = min_nodes(e, t, tol);
        double threshold = t * (1 + tol);
        CHECK(uncoded_dtb_ber(m, e) <= threshold);
        if (m > 1)
            CHECK(uncoded_dtb_ber(m - 1, e) > threshold);
    }
}

TEST_CASE("min nodes is non-increasing in ebn0") {
    for (double t : {1e-5, 1e-3}) {
        std::uint32_t previous = min_nodes(-6.0, t);
        for (double e = -5.5; e <= 6.0; e += 0.5) {
            std::uint32_t m = min_nodes(e, t);
            CHECK(m <= previous);
            previous = m;
        }
    }
}

TEST_CASE("siso rayleigh closed form") {
    CHECK(siso_rayleigh_ber(0.0) == doctest::Approx(0.5 * (1.0 - std::sqrt(0.5))).epsilon(1e-12));
    CHECK(siso_rayleigh_ber(0.0) == doctest::Approx(0.146447).epsilon(1e-4));
    // 1/(4 g) asymptote
    double g40 = std::pow(10.0, 4.0);
    CHECK(siso_rayleigh_ber(40.0) == doctest::Approx(1.0 / (4.0 * g40)).epsilon(0.02));
    // the 1e-5 crossing sits near 44 dB
    double e_star = solve_decreasing(siso_rayleigh_ber, 1e-5, 0.0, 80.0);
    CHECK(e_star == doctest::Approx(43.98).epsilon(0.003));
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS(uncoded_dtb_ber(0, 0.0), InvalidInput);
    CHECK_THROWS_AS(min_nodes(0.0, 0.0), InvalidInput);
    CHECK_THROWS_AS(min_nodes(0.0, 0.7), InvalidInput);
    CHECK_THROWS_AS(min_nodes(0.0, 1e-5, -1.0), InvalidInput);
}
