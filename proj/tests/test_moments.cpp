#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "onorm/moments.hpp"

using namespace onorm;

namespace {

// Simpson quadrature of (1/2pi) * integral over [0,2pi] of |cos^p sin^q|.
double circle_average(int p, int q) {
    const int steps = 20000;  // even
    const double h = 2.0 * M_PI / steps;
    auto f = [&](double t) {
        return std::pow(std::fabs(std::cos(t)), p) * std::pow(std::fabs(std::sin(t)), q);
    };
    double s = f(0.0) + f(2.0 * M_PI);
    for (int i = 1; i < steps; ++i) s += f(i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0 / (2.0 * M_PI);
}

}  // namespace

TEST_CASE("double factorial uses the offset convention m!! = (m-1)(m-3)...") {
    CHECK(double_factorial(0) == 1);
    CHECK(double_factorial(1) == 1);
    CHECK(double_factorial(2) == 1);
    CHECK(double_factorial(3) == 2);
    CHECK(double_factorial(4) == 3);
    CHECK(double_factorial(5) == 8);
    CHECK(double_factorial(6) == 15);
    CHECK(double_factorial(7) == 48);
    CHECK(double_factorial(10) == 945);
    CHECK_THROWS_AS(double_factorial(-1), std::invalid_argument);
}

TEST_CASE("exponent vector validation") {
    CHECK_NOTHROW(ExponentVector(3, {1, 2, 3}));
    CHECK_THROWS_AS(ExponentVector(2, {1, 1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(ExponentVector(3, {}), std::invalid_argument);
    CHECK_THROWS_AS(ExponentVector(3, {1, -1}), std::invalid_argument);
}

TEST_CASE("sigma exponent: parity rule agrees with the compact form") {
    // the implementation asserts both forms agree; sweep them broadly
    for (int n = 1; n <= 50; ++n) {
        for (int odds = 0; odds <= n; ++odds) {
            std::vector<int> ks(n, 2);
            for (int i = 0; i < odds; ++i) ks[i] = 1;
            const int s = sigma_exponent(ExponentVector(n, ks));
            CHECK(s == (n % 2 ? odds / 2 : (odds + 1) / 2));
        }
    }
    CHECK(sigma_exponent(ExponentVector(3, {1})) == 0);
    CHECK(sigma_exponent(ExponentVector(2, {1})) == 1);
    CHECK(sigma_exponent(ExponentVector(4, {1, 1})) == 1);
    CHECK(sigma_exponent(ExponentVector(5, {1, 1, 1})) == 1);
    CHECK(sigma_exponent(ExponentVector(4, {2, 2})) == 0);
}

TEST_CASE("exact spherical integrals") {
    const ExactValue a = spherical_integral(ExponentVector(3, {1}));
    CHECK(a.rational == BigRat(1, 2));
    CHECK(a.pi_exponent == 0);
    CHECK(a.to_string() == "1/2");

    const ExactValue b = spherical_integral(ExponentVector(2, {1}));
    CHECK(b.rational == 1);
    CHECK(b.pi_exponent == 1);
    CHECK(b.to_string() == "1 * (2/pi)^1");
    CHECK(b.to_double() == doctest::Approx(2.0 / M_PI).epsilon(1e-15));

    // plain x^2 average on S^(n-1) is 1/n
    for (int n = 2; n <= 12; ++n)
        CHECK(spherical_integral(ExponentVector(n, {2})).rational == BigRat(1, n));

    // |x1 x2| on S^1: (2/pi) * 1!! 1!! / 3!! = (2/pi)/2
    const ExactValue c = spherical_integral(ExponentVector(2, {1, 1}));
    CHECK(c.rational == BigRat(1, 2));
    CHECK(c.pi_exponent == 1);
}

TEST_CASE("N = 2 exact values match circle quadrature") {
    for (int p = 0; p <= 6; ++p) {
        for (int q = 0; q <= 6; ++q) {
            if (p == 0 && q == 0) continue;
            const ExactValue v = spherical_integral(ExponentVector(2, {p, q}));
            CHECK(v.to_double() == doctest::Approx(circle_average(p, q)).epsilon(1e-10));
        }
    }
}

TEST_CASE("average one-norm") {
    const ExactValue a3 = average_one_norm(3);
    CHECK(a3.rational == BigRat(9, 2));
    CHECK(a3.pi_exponent == 0);
    CHECK(a3.to_double() == 4.5);

    CHECK(average_one_norm(2).to_double() == doctest::Approx(8.0 / M_PI).epsilon(1e-15));

    // ratio to the asymptote tends to 1 from above
    double prev = 2.0;
    for (int n : {10, 30, 100, 300}) {
        const double ratio = average_one_norm(n).to_double() / asymptotic_average(n);
        CHECK(ratio > 1.0);
        CHECK(ratio < prev);
        prev = ratio;
    }
    CHECK(prev < 1.001);
    CHECK_THROWS_AS(average_one_norm(0), std::invalid_argument);
}

TEST_CASE("weingarten value") {
    CHECK(weingarten_11_22(2) == BigRat(3, 8));
    CHECK(weingarten_11_22(3) == BigRat(2, 15));
    CHECK(weingarten_11_22(4) == BigRat(5, 72));
    CHECK_THROWS_AS(weingarten_11_22(1), std::invalid_argument);

    // n = 2 oracle: E[cos^4] over the circle (reflections included give
    // the same integrand), computed by quadrature
    CHECK(static_cast<double>(weingarten_11_22(2)) ==
          doctest::Approx(circle_average(4, 0)).epsilon(1e-10));

    // Haar MC oracle at n = 3
    const MomentEstimate mc =
        moment_term(3, 4, {{0, 0}, {0, 0}, {1, 1}, {1, 1}}, 400000, SamplerConfig{808, 0});
    CHECK(std::fabs(mc.mean - static_cast<double>(weingarten_11_22(3))) <= 3.0 * mc.std_error);
}

TEST_CASE("second moment lower bound") {
    // n = 3: 3 + 24/pi + 24/5
    CHECK(second_moment_lower_bound(3) ==
          doctest::Approx(3.0 + 24.0 / M_PI + 24.0 / 5.0).epsilon(1e-14));
    // n = 2: 2 + 8/pi + 3/2
    CHECK(second_moment_lower_bound(2) ==
          doctest::Approx(2.0 + 8.0 / M_PI + 1.5).epsilon(1e-14));
    // ratio to (1 + 4/pi) n^2 tends to 1; within 2% at n = 100
    const double ratio =
        second_moment_lower_bound(100) / ((1.0 + 4.0 / M_PI) * 100.0 * 100.0);
    CHECK(std::fabs(ratio - 1.0) < 0.02);
    CHECK_THROWS_AS(second_moment_lower_bound(1), std::invalid_argument);
}

TEST_CASE("monte_carlo_moment") {
    const MomentEstimate e1 = monte_carlo_moment(3, 1, 100000, SamplerConfig{4242, 0});
    CHECK(e1.samples == 100000);
    CHECK(e1.std_error > 0.0);
    CHECK(std::fabs(e1.mean - 4.5) <= 4.0 * e1.std_error);
    CHECK(e1.kn_lower_bound == e1.mean);

    const MomentEstimate e2 = monte_carlo_moment(3, 2, 100000, SamplerConfig{4242, 100});
    CHECK(e2.mean >= second_moment_lower_bound(3) - 4.0 * e2.std_error);
    CHECK(e2.kn_lower_bound == doctest::Approx(std::sqrt(e2.mean)).epsilon(1e-15));
    CHECK(e2.kn_lower_bound <= 5.0 + 1e-6);  // K_3 = 5

    CHECK_THROWS_AS(monte_carlo_moment(3, 1, 50, SamplerConfig{}), std::invalid_argument);
}

TEST_CASE("moment_term") {
    // E|U_11| at n = 3 equals the spherical integral of |x_1| on S^2
    const MomentEstimate t = moment_term(3, 1, {{0, 0}}, 200000, SamplerConfig{11, 0});
    CHECK(std::fabs(t.mean - 0.5) <= 4.0 * t.std_error);

    CHECK_THROWS_AS(moment_term(3, 5, {{0, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}}, 1000,
                                SamplerConfig{}),
                    std::invalid_argument);
    CHECK_THROWS_AS(moment_term(3, 1, {{0, 3}}, 1000, SamplerConfig{}), std::out_of_range);
    CHECK_THROWS_AS(moment_term(3, 2, {{0, 0}}, 1000, SamplerConfig{}), std::invalid_argument);
}

TEST_CASE("Monte Carlo results do not depend on the thread count") {
    const MomentEstimate a = monte_carlo_moment(4, 1, 64000, SamplerConfig{99, 7}, 1);
    const MomentEstimate b = monte_carlo_moment(4, 1, 64000, SamplerConfig{99, 7}, 4);
    CHECK(a.mean == b.mean);
    CHECK(a.std_error == b.std_error);
}
