#include <cmath>
#include <limits>
#include <numbers>

#include <doctest.h>

#include "eu/fresnel.hpp"
#include "eu/quadrature.hpp"
#include "reference_values.hpp"
#include "support.hpp"

using namespace eu;

TEST_CASE("fresnel_tail at zero") {
    const double v = std::sqrt(std::numbers::pi) / (2 * std::numbers::sqrt2);
    const Complex f = fresnel_tail(0.0);
    CHECK(std::abs(f - Complex(v, v)) < 1e-12);
    CHECK(std::abs(f.real() - f.imag()) < 1e-15);
}

TEST_CASE("fresnel_tail against references") {
    CHECK(support::rel(fresnel_tail(1.0), ref::fresnel_tail_1) < 1e-13);
    CHECK(support::rel(fresnel_tail(2.5), ref::fresnel_tail_2_5) < 1e-13);
    CHECK(support::rel(fresnel_tail(10.0), ref::fresnel_tail_10) < 1e-13);
    CHECK(support::rel(fresnel_segment(1.0, 3.0), ref::fresnel_segment_1_3) < 1e-12);
}

TEST_CASE("fresnel_tail at 1 against an unrotated ray quadrature") {
    const RayContour c = RayContour::from(Complex(1.0), Complex(0.0), std::numbers::pi / 4, 12.0);
    const QuadratureResult q =
        integrate_ray([](const RayPoint& p) { return std::exp(Complex(0, 1) * p.z * p.z); }, c, {1e-13, 0, 50000});
    CHECK(std::abs(q.value - fresnel_tail(1.0)) < 1e-10);
}

TEST_CASE("fresnel_segment against a real-axis quadrature") {
    const QuadratureResult q = integrate_interval([](double x) { return std::exp(Complex(0, x * x)); },
                                                  {1.0, 1.5, 2.0, 2.5, 3.0}, {1e-13, 0, 50000});
    CHECK(std::abs(q.value - fresnel_segment(1.0, 3.0)) < 1e-10);
    CHECK(std::abs(fresnel_segment(2.0, 2.0)) == 0.0);
    CHECK(std::abs(fresnel_segment(0.0, std::numeric_limits<double>::infinity()) - fresnel_tail(0.0)) < 1e-15);
}

TEST_CASE("fresnel segment additivity and modulus decay") {
    for (auto [a, b, c] : {std::tuple{0.0, 1.0, 2.0}, std::tuple{0.5, 3.0, 7.0}, std::tuple{2.0, 9.0, 40.0}})
        CHECK(std::abs(fresnel_segment(a, b) + fresnel_segment(b, c) - fresnel_segment(a, c)) < 1e-12);
    double prev = std::abs(fresnel_tail(0.0));
    for (double w = 0.25; w <= 50; w += 0.25) {
        const double m = std::abs(fresnel_tail(w));
        CHECK(m < prev);
        prev = m;
    }
}

TEST_CASE("fresnel asymptotic term and its O(w^-3) error") {
    CHECK(std::abs(fresnel_tail_asymptotic(10.0) - std::exp(Complex(0, 100)) * Complex(0, 1.0 / 20)) < 1e-16);
    CHECK(support::rel(fresnel_tail_asymptotic(10.0), fresnel_tail(10.0)) < 1e-2);
    std::vector<double> w{5, 10, 20, 40}, err;
    for (double x : w) err.push_back(std::abs(fresnel_tail(x) - fresnel_tail_asymptotic(x)));
    CHECK(support::log_slope(w, err) == doctest::Approx(-3.0).epsilon(0.05));
    double cmin = 1e300, cmax = 0;
    for (double x = 5; x <= 50; x += 5) {
        const double c = std::abs(fresnel_tail(x) - fresnel_tail_asymptotic(x)) * x * x * x;
        cmin = std::min(cmin, c);
        cmax = std::max(cmax, c);
    }
    CHECK(cmax / cmin < 1.1);
}

TEST_CASE("fresnel_tail_general agrees with the real case and damps") {
    for (double w : {0.0, 0.7, 3.0, 12.0}) CHECK(std::abs(fresnel_tail_general(Complex(w)) - fresnel_tail(w)) < 1e-14);
    const Complex w(1.0, 0.5);
    const RayContour c = RayContour::from(w, Complex(0.0), std::numbers::pi / 4, 12.0);
    const QuadratureResult q =
        integrate_ray([](const RayPoint& p) { return std::exp(Complex(0, 1) * p.z * p.z); }, c, {1e-13, 0, 50000});
    CHECK(std::abs(q.value - fresnel_tail_general(w)) < 1e-10);
}

TEST_CASE("fresnel errors") {
    CHECK(support::code_of([] { fresnel_tail(-1.0); }) == ErrorCode::NegativeArgument);
    CHECK(support::code_of([] { fresnel_segment(3.0, 1.0); }) == ErrorCode::OrderViolation);
    CHECK(support::code_of([] { fresnel_tail_asymptotic(0.0); }) == ErrorCode::ZeroArgument);
    CHECK(support::code_of([] { fresnel_tail_general(Complex(-1.0, 0.5)); }) == ErrorCode::NegativeArgument);
}
