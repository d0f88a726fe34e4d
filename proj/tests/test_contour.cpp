#include <cmath>

#include <doctest.h>

#include "eu/asymptotics.hpp"
#include "eu/contour.hpp"
#include "eu/phase.hpp"
#include "reference_values.hpp"
#include "support.hpp"

using namespace eu;

TEST_CASE("jb_oracle against extended-precision references") {
    for (const auto& c : ref::jb_cases) {
        const QuadratureResult q = jb_oracle({c.t, c.delta, c.sigma, c.lambda}, 1e-12);
        CHECK(support::rel(q.value, c.value) < 1e-9);
        CHECK(q.abs_error_estimate <= 1e-11 * std::abs(q.value));
        CHECK(q.truncation_bound <= 1e-12 * std::abs(q.value));
    }
}

TEST_CASE("jb_oracle at t = 100, lambda = 1") {
    const QuadratureResult q = jb_oracle({100, 0.5, 0.5, 1.0}, 1e-10);
    CHECK(std::isfinite(q.value.real()));
    CHECK(std::abs(q.value) < 1);
    const QuadratureResult fine = jb_oracle({100, 0.5, 0.5, 1.0}, 1e-12);
    CHECK(std::abs(q.value - fine.value) <= std::max(q.abs_error_estimate, 1e-10 * std::abs(fine.value)));
}

TEST_CASE("jb_oracle converges at the range endpoints") {
    for (double t : {1e2, 1e4, 1e6}) {
        const double eps = std::pow(t, -0.5);
        for (double lambda : {eps / (1 - eps), 1 / eps - 1}) {
            const QuadratureResult q = jb_oracle({t, 0.5, 0.5, lambda}, 1e-10);
            CHECK(std::isfinite(std::abs(q.value)));
            CHECK(q.abs_error_estimate <= 1e-9 * std::abs(q.value));
        }
    }
}

TEST_CASE("tolerance halving stays within the error estimate") {
    for (double L : {0.0, 2.0, 40.0}) {
        const ProblemParams p = ProblemParams::from_Lambda(1e5, 0.5, 0.5, L);
        const QuadratureResult a = jb_oracle(p, 1e-7);
        const QuadratureResult b = jb_oracle(p, 5e-8);
        CHECK(std::abs(a.value - b.value) <= a.abs_error_estimate + b.abs_error_estimate + a.truncation_bound);
    }
}

TEST_CASE("J_B oracle with sigma above one half") {
    const auto& c = ref::jb_cases[5];
    REQUIRE(c.sigma == 0.75);
    CHECK(support::rel(jb_oracle({c.t, c.delta, c.sigma, c.lambda}, 1e-12).value, c.value) < 1e-9);
}

TEST_CASE("split integrals add up to J_B") {
    for (double t : {1e4, 1e6})
        for (double L : {0.0, 3.0}) {
            const ProblemParams p = ProblemParams::from_Lambda(t, 0.5, 0.5, L);
            const DerivedParams d = choose_split(derive(p), 4);
            const QuadratureResult j1 = jb1_oracle(p, d.split->k, 1e-12);
            const QuadratureResult j2 = jb2_oracle(p, d.split->k, 1e-12);
            const QuadratureResult j = jb_oracle(p, 1e-12);
            const double est = j1.abs_error_estimate + j2.abs_error_estimate + j.abs_error_estimate;
            CHECK(std::abs(j1.value + j2.value - j.value) <= 3 * est + 1e-14 * std::abs(j.value));
        }
}

TEST_CASE("degenerate split and split errors") {
    const ProblemParams p = ProblemParams::from_Lambda(1e4, 0.5, 0.5, 0.0);
    const DerivedParams d = derive(p);
    CHECK(jb1_oracle(p, d.eps, 1e-10).value == Complex(0));
    CHECK(std::abs(jb2_oracle(p, d.eps, 1e-12).value - jb_oracle(p, 1e-12).value) < 1e-11 * std::abs(jb_oracle(p, 1e-12).value));
    CHECK(support::code_of([&] { jb1_oracle(p, 2 * d.eps, 1e-10); }) == ErrorCode::SplitOutOfRange);
    CHECK(support::code_of([&] { jb2_oracle(p, 0.0, 1e-10); }) == ErrorCode::SplitOutOfRange);
    CHECK(support::code_of([&] { jb1_oracle({1e4, 0.5, 0.75, d.lambda_c}, 0.5 * d.eps, 1e-10); }) ==
          ErrorCode::SigmaUnsupported);
}

TEST_CASE("the phase is real on the J_B1 segment") {
    const DerivedParams d = derive(ProblemParams::from_Lambda(1e6, 0.5, 0.5, 0.7));
    for (double x : {0.1, 0.5, 0.9}) CHECK(big_f_increment(Complex(-x * d.eps), d.eps, d.log1p_Lambda).imag() == 0.0);
}

TEST_CASE("J_B equals the prefactor times the rescaled integral") {
    for (double L : {0.0, 1.0, 10.0}) {
        const ProblemParams p = ProblemParams::from_Lambda(1e4, 0.5, 0.5, L);
        const Complex jt = jtilde_oracle(p, 1e-12).value;
        const Complex j = jb_oracle(p, 1e-12).value;
        CHECK(support::rel(prefactor(derive(p)) * jt, j) < 1e-10);
    }
}

TEST_CASE("jb2_weighted_oracle with the plain amplitude is jb2_oracle") {
    const ProblemParams p = ProblemParams::from_Lambda(1e4, 0.5, 0.5, 1.0);
    const double k = 0.5 * derive(p).eps;
    const Complex a = jb2_oracle(p, k, 1e-12).value;
    const Complex b = jb2_weighted_oracle(p, k, [](Complex, Complex om) { return 1.0 / std::sqrt(om); }, 1e-12).value;
    CHECK(a == b);
}
