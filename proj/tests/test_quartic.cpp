#include "doctest.h"
#include "oracles.hpp"
#include "test_support.hpp"

#include "riskwave/error.hpp"
#include "riskwave/quartic.hpp"

#include <cmath>

using namespace riskwave;
using riskwave::testing::companion_roots;
using riskwave::testing::multiset_distance;

namespace {

std::vector<Complex> as_vec(const QuarticRoots& r) { return {r.begin(), r.end()}; }

void check_contract(const QuarticCoeffs& q, const QuarticRoots& r) {
    for (const auto& s : r) CHECK(scaled_residual(q, s) <= quartic_residual_rtol);
    for (std::size_t i = 1; i < 4; ++i) {
        const bool ordered = r[i - 1].real() < r[i].real() ||
                             (r[i - 1].real() == r[i].real() && r[i - 1].imag() <= r[i].imag());
        CHECK(ordered);
    }
    // every non-real root has its conjugate in the set
    for (const auto& s : r) {
        if (s.imag() == 0.0) continue;
        double best = 1e300;
        for (const auto& t : r) best = std::min(best, std::abs(t - std::conj(s)));
        CHECK(best <= 1e-9 * (1.0 + std::abs(s)));
    }
}

} // namespace

TEST_CASE("companion oracle reproduces the canonical factorisation") {
    // s^4 - s^2 - 2 s + 2 = (s - 1)^2 (s^2 + 2 s + 2)
    const auto ref = companion_roots(1, 0, -1, -2, 2);
    const std::vector<Complex> expected{{1, 0}, {1, 0}, {-1, 1}, {-1, -1}};
    // a double root limits the oracle to ~sqrt(eps) accuracy
    CHECK(multiset_distance(ref, expected) < 1e-7);
}

TEST_CASE("canonical fixture (1, 0, -1, -2, 2)") {
    const QuarticCoeffs q{1, 0, -1, -2, 2};
    const auto r = solve_quartic(q);
    check_contract(q, r);
    CHECK(std::abs(r[0] - Complex(-1, -1)) < 1e-12);
    CHECK(std::abs(r[1] - Complex(-1, 1)) < 1e-12);
    CHECK(std::abs(r[2] - Complex(1, 0)) < 1e-8);
    CHECK(std::abs(r[3] - Complex(1, 0)) < 1e-8);
    CHECK(r[2].imag() == 0.0);
    CHECK(r[3].imag() == 0.0);
    CHECK(multiset_distance(as_vec(r), companion_roots(1, 0, -1, -2, 2)) < 1e-7);
}

TEST_CASE("biquadratic (1, 0, -1, 0, 1) gives the four values +/-exp(+/-i pi/6)") {
    const QuarticCoeffs q{1, 0, -1, 0, 1};
    const auto r = solve_quartic(q);
    check_contract(q, r);
    const double c = std::sqrt(3.0) / 2.0;
    const std::vector<Complex> expected{{-c, -0.5}, {-c, 0.5}, {c, -0.5}, {c, 0.5}};
    for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(r[i] - expected[i]) < 1e-14);
}

TEST_CASE("quadruple root at zero") {
    const auto r = solve_quartic({1, 0, 0, 0, 0});
    for (const auto& s : r) CHECK(s == Complex(0, 0));
}

TEST_CASE("zero leading coefficient is rejected") {
    try {
        solve_quartic({0, 0, 1, 2, 3});
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::degenerate_leading_coefficient);
    }
}

TEST_CASE("general quartics (non-zero cubic term) match the companion oracle") {
    riskwave::testing::ParamSampler s(99);
    for (int i = 0; i < 500; ++i) {
        const QuarticCoeffs q{s.uniform(0.1, 4.0) * (i % 2 ? 1 : -1), s.uniform(-5, 5), s.uniform(-5, 5),
                              s.uniform(-5, 5), s.uniform(-5, 5)};
        const auto r = solve_quartic(q);
        check_contract(q, r);
        CHECK(multiset_distance(as_vec(r), companion_roots(q.q4, q.q3, q.q2, q.q1, q.q0)) < 1e-6);
    }
}

TEST_CASE("Vieta relations on random depressed quartics") {
    riskwave::testing::ParamSampler s(5);
    for (int i = 0; i < 500; ++i) {
        const QuarticCoeffs q{s.uniform(0.1, 10.0), 0.0, s.uniform(-20, 20), -s.uniform(0.0, 20),
                              s.uniform(0.0, 20)};
        const auto r = solve_quartic(q);
        check_contract(q, r);
        Complex sum = 0.0, prod = 1.0;
        for (const auto& z : r) {
            sum += z;
            prod *= z;
        }
        CHECK(std::abs(sum) <= 1e-8);
        CHECK(std::abs(prod - q.q0 / q.q4) <= 1e-8 * std::abs(q.q0 / q.q4));
    }
}

TEST_CASE("badly scaled and pure-imaginary cases") {
    // s^4 + 5 s^2 + 4 = (s^2 + 1)(s^2 + 4)
    auto r = solve_quartic({1, 0, 5, 0, 4});
    check_contract({1, 0, 5, 0, 4}, r);
    CHECK(std::abs(r[0] - Complex(0, -2)) < 1e-14);
    CHECK(std::abs(r[3] - Complex(0, 2)) < 1e-14);

    // (s - 1)(s - 2)(s - 3)(s + 6): sum 0
    const QuarticCoeffs q{1, 0, -25, 60, -36};
    r = solve_quartic(q);
    check_contract(q, r);
    CHECK(r[0].real() == doctest::Approx(-6));
    CHECK(r[1].real() == doctest::Approx(1));
    CHECK(r[2].real() == doctest::Approx(2));
    CHECK(r[3].real() == doctest::Approx(3));

    const QuarticCoeffs big{1e6, 0, -1e6, -2e6, 2e6};
    r = solve_quartic(big);
    check_contract(big, r);
}
