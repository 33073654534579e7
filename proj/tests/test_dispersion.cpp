#include "doctest.h"
#include "oracles.hpp"
#include "test_support.hpp"

#include "riskwave/dispersion.hpp"
#include "riskwave/error.hpp"

#include <cmath>
#include <iostream>

using namespace riskwave;
using riskwave::testing::ParamSampler;
using riskwave::testing::unit_params;

namespace {

// Expands (P0 w^2 + a1 d D)(I0 w^2 + a2 b D) - b d P0 I0 (k^4 - 2 k^2 D^2 + D^4)
// by explicit polynomial multiplication in D; index = power of D.
std::array<double, 5> expand_depth_operator(const ModelParams& p, double w, double k) {
    const std::array<double, 2> f1{p.P0 * w * w, p.a1 * p.d};
    const std::array<double, 2> f2{p.I0 * w * w, p.a2 * p.b};
    std::array<double, 5> c{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) c[i + j] += f1[i] * f2[j];
    const std::array<double, 5> lap2{std::pow(k, 4), 0.0, -2.0 * k * k, 0.0, 1.0};
    for (int i = 0; i < 5; ++i) c[i] -= p.b * p.d * p.P0 * p.I0 * lap2[i];
    return c;
}


ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected riskwave::Error");
    return ErrorCode::invalid_argument;
}

std::vector<Complex> canonical_roots() { return {{1, 0}, {1, 0}, {-1, 1}, {-1, -1}}; }

} // namespace

TEST_CASE("incompressible_mode examples") {
    const auto p = unit_params();
    auto m = incompressible_mode(p, 4.0);
    CHECK(m.omega == 2.0);
    CHECK(m.c == 0.25);
    CHECK(m.kappa == 4.0);
    CHECK(m.wavelength == doctest::Approx(M_PI / 2));

    m = incompressible_mode(p, 1.0);
    CHECK(m.omega == 1.0);
    CHECK(m.c == 0.5);
    CHECK(m.kappa == 1.0);

    auto bad = p;
    bad.I0 = 2.0;
    bad.h.y = 0.25; // keep the boundary identity intact
    CHECK(code_of([&] { incompressible_mode(bad, 1.0); }) == ErrorCode::amplitude_mismatch);
    CHECK(code_of([&] { incompressible_mode(p, 0.0); }) == ErrorCode::nonpositive_k);
    CHECK(code_of([&] { incompressible_mode(p, -2.0); }) == ErrorCode::nonpositive_k);
}

TEST_CASE("incompressible scaling and harmonicity over random parameters") {
    ParamSampler s(21);
    for (int i = 0; i < 200; ++i) {
        auto p = s.draw();
        const auto a = incompressible_amplitudes(p.a1, p.a2, p.b, p.d, p.g.y);
        p.I0 = a.I0;
        p.P0 = a.P0;
        p.h.y = derive_h_y(p.I0, p.P0, p.g.y);
        const double k = s.uniform(0.05, 20.0);
        const auto m1 = incompressible_mode(p, k);
        const auto m4 = incompressible_mode(p, 4.0 * k);
        const auto mq = incompressible_mode(p, 0.25 * k);
        CHECK(m4.omega == doctest::Approx(2.0 * m1.omega).epsilon(1e-12));
        // 4x the wavelength -> twice the group velocity
        CHECK(mq.c == doctest::Approx(2.0 * m1.c).epsilon(1e-12));
        CHECK(m1.kappa * m1.kappa == doctest::Approx(k * k).epsilon(1e-12));
        CHECK(m1.kappa > 0.0);
        // group velocity against a central difference of omega(k)
        const double h = 1e-6 * k;
        const double dw = (incompressible_mode(p, k + h).omega - incompressible_mode(p, k - h).omega) / (2 * h);
        CHECK(m1.c == doctest::Approx(dw).epsilon(1e-6));
    }
}

TEST_CASE("quartic_coefficients match an independent expansion") {
    const auto p = unit_params();
    auto q = quartic_coefficients(p, 1.0, 1.0);
    CHECK(q.coeffs == QuarticCoeffs{1, 0, -1, -2, 2});
    CHECK(q.sign_pattern_holds);

    q = quartic_coefficients(p, 0.0, 1.0);
    CHECK(q.coeffs == QuarticCoeffs{1, 0, -1, 0, 1});
    CHECK(q.sign_pattern_holds);

    ParamSampler s(8);
    for (int i = 0; i < 300; ++i) {
        const auto pp = s.draw();
        const double w = s.uniform(0.01, 5.0);
        const double k = s.uniform(0.01, 5.0);
        const auto dq = quartic_coefficients(pp, w, k);
        const auto ref = expand_depth_operator(pp, w, k);
        const double scale = dq.coeffs.max_abs();
        CHECK(std::abs(dq.coeffs.q0 - ref[0]) <= 1e-12 * scale);
        CHECK(std::abs(dq.coeffs.q1 - ref[1]) <= 1e-12 * scale);
        CHECK(std::abs(dq.coeffs.q2 - ref[2]) <= 1e-12 * scale);
        CHECK(std::abs(dq.coeffs.q3 - ref[3]) <= 1e-12 * scale);
        CHECK(std::abs(dq.coeffs.q4 - ref[4]) <= 1e-12 * scale);
        CHECK(dq.coeffs.q4 > 0.0);
        CHECK(dq.coeffs.q1 < 0.0);
        CHECK(dq.coeffs.q0 > 0.0);
        CHECK(dq.sign_pattern_holds);
    }
}

TEST_CASE("quartic_coefficients argument checks") {
    const auto p = unit_params();
    CHECK(code_of([&] { quartic_coefficients(p, -1.0, 1.0); }) == ErrorCode::invalid_argument);
    CHECK(code_of([&] { quartic_coefficients(p, 1.0, 0.0); }) == ErrorCode::nonpositive_k);
    auto bad = p;
    bad.a2 = 1.0;
    CHECK(code_of([&] { quartic_coefficients(bad, 1.0, 1.0); }) == ErrorCode::constraint_violation);
}

TEST_CASE("classify: canonical roots with pin-secondary-zero") {
    const auto prof = classify_and_weights(canonical_roots(), 1.0, 1.0, 1.0, 1.0, WeightPolicy::pin_secondary_zero);
    CHECK(prof.regime == Regime::two_real_two_complex);
    const auto w = prof.weights();
    REQUIRE(w.size() == 4);
    CHECK(w[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(w[1] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(w[2] == 0.0);
    CHECK(w[3] == 0.0);
    CHECK(prof.repeated_split);
    CHECK(prof.near_degenerate);
    CHECK(prof.constraint_residual() <= 1e-9);
    // the split stays at the reported size
    CHECK(prof.components[1].rate - prof.components[0].rate == doctest::Approx(repeated_root_split).epsilon(1e-3));
    CHECK(prof.policy == WeightPolicy::pin_secondary_zero);
}

TEST_CASE("classify: pin-secondary-zero infeasible when repeated roots contradict the slope") {
    // slope target 2 but both kept roots equal 1
    CHECK(code_of([] {
              classify_and_weights(canonical_roots(), std::sqrt(2.0), 1.0, 1.0, 1.0,
                                   WeightPolicy::pin_secondary_zero);
          }) == ErrorCode::infeasible_constraints);
}

TEST_CASE("classify: four complex roots") {
    const double c = std::sqrt(3.0) / 2.0;
    const std::vector<Complex> roots{{c, 0.5}, {c, -0.5}, {-c, 0.5}, {-c, -0.5}};
    const auto prof = classify_and_weights(roots, 1.0, 1.0, 1.0, 1.0);
    CHECK(prof.regime == Regime::all_complex);
    CHECK(prof.constraint_residual() <= 1e-9);
    // (lambda1 - lambda2) r + lambda3 theta1 + lambda4 theta3 form
    const auto w = prof.weights();
    CHECK(w[0] + w[1] == doctest::Approx(1.0));
    CHECK((w[0] - w[1]) * c + w[2] * 0.5 + w[3] * 0.5 == doctest::Approx(1.0));

    const auto pinned = classify_and_weights(roots, 1.0, 1.0, 1.0, 1.0, WeightPolicy::pin_secondary_zero);
    CHECK(pinned.weights()[2] == 0.0);
    CHECK(pinned.constraint_residual() <= 1e-9);
}

TEST_CASE("classify: all-real minimal-norm weights match an SVD oracle") {
    const std::vector<Complex> roots{{2, 0}, {-2, 0}, {1, 0}, {-1, 0}};
    const auto prof = classify_and_weights(roots, 1.0, 1.0, 1.0, 1.0);
    CHECK(prof.regime == Regime::all_real);
    Eigen::MatrixXd A(2, 4);
    A << 1, 1, 1, 1, -2, -1, 1, 2; // columns in ascending root order
    Eigen::VectorXd rhs(2);
    rhs << 1, 1;
    const auto ref = riskwave::testing::svd_min_norm(A, rhs);
    const auto w = prof.weights();
    for (int i = 0; i < 4; ++i) CHECK(w[i] == doctest::Approx(ref(i)).epsilon(1e-12));
    CHECK(w[0] + w[1] + w[2] + w[3] == doctest::Approx(1.0));
}

TEST_CASE("classify: random minimal-norm weights match the SVD oracle in every regime") {
    ParamSampler s(44);
    int seen[3] = {0, 0, 0};
    for (int i = 0; i < 300; ++i) {
        const auto p = s.draw();
        const auto mode = compressible_mode(p, s.uniform(0.05, 4.0), s.uniform(0.05, 4.0));
        const auto& prof = mode.profile;
        REQUIRE(prof.regime != Regime::single_exponential);
        ++seen[static_cast<int>(prof.regime)];
        Eigen::MatrixXd A(2, 4);
        for (int j = 0; j < 4; ++j) {
            A(0, j) = prof.components[j].basis(0.0, 0);
            A(1, j) = prof.components[j].basis(0.0, 1);
        }
        Eigen::VectorXd rhs(2);
        rhs << 1.0, prof.target_slope;
        const auto ref = riskwave::testing::svd_min_norm(A, rhs);
        const auto w = prof.weights();
        for (int j = 0; j < 4; ++j) CHECK(std::abs(w[j] - ref(j)) <= 1e-9 * (1.0 + ref.norm()));
        CHECK(prof.constraint_residual() <= 1e-9);
        CHECK(prof.target_slope > 0.0);
        Complex sum = 0.0;
        for (const auto& r : mode.roots) sum += r;
        CHECK(std::abs(sum) <= 1e-9 * (1.0 + std::abs(mode.roots[0])));
    }
    MESSAGE("regimes seen: all-real " << seen[0] << ", two-real " << seen[1] << ", all-complex " << seen[2]);
}

TEST_CASE("regime trichotomy over random conjugate-closed multisets") {
    ParamSampler s(13);
    for (int i = 0; i < 1000; ++i) {
        std::vector<Complex> roots;
        const int pairs = i % 3;
        for (int j = 0; j < pairs; ++j) {
            const Complex z(s.uniform(-3, 3), s.uniform(0.01, 3));
            roots.push_back(z);
            roots.push_back(std::conj(z));
        }
        while (roots.size() < 4) roots.emplace_back(s.uniform(-3, 3), 0.0);
        const auto prof = classify_and_weights(roots, 1.0, 1.0, 1.0, 1.0);
        const Regime expected = pairs == 0 ? Regime::all_real
                                : pairs == 1 ? Regime::two_real_two_complex
                                             : Regime::all_complex;
        CHECK(prof.regime == expected);
    }
    // not closed under conjugation
    CHECK(code_of([] {
              classify_and_weights({{1, 0}, {2, 0}, {0, 1}, {3, 1}}, 1, 1, 1, 1);
          }) == ErrorCode::invalid_roots);
    CHECK(code_of([] { classify_and_weights({{1, 0}, {2, 0}, {3, 0}, {0, 1}}, 1, 1, 1, 1); }) ==
          ErrorCode::invalid_roots);
}

TEST_CASE("near-degenerate roots are flagged") {
    const std::vector<Complex> roots{{1, 5e-10}, {1, -5e-10}, {-1, 1}, {-1, -1}};
    const auto prof = classify_and_weights(roots, 1.0, 1.0, 1.0, 1.0);
    CHECK(prof.regime == Regime::two_real_two_complex);
    CHECK(prof.near_degenerate);
    const auto strict = classify_and_weights(roots, 1.0, 1.0, 1.0, 1.0, WeightPolicy::minimal_norm, 1e-12);
    CHECK(strict.regime == Regime::all_complex);
}

TEST_CASE("inward_growth_rates examples") {
    WaveMode m;
    m.omega = 1.0;
    m.k = 1.0;
    m.roots = canonical_roots();
    m.profile = classify_and_weights(m.roots, 1.0, 1.0, 1.0, 1.0, WeightPolicy::pin_secondary_zero);
    auto rep = inward_growth_rates(m);
    CHECK_FALSE(rep.amplifying);
    REQUIRE(rep.components.size() == 2);
    CHECK(rep.components[0].efold_rate == doctest::Approx(1.0));
    CHECK(rep.components[1].efold_rate == doctest::Approx(1.0));

    // lambda = (0.25, 0.25, 0.5, 1.0) also meets both constraints
    const double w[4] = {0.25, 0.25, 0.5, 1.0};
    for (int i = 0; i < 4; ++i) m.profile.components[i].weight = w[i];
    CHECK(m.profile.constraint_residual() <= 1e-9);
    rep = inward_growth_rates(m);
    CHECK(rep.amplifying);
    int growing = 0;
    for (const auto& c : rep.components) {
        if (c.grows_inward) {
            ++growing;
            CHECK(c.efold_rate == doctest::Approx(1.0));
        }
    }
    CHECK(growing == 2);

    const auto simple = single_exponential_mode(1.0, 1.0, 1.0);
    rep = inward_growth_rates(simple);
    CHECK_FALSE(rep.amplifying);
    REQUIRE(rep.components.size() == 1);
    CHECK(rep.components[0].efold_rate == 1.0);
}

TEST_CASE("simplest and divergence-free modes") {
    const auto p = unit_params(1.0, 1.0);
    const auto m = simplest_mode(p, 1.0, 1.0);
    CHECK(m.regime() == Regime::single_exponential);
    CHECK(m.profile.components.at(0).rate == 1.0);
    CHECK(m.profile.value(0.0) == 1.0);
    CHECK(m.profile.value(-1.0) == doctest::Approx(std::exp(-1.0)));
    CHECK(code_of([&] { simplest_mode(p, 2.0, 1.0); }) == ErrorCode::non_simplest_mode);

    const auto inc = incompressible_wave_mode(p, 4.0);
    CHECK(inc.omega == 2.0);
    CHECK(inc.profile.components.at(0).rate == 4.0);
    CHECK(inc.profile.target_slope == doctest::Approx(4.0));
    CHECK(inc.profile.constraint_residual() <= 1e-12);
}

TEST_CASE("compressible_mode on the canonical fixture") {
    const auto m = compressible_mode(unit_params(), 1.0, 1.0, WeightPolicy::pin_secondary_zero);
    CHECK(m.regime() == Regime::two_real_two_complex);
    CHECK(m.profile.weights()[0] == doctest::Approx(0.5));
    CHECK(m.profile.weights()[1] == doctest::Approx(0.5));
}

TEST_CASE("case-2 sign observation over a parameter sweep (logged)") {
    ParamSampler s(2024);
    int tested = 0, holds = 0;
    for (int i = 0; i < 2000; ++i) {
        const auto p = s.draw();
        const double w = s.uniform(0.05, 4.0);
        const double k = s.uniform(0.05, 4.0);
        const auto dq = quartic_coefficients(p, w, k);
        const auto r = solve_quartic(dq.coeffs);
        const std::vector<Complex> roots(r.begin(), r.end());
        const auto prof = classify_and_weights(roots, w, p.I0, p.P0, p.g.y);
        if (prof.regime != Regime::two_real_two_complex) continue;
        ++tested;
        if (case_two_sign_pattern_holds(roots)) ++holds;
        else if (tested - holds <= 3)
            MESSAGE("case-2 counterexample: omega=" << w << " k=" << k << " roots " << roots[0] << roots[1]
                                                    << roots[2] << roots[3]);
    }
    MESSAGE("case-2 sign pattern held on " << holds << " of " << tested << " two-real draws");
    CHECK(tested > 0);
}
