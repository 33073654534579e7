#include "doctest.h"
#include "sim_fixtures.hpp"
#include "test_support.hpp"

#include "riskwave/error.hpp"
#include "riskwave/fdsim.hpp"

#include <cmath>

using namespace riskwave;
using namespace riskwave::testing;

namespace {

bool all_zero(const SimState& s) {
    for (const auto* a : {&s.dI, &s.dP, &s.vx, &s.ux, &s.vy, &s.uy})
        for (double x : *a)
            if (x != 0.0) return false;
    return true;
}

} // namespace

TEST_CASE("zero initial state without forcing stays zero") {
    const auto p = unit_params(1.0, 1.0);
    auto p2 = p;
    p2.b = 3.0;
    SimConfig c;
    c.nx = 16;
    c.ny = 12;
    c.dt = 0.5 * cfl_bound(p2, c.nx, c.ny);
    c.total_time = 40 * c.dt;
    auto s = init_sim(p2, c);
    CHECK(all_zero(s));
    for (int i = 0; i < 40; ++i) step(s);
    CHECK(all_zero(s));
    CHECK(s.steps == 40);

    const auto run = run_and_probe(init_sim(p2, c), {{0.5, 0.5}, {1.0, 1.0}, {0.0, 0.0}}, 4);
    CHECK(run.times.size() == 11);
    for (const auto& row : run.samples)
        for (const auto& q : row) {
            CHECK(q.dI == 0.0);
            CHECK(q.dP == 0.0);
            CHECK(q.v == Vec2{0, 0});
            CHECK(q.u == Vec2{0, 0});
        }
    for (double b : run.border_integral) CHECK(b == 0.0);
    CHECK(sim_energy(run.final_state) == 0.0);
}

TEST_CASE("init_sim rejects bad configurations") {
    auto p = moderate_params();
    SimConfig c;
    c.nx = c.ny = 16;
    c.dt = 1.01 * cfl_bound(p, 16, 16);
    try {
        init_sim(p, c);
        FAIL("expected cfl-violation");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::cfl_violation);
    }
    c.dt = cfl_bound(p, 16, 16);
    CHECK_NOTHROW(init_sim(p, c));

    c.nx = 7;
    try {
        init_sim(p, c);
        FAIL("expected bad-grid");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::bad_grid);
    }
    c.nx = 16;
    auto bad = p;
    bad.b = -1.0;
    try {
        init_sim(bad, c);
        FAIL("expected constraint violation");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::constraint_violation);
    }
}

TEST_CASE("cfl bound formula") {
    auto p = moderate_params();
    p.I0 = 2.0;
    p.P0 = 0.5;
    // c_max = sqrt(max(4 * 0.5 / 2, 1 * 2 / 0.5)) = 2
    CHECK(cfl_bound(p, 10, 20) == doctest::Approx(0.5 * (1.0 / 20) / 2.0).epsilon(1e-15));
}

TEST_CASE("analytic initialization samples the mode") {
    const auto p = fast_mode_params();
    const auto mode = incompressible_wave_mode(p, 4.0 * M_PI);
    const double A = 0.01;
    auto c = sim_config(p, mode, 64, 0.0);
    c.lateral = LateralBoundary::wall;
    const auto s = init_sim(p, c, AnalyticInit{mode, A});

    // top-right corner: dI = -A P0 omega sin(k X) / |d| with f(0) = 1
    const double expected = -A * p.P0 * mode.omega * std::sin(mode.k * p.X) / std::abs(p.d);
    const auto q = probe(s, velocities_at_scalar_time(s), {p.X, p.Y});
    const double scale = A * p.P0 * mode.omega / std::abs(p.d);
    const double kh = mode.k * s.dx;
    CHECK(std::abs(q.dI - expected) <= kh * kh * scale);

    // interior probe, all fields
    const Vec2 pt{0.37, 0.81};
    const auto exact = modal_perturbation(mode, p, A, 0.0, pt.x, pt.y);
    const auto got = probe(s, velocities_at_scalar_time(s), pt);
    const double vscale = A * mode.k;
    CHECK(std::abs(got.dI - exact.dI) <= kh * kh * scale);
    CHECK(std::abs(got.dP - exact.dP) <= kh * kh * scale * p.I0 * std::abs(p.d) / (p.b * p.P0));
    CHECK(std::abs(got.v.x - exact.v.x) <= kh * kh * vscale);
    CHECK(std::abs(got.v.y - exact.v.y) <= kh * kh * vscale);
    CHECK(std::abs(got.u.y - exact.u.y) <= kh * kh * vscale);
}

TEST_CASE("border integral of the sampled mode") {
    const auto p = fast_mode_params();
    // 2.5 wavelengths across X: not periodic, use walls
    const auto mode = incompressible_wave_mode(p, 5.0 * M_PI);
    const double A = 0.01;
    auto c = sim_config(p, mode, 128, 0.0);
    c.dt = 1e-4;
    c.lateral = LateralBoundary::wall;
    const auto run = run_and_probe(init_sim(p, c, AnalyticInit{mode, A}), {}, 1);
    REQUIRE(run.border_integral.size() == 1);
    const double exact = (p.P0 * A * mode.omega / (p.d * mode.k)) * (1.0 - std::cos(mode.k * p.X));
    const double kh = mode.k * p.Y / 128;
    CHECK(std::abs(run.border_integral[0] - exact) <= kh * kh * std::abs(exact));
}

TEST_CASE("uniform scalars stay constant and leave velocities untouched") {
    const auto p = moderate_params();
    SimConfig c;
    c.nx = c.ny = 12;
    c.dt = 0.5 * cfl_bound(p, 12, 12);
    auto s = init_sim(p, c);
    for (double& x : s.dP) x = 0.75;
    for (double& x : s.dI) x = -0.5;
    step(s);
    for (double x : s.vx) CHECK(x == 0.0);
    for (double x : s.vy) CHECK(x == 0.0);
    for (double x : s.ux) CHECK(x == 0.0);
    for (int n = 0; n < 200; ++n) step(s);
    for (double x : s.dP) CHECK(x == 0.75);
    for (double x : s.dI) CHECK(x == -0.5);
}

TEST_CASE("response is linear in the forcing amplitude") {
    const auto p = fast_mode_params();
    const auto mode = incompressible_wave_mode(p, 4.0 * M_PI);
    auto c = sim_config(p, mode, 32, 0.25 * 2 * M_PI / mode.omega);
    const std::vector<Vec2> probes{{0.5, 1.0}, {0.25, 0.5}, {0.9, 0.1}};
    c.forcing = Forcing{mode, 0.01};
    const auto one = run_and_probe(init_sim(p, c), probes, 3);
    c.forcing = Forcing{mode, 0.02};
    const auto two = run_and_probe(init_sim(p, c), probes, 3);
    REQUIRE(one.samples.size() == two.samples.size());
    double peak = 0.0;
    for (std::size_t k = 0; k < one.samples.size(); ++k) {
        for (std::size_t i = 0; i < probes.size(); ++i) {
            const auto &a = one.samples[k][i], &b = two.samples[k][i];
            CHECK(std::abs(b.dI - 2 * a.dI) <= 1e-10 * std::abs(b.dI));
            CHECK(std::abs(b.dP - 2 * a.dP) <= 1e-10 * std::abs(b.dP));
            CHECK(std::abs(b.v.y - 2 * a.v.y) <= 1e-10 * std::abs(b.v.y));
            CHECK(std::abs(b.u.x - 2 * a.u.x) <= 1e-10 * std::abs(b.u.x));
            peak = std::max(peak, std::abs(a.dI));
        }
    }
    CHECK(peak > 0.0);
}

TEST_CASE("second-order consistency over a short interval") {
    const auto p = fast_mode_params();
    const auto mode = incompressible_wave_mode(p, 6.0 * M_PI);
    const double A = 0.01, t_end = (2 * M_PI / mode.omega) / 16;
    double err[2];
    int idx = 0;
    for (int n : {64, 128}) {
        auto c = sim_config(p, mode, n, t_end, 0.125);
        c.forcing = Forcing{mode, A};
        auto s = init_sim(p, c, AnalyticInit{mode, A});
        const long steps = std::lround(t_end / c.dt);
        for (long i = 0; i < steps; ++i) step(s);
        err[idx++] = l2_deviation(s, mode, A);
    }
    MESSAGE("short-interval errors " << err[0] << " -> " << err[1] << ", ratio " << err[0] / err[1]);
    CHECK(err[0] / err[1] >= 3.5);
    CHECK(err[0] / err[1] <= 4.5);
}

TEST_CASE("instability detector stops a runaway") {
    // the linearized system has no stable discretization; O(1) coefficients
    // blow up within a fraction of a period
    const auto p = moderate_params();
    const auto mode = incompressible_wave_mode(p, 4.0 * M_PI);
    auto c = sim_config(p, mode, 32, 4.0 * 2 * M_PI / mode.omega);
    c.forcing = Forcing{mode, 0.01};
    auto s = init_sim(p, c, AnalyticInit{mode, 0.01});
    try {
        for (int i = 0; i < 100000; ++i) step(s);
        FAIL("expected instability");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::instability);
    }
}

TEST_CASE("wall boundaries hold zero normal velocity") {
    const auto p = fast_mode_params();
    const auto mode = incompressible_wave_mode(p, 5.0 * M_PI);
    auto c = sim_config(p, mode, 16, 0.1 * 2 * M_PI / mode.omega);
    c.lateral = LateralBoundary::wall;
    c.forcing = Forcing{mode, 0.01};
    auto s = init_sim(p, c, AnalyticInit{mode, 0.01});
    for (int i = 0; i < 10; ++i) step(s);
    for (int j = 0; j < s.ny; ++j) {
        CHECK(s.vx[s.xface(0, j)] == 0.0);
        CHECK(s.ux[s.xface(s.nx, j)] == 0.0);
    }
    for (int i = 0; i < s.nx; ++i) CHECK(s.vy[s.yface(i, 0)] == 0.0);
    const auto vel = velocities_at_scalar_time(s);
    for (int i = 0; i < s.nx; ++i) {
        const double x = (i + 0.5) * s.dx;
        const double expect =
            0.01 * mode.profile.value(0.0, 1) * std::cos(mode.k * x - mode.omega * s.t);
        CHECK(vel.vy[s.yface(i, s.ny)] == doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("probes and warnings") {
    const auto p = fast_mode_params();
    const auto mode = incompressible_wave_mode(p, 5.0 * M_PI);
    auto c = sim_config(p, mode, 16, 0.0);
    c.forcing = Forcing{mode, 0.01};
    const auto warn = sim_warnings(p, c);
    REQUIRE(warn.size() == 1);
    CHECK(warn[0].find("2.5") != std::string::npos);
    c.lateral = LateralBoundary::wall;
    CHECK(sim_warnings(p, c).empty());
    c.lateral = LateralBoundary::periodic;
    c.forcing = Forcing{incompressible_wave_mode(p, 4.0 * M_PI), 0.01};
    CHECK(sim_warnings(p, c).empty());

    try {
        run_and_probe(init_sim(p, c), {{0.5, 1.5}});
        FAIL("expected probe-out-of-domain");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::probe_out_of_domain);
    }
}

TEST_CASE("energy functional of a sampled mode") {
    const auto p = fast_mode_params();
    const auto mode = incompressible_wave_mode(p, 4.0 * M_PI);
    auto c = sim_config(p, mode, 64, 0.0);
    c.dt = 1e-5;
    const double A = 0.01;
    const auto s = init_sim(p, c, AnalyticInit{mode, A});
    // closed form over the box at t = 0 for phi = A cos(kx) e^{k(y - Y)}
    const double k = mode.k, w = mode.omega;
    const double depth = (1.0 - std::exp(-2.0 * k * p.Y)) / (2.0 * k);
    const double scal = (p.b * std::pow(p.I0 / p.b, 2) / p.P0 + std::abs(p.d) * std::pow(p.P0 / p.d, 2) / p.I0) *
                        A * A * w * w * 0.5 * p.X * depth;
    const double kin = (p.I0 + p.P0) * A * A * k * k * p.X * depth;
    CHECK(rel_err(sim_energy(s), scal + kin) <= 0.02);
}
