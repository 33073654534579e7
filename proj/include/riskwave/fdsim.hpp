#pragma once

#include "riskwave/dispersion.hpp"
#include "riskwave/model.hpp"

#include <optional>
#include <string>
#include <vector>

namespace riskwave {

// Linearized perturbation system about the steady state:
//   d(dI)/dt = -I0 div v + a1 u_y      I0 dv/dt = b grad(dP)
//   d(dP)/dt = -P0 div u + a2 v_y      P0 du/dt = d grad(dI)
//
// Staggered layout: scalars at cell centres ((i + 1/2) dx, (j + 1/2) dy);
// x components on x-faces (i dx, (j + 1/2) dy), i = 0..nx; y components on
// y-faces ((i + 1/2) dx, j dy), j = 0..ny. Scalars live at t^n, velocities
// at t^(n - 1/2).

enum class LateralBoundary { periodic, wall };

const char* to_string(LateralBoundary b);

/// Prescribed v_y = u_y = A f'(0) cos(k x - omega t) on the top faces,
/// i.e. the border velocity of `mode`.
struct Forcing {
    WaveMode mode;
    double amplitude = 0.0;
};

struct SimConfig {
    int nx = 64;
    int ny = 64;
    double dt = 0.0;
    double total_time = 0.0;
    std::optional<Forcing> forcing;
    LateralBoundary lateral = LateralBoundary::periodic;
};

/// Mode sampled at t = 0 (scalars) and t = -dt/2 (velocities).
struct AnalyticInit {
    WaveMode mode;
    double amplitude = 0.0;
};

struct SimState {
    ModelParams params;
    SimConfig config;
    int nx = 0;
    int ny = 0;
    double dx = 0.0;
    double dy = 0.0;
    double t = 0.0;
    long steps = 0;
    double initial_scale = 1.0;

    std::vector<double> dI, dP; // nx * ny
    std::vector<double> vx, ux; // (nx + 1) * ny
    std::vector<double> vy, uy; // nx * (ny + 1)

    std::size_t cell(int i, int j) const { return static_cast<std::size_t>(j) * nx + i; }
    std::size_t xface(int i, int j) const { return static_cast<std::size_t>(j) * (nx + 1) + i; }
    std::size_t yface(int i, int j) const { return static_cast<std::size_t>(j) * nx + i; }
};

/// dt <= 0.5 min(dx, dy) / c_max, c_max = sqrt(max(b P0 / I0, |d| I0 / P0)).
double cfl_bound(const ModelParams& p, int nx, int ny);

/// Non-fatal remarks about a configuration (e.g. a forcing wavenumber that
/// does not fit the periodic box).
std::vector<std::string> sim_warnings(const ModelParams& p, const SimConfig& cfg);

SimState init_sim(const ModelParams& p, const SimConfig& cfg, const std::optional<AnalyticInit>& initial = std::nullopt);

/// One leapfrog step. Throws instability when any value leaves
/// 1e12 x initial scale or turns non-finite.
void step(SimState& state);

/// Face velocities advanced by dt/2 to the scalar time level.
struct FullStepVelocities {
    std::vector<double> vx, ux, vy, uy;
};

FullStepVelocities velocities_at_scalar_time(const SimState& state);

struct ProbeSample {
    double dI = 0.0;
    double dP = 0.0;
    Vec2 v;
    Vec2 u;
};

/// Bilinear interpolation between staggered nodes, linear extrapolation
/// beyond the outermost nodes.
ProbeSample probe(const SimState& state, const FullStepVelocities& vel, Vec2 point);

struct ProbeRun {
    std::vector<Vec2> points;
    std::vector<double> times;
    std::vector<std::vector<ProbeSample>> samples; // samples[k][probe]
    std::vector<double> border_integral;          // integral of dI over x at y = Y, per sample
    SimState final_state;
};

/// Steps until config.total_time, sampling at step 0 and every `cadence`
/// steps.
ProbeRun run_and_probe(SimState state, const std::vector<Vec2>& probes, int cadence = 1);

/// Perturbations of the potential-flow mode phi = psi = A cos(k x - omega t) f(y - Y):
/// dI = (P0 / d) d(phi)/dt, dP = (I0 / b) d(phi)/dt, v = u = grad phi.
ProbeSample modal_perturbation(const WaveMode& mode, const ModelParams& p, double A, double t, double x, double y);

/// sqrt(sum over cells of (dI - dI_exact)^2 dx dy) at the state's time.
double l2_deviation(const SimState& state, const WaveMode& mode, double A);

/// sum(b dP^2 / P0 + |d| dI^2 / I0 + I0 |v|^2 + P0 |u|^2) dx dy, velocities
/// taken at the scalar time level.
double sim_energy(const SimState& state);

} // namespace riskwave
