#pragma once

#include "riskwave/dispersion.hpp"
#include "riskwave/model.hpp"

#include <vector>

namespace riskwave {

// All functions take the mode's amplitude A separately; every formula
// reduces to the unit-amplitude potentials at A = 1. Potentials are equal,
// phi = psi = A cos(k x - omega t) f(y - Y), so v = u = grad phi.

struct PotentialSample {
    double phi;
    double psi;
    Vec2 v;
    Vec2 u;
};

PotentialSample potential_and_velocity(const WaveMode& mode, const ModelParams& p, double A, double t, double x,
                                       double y);

/// Border position y = zeta(t, x) = Y - A (I0 / (g_y P0)) omega sin(k x - omega t).
/// Its time derivative equals v_y at y = Y for every mode whose profile
/// satisfies f'(0) = omega^2 I0 / (g_y P0).
double boundary_shape(const WaveMode& mode, const ModelParams& p, double A, double t, double x);

/// The same border obtained from the Profits potential:
/// Y - (P0 / (h_y I0)) d(psi)/dt. Agrees with boundary_shape() whenever
/// I0^2 h_y = P0^2 g_y.
double boundary_shape_from_psi(const WaveMode& mode, const ModelParams& p, double A, double t, double x);

/// Border amplitude max|zeta - Y| and the alternative printed forms it is
/// compared against. Only `canonical` satisfies the kinematic condition for
/// I0 != P0; all four coincide for unit parameters.
struct BorderAmplitudeForms {
    double canonical;       // A omega I0 / (g_y P0)
    double omega_over_gy;   // A omega / g_y
    double sqrt_form;       // A sqrt(s P0 / (g_y I0)), s = omega^2 I0 / (g_y P0)
    double coupling_form;   // A (a2 b / (a1 d)) omega / g_y
};

BorderAmplitudeForms border_amplitude_forms(const WaveMode& mode, const ModelParams& p, double A);

struct BoundaryShape {
    double amplitude;
    WaveMode mode;
    std::vector<double> times;
    std::vector<double> xs;
    std::vector<double> zeta; // row-major: zeta[i * xs.size() + j] at (times[i], xs[j])

    double at(std::size_t ti, std::size_t xj) const { return zeta[ti * xs.size() + xj]; }
};

BoundaryShape sample_boundary(const WaveMode& mode, const ModelParams& p, double A, std::vector<double> times,
                              std::vector<double> xs);

struct FieldValues {
    double I;
    double P;
};

/// Steady profile plus the wave terms (P0/d) d(psi)/dt and (I0/b) d(phi)/dt.
/// Throws Error(out_of_domain) outside the rectangle.
FieldValues field_perturbations(const WaveMode& mode, const ModelParams& p, double A, double t, double x, double y);

struct SnapshotPoint {
    double x, y;
    double I, P;
    Vec2 v, u;
};

struct FieldSnapshot {
    double t;
    std::size_t nx, ny; // lattice nodes along x and y, borders included
    std::vector<SnapshotPoint> points; // row-major in y, then x
};

FieldSnapshot field_snapshot(const WaveMode& mode, const ModelParams& p, double A, double t, std::size_t nx,
                             std::size_t ny);

struct AggregateParts {
    double steady; // I0 [X - h_x X^2 / (2 d)]
    double wave;   // (P0 A omega / (d k)) [cos(omega t) - cos(k X - omega t)] f(0)
    double total() const { return steady + wave; }
};

/// Closed-form x-integral of the Investment density along y = Y.
AggregateParts aggregate_investment_parts(const WaveMode& mode, const ModelParams& p, double A, double t);
double aggregate_investment(const WaveMode& mode, const ModelParams& p, double A, double t);

/// The same integral by n-point Gauss-Legendre quadrature of field_perturbations().
double aggregate_investment_quadrature(const WaveMode& mode, const ModelParams& p, double A, double t,
                                       std::size_t n = 256);

/// Note attached to aggregate outputs: the wave term carries the sign obtained
/// by integrating the border density, opposite to the commonly printed form.
extern const char* const aggregate_sign_note;

/// Closed-form orbit of a fluid element about (x0, y0) for a single decaying
/// exponential mode; an ellipse with semi-axes A (k/omega) e^{s(y0-Y)} and
/// A (s/omega) e^{s(y0-Y)}. Throws Error(non_simplest_mode) otherwise.
std::vector<Vec2> circulation_trajectory(const WaveMode& mode, const ModelParams& p, double A, double x0, double y0,
                                         const std::vector<double>& times);

/// Lagrangian path dx/dt = v(t, x) from `start` at times.front(), fourth-order
/// Runge-Kutta with steps no longer than one period / 256. Works for any mode.
std::vector<Vec2> integrate_trajectory(const WaveMode& mode, const ModelParams& p, double A, Vec2 start,
                                       const std::vector<double>& times);

struct ComponentEnvelope {
    double rate;      // Re(s)
    double amplitude; // A sqrt(sum of squared weights of the root) e^{rate (y - Y)}
};

/// Depth envelope per root; a cosine/sine pair sharing one root is reported once.
std::vector<ComponentEnvelope> depth_envelope(const WaveMode& mode, const ModelParams& p, double A, double y);

} // namespace riskwave
