#include "riskwave/wavefield.hpp"

#include "riskwave/error.hpp"

#include <cmath>
#include <string>

namespace riskwave {

const char* const aggregate_sign_note =
    "wave term = -(2 A P0 omega / (d k)) sin(omega t - k X / 2) sin(k X / 2); obtained by integrating the "
    "border density and checked against quadrature; the sign is opposite to the commonly printed closed form";

namespace {

double phase(const WaveMode& m, double t, double x) { return m.k * x - m.omega * t; }

// d(phi)/dt = A omega sin(k x - omega t) f(y - Y)
double phi_dt(const WaveMode& m, const ModelParams& p, double A, double t, double x, double y) {
    return A * m.omega * std::sin(phase(m, t, x)) * m.profile.value(y - p.Y);
}

Vec2 velocity(const WaveMode& m, const ModelParams& p, double A, double t, double x, double y) {
    const double th = phase(m, t, x);
    const double eta = y - p.Y;
    return {-A * m.k * std::sin(th) * m.profile.value(eta), A * std::cos(th) * m.profile.value(eta, 1)};
}

// Nodes and weights of n-point Gauss-Legendre quadrature on [-1, 1].
void gauss_legendre(std::size_t n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
        double z = std::cos(M_PI * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (std::size_t j = 1; j <= n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / static_cast<double>(j);
            }
            dp = static_cast<double>(n) * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        nodes[i] = -z;
        nodes[n - 1 - i] = z;
        weights[i] = weights[n - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
}

} // namespace

PotentialSample potential_and_velocity(const WaveMode& mode, const ModelParams& p, double A, double t, double x,
                                       double y) {
    const double phi = A * std::cos(phase(mode, t, x)) * mode.profile.value(y - p.Y);
    const Vec2 v = velocity(mode, p, A, t, x, y);
    return {phi, phi, v, v};
}

double boundary_shape(const WaveMode& mode, const ModelParams& p, double A, double t, double x) {
    return p.Y - (p.I0 / (p.g.y * p.P0)) * A * mode.omega * std::sin(phase(mode, t, x));
}

double boundary_shape_from_psi(const WaveMode& mode, const ModelParams& p, double A, double t, double x) {
    return p.Y - (p.P0 / (p.h.y * p.I0)) * A * mode.omega * std::sin(phase(mode, t, x));
}

BorderAmplitudeForms border_amplitude_forms(const WaveMode& mode, const ModelParams& p, double A) {
    const double w = mode.omega;
    const double s = w * w * p.I0 / (p.g.y * p.P0);
    return {A * w * p.I0 / (p.g.y * p.P0), A * w / p.g.y, A * std::sqrt(s * p.P0 / (p.g.y * p.I0)),
            A * (p.a2 * p.b / (p.a1 * p.d)) * w / p.g.y};
}

BoundaryShape sample_boundary(const WaveMode& mode, const ModelParams& p, double A, std::vector<double> times,
                              std::vector<double> xs) {
    BoundaryShape b{A, mode, std::move(times), std::move(xs), {}};
    b.zeta.reserve(b.times.size() * b.xs.size());
    for (double t : b.times)
        for (double x : b.xs) b.zeta.push_back(boundary_shape(mode, p, A, t, x));
    return b;
}

FieldValues field_perturbations(const WaveMode& mode, const ModelParams& p, double A, double t, double x, double y) {
    if (!in_domain(p, x, y)) {
        throw Error(ErrorCode::out_of_domain, "point (" + std::to_string(x) + ", " + std::to_string(y) +
                                                  ") outside the macro rectangle");
    }
    const auto s = steady_profile(p, x, y);
    const double dt_pot = phi_dt(mode, p, A, t, x, y);
    return {s.I + (p.P0 / p.d) * dt_pot, s.P + (p.I0 / p.b) * dt_pot};
}

FieldSnapshot field_snapshot(const WaveMode& mode, const ModelParams& p, double A, double t, std::size_t nx,
                             std::size_t ny) {
    if (nx < 2 || ny < 2) throw Error(ErrorCode::bad_grid, "snapshot needs at least 2 x 2 nodes");
    FieldSnapshot snap{t, nx, ny, {}};
    snap.points.reserve(nx * ny);
    for (std::size_t j = 0; j < ny; ++j) {
        const double y = j + 1 == ny ? p.Y : p.Y * static_cast<double>(j) / static_cast<double>(ny - 1);
        for (std::size_t i = 0; i < nx; ++i) {
            const double x = i + 1 == nx ? p.X : p.X * static_cast<double>(i) / static_cast<double>(nx - 1);
            const auto f = field_perturbations(mode, p, A, t, x, y);
            const auto pv = potential_and_velocity(mode, p, A, t, x, y);
            snap.points.push_back({x, y, f.I, f.P, pv.v, pv.u});
        }
    }
    return snap;
}

AggregateParts aggregate_investment_parts(const WaveMode& mode, const ModelParams& p, double A, double t) {
    const double steady = p.I0 * (p.X - p.h.x * p.X * p.X / (2.0 * p.d));
    const double w = mode.omega;
    const double wave = (p.P0 * A * w / (p.d * mode.k)) * (std::cos(w * t) - std::cos(mode.k * p.X - w * t)) *
                        mode.profile.value(0.0);
    return {steady, wave};
}

double aggregate_investment(const WaveMode& mode, const ModelParams& p, double A, double t) {
    return aggregate_investment_parts(mode, p, A, t).total();
}

double aggregate_investment_quadrature(const WaveMode& mode, const ModelParams& p, double A, double t, std::size_t n) {
    std::vector<double> z, w;
    gauss_legendre(n, z, w);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = 0.5 * p.X * (z[i] + 1.0);
        sum += w[i] * field_perturbations(mode, p, A, t, x, p.Y).I;
    }
    return 0.5 * p.X * sum;
}

std::vector<Vec2> circulation_trajectory(const WaveMode& mode, const ModelParams& p, double A, double x0, double y0,
                                         const std::vector<double>& times) {
    const auto& comps = mode.profile.components;
    if (mode.regime() != Regime::single_exponential || comps.size() != 1 || !(comps[0].rate > 0.0)) {
        throw Error(ErrorCode::non_simplest_mode, "closed-form trajectories need a single decaying exponential mode");
    }
    if (!(mode.omega > 0.0)) throw Error(ErrorCode::invalid_argument, "trajectory needs omega > 0");
    const double s = comps[0].rate;
    const double depth = std::exp(s * (y0 - p.Y)) * comps[0].weight;
    std::vector<Vec2> out;
    out.reserve(times.size());
    for (double t : times) {
        const double th = mode.k * x0 - mode.omega * t;
        out.push_back({x0 - A * (mode.k / mode.omega) * std::cos(th) * depth,
                       y0 - A * (s / mode.omega) * std::sin(th) * depth});
    }
    return out;
}

std::vector<Vec2> integrate_trajectory(const WaveMode& mode, const ModelParams& p, double A, Vec2 start,
                                       const std::vector<double>& times) {
    if (!(mode.omega > 0.0)) throw Error(ErrorCode::invalid_argument, "trajectory needs omega > 0");
    const double max_step = 2.0 * M_PI / mode.omega / 256.0;
    auto vel = [&](double t, Vec2 q) { return velocity(mode, p, A, t, q.x, q.y); };

    std::vector<Vec2> out;
    out.reserve(times.size());
    if (times.empty()) return out;
    Vec2 q = start;
    double t = times.front();
    out.push_back(q);
    for (std::size_t i = 1; i < times.size(); ++i) {
        const double span = times[i] - t;
        const auto n = static_cast<std::size_t>(std::ceil(std::abs(span) / max_step));
        const double h = n ? span / static_cast<double>(n) : 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const Vec2 k1 = vel(t, q);
            const Vec2 k2 = vel(t + 0.5 * h, q + (0.5 * h) * k1);
            const Vec2 k3 = vel(t + 0.5 * h, q + (0.5 * h) * k2);
            const Vec2 k4 = vel(t + h, q + h * k3);
            q = q + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            t += h;
        }
        t = times[i];
        out.push_back(q);
    }
    return out;
}

std::vector<ComponentEnvelope> depth_envelope(const WaveMode& mode, const ModelParams& p, double A, double y) {
    std::vector<ComponentEnvelope> out;
    const auto& comps = mode.profile.components;
    const double eta = y - p.Y;
    std::vector<bool> used(comps.size(), false);
    for (std::size_t i = 0; i < comps.size(); ++i) {
        if (used[i]) continue;
        double sq = comps[i].weight * comps[i].weight;
        if (comps[i].kind != ComponentKind::exponential) {
            for (std::size_t j = i + 1; j < comps.size(); ++j) {
                if (!used[j] && comps[j].kind != ComponentKind::exponential && comps[j].kind != comps[i].kind &&
                    comps[j].rate == comps[i].rate && comps[j].freq == comps[i].freq) {
                    sq += comps[j].weight * comps[j].weight;
                    used[j] = true;
                    break;
                }
            }
        }
        used[i] = true;
        out.push_back({comps[i].rate, std::abs(A) * std::sqrt(sq) * std::exp(comps[i].rate * eta)});
    }
    return out;
}

} // namespace riskwave
