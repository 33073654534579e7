#include "riskwave/fdsim.hpp"

#include "riskwave/error.hpp"
#include "riskwave/wavefield.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace riskwave {

const char* to_string(LateralBoundary b) { return b == LateralBoundary::periodic ? "periodic" : "wall"; }

double cfl_bound(const ModelParams& p, int nx, int ny) {
    const double c_max = std::sqrt(std::max(p.b * p.P0 / p.I0, std::abs(p.d) * p.I0 / p.P0));
    return 0.5 * std::min(p.X / nx, p.Y / ny) / c_max;
}

std::vector<std::string> sim_warnings(const ModelParams& p, const SimConfig& cfg) {
    std::vector<std::string> w;
    if (cfg.forcing && cfg.lateral == LateralBoundary::periodic) {
        const double m = cfg.forcing->mode.k * p.X / (2.0 * M_PI);
        if (std::abs(m - std::round(m)) > 1e-9 * std::max(1.0, std::abs(m))) {
            std::ostringstream os;
            os.precision(17);
            os << "forcing wavenumber k = " << cfg.forcing->mode.k << " fits " << m
               << " wavelengths in X; periodic lateral boundary will distort the mode";
            w.push_back(os.str());
        }
    }
    return w;
}

ProbeSample modal_perturbation(const WaveMode& mode, const ModelParams& p, double A, double t, double x, double y) {
    const double phase = mode.k * x - mode.omega * t;
    const double f = mode.profile.value(y - p.Y);
    const double phi_t = A * mode.omega * std::sin(phase) * f;
    const auto pv = potential_and_velocity(mode, p, A, t, x, y);
    return {(p.P0 / p.d) * phi_t, (p.I0 / p.b) * phi_t, pv.v, pv.u};
}

namespace {

double forcing_velocity(const SimState& s, double t, int i) {
    if (!s.config.forcing) return 0.0;
    const auto& fc = *s.config.forcing;
    const double x = (i + 0.5) * s.dx;
    return fc.amplitude * fc.mode.profile.value(0.0, 1) * std::cos(fc.mode.k * x - fc.mode.omega * t);
}

double max_abs(const std::vector<double>& a) {
    double m = 0.0;
    for (double x : a) m = std::max(m, std::abs(x));
    return m;
}

// x-face accelerations and interior y-face accelerations from the current scalars.
template <class F>
void for_each_xface(const SimState& s, F&& f) {
    const bool periodic = s.config.lateral == LateralBoundary::periodic;
    for (int j = 0; j < s.ny; ++j) {
        for (int i = 0; i < s.nx; ++i) {
            if (i == 0 && !periodic) continue;
            const int left = i == 0 ? s.nx - 1 : i - 1;
            f(i, j, s.cell(left, j), s.cell(i, j));
        }
    }
}

void apply_lateral(const SimState& s, std::vector<double>& vx, std::vector<double>& ux) {
    for (int j = 0; j < s.ny; ++j) {
        if (s.config.lateral == LateralBoundary::periodic) {
            vx[s.xface(s.nx, j)] = vx[s.xface(0, j)];
            ux[s.xface(s.nx, j)] = ux[s.xface(0, j)];
        } else {
            vx[s.xface(0, j)] = vx[s.xface(s.nx, j)] = 0.0;
            ux[s.xface(0, j)] = ux[s.xface(s.nx, j)] = 0.0;
        }
    }
}

// Advances face velocities by `h` using the scalar gradients at the current
// level; top faces take the forcing at time `t_face`.
void kick(const SimState& s, double h, double t_face, std::vector<double>& vx, std::vector<double>& ux,
          std::vector<double>& vy, std::vector<double>& uy) {
    const auto& p = s.params;
    const double cv = h * p.b / p.I0, cu = h * p.d / p.P0;
    for_each_xface(s, [&](int i, int j, std::size_t l, std::size_t r) {
        vx[s.xface(i, j)] += cv * (s.dP[r] - s.dP[l]) / s.dx;
        ux[s.xface(i, j)] += cu * (s.dI[r] - s.dI[l]) / s.dx;
    });
    apply_lateral(s, vx, ux);
    for (int j = 1; j < s.ny; ++j)
        for (int i = 0; i < s.nx; ++i) {
            const std::size_t f = s.yface(i, j);
            vy[f] += cv * (s.dP[s.cell(i, j)] - s.dP[s.cell(i, j - 1)]) / s.dy;
            uy[f] += cu * (s.dI[s.cell(i, j)] - s.dI[s.cell(i, j - 1)]) / s.dy;
        }
    for (int i = 0; i < s.nx; ++i) {
        vy[s.yface(i, 0)] = uy[s.yface(i, 0)] = 0.0;
        vy[s.yface(i, s.ny)] = uy[s.yface(i, s.ny)] = forcing_velocity(s, t_face, i);
    }
}

void check_finite(const SimState& s) {
    const double limit = 1e12 * s.initial_scale;
    for (const auto* a : {&s.dI, &s.dP, &s.vx, &s.ux, &s.vy, &s.uy})
        for (double x : *a)
            if (!(std::abs(x) <= limit)) {
                std::ostringstream os;
                os.precision(6);
                os << "instability detected at step " << s.steps << " (t = " << s.t << "): |field| > " << limit;
                throw Error(ErrorCode::instability, os.str());
            }
}

} // namespace

SimState init_sim(const ModelParams& p, const SimConfig& cfg, const std::optional<AnalyticInit>& initial) {
    require_valid(p);
    if (cfg.nx < 8 || cfg.ny < 8)
        throw Error(ErrorCode::bad_grid, "simulation grid needs nx, ny >= 8 (got " + std::to_string(cfg.nx) + " x " +
                                             std::to_string(cfg.ny) + ")");
    if (!(cfg.dt > 0.0) || !std::isfinite(cfg.dt))
        throw Error(ErrorCode::invalid_argument, "time step must be positive and finite");
    if (!(cfg.total_time >= 0.0) || !std::isfinite(cfg.total_time))
        throw Error(ErrorCode::invalid_argument, "total time must be non-negative and finite");
    const double bound = cfl_bound(p, cfg.nx, cfg.ny);
    if (cfg.dt > bound) {
        std::ostringstream os;
        os.precision(17);
        os << "dt = " << cfg.dt << " exceeds the stability bound " << bound;
        throw Error(ErrorCode::cfl_violation, os.str());
    }

    SimState s;
    s.params = p;
    s.config = cfg;
    s.nx = cfg.nx;
    s.ny = cfg.ny;
    s.dx = p.X / cfg.nx;
    s.dy = p.Y / cfg.ny;
    const std::size_t cells = static_cast<std::size_t>(s.nx) * s.ny;
    s.dI.assign(cells, 0.0);
    s.dP.assign(cells, 0.0);
    s.vx.assign(static_cast<std::size_t>(s.nx + 1) * s.ny, 0.0);
    s.ux = s.vx;
    s.vy.assign(static_cast<std::size_t>(s.nx) * (s.ny + 1), 0.0);
    s.uy = s.vy;

    if (initial) {
        const auto& m = initial->mode;
        const double A = initial->amplitude, th = -0.5 * cfg.dt;
        for (int j = 0; j < s.ny; ++j)
            for (int i = 0; i < s.nx; ++i) {
                const auto q = modal_perturbation(m, p, A, 0.0, (i + 0.5) * s.dx, (j + 0.5) * s.dy);
                s.dI[s.cell(i, j)] = q.dI;
                s.dP[s.cell(i, j)] = q.dP;
            }
        for (int j = 0; j < s.ny; ++j)
            for (int i = 0; i <= s.nx; ++i) {
                const auto q = modal_perturbation(m, p, A, th, i * s.dx, (j + 0.5) * s.dy);
                s.vx[s.xface(i, j)] = q.v.x;
                s.ux[s.xface(i, j)] = q.u.x;
            }
        for (int j = 1; j < s.ny; ++j)
            for (int i = 0; i < s.nx; ++i) {
                const auto q = modal_perturbation(m, p, A, th, (i + 0.5) * s.dx, j * s.dy);
                s.vy[s.yface(i, j)] = q.v.y;
                s.uy[s.yface(i, j)] = q.u.y;
            }
        apply_lateral(s, s.vx, s.ux);
    }
    for (int i = 0; i < s.nx; ++i) s.vy[s.yface(i, s.ny)] = s.uy[s.yface(i, s.ny)] = forcing_velocity(s, -0.5 * cfg.dt, i);

    double scale = 0.0;
    for (const auto* a : {&s.dI, &s.dP, &s.vx, &s.ux, &s.vy, &s.uy}) scale = std::max(scale, max_abs(*a));
    if (cfg.forcing) {
        const auto& fc = *cfg.forcing;
        const double vel = std::abs(fc.amplitude * fc.mode.profile.value(0.0, 1));
        const double sc = std::abs(fc.amplitude * fc.mode.omega) * std::max(p.P0 / std::abs(p.d), p.I0 / p.b);
        scale = std::max({scale, vel, sc});
    }
    s.initial_scale = scale > 0.0 ? scale : 1.0;
    return s;
}

void step(SimState& s) {
    const auto& p = s.params;
    const double dt = s.config.dt;
    kick(s, dt, s.t + 0.5 * dt, s.vx, s.ux, s.vy, s.uy);

    for (int j = 0; j < s.ny; ++j)
        for (int i = 0; i < s.nx; ++i) {
            const std::size_t c = s.cell(i, j);
            const double div_v = (s.vx[s.xface(i + 1, j)] - s.vx[s.xface(i, j)]) / s.dx +
                                 (s.vy[s.yface(i, j + 1)] - s.vy[s.yface(i, j)]) / s.dy;
            const double div_u = (s.ux[s.xface(i + 1, j)] - s.ux[s.xface(i, j)]) / s.dx +
                                 (s.uy[s.yface(i, j + 1)] - s.uy[s.yface(i, j)]) / s.dy;
            const double uy_c = 0.5 * (s.uy[s.yface(i, j)] + s.uy[s.yface(i, j + 1)]);
            const double vy_c = 0.5 * (s.vy[s.yface(i, j)] + s.vy[s.yface(i, j + 1)]);
            s.dI[c] += dt * (-p.I0 * div_v + p.a1 * uy_c);
            s.dP[c] += dt * (-p.P0 * div_u + p.a2 * vy_c);
        }
    s.t += dt;
    ++s.steps;
    check_finite(s);
}

FullStepVelocities velocities_at_scalar_time(const SimState& s) {
    FullStepVelocities f{s.vx, s.ux, s.vy, s.uy};
    kick(s, 0.5 * s.config.dt, s.t, f.vx, f.ux, f.vy, f.uy);
    return f;
}

namespace {

struct Axis {
    int i0, i1;
    double w;
};

// Nodes at (offset + n) h for n = 0..count-1.
Axis locate(double q, double h, double offset, int count, bool wrap) {
    const double s = q / h - offset;
    if (wrap) {
        const double fl = std::floor(s);
        int i0 = static_cast<int>(fl) % count;
        if (i0 < 0) i0 += count;
        return {i0, (i0 + 1) % count, s - fl};
    }
    const int i0 = std::clamp(static_cast<int>(std::floor(s)), 0, count - 2);
    return {i0, i0 + 1, s - i0};
}

double blend(const std::vector<double>& a, Axis ax, Axis ay, int stride) {
    auto at = [&](int i, int j) { return a[static_cast<std::size_t>(j) * stride + i]; };
    return (1 - ay.w) * ((1 - ax.w) * at(ax.i0, ay.i0) + ax.w * at(ax.i1, ay.i0)) +
           ay.w * ((1 - ax.w) * at(ax.i0, ay.i1) + ax.w * at(ax.i1, ay.i1));
}

} // namespace

ProbeSample probe(const SimState& s, const FullStepVelocities& vel, Vec2 pt) {
    if (!in_domain(s.params, pt.x, pt.y)) {
        std::ostringstream os;
        os.precision(17);
        os << "probe (" << pt.x << ", " << pt.y << ") outside the simulation domain";
        throw Error(ErrorCode::probe_out_of_domain, os.str());
    }
    const bool wrap = s.config.lateral == LateralBoundary::periodic;
    const Axis cx = locate(pt.x, s.dx, 0.5, s.nx, wrap), cy = locate(pt.y, s.dy, 0.5, s.ny, false);
    const Axis fx = locate(pt.x, s.dx, 0.0, s.nx + 1, false), fy = locate(pt.y, s.dy, 0.0, s.ny + 1, false);
    ProbeSample out;
    out.dI = blend(s.dI, cx, cy, s.nx);
    out.dP = blend(s.dP, cx, cy, s.nx);
    out.v = {blend(vel.vx, fx, cy, s.nx + 1), blend(vel.vy, cx, fy, s.nx)};
    out.u = {blend(vel.ux, fx, cy, s.nx + 1), blend(vel.uy, cx, fy, s.nx)};
    return out;
}

namespace {

double border_integral(const SimState& s) {
    double sum = 0.0;
    for (int i = 0; i < s.nx; ++i) sum += 1.5 * s.dI[s.cell(i, s.ny - 1)] - 0.5 * s.dI[s.cell(i, s.ny - 2)];
    return sum * s.dx;
}

} // namespace

ProbeRun run_and_probe(SimState state, const std::vector<Vec2>& probes, int cadence) {
    if (cadence < 1) throw Error(ErrorCode::invalid_argument, "probe cadence must be >= 1");
    for (const auto& pt : probes)
        if (!in_domain(state.params, pt.x, pt.y)) {
            std::ostringstream os;
            os.precision(17);
            os << "probe (" << pt.x << ", " << pt.y << ") outside the simulation domain";
            throw Error(ErrorCode::probe_out_of_domain, os.str());
        }

    ProbeRun run;
    run.points = probes;
    auto sample = [&] {
        const auto vel = velocities_at_scalar_time(state);
        std::vector<ProbeSample> row;
        row.reserve(probes.size());
        for (const auto& pt : probes) row.push_back(probe(state, vel, pt));
        run.times.push_back(state.t);
        run.samples.push_back(std::move(row));
        run.border_integral.push_back(border_integral(state));
    };

    const long total = std::lround(state.config.total_time / state.config.dt);
    sample();
    for (long n = 1; n <= total; ++n) {
        step(state);
        if (n % cadence == 0) sample();
    }
    run.final_state = std::move(state);
    return run;
}

double l2_deviation(const SimState& s, const WaveMode& mode, double A) {
    double sum = 0.0;
    for (int j = 0; j < s.ny; ++j)
        for (int i = 0; i < s.nx; ++i) {
            const auto q = modal_perturbation(mode, s.params, A, s.t, (i + 0.5) * s.dx, (j + 0.5) * s.dy);
            const double e = s.dI[s.cell(i, j)] - q.dI;
            sum += e * e;
        }
    return std::sqrt(sum * s.dx * s.dy);
}

double sim_energy(const SimState& s) {
    const auto& p = s.params;
    const auto vel = velocities_at_scalar_time(s);
    double e = 0.0;
    for (std::size_t c = 0; c < s.dI.size(); ++c)
        e += p.b * s.dP[c] * s.dP[c] / p.P0 + std::abs(p.d) * s.dI[c] * s.dI[c] / p.I0;
    for (int j = 0; j < s.ny; ++j)
        for (int i = 0; i < s.nx; ++i) {
            const auto f = s.xface(i, j);
            e += p.I0 * vel.vx[f] * vel.vx[f] + p.P0 * vel.ux[f] * vel.ux[f];
        }
    if (s.config.lateral == LateralBoundary::wall)
        for (int j = 0; j < s.ny; ++j) {
            const auto f = s.xface(s.nx, j);
            e += p.I0 * vel.vx[f] * vel.vx[f] + p.P0 * vel.ux[f] * vel.ux[f];
        }
    for (std::size_t f = 0; f < vel.vy.size(); ++f) e += p.I0 * vel.vy[f] * vel.vy[f] + p.P0 * vel.uy[f] * vel.uy[f];
    return e * s.dx * s.dy;
}

} // namespace riskwave
