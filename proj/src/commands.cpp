#include "riskwave/commands.hpp"

#include "riskwave/csv.hpp"
#include "riskwave/fdsim.hpp"
#include "riskwave/kinetic.hpp"
#include "riskwave/quartic.hpp"
#include "riskwave/version.hpp"
#include "riskwave/wavefield.hpp"

#include <json.hpp>

#include <cmath>
#include <filesystem>

namespace riskwave {

namespace fs = std::filesystem;
using nlohmann::json;

const char* to_string(Command c) {
    switch (c) {
    case Command::validate: return "validate";
    case Command::steady: return "steady";
    case Command::dispersion: return "dispersion";
    case Command::modes: return "modes";
    case Command::field: return "field";
    case Command::aggregate: return "aggregate";
    case Command::trajectory: return "trajectory";
    case Command::simulate: return "simulate";
    case Command::kinetic: return "kinetic";
    }
    return "?";
}

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names = {"validate", "steady",     "dispersion", "modes",  "field",
                                                   "aggregate", "trajectory", "simulate",   "kinetic"};
    return names;
}

std::optional<Command> parse_command(const std::string& name) {
    for (int i = 0; i <= static_cast<int>(Command::kinetic); ++i)
        if (name == to_string(static_cast<Command>(i))) return static_cast<Command>(i);
    return std::nullopt;
}

int exit_code(ErrorCode code) {
    switch (code) {
    case ErrorCode::degenerate_leading_coefficient:
    case ErrorCode::invalid_roots:
    case ErrorCode::infeasible_constraints:
    case ErrorCode::instability:
        return 3;
    case ErrorCode::io:
        return 4;
    default:
        return 2;
    }
}

WaveMode build_mode(const RunConfig& cfg) {
    const auto& m = cfg.mode;
    switch (m.kind) {
    case ModeKind::incompressible: return incompressible_wave_mode(cfg.model, m.k);
    case ModeKind::simplest: return simplest_mode(cfg.model, m.omega, m.k);
    case ModeKind::compressible: break;
    }
    return compressible_mode(cfg.model, m.omega, m.k, m.policy, m.tol);
}

namespace {

json params_json(const ModelParams& p) {
    return {{"a1", p.a1}, {"a2", p.a2}, {"b", p.b},     {"d", p.d},   {"g_x", p.g.x}, {"g_y", p.g.y},
            {"h_x", p.h.x}, {"h_y", p.h.y}, {"I0", p.I0}, {"P0", p.P0}, {"X", p.X},     {"Y", p.Y}};
}

json corners_json(const CornerValues& c) {
    return {{"I_secure", c.I_secure}, {"P_secure", c.P_secure}, {"I_risky", c.I_risky}, {"P_risky", c.P_risky}};
}

json mode_json(const WaveMode& m) {
    json comps = json::array();
    for (const auto& c : m.profile.components) {
        const char* kind = c.kind == ComponentKind::exponential ? "exp" : c.kind == ComponentKind::cosine ? "cos" : "sin";
        comps.push_back({{"kind", kind}, {"rate", c.rate}, {"freq", c.freq}, {"weight", c.weight}});
    }
    return {{"omega", m.omega},
            {"k", m.k},
            {"regime", to_string(m.regime())},
            {"target_slope", m.profile.target_slope},
            {"components", comps}};
}

class Writer {
public:
    Writer(const RunConfig& cfg, Command cmd, const RunOptions& opt) : cfg_(cfg), cmd_(cmd), dir_(opt.out_dir) {
        std::error_code ec;
        fs::create_directories(dir_, ec);
        if (ec || !fs::is_directory(dir_)) throw Error(ErrorCode::io, "cannot create output directory '" + dir_ + "'");
    }

    void emit(const std::string& name, const Table& table, json extra = json::object()) {
        const fs::path csv = fs::path(dir_) / (name + ".csv");
        emit_csv(table, csv.string());

        json meta = {{"tool", "riskwave"},
                     {"version", version},
                     {"command", to_string(cmd_)},
                     {"file", name + ".csv"},
                     {"columns", table.columns},
                     {"rows", table.rows.size()},
                     {"params", params_json(cfg_.model)},
                     {"policy", to_string(cfg_.mode.policy)},
                     {"tolerance", cfg_.mode.tol},
                     {"seed", nullptr},
                     {"config", render_config(cfg_)}};
        for (auto& [k, v] : extra.items()) meta[k] = v;
        write_file_atomic((fs::path(dir_) / (name + ".meta.json")).string(), meta.dump(2) + "\n");
        result.files.push_back(csv.string());
    }

    RunResult result;

private:
    const RunConfig& cfg_;
    Command cmd_;
    std::string dir_;
};

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v;
    v.reserve(n);
    for (int i = 0; i < n; ++i) v.push_back(n == 1 ? lo : lo + (hi - lo) * i / (n - 1));
    return v;
}

const char* constraint_name(Constraint c) {
    switch (c) {
    case Constraint::finite: return "finite";
    case Constraint::a1_positive: return "a1 > 0";
    case Constraint::a2_negative: return "a2 < 0";
    case Constraint::b_positive: return "b > 0";
    case Constraint::d_negative: return "d < 0";
    case Constraint::g_x_positive: return "g_x > 0";
    case Constraint::g_y_positive: return "g_y > 0";
    case Constraint::h_x_positive: return "h_x > 0";
    case Constraint::h_y_positive: return "h_y > 0";
    case Constraint::I0_positive: return "I0 > 0";
    case Constraint::P0_positive: return "P0 > 0";
    case Constraint::X_positive: return "X > 0";
    case Constraint::Y_positive: return "Y > 0";
    case Constraint::boundary_identity: return "I0^2 h_y = P0^2 g_y";
    case Constraint::secure_profits_positive: return "b > g_x X + g_y Y";
    }
    return "?";
}

void run_validate(const RunConfig& cfg, Writer& w) {
    const auto report = validate_params(cfg.model);
    Table t{{"constraint", "satisfied", "detail"}, {}};
    for (int i = 0; i <= static_cast<int>(Constraint::secure_profits_positive); ++i) {
        const auto c = static_cast<Constraint>(i);
        std::string detail;
        for (const auto& v : report.violations)
            if (v.constraint == c) detail = v.message;
        t.add({std::string(constraint_name(c)), static_cast<long>(detail.empty()), detail});
    }
    json extra = {{"valid", report.ok()}, {"valid_for_waves", report.ok_for_waves()}};
    if (report.ok()) {
        const auto cv = corner_values(cfg.model);
        extra["corners"] = corners_json(cv);
    }
    w.emit("validation", t, extra);
    require_secure_profits(cfg);
}

void run_steady(const RunConfig& cfg, Writer& w) {
    require_secure_profits(cfg);
    const auto& p = cfg.model;
    const int nx = std::max(cfg.grid.nx, 2), ny = std::max(cfg.grid.ny, 2);
    Table t{{"x", "y", "I", "P"}, {}};
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            const double x = p.X * i / (nx - 1), y = p.Y * j / (ny - 1);
            const auto s = steady_fields(p, x, y);
            t.add({x, y, s.I, s.P});
        }
    const auto cv = corner_values(p);
    const auto g = steady_gradient(p);
    w.emit("steady", t,
           {{"corners", corners_json(cv)},
            {"gradient", {{"I_x", g.dI.x}, {"I_y", g.dI.y}, {"P_x", g.dP.x}, {"P_y", g.dP.y}}}});
}

void run_dispersion(const RunConfig& cfg, Writer& w) {
    Table t{{"k", "omega", "c", "kappa"}, {}};
    for (double k : linspace(cfg.sweep.k_min, cfg.sweep.k_max, cfg.sweep.k_count)) {
        const auto m = incompressible_mode(cfg.model, k);
        t.add({k, m.omega, m.c, m.kappa});
    }
    w.emit("dispersion", t, {{"relation", "omega^2 = (a1 d / (a2 b)) g_y k, c = omega / (2 k)"}});
}

void run_modes(const RunConfig& cfg, Writer& w) {
    const auto mode = build_mode(cfg);
    const auto dq = quartic_coefficients(cfg.model, mode.omega, mode.k);
    Table roots{{"index", "re", "im", "scaled_residual", "regime"}, {}};
    for (std::size_t i = 0; i < mode.roots.size(); ++i)
        roots.add({static_cast<long>(i), mode.roots[i].real(), mode.roots[i].imag(),
                   scaled_residual(dq.coeffs, mode.roots[i]), std::string(to_string(mode.regime()))});
    const json coeffs = {{"q4", dq.coeffs.q4}, {"q3", dq.coeffs.q3}, {"q2", dq.coeffs.q2},
                         {"q1", dq.coeffs.q1}, {"q0", dq.coeffs.q0}};
    w.emit("modes", roots,
           {{"quartic", coeffs}, {"sign_pattern_holds", dq.sign_pattern_holds}, {"mode", mode_json(mode)},
            {"near_degenerate", mode.profile.near_degenerate}, {"repeated_split", mode.profile.repeated_split}});

    const auto growth = inward_growth_rates(mode);
    Table prof{{"component", "kind", "rate", "freq", "weight", "grows_inward"}, {}};
    for (std::size_t i = 0; i < mode.profile.components.size(); ++i) {
        const auto& c = mode.profile.components[i];
        const char* kind = c.kind == ComponentKind::exponential ? "exp" : c.kind == ComponentKind::cosine ? "cos" : "sin";
        prof.add({static_cast<long>(i), std::string(kind), c.rate, c.freq, c.weight,
                  static_cast<long>(c.weight != 0.0 && c.rate < 0.0)});
    }
    w.emit("profile", prof,
           {{"amplifying", growth.amplifying}, {"constraint_residual", mode.profile.constraint_residual()}});
}

void run_field(const RunConfig& cfg, Writer& w) {
    const auto mode = build_mode(cfg);
    const auto& p = cfg.model;
    const double A = cfg.mode.amplitude, t = cfg.field.t;
    const auto snap = field_snapshot(mode, p, A, t, std::max(cfg.grid.nx, 2), std::max(cfg.grid.ny, 2));
    Table f{{"t", "x", "y", "I", "P", "vx", "vy", "ux", "uy"}, {}};
    for (const auto& q : snap.points) f.add({snap.t, q.x, q.y, q.I, q.P, q.v.x, q.v.y, q.u.x, q.u.y});
    w.emit("field", f, {{"mode", mode_json(mode)}, {"amplitude", A}});

    Table b{{"t", "x", "zeta"}, {}};
    const int nx = std::max(cfg.grid.nx, 2);
    for (int i = 0; i < nx; ++i) {
        const double x = p.X * i / (nx - 1);
        b.add({t, x, boundary_shape(mode, p, A, t, x)});
    }
    const auto forms = border_amplitude_forms(mode, p, A);
    w.emit("border", b,
           {{"mode", mode_json(mode)},
            {"amplitude", A},
            {"border_amplitude",
             {{"canonical", forms.canonical}, {"omega_over_gy", forms.omega_over_gy},
              {"sqrt_form", forms.sqrt_form}, {"coupling_form", forms.coupling_form}}}});
}

void run_aggregate(const RunConfig& cfg, Writer& w) {
    const auto mode = build_mode(cfg);
    Table t{{"t", "value"}, {}};
    for (double tt : linspace(cfg.sweep.t_min, cfg.sweep.t_max, cfg.sweep.t_count))
        t.add({tt, aggregate_investment(mode, cfg.model, cfg.mode.amplitude, tt)});
    w.emit("aggregate", t,
           {{"mode", mode_json(mode)}, {"amplitude", cfg.mode.amplitude}, {"sign_deviations", {aggregate_sign_note}}});
}

void run_trajectory(const RunConfig& cfg, Writer& w) {
    const auto mode = build_mode(cfg);
    const auto ts = linspace(cfg.sweep.t_min, cfg.sweep.t_max, cfg.sweep.t_count);
    const double A = cfg.mode.amplitude;
    const Vec2 start{cfg.trajectory.x0, cfg.trajectory.y0};
    const auto pts = cfg.trajectory.method == TrajectoryMethod::closed_form
                         ? circulation_trajectory(mode, cfg.model, A, start.x, start.y, ts)
                         : integrate_trajectory(mode, cfg.model, A, start, ts);
    Table t{{"t", "x", "y"}, {}};
    for (std::size_t i = 0; i < ts.size(); ++i) t.add({ts[i], pts[i].x, pts[i].y});
    w.emit("trajectory", t,
           {{"mode", mode_json(mode)}, {"amplitude", A}, {"method", to_string(cfg.trajectory.method)}});
}

void run_simulate(const RunConfig& cfg, Writer& w) {
    require_secure_profits(cfg);
    const auto& p = cfg.model;
    const auto& sim = cfg.simulate;
    const auto mode = build_mode(cfg);
    if (!(mode.omega > 0.0))
        throw ConfigError({{cfg.line_of("mode.omega"), ErrorCode::invalid_argument,
                            "simulate needs omega > 0 to define the run length in periods"}});
    const double A = cfg.mode.amplitude;
    const double duration = sim.periods * 2.0 * M_PI / mode.omega;

    SimConfig sc;
    sc.nx = cfg.grid.nx;
    sc.ny = cfg.grid.ny;
    sc.lateral = sim.lateral;
    sc.total_time = duration;
    if (sim.dt > 0.0) {
        sc.dt = sim.dt;
    } else {
        const double bound = cfl_bound(p, sc.nx, sc.ny);
        sc.dt = duration / std::ceil(duration / bound);
    }
    if (sim.forcing) sc.forcing = Forcing{mode, A};
    std::optional<AnalyticInit> init;
    if (sim.init == SimInit::mode) init = AnalyticInit{mode, A};

    std::vector<Vec2> probes = sim.probes;
    if (probes.empty()) probes = {{0.5 * p.X, p.Y}, {0.5 * p.X, 0.5 * p.Y}};
    auto warnings = sim_warnings(p, sc);
    const auto run = run_and_probe(init_sim(p, sc, init), probes, sim.cadence);

    Table series{{"t"}, {}};
    for (std::size_t k = 0; k < probes.size(); ++k)
        for (const char* f : {"dI", "dP", "vx", "vy", "ux", "uy"})
            series.columns.push_back("p" + std::to_string(k) + "_" + f);
    series.columns.push_back("border_integral");
    for (std::size_t n = 0; n < run.times.size(); ++n) {
        std::vector<Cell> row{run.times[n]};
        for (const auto& q : run.samples[n])
            for (double v : {q.dI, q.dP, q.v.x, q.v.y, q.u.x, q.u.y}) row.emplace_back(v);
        row.emplace_back(run.border_integral[n]);
        series.add(std::move(row));
    }

    json probe_list = json::array();
    for (const auto& q : probes) probe_list.push_back({q.x, q.y});
    const json conventions = {{"lateral", to_string(sim.lateral)},
                              {"bottom", "zero normal velocity at y = 0"},
                              {"top", sim.forcing ? "v_y = u_y = border velocity of the mode at y = Y"
                                                  : "v_y = u_y = 0 at y = Y"},
                              {"linearization", "perturbations about the steady state, advection dropped"}};
    const json run_info = {{"dt", sc.dt},
                           {"steps", run.final_state.steps},
                           {"cfl_bound", cfl_bound(p, sc.nx, sc.ny)},
                           {"nx", sc.nx},
                           {"ny", sc.ny},
                           {"init", to_string(sim.init)},
                           {"forcing", sim.forcing},
                           {"amplitude", A},
                           {"probes", probe_list}};
    w.emit("probes", series,
           {{"mode", mode_json(mode)}, {"conventions", conventions}, {"run", run_info}, {"warnings", warnings}});

    const auto& s = run.final_state;
    const auto vel = velocities_at_scalar_time(s);
    Table state{{"t", "x", "y", "I", "P", "vx", "vy", "ux", "uy"}, {}};
    for (int j = 0; j < s.ny; ++j)
        for (int i = 0; i < s.nx; ++i) {
            const Vec2 c{(i + 0.5) * s.dx, (j + 0.5) * s.dy};
            const auto q = probe(s, vel, c);
            const auto st = steady_profile(p, c.x, c.y);
            state.add({s.t, c.x, c.y, st.I + q.dI, st.P + q.dP, q.v.x, q.v.y, q.u.x, q.u.y});
        }
    w.emit("state", state, {{"mode", mode_json(mode)}, {"conventions", conventions}, {"run", run_info}});
    w.result.warnings = std::move(warnings);
}

void run_kinetic(const RunConfig& cfg, const RunOptions& opt, Writer& w) {
    const auto& k = cfg.kinetic;
    if (k.particles.empty())
        throw ConfigError({{cfg.line_of("kinetic.particles"), ErrorCode::invalid_argument,
                            "kinetic needs [kinetic] particles = <csv path>"}});
    fs::path src(k.particles);
    if (src.is_relative()) src = fs::path(opt.base_dir) / src;
    const auto particles = read_particles_csv(src.string());
    const GridSpec grid{cfg.grid.nx, cfg.grid.ny, cfg.model.X, cfg.model.Y};
    const auto fields = deposit_fields(particles, grid, k.variable - 1, k.deposition);
    const auto vel = field_velocity(fields.density, fields.impulse,
                                    k.floor > 0.0 ? std::optional<double>(k.floor) : std::nullopt);

    Table t{{"i", "j", "x", "y", "density", "impulse_x", "impulse_y", "vx", "vy"}, {}};
    double total = 0.0;
    for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i) {
            const auto c = fields.density.center(i, j);
            const auto& v = vel.at(i, j);
            total += fields.density.at(i, j);
            t.add({static_cast<long>(i), static_cast<long>(j), c.x, c.y, fields.density.at(i, j),
                   fields.impulse.at(i, j).x, fields.impulse.at(i, j).y, v ? Cell{v->x} : Cell{},
                   v ? Cell{v->y} : Cell{}});
        }
    double exact = 0.0;
    for (const auto& p : particles) exact += p.values[k.variable - 1];
    w.emit("kinetic", t,
           {{"particles", src.string()},
            {"particle_count", particles.size()},
            {"variable", "u" + std::to_string(k.variable)},
            {"deposition", to_string(k.deposition)},
            {"total_value", exact},
            {"grid_total", total},
            {"notes", {"extensive values are deposited as given (already netted)",
                       "empty vx, vy: density below the floor, velocity undefined"}}});
}

} // namespace

RunResult execute(const RunConfig& base, Command command, const RunOptions& opt) {
    RunConfig cfg = base;
    if (opt.policy) cfg.mode.policy = *opt.policy;
    if (opt.tol) {
        if (!(*opt.tol > 0.0) || !std::isfinite(*opt.tol))
            throw Error(ErrorCode::invalid_argument, "--tol must be positive and finite");
        cfg.mode.tol = *opt.tol;
    }
    Writer w(cfg, command, opt);
    switch (command) {
    case Command::validate: run_validate(cfg, w); break;
    case Command::steady: run_steady(cfg, w); break;
    case Command::dispersion: run_dispersion(cfg, w); break;
    case Command::modes: run_modes(cfg, w); break;
    case Command::field: run_field(cfg, w); break;
    case Command::aggregate: run_aggregate(cfg, w); break;
    case Command::trajectory: run_trajectory(cfg, w); break;
    case Command::simulate: run_simulate(cfg, w); break;
    case Command::kinetic: run_kinetic(cfg, opt, w); break;
    }
    return std::move(w.result);
}

} // namespace riskwave
