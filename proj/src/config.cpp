#include "riskwave/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

namespace riskwave {

const char* to_string(ModeKind k) {
    switch (k) {
    case ModeKind::compressible: return "compressible";
    case ModeKind::incompressible: return "incompressible";
    case ModeKind::simplest: return "simplest";
    }
    return "?";
}

const char* to_string(TrajectoryMethod m) { return m == TrajectoryMethod::closed_form ? "closed-form" : "integrate"; }

const char* to_string(SimInit s) { return s == SimInit::zero ? "zero" : "mode"; }

namespace {

std::string join_issues(const std::vector<ConfigIssue>& issues) {
    std::string s;
    for (const auto& i : issues) {
        if (!s.empty()) s += '\n';
        s += i.line > 0 ? "line " + std::to_string(i.line) + ": " + i.message : i.message;
    }
    return s;
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

struct BadValue {
    std::string message;
};

double parse_double(const std::string& s) {
    double v = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    if (first != last && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (s.empty() || ec != std::errc{} || ptr != last) throw BadValue{"expected a number, got '" + s + "'"};
    return v;
}

long parse_long(const std::string& s) {
    long v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
        throw BadValue{"expected an integer, got '" + s + "'"};
    return v;
}

template <class E>
E parse_enum(const std::string& s, std::initializer_list<E> options) {
    std::string allowed;
    for (E e : options) {
        if (s == to_string(e)) return e;
        allowed += (allowed.empty() ? "" : ", ") + std::string(to_string(e));
    }
    throw BadValue{"expected one of " + allowed + ", got '" + s + "'"};
}

bool parse_bool(const std::string& s) {
    if (s == "true" || s == "on" || s == "yes") return true;
    if (s == "false" || s == "off" || s == "no") return false;
    throw BadValue{"expected true or false, got '" + s + "'"};
}

// "x y; x y; ..."
std::vector<Vec2> parse_points(const std::string& s) {
    std::vector<Vec2> out;
    std::istringstream is(s);
    std::string item;
    while (std::getline(is, item, ';')) {
        item = trim(item);
        if (item.empty()) continue;
        std::istringstream ps(item);
        std::string a, b, extra;
        ps >> a >> b;
        if (a.empty() || b.empty() || (ps >> extra)) throw BadValue{"expected 'x y' pairs separated by ';'"};
        out.push_back({parse_double(a), parse_double(b)});
    }
    return out;
}

std::string render_points(const std::vector<Vec2>& pts) {
    std::string s;
    for (const auto& p : pts) s += (s.empty() ? "" : "; ") + num(p.x) + " " + num(p.y);
    return s;
}

struct Key {
    const char* section;
    const char* name;
    std::function<void(RunConfig&, const std::string&)> parse;
    std::function<std::string(const RunConfig&)> render;
};


template <class S, class T>
Key field(const char* sec, const char* name, S RunConfig::*section, T S::*member) {
    Key k{sec, name, {}, {}};
    if constexpr (std::is_same_v<T, double>) {
        k.parse = [=](RunConfig& c, const std::string& v) { (c.*section).*member = parse_double(v); };
        k.render = [=](const RunConfig& c) { return num((c.*section).*member); };
    } else if constexpr (std::is_same_v<T, int>) {
        k.parse = [=](RunConfig& c, const std::string& v) {
            const long n = parse_long(v);
            if (n < 1 || n > 1'000'000) throw BadValue{"expected an integer in [1, 1000000]"};
            (c.*section).*member = static_cast<int>(n);
        };
        k.render = [=](const RunConfig& c) { return std::to_string((c.*section).*member); };
    } else if constexpr (std::is_same_v<T, std::size_t>) {
        k.parse = [=](RunConfig& c, const std::string& v) {
            const long n = parse_long(v);
            if (n < 1) throw BadValue{"expected a positive integer"};
            (c.*section).*member = static_cast<std::size_t>(n);
        };
        k.render = [=](const RunConfig& c) { return std::to_string((c.*section).*member); };
    } else if constexpr (std::is_same_v<T, bool>) {
        k.parse = [=](RunConfig& c, const std::string& v) { (c.*section).*member = parse_bool(v); };
        k.render = [=](const RunConfig& c) { return std::string((c.*section).*member ? "true" : "false"); };
    } else if constexpr (std::is_same_v<T, std::string>) {
        k.parse = [=](RunConfig& c, const std::string& v) { (c.*section).*member = v; };
        k.render = [=](const RunConfig& c) { return (c.*section).*member; };
    } else if constexpr (std::is_same_v<T, std::vector<Vec2>>) {
        k.parse = [=](RunConfig& c, const std::string& v) { (c.*section).*member = parse_points(v); };
        k.render = [=](const RunConfig& c) { return render_points((c.*section).*member); };
    } else {
        k.render = [=](const RunConfig& c) { return std::string(to_string((c.*section).*member)); };
        if constexpr (std::is_same_v<T, ModeKind>)
            k.parse = [=](RunConfig& c, const std::string& v) {
                (c.*section).*member =
                    parse_enum(v, {ModeKind::compressible, ModeKind::incompressible, ModeKind::simplest});
            };
        else if constexpr (std::is_same_v<T, WeightPolicy>)
            k.parse = [=](RunConfig& c, const std::string& v) {
                (c.*section).*member = parse_enum(v, {WeightPolicy::minimal_norm, WeightPolicy::pin_secondary_zero});
            };
        else if constexpr (std::is_same_v<T, TrajectoryMethod>)
            k.parse = [=](RunConfig& c, const std::string& v) {
                (c.*section).*member = parse_enum(v, {TrajectoryMethod::closed_form, TrajectoryMethod::integrate});
            };
        else if constexpr (std::is_same_v<T, LateralBoundary>)
            k.parse = [=](RunConfig& c, const std::string& v) {
                (c.*section).*member = parse_enum(v, {LateralBoundary::periodic, LateralBoundary::wall});
            };
        else if constexpr (std::is_same_v<T, SimInit>)
            k.parse = [=](RunConfig& c, const std::string& v) {
                (c.*section).*member = parse_enum(v, {SimInit::zero, SimInit::mode});
            };
        else if constexpr (std::is_same_v<T, Deposition>)
            k.parse = [=](RunConfig& c, const std::string& v) {
                (c.*section).*member = parse_enum(v, {Deposition::nearest_cell, Deposition::bilinear});
            };
    }
    return k;
}

Key model_real(const char* name, double ModelParams::*m) { return field("model", name, &RunConfig::model, m); }

Key model_vec(const char* name, Vec2 ModelParams::*v, double Vec2::*c) {
    return {"model", name, [=](RunConfig& cfg, const std::string& s) { (cfg.model.*v).*c = parse_double(s); },
            [=](const RunConfig& cfg) { return num((cfg.model.*v).*c); }};
}

const std::vector<Key>& schema() {
    static const std::vector<Key> keys = {
        model_real("a1", &ModelParams::a1),
        model_real("a2", &ModelParams::a2),
        model_real("b", &ModelParams::b),
        model_real("d", &ModelParams::d),
        model_vec("g_x", &ModelParams::g, &Vec2::x),
        model_vec("g_y", &ModelParams::g, &Vec2::y),
        model_vec("h_x", &ModelParams::h, &Vec2::x),
        model_vec("h_y", &ModelParams::h, &Vec2::y),
        model_real("I0", &ModelParams::I0),
        model_real("P0", &ModelParams::P0),
        model_real("X", &ModelParams::X),
        model_real("Y", &ModelParams::Y),

        field("mode", "kind", &RunConfig::mode, &ModeSection::kind),
        field("mode", "omega", &RunConfig::mode, &ModeSection::omega),
        field("mode", "k", &RunConfig::mode, &ModeSection::k),
        field("mode", "amplitude", &RunConfig::mode, &ModeSection::amplitude),
        field("mode", "policy", &RunConfig::mode, &ModeSection::policy),
        field("mode", "tol", &RunConfig::mode, &ModeSection::tol),

        field("sweep", "k_min", &RunConfig::sweep, &SweepSection::k_min),
        field("sweep", "k_max", &RunConfig::sweep, &SweepSection::k_max),
        field("sweep", "k_count", &RunConfig::sweep, &SweepSection::k_count),
        field("sweep", "t_min", &RunConfig::sweep, &SweepSection::t_min),
        field("sweep", "t_max", &RunConfig::sweep, &SweepSection::t_max),
        field("sweep", "t_count", &RunConfig::sweep, &SweepSection::t_count),

        field("grid", "nx", &RunConfig::grid, &GridSection::nx),
        field("grid", "ny", &RunConfig::grid, &GridSection::ny),

        field("field", "t", &RunConfig::field, &FieldSection::t),

        field("trajectory", "x0", &RunConfig::trajectory, &TrajectorySection::x0),
        field("trajectory", "y0", &RunConfig::trajectory, &TrajectorySection::y0),
        field("trajectory", "method", &RunConfig::trajectory, &TrajectorySection::method),

        field("simulate", "dt", &RunConfig::simulate, &SimulateSection::dt),
        field("simulate", "periods", &RunConfig::simulate, &SimulateSection::periods),
        field("simulate", "lateral", &RunConfig::simulate, &SimulateSection::lateral),
        field("simulate", "init", &RunConfig::simulate, &SimulateSection::init),
        field("simulate", "forcing", &RunConfig::simulate, &SimulateSection::forcing),
        field("simulate", "cadence", &RunConfig::simulate, &SimulateSection::cadence),
        field("simulate", "probes", &RunConfig::simulate, &SimulateSection::probes),

        field("kinetic", "particles", &RunConfig::kinetic, &KineticSection::particles),
        field("kinetic", "variable", &RunConfig::kinetic, &KineticSection::variable),
        field("kinetic", "deposition", &RunConfig::kinetic, &KineticSection::deposition),
        field("kinetic", "floor", &RunConfig::kinetic, &KineticSection::floor),
    };
    return keys;
}

bool known_section(const std::string& s) {
    for (const auto& k : schema())
        if (s == k.section) return true;
    return false;
}

const char* constraint_key(Constraint c) {
    switch (c) {
    case Constraint::a1_positive: return "model.a1";
    case Constraint::a2_negative: return "model.a2";
    case Constraint::b_positive: return "model.b";
    case Constraint::d_negative: return "model.d";
    case Constraint::g_x_positive: return "model.g_x";
    case Constraint::g_y_positive: return "model.g_y";
    case Constraint::h_x_positive: return "model.h_x";
    case Constraint::h_y_positive: return "model.h_y";
    case Constraint::I0_positive: return "model.I0";
    case Constraint::P0_positive: return "model.P0";
    case Constraint::X_positive: return "model.X";
    case Constraint::Y_positive: return "model.Y";
    case Constraint::boundary_identity: return "model.h_y";
    case Constraint::secure_profits_positive: return "model.b";
    case Constraint::finite: return "";
    }
    return "";
}

void check_sections(const RunConfig& c, std::vector<ConfigIssue>& issues) {
    auto need = [&](bool ok, const char* key, const std::string& msg) {
        if (!ok) issues.push_back({c.line_of(key), ErrorCode::config_syntax, std::string(key) + ": " + msg});
    };
    const auto finite = [](double v) { return std::isfinite(v); };
    need(finite(c.mode.omega) && c.mode.omega >= 0.0, "mode.omega", "must be finite and >= 0");
    need(finite(c.mode.k) && c.mode.k > 0.0, "mode.k", "must be finite and > 0");
    need(finite(c.mode.amplitude), "mode.amplitude", "must be finite");
    need(finite(c.mode.tol) && c.mode.tol > 0.0, "mode.tol", "must be finite and > 0");
    need(finite(c.sweep.k_min) && c.sweep.k_min > 0.0, "sweep.k_min", "must be finite and > 0");
    need(finite(c.sweep.k_max) && c.sweep.k_max >= c.sweep.k_min, "sweep.k_max", "must be finite and >= k_min");
    need(finite(c.sweep.t_min), "sweep.t_min", "must be finite");
    need(finite(c.sweep.t_max) && c.sweep.t_max >= c.sweep.t_min, "sweep.t_max", "must be finite and >= t_min");
    need(finite(c.field.t), "field.t", "must be finite");
    need(finite(c.trajectory.x0) && finite(c.trajectory.y0), "trajectory.x0", "start point must be finite");
    need(finite(c.simulate.dt) && c.simulate.dt >= 0.0, "simulate.dt", "must be finite and >= 0");
    need(finite(c.simulate.periods) && c.simulate.periods > 0.0, "simulate.periods", "must be finite and > 0");
    need(finite(c.kinetic.floor) && c.kinetic.floor >= 0.0, "kinetic.floor", "must be finite and >= 0");
    for (const auto& p : c.simulate.probes) need(finite(p.x) && finite(p.y), "simulate.probes", "must be finite");
}

} // namespace

bool RunConfig::operator==(const RunConfig& o) const {
    return model == o.model && mode == o.mode && sweep == o.sweep && grid == o.grid && field == o.field &&
           trajectory == o.trajectory && simulate == o.simulate && kinetic == o.kinetic;
}

int RunConfig::line_of(const std::string& key) const {
    auto it = lines.find(key);
    return it == lines.end() ? 0 : it->second;
}

ConfigError::ConfigError(std::vector<ConfigIssue> issues)
    : Error(issues.empty() ? ErrorCode::config_syntax : issues.front().code, join_issues(issues)),
      issues_(std::move(issues)) {}

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    std::vector<ConfigIssue> issues;
    std::istringstream in(text);
    std::string raw, section;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const std::string line = trim(raw);
        if (line.empty() || line[0] == '#' || line[0] == ';') continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                issues.push_back({lineno, ErrorCode::config_syntax, "unterminated section header"});
                continue;
            }
            section = trim(line.substr(1, line.size() - 2));
            if (!known_section(section))
                issues.push_back({lineno, ErrorCode::config_unknown_key, "unknown section [" + section + "]"});
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            issues.push_back({lineno, ErrorCode::config_syntax, "expected key = value"});
            continue;
        }
        const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
        if (key.empty()) {
            issues.push_back({lineno, ErrorCode::config_syntax, "missing key before '='"});
            continue;
        }
        if (section.empty()) {
            issues.push_back({lineno, ErrorCode::config_syntax, "key '" + key + "' outside any [section]"});
            continue;
        }
        if (!known_section(section)) continue;
        const auto& keys = schema();
        auto it = std::find_if(keys.begin(), keys.end(),
                               [&](const Key& k) { return section == k.section && key == k.name; });
        if (it == keys.end()) {
            issues.push_back({lineno, ErrorCode::config_unknown_key, "unknown key '" + key + "' in [" + section + "]"});
            continue;
        }
        const std::string full = section + "." + key;
        if (cfg.lines.count(full)) {
            issues.push_back({lineno, ErrorCode::config_syntax,
                              "duplicate key '" + key + "' (first set on line " + std::to_string(cfg.lines[full]) + ")"});
            continue;
        }
        cfg.lines[full] = lineno;
        try {
            it->parse(cfg, value);
        } catch (const BadValue& e) {
            issues.push_back({lineno, ErrorCode::config_syntax, full + ": " + e.message});
        }
    }

    if (issues.empty()) {
        check_sections(cfg, issues);
        const auto report = validate_params(cfg.model);
        for (const auto& v : report.violations) {
            if (v.constraint == Constraint::secure_profits_positive) continue;
            issues.push_back({cfg.line_of(constraint_key(v.constraint)), ErrorCode::constraint_violation, v.message});
        }
    }
    if (!issues.empty()) {
        std::stable_sort(issues.begin(), issues.end(),
                         [](const ConfigIssue& a, const ConfigIssue& b) { return a.line < b.line; });
        throw ConfigError(std::move(issues));
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::io, "cannot read config '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

void require_secure_profits(const RunConfig& cfg) {
    const auto report = validate_params(cfg.model);
    for (const auto& v : report.violations)
        if (v.constraint == Constraint::secure_profits_positive)
        {
            const int line = cfg.line_of("model.b");
            throw ConfigError({{line, ErrorCode::constraint_violation,
                                line > 0 ? v.message : v.message + "; b is not set, default used"}});
        }
}

std::string render_config(const RunConfig& cfg) {
    std::string out, section;
    for (const auto& k : schema()) {
        if (section != k.section) {
            section = k.section;
            out += (out.empty() ? "[" : "\n[") + section + "]\n";
        }
        out += std::string(k.name) + " = " + k.render(cfg) + "\n";
    }
    return out;
}

} // namespace riskwave
