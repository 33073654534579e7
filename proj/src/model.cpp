#include "riskwave/model.hpp"

#include "riskwave/error.hpp"

#include <cmath>
#include <sstream>

namespace riskwave {

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

void check_sign(ValidationReport& r, Constraint c, const char* name, double value, bool positive,
                const char* note = nullptr) {
    const bool ok = positive ? value > 0.0 : value < 0.0;
    if (ok) return;
    std::string msg = std::string(name) + (positive ? " > 0" : " < 0") + " (" + name + " = " + fmt(value) + ")";
    if (note) msg += "; " + std::string(note);
    r.violations.push_back({c, std::move(msg)});
}

bool all_finite(const ModelParams& p) {
    for (double v : {p.a1, p.a2, p.b, p.d, p.g.x, p.g.y, p.h.x, p.h.y, p.I0, p.P0, p.X, p.Y})
        if (!std::isfinite(v)) return false;
    return true;
}

} // namespace

bool ValidationReport::ok_for_waves() const {
    for (const auto& v : violations)
        if (v.constraint != Constraint::secure_profits_positive) return false;
    return true;
}

bool ValidationReport::violates(Constraint c) const {
    for (const auto& v : violations)
        if (v.constraint == c) return true;
    return false;
}

std::string ValidationReport::summary() const {
    if (ok()) return "ok";
    std::string s;
    for (const auto& v : violations) {
        if (!s.empty()) s += "; ";
        s += v.message;
    }
    return s;
}

ValidationReport validate_params(const ModelParams& p) {
    ValidationReport r;
    if (!all_finite(p)) {
        r.violations.push_back({Constraint::finite, "all parameters finite"});
        return r;
    }
    // Signs of the acceleration components are not stated explicitly; they are
    // inferred from the requirement that risk increases Profits.
    static constexpr const char* inferred = "inferred from 'risks increase Profits' monotonicity";
    check_sign(r, Constraint::a1_positive, "a1", p.a1, true);
    check_sign(r, Constraint::a2_negative, "a2", p.a2, false);
    check_sign(r, Constraint::b_positive, "b", p.b, true);
    check_sign(r, Constraint::d_negative, "d", p.d, false);
    check_sign(r, Constraint::g_x_positive, "g_x", p.g.x, true, inferred);
    check_sign(r, Constraint::g_y_positive, "g_y", p.g.y, true, inferred);
    check_sign(r, Constraint::h_x_positive, "h_x", p.h.x, true, inferred);
    check_sign(r, Constraint::h_y_positive, "h_y", p.h.y, true, inferred);
    check_sign(r, Constraint::I0_positive, "I0", p.I0, true);
    check_sign(r, Constraint::P0_positive, "P0", p.P0, true);
    check_sign(r, Constraint::X_positive, "X", p.X, true);
    check_sign(r, Constraint::Y_positive, "Y", p.Y, true);

    const double lhs = p.I0 * p.I0 * p.h.y;
    const double rhs = p.P0 * p.P0 * p.g.y;
    const double scale = std::max(std::abs(lhs), std::abs(rhs));
    if (std::abs(lhs - rhs) > boundary_identity_rtol * scale || (scale == 0.0 && lhs != rhs)) {
        r.violations.push_back({Constraint::boundary_identity,
                                "I0^2 h_y = P0^2 g_y (" + fmt(lhs) + " != " + fmt(rhs) + ")"});
    }

    const double tilt = p.g.x * p.X + p.g.y * p.Y;
    if (!(p.b > tilt)) {
        r.violations.push_back({Constraint::secure_profits_positive,
                                "b > g_x X + g_y Y (" + fmt(p.b) + " <= " + fmt(tilt) + ")"});
    }
    return r;
}

void require_valid(const ModelParams& p) {
    auto r = validate_params(p);
    if (!r.ok()) throw Error(ErrorCode::constraint_violation, r.summary());
}

void require_valid_for_waves(const ModelParams& p) {
    auto r = validate_params(p);
    if (!r.ok_for_waves()) throw Error(ErrorCode::constraint_violation, r.summary());
}

double derive_g_y(double I0, double P0, double h_y) { return I0 * I0 * h_y / (P0 * P0); }

double derive_h_y(double I0, double P0, double g_y) { return P0 * P0 * g_y / (I0 * I0); }

Amplitudes incompressible_amplitudes(double a1, double a2, double b, double d, double g_y) {
    if (!(a1 > 0.0 && a2 < 0.0 && b > 0.0 && d < 0.0 && g_y > 0.0)) {
        throw Error(ErrorCode::invalid_signs,
                    "incompressible amplitudes need a1 > 0, a2 < 0, b > 0, d < 0, g_y > 0");
    }
    const double P0 = -a2 * b / g_y;
    const double I0 = (a2 * b / (a1 * d)) * P0;
    return {I0, P0};
}

bool in_domain(const ModelParams& p, double x, double y) {
    return x >= 0.0 && x <= p.X && y >= 0.0 && y <= p.Y;
}

SteadyPoint steady_profile(const ModelParams& p, double x, double y) {
    const double I = p.I0 * (1.0 + (p.h.x * (x - p.X) + p.h.y * (y - p.Y)) / p.d);
    const double P = p.P0 * (1.0 + (p.g.x * (x - p.X) + p.g.y * (y - p.Y)) / p.b);
    return {x, y, I, P};
}

SteadyPoint steady_fields(const ModelParams& p, double x, double y) {
    require_valid(p);
    if (!in_domain(p, x, y)) {
        throw Error(ErrorCode::out_of_domain,
                    "point (" + fmt(x) + ", " + fmt(y) + ") outside [0, " + fmt(p.X) + "] x [0, " + fmt(p.Y) + "]");
    }
    return steady_profile(p, x, y);
}

SteadyGradient steady_gradient(const ModelParams& p) {
    return {{p.I0 * p.h.x / p.d, p.I0 * p.h.y / p.d}, {p.P0 * p.g.x / p.b, p.P0 * p.g.y / p.b}};
}

CornerValues corner_values(const ModelParams& p) {
    require_valid(p);
    return {p.I0 * (1.0 - (p.h.x * p.X + p.h.y * p.Y) / p.d),
            p.P0 * (1.0 - (p.g.x * p.X + p.g.y * p.Y) / p.b), p.I0, p.P0};
}

} // namespace riskwave
