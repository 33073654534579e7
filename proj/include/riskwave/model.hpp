#pragma once

#include <string>
#include <vector>

namespace riskwave {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
    friend bool operator==(const Vec2&, const Vec2&) = default;
};

/// Coupling coefficients, financial accelerations, corner amplitudes and the
/// extents of the macro rectangle [0, X] x [0, Y].
///
///  - a1 couples the Profits y-velocity into the Investment continuity equation
///  - a2 couples the Investment y-velocity into the Profits continuity equation
///  - b  couples the Profits gradient into the Investment motion equation
///  - d  couples the Investment gradient into the Profits motion equation
///  - g, h are the constant financial accelerations acting on Profits and
///    Investment; I0, P0 are the steady densities at the most risky corner (X, Y)
struct ModelParams {
    double a1 = 1.0;
    double a2 = -1.0;
    double b = 1.0;
    double d = -1.0;
    Vec2 g{1.0, 1.0};
    Vec2 h{1.0, 1.0};
    double I0 = 1.0;
    double P0 = 1.0;
    double X = 0.25;
    double Y = 0.25;

    friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

enum class Constraint {
    finite,
    a1_positive,
    a2_negative,
    b_positive,
    d_negative,
    g_x_positive,
    g_y_positive,
    h_x_positive,
    h_y_positive,
    I0_positive,
    P0_positive,
    X_positive,
    Y_positive,
    boundary_identity,       // I0^2 h_y = P0^2 g_y
    secure_profits_positive, // b > g_x X + g_y Y
};

struct Violation {
    Constraint constraint;
    std::string message;
};

class ValidationReport {
public:
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }

    /// True when only the secure-corner positivity condition b > g_x X + g_y Y
    /// fails. Wave analyses at the y = Y border never evaluate the steady
    /// profile at (0, 0) and accept such parameter sets.
    bool ok_for_waves() const;

    bool violates(Constraint c) const;
    std::string summary() const;
};

/// Relative tolerance of the I0^2 h_y = P0^2 g_y identity.
inline constexpr double boundary_identity_rtol = 1e-9;

ValidationReport validate_params(const ModelParams& p);

/// Throws Error(constraint_violation) carrying the report summary.
void require_valid(const ModelParams& p);
void require_valid_for_waves(const ModelParams& p);

/// g_y implied by the common-boundary identity for given I0, P0 and h_y.
double derive_g_y(double I0, double P0, double h_y);
/// h_y implied by the common-boundary identity for given I0, P0 and g_y.
double derive_h_y(double I0, double P0, double g_y);

struct Amplitudes {
    double I0;
    double P0;
};

/// Corner amplitudes forced by divergence-free velocities:
/// P0 = -a2 b / g_y and I0 = (a2 b / (a1 d)) P0.
Amplitudes incompressible_amplitudes(double a1, double a2, double b, double d, double g_y);

struct SteadyPoint {
    double x;
    double y;
    double I;
    double P;
};

/// Linear steady profiles normalised to (I0, P0) at (X, Y). Validates the
/// parameters and the point.
SteadyPoint steady_fields(const ModelParams& p, double x, double y);

/// Same profile without any validation; callers own the preconditions.
SteadyPoint steady_profile(const ModelParams& p, double x, double y);

struct SteadyGradient {
    Vec2 dI;
    Vec2 dP;
};

SteadyGradient steady_gradient(const ModelParams& p);

struct CornerValues {
    double I_secure;
    double P_secure;
    double I_risky;
    double P_risky;
};

CornerValues corner_values(const ModelParams& p);

bool in_domain(const ModelParams& p, double x, double y);

} // namespace riskwave
