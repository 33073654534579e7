#pragma once

#include "riskwave/model.hpp"
#include "riskwave/quartic.hpp"

#include <string>
#include <vector>

namespace riskwave {

struct IncompressibleMode {
    double k;
    double omega;
    double c;          // group velocity d(omega)/dk
    double kappa;      // inward decay coefficient of the depth profile
    double wavelength; // 2 pi / k
};

/// Divergence-free surface mode at wavenumber k > 0. The corner amplitudes of
/// `p` must match incompressible_amplitudes() to 1e-9 relative.
IncompressibleMode incompressible_mode(const ModelParams& p, double k);

/// Tolerance used to compare (I0, P0) against the divergence-free amplitudes.
inline constexpr double amplitude_match_rtol = 1e-9;

/// Coefficients of the fourth-order depth equation for the profile f(y - Y).
struct DepthQuartic {
    QuarticCoeffs coeffs;
    bool sign_pattern_holds; // q4 > 0, q1 <= 0, q0 > 0
};

DepthQuartic quartic_coefficients(const ModelParams& p, double omega, double k);

enum class Regime {
    all_real,
    two_real_two_complex,
    all_complex,
    single_exponential, // one real root carries the whole profile
};

enum class WeightPolicy {
    minimal_norm,
    pin_secondary_zero, // lambda_3 = lambda_4 = 0
};

const char* to_string(Regime r);
const char* to_string(WeightPolicy p);

/// Default real/complex discrimination: |Im s| <= tol * (1 + |s|).
inline constexpr double default_root_tol = 1e-9;

/// Real roots closer than this (relative) are treated as repeated.
inline constexpr double repeated_root_rtol = 1e-8;

/// Total separation introduced between repeated roots.
inline constexpr double repeated_root_split = 1e-12;

enum class ComponentKind { exponential, cosine, sine };

/// One term of f(eta), eta = y - Y:
///   exponential  weight * exp(rate eta)
///   cosine       weight * exp(rate eta) cos(freq eta)
///   sine         weight * exp(rate eta) sin(freq eta)
struct ProfileComponent {
    ComponentKind kind;
    double rate;
    double freq;
    double weight;

    /// n-th derivative of the unweighted basis function at eta.
    double basis(double eta, int order = 0) const;
};

/// Depth profile f together with its classification and the policy that
/// fixed the two free weights.
struct ModeProfile {
    Regime regime = Regime::single_exponential;
    WeightPolicy policy = WeightPolicy::minimal_norm;
    std::vector<ProfileComponent> components;
    double target_slope = 0.0; // omega^2 I0 / (g_y P0)
    bool near_degenerate = false;
    bool repeated_split = false;

    double value(double eta, int order = 0) const;
    std::vector<double> weights() const;
    /// max(|f(0) - 1|, |f'(0) - target_slope| / max(1, target_slope))
    double constraint_residual() const;
};

struct WaveMode {
    double omega = 0.0;
    double k = 0.0;
    std::vector<Complex> roots; // empty for modes built without a quartic
    ModeProfile profile;

    Regime regime() const { return profile.regime; }
};

/// Classifies roots by counting |Im s| <= tol (1 + |s|) and solves the two
/// boundary constraints f(0) = 1, f'(0) = omega^2 I0 / (g_y P0) for the
/// regime's weights. The two free weights are resolved by `policy`.
ModeProfile classify_and_weights(const std::vector<Complex>& roots, double omega, double I0, double P0, double g_y,
                                 WeightPolicy policy = WeightPolicy::minimal_norm, double tol = default_root_tol);

/// quartic_coefficients -> solve_quartic -> classify_and_weights.
WaveMode compressible_mode(const ModelParams& p, double omega, double k,
                           WeightPolicy policy = WeightPolicy::minimal_norm, double tol = default_root_tol);

/// Divergence-free mode as a single decaying exponential exp(kappa eta).
WaveMode incompressible_wave_mode(const ModelParams& p, double k);

/// Single real root s = omega^2 I0 / (g_y P0) > 0 carrying the whole
/// profile. Throws Error(non_simplest_mode) unless s is a root of the depth
/// quartic within the solver's residual bound.
WaveMode simplest_mode(const ModelParams& p, double omega, double k);

/// Single-exponential mode with an explicit rate, without checking it against
/// any dispersion relation.
WaveMode single_exponential_mode(double omega, double k, double rate);

struct ComponentGrowth {
    std::size_t index;
    double rate;        // Re(s) of the component's root
    bool grows_inward;  // rate < 0
    double efold_rate;  // |rate| per unit risk depth
};

struct GrowthReport {
    std::vector<ComponentGrowth> components; // only components with non-zero weight
    bool amplifying = false;
};

GrowthReport inward_growth_rates(const WaveMode& mode);

/// For two real roots plus a conjugate pair r +/- i theta: do the real roots
/// both carry the sign opposite to r?
bool case_two_sign_pattern_holds(const std::vector<Complex>& roots, double tol = default_root_tol);

} // namespace riskwave
