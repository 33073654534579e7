#include "riskwave/dispersion.hpp"

#include "riskwave/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace riskwave {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct RootSplit {
    std::vector<double> reals;                    // ascending
    std::vector<std::pair<double, double>> pairs; // (real part, imag part > 0), descending real part
    bool near_degenerate = false;
};

RootSplit split_roots(const std::vector<Complex>& roots, double tol) {
    if (roots.size() != 4) throw Error(ErrorCode::invalid_roots, "expected 4 roots, got " + std::to_string(roots.size()));
    if (!(tol > 0.0)) throw Error(ErrorCode::invalid_argument, "root tolerance must be positive");

    RootSplit out;
    std::vector<Complex> upper, lower;
    for (const auto& s : roots) {
        if (!std::isfinite(s.real()) || !std::isfinite(s.imag()))
            throw Error(ErrorCode::invalid_roots, "non-finite root");
        const double scale = 1.0 + std::abs(s);
        const double im = std::abs(s.imag());
        if (im != 0.0 && im > 1e-3 * tol * scale && im < 1e3 * tol * scale) out.near_degenerate = true;
        if (im <= tol * scale) out.reals.push_back(s.real());
        else if (s.imag() > 0.0) upper.push_back(s);
        else lower.push_back(s);
    }
    if (upper.size() != lower.size())
        throw Error(ErrorCode::invalid_roots, "complex roots are not closed under conjugation");

    for (const auto& z : upper) {
        auto best = std::min_element(lower.begin(), lower.end(), [&](const Complex& a, const Complex& b) {
            return std::abs(a - std::conj(z)) < std::abs(b - std::conj(z));
        });
        if (std::abs(*best - std::conj(z)) > 1e-6 * (1.0 + std::abs(z)))
            throw Error(ErrorCode::invalid_roots, "complex roots are not closed under conjugation");
        const Complex mid = 0.5 * (z + std::conj(*best));
        out.pairs.emplace_back(mid.real(), mid.imag());
        lower.erase(best);
    }
    std::sort(out.reals.begin(), out.reals.end());
    std::sort(out.pairs.begin(), out.pairs.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    return out;
}

// Spreads clusters of (near) equal values symmetrically by repeated_root_split.
bool split_repeated(std::vector<double>& values) {
    bool changed = false;
    std::size_t i = 0;
    while (i < values.size()) {
        std::size_t j = i + 1;
        while (j < values.size() &&
               std::abs(values[j] - values[i]) <= repeated_root_rtol * (1.0 + std::abs(values[i])))
            ++j;
        const std::size_t m = j - i;
        if (m > 1) {
            double mean = 0.0;
            for (std::size_t t = i; t < j; ++t) mean += values[t];
            mean /= static_cast<double>(m);
            const double step = repeated_root_split * std::max(1.0, std::abs(mean)) / static_cast<double>(m - 1);
            for (std::size_t t = i; t < j; ++t)
                values[t] = mean + (static_cast<double>(t - i) - 0.5 * static_cast<double>(m - 1)) * step;
            changed = true;
        }
        i = j;
    }
    return changed;
}

// Minimum-norm solution of the 2 x m system A w = rhs through the Gram
// matrix A A^T; a numerically rank-one Gram matrix uses its pseudo-inverse.
std::vector<double> min_norm_solve(const std::vector<std::array<double, 2>>& columns, std::array<double, 2> rhs) {
    double g11 = 0.0, g12 = 0.0, g22 = 0.0;
    for (const auto& c : columns) {
        g11 += c[0] * c[0];
        g12 += c[0] * c[1];
        g22 += c[1] * c[1];
    }
    const double tr = g11 + g22;
    const double det = g11 * g22 - g12 * g12;
    std::array<double, 2> y{0.0, 0.0};
    if (tr > 0.0) {
        if (det > 1e-14 * tr * tr) {
            y = {(g22 * rhs[0] - g12 * rhs[1]) / det, (-g12 * rhs[0] + g11 * rhs[1]) / det};
        } else {
            const double inv = 1.0 / (tr * tr);
            y = {(g11 * rhs[0] + g12 * rhs[1]) * inv, (g12 * rhs[0] + g22 * rhs[1]) * inv};
        }
    }
    std::vector<double> w;
    w.reserve(columns.size());
    for (const auto& c : columns) w.push_back(c[0] * y[0] + c[1] * y[1]);
    return w;
}

// Column of the constraint matrix: (f(0), f'(0)) contribution of a unit weight.
std::array<double, 2> constraint_column(const ProfileComponent& c) {
    return {c.basis(0.0, 0), c.basis(0.0, 1)};
}

} // namespace

const char* to_string(Regime r) {
    switch (r) {
    case Regime::all_real: return "AllReal";
    case Regime::two_real_two_complex: return "TwoRealTwoComplex";
    case Regime::all_complex: return "AllComplex";
    case Regime::single_exponential: return "SingleExponential";
    }
    return "unknown";
}

const char* to_string(WeightPolicy p) {
    switch (p) {
    case WeightPolicy::minimal_norm: return "minimal-norm";
    case WeightPolicy::pin_secondary_zero: return "pin-zero";
    }
    return "unknown";
}

double ProfileComponent::basis(double eta, int order) const {
    const Complex c(rate, kind == ComponentKind::exponential ? 0.0 : freq);
    const Complex v = std::pow(c, order) * std::exp(c * eta);
    return kind == ComponentKind::sine ? v.imag() : v.real();
}

double ModeProfile::value(double eta, int order) const {
    double f = 0.0;
    for (const auto& c : components) f += c.weight * c.basis(eta, order);
    return f;
}

std::vector<double> ModeProfile::weights() const {
    std::vector<double> w;
    for (const auto& c : components) w.push_back(c.weight);
    return w;
}

double ModeProfile::constraint_residual() const {
    return std::max(std::abs(value(0.0, 0) - 1.0),
                    std::abs(value(0.0, 1) - target_slope) / std::max(1.0, std::abs(target_slope)));
}

IncompressibleMode incompressible_mode(const ModelParams& p, double k) {
    if (!(k > 0.0)) throw Error(ErrorCode::nonpositive_k, "wavenumber must be positive, got " + num(k));
    require_valid_for_waves(p);
    const auto amp = incompressible_amplitudes(p.a1, p.a2, p.b, p.d, p.g.y);
    if (std::abs(p.I0 - amp.I0) > amplitude_match_rtol * amp.I0 ||
        std::abs(p.P0 - amp.P0) > amplitude_match_rtol * amp.P0) {
        throw Error(ErrorCode::amplitude_mismatch, "divergence-free modes need I0 = " + num(amp.I0) +
                                                       ", P0 = " + num(amp.P0) + " (got I0 = " + num(p.I0) +
                                                       ", P0 = " + num(p.P0) + ")");
    }
    const double omega = std::sqrt((p.a1 * p.d / (p.a2 * p.b)) * p.g.y * k);
    return {k, omega, omega / (2.0 * k), -p.P0 * omega * omega / (p.a1 * p.d), 2.0 * M_PI / k};
}

DepthQuartic quartic_coefficients(const ModelParams& p, double omega, double k) {
    require_valid_for_waves(p);
    if (!(omega >= 0.0)) throw Error(ErrorCode::invalid_argument, "omega must be non-negative, got " + num(omega));
    if (!(k > 0.0)) throw Error(ErrorCode::nonpositive_k, "wavenumber must be positive, got " + num(k));
    const double bdPI = p.b * p.d * p.P0 * p.I0;
    const double w2 = omega * omega;
    const double k2 = k * k;
    QuarticCoeffs q;
    q.q4 = -bdPI;
    q.q3 = 0.0;
    q.q2 = p.a1 * p.a2 * p.b * p.d + 2.0 * k2 * bdPI;
    q.q1 = w2 * (p.P0 * p.a2 * p.b + p.I0 * p.a1 * p.d);
    q.q0 = p.I0 * p.P0 * w2 * w2 - bdPI * k2 * k2;
    return {q, q.q4 > 0.0 && q.q1 <= 0.0 && q.q0 > 0.0};
}

ModeProfile classify_and_weights(const std::vector<Complex>& roots, double omega, double I0, double P0, double g_y,
                                 WeightPolicy policy, double tol) {
    auto split = split_roots(roots, tol);

    ModeProfile prof;
    prof.policy = policy;
    prof.target_slope = omega * omega * I0 / (g_y * P0);
    prof.near_degenerate = split.near_degenerate;

    prof.repeated_split = split_repeated(split.reals);
    if (split.pairs.size() == 2 && std::abs(split.pairs[0].first - split.pairs[1].first) <=
                                       repeated_root_rtol * (1.0 + std::abs(split.pairs[0].first)) &&
        std::abs(split.pairs[0].second - split.pairs[1].second) <=
            repeated_root_rtol * (1.0 + std::abs(split.pairs[0].second))) {
        std::vector<double> th{split.pairs[0].second, split.pairs[1].second};
        std::sort(th.begin(), th.end());
        split_repeated(th);
        split.pairs[0].second = th[0];
        split.pairs[1].second = th[1];
        prof.repeated_split = true;
    }
    if (prof.repeated_split) prof.near_degenerate = true;

    using K = ComponentKind;
    switch (split.reals.size()) {
    case 4:
        prof.regime = Regime::all_real;
        for (double s : split.reals) prof.components.push_back({K::exponential, s, 0.0, 0.0});
        break;
    case 2: {
        prof.regime = Regime::two_real_two_complex;
        const auto [r, th] = split.pairs.at(0);
        prof.components = {{K::exponential, split.reals[0], 0.0, 0.0},
                           {K::exponential, split.reals[1], 0.0, 0.0},
                           {K::cosine, r, th, 0.0},
                           {K::sine, r, th, 0.0}};
        break;
    }
    case 0: {
        prof.regime = Regime::all_complex;
        const auto [r1, th1] = split.pairs.at(0);
        const auto [r2, th3] = split.pairs.at(1);
        prof.components = {{K::cosine, r1, th1, 0.0},
                           {K::cosine, r2, th3, 0.0},
                           {K::sine, r1, th1, 0.0},
                           {K::sine, r2, th3, 0.0}};
        break;
    }
    default:
        throw Error(ErrorCode::invalid_roots, "odd number of real roots");
    }

    const std::size_t active = policy == WeightPolicy::pin_secondary_zero ? 2 : 4;
    std::vector<std::array<double, 2>> cols;
    for (std::size_t i = 0; i < active; ++i) cols.push_back(constraint_column(prof.components[i]));
    const auto w = min_norm_solve(cols, {1.0, prof.target_slope});
    for (std::size_t i = 0; i < active; ++i) prof.components[i].weight = w[i];

    const double residual = prof.constraint_residual();
    if (!(residual <= 1e-9)) {
        throw Error(ErrorCode::infeasible_constraints,
                    std::string("weight constraints cannot be met under policy ") + to_string(policy) +
                        " (residual " + num(residual) + ")");
    }
    return prof;
}

WaveMode compressible_mode(const ModelParams& p, double omega, double k, WeightPolicy policy, double tol) {
    const auto dq = quartic_coefficients(p, omega, k);
    const auto r = solve_quartic(dq.coeffs);
    WaveMode m;
    m.omega = omega;
    m.k = k;
    m.roots.assign(r.begin(), r.end());
    m.profile = classify_and_weights(m.roots, omega, p.I0, p.P0, p.g.y, policy, tol);
    return m;
}

WaveMode single_exponential_mode(double omega, double k, double rate) {
    WaveMode m;
    m.omega = omega;
    m.k = k;
    m.profile.regime = Regime::single_exponential;
    m.profile.components = {{ComponentKind::exponential, rate, 0.0, 1.0}};
    m.profile.target_slope = rate;
    return m;
}

WaveMode incompressible_wave_mode(const ModelParams& p, double k) {
    const auto im = incompressible_mode(p, k);
    auto m = single_exponential_mode(im.omega, k, im.kappa);
    m.profile.target_slope = im.omega * im.omega * p.I0 / (p.g.y * p.P0);
    return m;
}

WaveMode simplest_mode(const ModelParams& p, double omega, double k) {
    const auto dq = quartic_coefficients(p, omega, k);
    const double s = omega * omega * p.I0 / (p.g.y * p.P0);
    if (!(s > 0.0) || scaled_residual(dq.coeffs, s) > quartic_residual_rtol) {
        throw Error(ErrorCode::non_simplest_mode,
                    "s = omega^2 I0 / (g_y P0) = " + num(s) + " is not a positive root of the depth quartic");
    }
    auto m = single_exponential_mode(omega, k, s);
    const auto r = solve_quartic(dq.coeffs);
    m.roots.assign(r.begin(), r.end());
    return m;
}

GrowthReport inward_growth_rates(const WaveMode& mode) {
    GrowthReport rep;
    const auto& comps = mode.profile.components;
    for (std::size_t i = 0; i < comps.size(); ++i) {
        if (comps[i].weight == 0.0) continue;
        const double rate = comps[i].rate;
        rep.components.push_back({i, rate, rate < 0.0, std::abs(rate)});
        rep.amplifying = rep.amplifying || rate < 0.0;
    }
    return rep;
}

bool case_two_sign_pattern_holds(const std::vector<Complex>& roots, double tol) {
    const auto split = split_roots(roots, tol);
    if (split.reals.size() != 2) return false;
    const double r = split.pairs.at(0).first;
    const double s1 = split.reals[0];
    const double s2 = split.reals[1];
    return (r > 0.0 && s1 < 0.0 && s2 < 0.0) || (r < 0.0 && s1 > 0.0 && s2 > 0.0);
}

} // namespace riskwave
