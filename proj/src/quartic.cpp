#include "riskwave/quartic.hpp"

#include "riskwave/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace riskwave {

namespace {

constexpr double eps = std::numeric_limits<double>::epsilon();

double cubic_value(double c2, double c1, double c0, double z) { return ((z + c2) * z + c1) * z + c0; }

// Largest real root of z^3 + c2 z^2 + c1 z + c0 = 0 for c0 <= 0, which is
// guaranteed to be non-negative.
double largest_resolvent_root(double c2, double c1, double c0) {
    const double Q = (c2 * c2 - 3.0 * c1) / 9.0;
    const double R = (2.0 * c2 * c2 * c2 - 9.0 * c2 * c1 + 27.0 * c0) / 54.0;
    double z;
    if (R * R < Q * Q * Q) {
        const double theta = std::acos(std::clamp(R / std::sqrt(Q * Q * Q), -1.0, 1.0));
        z = -2.0 * std::sqrt(Q) * std::cos(theta / 3.0) - c2 / 3.0;
        z = std::max(z, -2.0 * std::sqrt(Q) * std::cos((theta + 2.0 * M_PI) / 3.0) - c2 / 3.0);
        z = std::max(z, -2.0 * std::sqrt(Q) * std::cos((theta - 2.0 * M_PI) / 3.0) - c2 / 3.0);
    } else {
        const double A = -std::copysign(std::cbrt(std::abs(R) + std::sqrt(R * R - Q * Q * Q)), R);
        const double B = A != 0.0 ? Q / A : 0.0;
        z = (A + B) - c2 / 3.0;
    }

    // Newton polish, keeping only improving steps.
    for (int it = 0; it < 4; ++it) {
        const double f = cubic_value(c2, c1, c0, z);
        const double df = (3.0 * z + 2.0 * c2) * z + c1;
        if (df == 0.0) break;
        const double zn = z - f / df;
        if (std::abs(cubic_value(c2, c1, c0, zn)) < std::abs(f)) z = zn;
        else break;
    }

    if (z > 0.0 && std::isfinite(z)) return z;

    // Fallback: bisection on [0, Cauchy bound].
    double lo = 0.0;
    double hi = 1.0 + std::max({std::abs(c2), std::abs(c1), std::abs(c0)});
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (cubic_value(c2, c1, c0, mid) < 0.0) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

// Roots of t^2 + B t + C with real coefficients. Discriminants within
// rounding of zero yield an exact double root.
std::array<Complex, 2> solve_real_quadratic(double B, double C) {
    const double disc = B * B - 4.0 * C;
    const double scale = B * B + 4.0 * std::abs(C);
    if (std::abs(disc) <= 64.0 * eps * scale) {
        return {Complex(-0.5 * B, 0.0), Complex(-0.5 * B, 0.0)};
    }
    if (disc > 0.0) {
        const double t1 = -0.5 * (B + std::copysign(std::sqrt(disc), B));
        const double t2 = t1 != 0.0 ? C / t1 : 0.0;
        return {Complex(t1, 0.0), Complex(t2, 0.0)};
    }
    const double im = 0.5 * std::sqrt(-disc);
    return {Complex(-0.5 * B, im), Complex(-0.5 * B, -im)};
}

Complex newton_polish(const QuarticCoeffs& q, Complex s) {
    for (int it = 0; it < 2; ++it) {
        const Complex f = q.evaluate(s);
        const Complex df = q.derivative(s);
        if (std::abs(df) == 0.0) break;
        const Complex sn = s - f / df;
        if (std::abs(q.evaluate(sn)) < std::abs(f)) s = sn;
        else break;
    }
    return s;
}

double newton_polish_real(const QuarticCoeffs& q, double s) {
    return newton_polish(q, Complex(s, 0.0)).real();
}

} // namespace

double QuarticCoeffs::max_abs() const {
    return std::max({std::abs(q4), std::abs(q3), std::abs(q2), std::abs(q1), std::abs(q0)});
}

Complex QuarticCoeffs::evaluate(Complex s) const { return (((q4 * s + q3) * s + q2) * s + q1) * s + q0; }

Complex QuarticCoeffs::derivative(Complex s) const {
    return ((4.0 * q4 * s + 3.0 * q3) * s + 2.0 * q2) * s + q1;
}

double scaled_residual(const QuarticCoeffs& q, Complex s) {
    const double m = q.max_abs();
    const double size = std::max(1.0, std::pow(std::abs(s), 4));
    return std::abs(q.evaluate(s)) / (m * size);
}

QuarticRoots solve_quartic(const QuarticCoeffs& q) {
    if (q.q4 == 0.0 || !std::isfinite(q.q4)) {
        throw Error(ErrorCode::degenerate_leading_coefficient, "quartic leading coefficient must be non-zero");
    }
    const double a3 = q.q3 / q.q4;
    const double a2 = q.q2 / q.q4;
    const double a1 = q.q1 / q.q4;
    const double a0 = q.q0 / q.q4;

    // t = s + a3/4 removes the cubic term.
    const double shift = a3 / 4.0;
    const double p = a2 - 6.0 * shift * shift;
    const double r1 = a1 - 2.0 * a2 * shift + 8.0 * shift * shift * shift;
    const double r0 = a0 - a1 * shift + a2 * shift * shift - 3.0 * shift * shift * shift * shift;

    std::array<Complex, 2> f1, f2;
    const double size = std::max({std::abs(p), std::sqrt(std::abs(r0)), std::cbrt(std::abs(r1)), 1e-300});
    if (std::abs(r1) <= 16.0 * eps * size * size * size) {
        // Biquadratic: u = t^2 solves u^2 + p u + r0 = 0.
        const auto u = solve_real_quadratic(p, r0);
        if (u[0].imag() != 0.0) {
            const Complex t = std::sqrt(u[0]);
            f1 = {t, std::conj(t)};
            f2 = {-t, -std::conj(t)};
        } else {
            auto real_pair = [](double v) -> std::array<Complex, 2> {
                if (v >= 0.0) return {Complex(std::sqrt(v), 0.0), Complex(-std::sqrt(v), 0.0)};
                return {Complex(0.0, std::sqrt(-v)), Complex(0.0, -std::sqrt(-v))};
            };
            f1 = real_pair(u[0].real());
            f2 = real_pair(u[1].real());
        }
    } else {
        const double z = largest_resolvent_root(2.0 * p, p * p - 4.0 * r0, -r1 * r1);
        const double alpha = std::sqrt(z);
        double beta = 0.5 * (p + z - r1 / alpha);
        double gamma = 0.5 * (p + z + r1 / alpha);
        // beta * gamma = r0; recover the smaller one from the larger to avoid cancellation.
        if (std::abs(beta) > std::abs(gamma) && beta != 0.0) gamma = r0 / beta;
        else if (gamma != 0.0) beta = r0 / gamma;
        f1 = solve_real_quadratic(alpha, beta);
        f2 = solve_real_quadratic(-alpha, gamma);
    }

    QuarticRoots roots;
    std::size_t n = 0;
    for (const auto& pair : {f1, f2}) {
        const Complex s0 = pair[0] - shift;
        const Complex s1 = pair[1] - shift;
        if (pair[0].imag() != 0.0 && pair[1] == std::conj(pair[0])) {
            const Complex upper = newton_polish(q, s0.imag() > 0.0 ? s0 : s1);
            roots[n++] = upper;
            roots[n++] = std::conj(upper);
        } else {
            roots[n++] = Complex(newton_polish_real(q, s0.real()), 0.0);
            roots[n++] = Complex(newton_polish_real(q, s1.real()), 0.0);
        }
    }
    std::sort(roots.begin(), roots.end(), [](const Complex& a, const Complex& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return roots;
}

} // namespace riskwave
