#pragma once

#include <array>
#include <complex>

namespace riskwave {

using Complex = std::complex<double>;

/// Real quartic q4 s^4 + q3 s^3 + q2 s^2 + q1 s + q0.
struct QuarticCoeffs {
    double q4 = 0.0;
    double q3 = 0.0;
    double q2 = 0.0;
    double q1 = 0.0;
    double q0 = 0.0;

    double max_abs() const;
    Complex evaluate(Complex s) const;
    Complex derivative(Complex s) const;

    friend bool operator==(const QuarticCoeffs&, const QuarticCoeffs&) = default;
};

using QuarticRoots = std::array<Complex, 4>;

/// All four roots, sorted by (real part, imaginary part).
///
/// The depressed quartic is split into two real quadratic factors
/// (t^2 + a t + b)(t^2 - a t + c) where a^2 is the largest root of the
/// resolvent cubic, so complex roots come out as exact conjugate pairs.
/// Each root then receives two guarded Newton steps on the original
/// polynomial. Throws Error(degenerate_leading_coefficient) when q4 == 0.
QuarticRoots solve_quartic(const QuarticCoeffs& q);

/// Residual bound every returned root satisfies:
/// |Q(s)| <= 1e-8 * max|q_i| * max(1, |s|^4).
inline constexpr double quartic_residual_rtol = 1e-8;

double scaled_residual(const QuarticCoeffs& q, Complex s);

} // namespace riskwave
