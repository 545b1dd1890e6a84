#pragma once

#include "igbm/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

namespace igbm {

struct RootOptions {
    double tol = 1e-12;
    int max_iterations = 200;
};

struct RootResult {
    double root = 0.0;
    double residual = 0.0;
    int iterations = 0;
    double lo = 0.0; ///< final bracket, lo <= root <= hi
    double hi = 0.0;
};

/// Shrinks an open interval (lo, hi) to a closed one by a relative inset
/// eps * max(1, |hi - lo|) at each end.
inline std::pair<double, double> inset(double lo, double hi, double eps = 1e-12)
{
    const double d = eps * std::max(1.0, std::fabs(hi - lo));
    return {lo + d, hi - d};
}

/// Root of a continuous f on [lo, hi] with f(lo) f(hi) <= 0.
///
/// Brent's method: inverse quadratic / secant steps, falling back to
/// bisection whenever the interpolated step leaves the bracket or fails to
/// shrink it fast enough. The bracket is kept at every step, so the result
/// always lies inside the initial interval.
///
/// Converged when |f(root)| <= tol or the bracket is narrower than
/// tol * max(1, |root|).
template <class F>
RootResult solve_bracketed(F&& f, double lo, double hi, RootOptions opts = {})
{
    if (!(opts.tol > 0.0)) {
        throw InvalidArgument("solve_bracketed: tol must be positive");
    }
    if (lo > hi) {
        std::swap(lo, hi);
    }
    double a = lo;
    double b = hi;
    double fa = f(a);
    double fb = f(b);
    if (std::isnan(fa) || std::isnan(fb)) {
        throw DomainError("solve_bracketed: function is NaN at a bracket end");
    }
    if (fa == 0.0) {
        return {a, fa, 0, a, a};
    }
    if (fb == 0.0) {
        return {b, fb, 0, b, b};
    }
    if ((fa > 0.0) == (fb > 0.0)) {
        throw NoSignChange("solve_bracketed: f(lo)=" + std::to_string(fa) + " and f(hi)=" +
                           std::to_string(fb) + " have the same sign on [" + std::to_string(lo) +
                           ", " + std::to_string(hi) + "]");
    }

    // b is the best estimate, c the contrapoint (root between b and c).
    double c = a;
    double fc = fa;
    double d = b - a;
    double e = d;
    constexpr double eps = std::numeric_limits<double>::epsilon();

    for (int it = 1; it <= opts.max_iterations; ++it) {
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if (std::fabs(fc) < std::fabs(fb)) {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        const double width_tol = 0.5 * opts.tol * std::max(1.0, std::fabs(b)) + 2.0 * eps * std::fabs(b);
        const double m = 0.5 * (c - b);
        if (std::fabs(fb) <= opts.tol || std::fabs(m) <= width_tol) {
            return {b, fb, it, std::min(b, c), std::max(b, c)};
        }

        if (std::fabs(e) >= width_tol && std::fabs(fa) > std::fabs(fb)) {
            double p;
            double q;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                const double qa = fa / fc;
                const double r = fb / fc;
                p = s * (2.0 * m * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) {
                q = -q;
            } else {
                p = -p;
            }
            if (2.0 * p < std::min(3.0 * m * q - std::fabs(width_tol * q), std::fabs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b += (std::fabs(d) > width_tol) ? d : (m > 0.0 ? width_tol : -width_tol);
        fb = f(b);
        if (std::isnan(fb)) {
            throw DomainError("solve_bracketed: function returned NaN at " + std::to_string(b));
        }
    }
    throw MaxIterations("solve_bracketed: no convergence after " +
                        std::to_string(opts.max_iterations) + " iterations");
}

} // namespace igbm
