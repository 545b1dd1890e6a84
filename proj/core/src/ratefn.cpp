#include "igbm/ratefn.hpp"

#include "igbm/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace igbm {
namespace {

constexpr double kHalfPi = 0.5 * std::numbers::pi;
constexpr double kSeriesCut = 1e-4;
constexpr double kSolveTol = 1e-13;

// sin(x)/x
double sinc(double x)
{
    if (std::fabs(x) < kSeriesCut) {
        const double x2 = x * x;
        return 1.0 - x2 / 6.0 * (1.0 - x2 / 20.0 * (1.0 - x2 / 42.0));
    }
    return std::sin(x) / x;
}

// sinh(x)/x
double sinhc(double x)
{
    if (std::fabs(x) < kSeriesCut) {
        const double x2 = x * x;
        return 1.0 + x2 / 6.0 * (1.0 + x2 / 20.0 * (1.0 + x2 / 42.0));
    }
    return std::sinh(x) / x;
}

void check_finite(double v, const char* op, const char* name)
{
    detail::require(std::isfinite(v), op, std::string(name) + " must be finite");
}

// cosh(delta/2) + (zeta/delta) sinh(delta/2)
double hyperbolic_factor(double delta, double zeta)
{
    return std::cosh(0.5 * delta) + 0.5 * zeta * sinhc(0.5 * delta);
}

// cos(xi) + zeta sin(xi) / (2 xi)
double trigonometric_factor(double xi, double zeta)
{
    return std::cos(xi) + 0.5 * zeta * sinc(xi);
}

double eq1_residual(double delta, double b, double zeta)
{
    const double q = hyperbolic_factor(delta, zeta);
    return zeta * zeta - delta * delta - 4.0 * b * b * q * q;
}

double eq2_residual(double xi, double b, double zeta)
{
    const double t = 2.0 * xi * std::cos(xi) + zeta * std::sin(xi);
    return 2.0 * xi * xi * (4.0 * xi * xi + zeta * zeta) - 2.0 * b * b * t * t;
}

// First positive zero of 2 xi cos xi + zeta sin xi: pi/2 at zeta = 0, below
// pi/2 for -2 < zeta < 0, in (pi/2, pi) for zeta > 0.
double trigonometric_limit(double zeta)
{
    if (zeta == 0.0) {
        return kHalfPi;
    }
    auto g = [zeta](double xi) { return 2.0 * std::cos(xi) + zeta * sinc(xi); };
    const double lo = zeta < 0.0 ? 0.0 : kHalfPi;
    const double hi = zeta < 0.0 ? kHalfPi : std::numbers::pi;
    return solve_bracketed(g, lo, hi, {1e-15, 200}).root;
}

void require_drift(double zeta, const char* op)
{
    if (!(zeta > -2.0)) {
        throw DomainError(std::string(op) + ": closed form requires zeta > -2, got " +
                          std::to_string(zeta));
    }
}

// |zeta| - delta to full relative precision. The bracketed root is only good
// to an absolute 1e-13, which the 1/b^2 in R amplifies; a few Newton steps on
// u (2|zeta| - u) = 4 b^2 q^2 fix that.
double delta_gap(double b, double zeta, double delta)
{
    const double z = std::fabs(zeta);
    double u = z - delta;
    if (u > 0.5 * z) {
        return u;
    }
    const double b2 = b * b;
    for (int i = 0; i < 4; ++i) {
        const double d = z - u;
        const double q = hyperbolic_factor(d, zeta);
        const double h = 1e-6 * std::max(z, 1e-3);
        const double dq = (hyperbolic_factor(d + h, zeta) - hyperbolic_factor(d - h, zeta)) / (2.0 * h);
        const double f = u * (2.0 * z - u) - 4.0 * b2 * q * q;
        const double df = 2.0 * (z - u) + 8.0 * b2 * q * dq;
        u -= f / df;
    }
    return u;
}

// log(q) - zeta/2 on the hyperbolic branch in terms of u = |zeta| - delta:
// e^{-zeta/2} q - 1 reduces to expm1 and exp terms with no cancellation.
double log_factor_excess(double zeta, double u)
{
    const double z = std::fabs(zeta);
    const double s = zeta > 0.0 ? -1.0 : 1.0;
    const double n = z * std::expm1(0.5 * s * u) + u * (1.0 - 0.5 * std::exp(0.5 * s * u) - 0.5 * std::exp(s * z - 0.5 * s * u));
    return std::log1p(n / (z - u));
}

// Small-b expansion R = phi_1(zeta) - b^2 G(zeta) + O(b^4), from perturbing
// the minimiser around h = zeta t; G = int int e^{zeta (s + t)} min(s, t).
// Used only where b^2 underflows the root equation.
double rate_small_b(double b, double zeta)
{
    const double phi1 = std::fabs(zeta) < 1e-8 ? 1.0 + 0.5 * zeta : std::expm1(zeta) / zeta;
    double g = 0.0;
    if (std::fabs(zeta) < 1e-2) {
        g = 1.0 / 3.0 + zeta * (5.0 / 12.0 + zeta * (17.0 / 60.0 + zeta * (49.0 / 360.0 + zeta * 43.0 / 840.0)));
    } else {
        const double e = std::exp(zeta);
        g = (((2.0 * zeta - 3.0) * e + 4.0) * e - 1.0) / (2.0 * zeta * zeta * zeta);
    }
    return phi1 - b * b * g;
}

} // namespace

const char* to_string(RateBranch b)
{
    switch (b) {
    case RateBranch::Hyperbolic:
        return "hyperbolic";
    case RateBranch::Trigonometric:
        return "trigonometric";
    case RateBranch::Boundary:
        return "boundary";
    case RateBranch::ZeroDrift:
        return "zero_drift";
    }
    return "unknown";
}

double branch_boundary(double zeta)
{
    require_drift(zeta, "branch_boundary");
    return std::fabs(zeta) / (2.0 + zeta);
}

RootResult solve_delta(double b, double zeta)
{
    check_finite(b, "solve_delta", "b");
    check_finite(zeta, "solve_delta", "zeta");
    require_drift(zeta, "solve_delta");
    if (zeta == 0.0 || !(b > 0.0) || b > branch_boundary(zeta)) {
        throw BranchError("solve_delta: requires 0 < b <= |zeta|/(2+zeta); got b=" + std::to_string(b) +
                          ", zeta=" + std::to_string(zeta));
    }
    auto f = [b, zeta](double d) { return eq1_residual(d, b, zeta); };
    return solve_bracketed(f, 0.0, std::fabs(zeta), {kSolveTol, 200});
}

RootResult solve_xi(double b, double zeta)
{
    check_finite(b, "solve_xi", "b");
    check_finite(zeta, "solve_xi", "zeta");
    require_drift(zeta, "solve_xi");
    detail::require(b > 0.0, "solve_xi", "b must be positive");
    const double limit = trigonometric_limit(zeta);
    // Square root of eq2 divided by xi: both sides are positive on (0, limit).
    auto g = [b, zeta](double xi) {
        return std::sqrt(4.0 * xi * xi + zeta * zeta) - b * (2.0 * std::cos(xi) + zeta * sinc(xi));
    };
    const double g_lo = g(0.0);
    const double g_hi = g(limit);
    if (g_lo > 0.0 || g_hi < 0.0) {
        throw NoRootInInterval("solve_xi: no root of the trigonometric equation in (0, " +
                               std::to_string(limit) + ") for b=" + std::to_string(b) +
                               ", zeta=" + std::to_string(zeta));
    }
    RootResult r = solve_bracketed(g, 0.0, limit, {kSolveTol, 200});
    r.residual = eq2_residual(r.root, b, zeta);
    return r;
}

RootResult solve_lambda(double b)
{
    check_finite(b, "solve_lambda", "b");
    detail::require(b > 0.0, "solve_lambda", "b must be positive");
    // lambda - b cos(lambda) is increasing on [0, pi/2], -b at 0 and pi/2 at pi/2.
    auto g = [b](double lam) { return lam - b * std::cos(lam); };
    return solve_bracketed(g, 0.0, kHalfPi, {1e-14, 200});
}

double rate_R_boundary(double zeta)
{
    require_drift(zeta, "rate_R_boundary");
    detail::require(zeta != 0.0, "rate_R_boundary", "zeta must be non-zero");
    const double w = 2.0 + zeta;
    const double printed = -1.0 + 0.25 * zeta * zeta - 0.5 * w * w + w * w * std::log1p(0.5 * zeta) / zeta;
    return -printed;
}

RateEval rate_R_zero_drift(double b)
{
    check_finite(b, "rate_R_zero_drift", "b");
    detail::require(b >= 0.0, "rate_R_zero_drift", "b must be non-negative");
    if (b == 0.0) {
        return {1.0, RateBranch::ZeroDrift, 0.0, 0.0, 0};
    }
    const RootResult r = solve_lambda(b);
    const double lam = r.root;
    const double c = std::cos(lam);
    const double value = 2.0 * sinc(2.0 * lam) - c * c;
    return {value, RateBranch::ZeroDrift, lam, r.residual, r.iterations};
}

RateEval rate_R(double b, double zeta)
{
    check_finite(b, "rate_R", "b");
    check_finite(zeta, "rate_R", "zeta");
    detail::require(b >= 0.0, "rate_R", "b must be non-negative");
    require_drift(zeta, "rate_R");
    if (b == 0.0) {
        return {1.0, zeta == 0.0 ? RateBranch::ZeroDrift : RateBranch::Boundary, 0.0, 0.0, 0};
    }
    if (zeta == 0.0) {
        return rate_R_zero_drift(b);
    }
    if (b < 1e-7 * std::min(1.0, std::exp(-zeta))) {
        const bool hyperbolic = b < branch_boundary(zeta);
        return {rate_small_b(b, zeta), hyperbolic ? RateBranch::Hyperbolic : RateBranch::Trigonometric,
                hyperbolic ? std::fabs(zeta) : 0.0, 0.0, 0};
    }
    const double b2 = b * b;
    const double boundary = branch_boundary(zeta);
    if (b == boundary) {
        return {rate_R_boundary(zeta), RateBranch::Boundary, 0.0, 0.0, 0};
    }
    if (b < boundary) {
        const RootResult r = solve_delta(b, zeta);
        const double u = delta_gap(b, zeta, r.root);
        const double d = std::fabs(zeta) - u;
        const double sh = std::sinh(0.5 * d);
        const double shc = 0.5 * sinhc(0.5 * d); // sinh(d/2)/d
        // zeta/b^2 log(q) - zeta^2/(2 b^2), rearranged to avoid cancellation at small b
        const double printed = 1.0 + sh * sh + zeta * (zeta - 4.0) * shc * shc - (2.0 - zeta) * sinhc(d) +
                               zeta / b2 * log_factor_excess(zeta, u);
        return {-printed, RateBranch::Hyperbolic, d, r.residual, r.iterations};
    }
    const RootResult r = solve_xi(b, zeta);
    const double xi = r.root;
    const double s = std::sin(xi);
    const double sc = sinc(xi);
    const double printed = 1.0 - s * s - 0.25 * zeta * (4.0 - zeta) * sc * sc + (zeta - 2.0) * sinc(2.0 * xi) +
                           zeta / b2 * std::log(trigonometric_factor(xi, zeta)) - zeta * zeta / (2.0 * b2);
    return {-printed, RateBranch::Trigonometric, xi, r.residual, r.iterations};
}

double rate_R_series(double b, int order)
{
    detail::require(order >= 0 && order <= 8 && order % 2 == 0, "rate_R_series",
                    "order must be one of 0, 2, 4, 6, 8");
    static constexpr double coeff[] = {1.0, -1.0 / 3.0, 4.0 / 15.0, -92.0 / 315.0, 1072.0 / 2835.0};
    const double b2 = b * b;
    double sum = 0.0;
    for (int k = order / 2; k >= 0; --k) {
        sum = sum * b2 + coeff[k];
    }
    return sum;
}

double rate_R_largeb(double b)
{
    detail::require(b > 0.0, "rate_R_largeb", "b must be positive");
    constexpr double pi2 = std::numbers::pi * std::numbers::pi;
    return 2.0 / b - pi2 / (16.0 * b * b) - pi2 / (8.0 * b * b * b);
}

double jb(double b, double zeta)
{
    return 2.0 * b * b * rate_R(b, zeta).value;
}

ConvergenceRadius convergence_radius()
{
    auto f = [](double y) { return y * std::tanh(y) - 1.0; };
    const RootResult r = solve_bracketed(f, 0.5, 2.0, {1e-15, 200});
    return {r.root, r.root / std::cosh(r.root), r.residual};
}

} // namespace igbm
