#include "igbm/errors.hpp"
#include "igbm/model.hpp"
#include "igbm/oracles.hpp"
#include "igbm/quadrature.hpp"
#include "igbm/ratefn.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

using namespace igbm;

namespace {

constexpr double kPi = std::numbers::pi;

// Taylor coefficients of R(b, 0) in u = b^2, from truncated power-series
// arithmetic: lambda = b m(u) with m = cos(b m), then R = 2 sinc(2 lambda) - cos^2(lambda).
std::vector<double> zero_drift_series(int n)
{
    using Series = std::vector<double>;
    auto mul = [n](const Series& a, const Series& b) {
        Series c(n, 0.0);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; i + j < n; ++j) {
                c[i + j] += a[i] * b[j];
            }
        }
        return c;
    };
    // sum_k w_k u^k m^{2k}
    auto even_compose = [&](const Series& m, auto weight) {
        const Series m2 = mul(m, m);
        Series out(n, 0.0);
        Series power(n, 0.0);
        power[0] = 1.0; // u^k m^{2k}
        for (int k = 0; k < n; ++k) {
            for (int i = 0; i < n; ++i) {
                out[i] += weight(k) * power[i];
            }
            Series shifted(n, 0.0);
            const Series next = mul(power, m2);
            for (int i = 0; i + 1 < n; ++i) {
                shifted[i + 1] = next[i];
            }
            power = shifted;
        }
        return out;
    };
    auto factorial = [](int k) { return std::tgamma(k + 1.0); };

    Series m(n, 0.0);
    m[0] = 1.0;
    for (int it = 0; it < n + 2; ++it) {
        m = even_compose(m, [&](int k) { return (k % 2 ? -1.0 : 1.0) / factorial(2 * k); });
    }
    const Series sinc2 = even_compose(m, [&](int k) { return (k % 2 ? -1.0 : 1.0) * std::pow(4.0, k) / factorial(2 * k + 1); });
    const Series cos2 = even_compose(m, [&](int k) { return (k % 2 ? -1.0 : 1.0) * std::pow(4.0, k) / factorial(2 * k); });
    Series r(n);
    for (int i = 0; i < n; ++i) {
        r[i] = 2.0 * sinc2[i] - 0.5 * ((i == 0 ? 1.0 : 0.0) + cos2[i]);
    }
    return r;
}

double eq1(double delta, double b, double zeta)
{
    const double q = std::cosh(delta / 2) + (delta == 0.0 ? zeta / 2 : zeta / delta * std::sinh(delta / 2));
    return zeta * zeta - delta * delta - 4 * b * b * q * q;
}

double eq2(double xi, double b, double zeta)
{
    const double t = 2 * xi * std::cos(xi) + zeta * std::sin(xi);
    return 2 * xi * xi * (4 * xi * xi + zeta * zeta) - 2 * b * b * t * t;
}

} // namespace

TEST(SolveDelta, LimitsAndBoundary)
{
    EXPECT_NEAR(solve_delta(1e-7, 1.0).root, 1.0, 1e-9);
    const RootResult at = solve_delta(1.0 / 3.0, 1.0);
    EXPECT_NEAR(at.root, 0.0, 1e-6);
}

TEST(SolveDelta, ResidualAndOracle)
{
    const RootResult r = solve_delta(0.2, 1.0);
    EXPECT_GE(r.root, 0.0);
    EXPECT_LE(r.root, 1.0);
    EXPECT_LE(std::fabs(eq1(r.root, 0.2, 1.0)), 1e-12);
    EXPECT_NEAR(jb(0.2, 1.0), jb_variational(0.2, 1.0).value, 1e-4);
}

TEST(SolveDelta, BranchError)
{
    EXPECT_THROW(solve_delta(0.34, 1.0), BranchError);
    EXPECT_THROW(solve_delta(0.1, 0.0), BranchError);
    EXPECT_THROW(solve_delta(0.1, -2.5), DomainError);
}

TEST(SolveXi, TableThree)
{
    // xi column for T = 1, 20 and 5; b and zeta from scale().
    struct Case {
        double T;
        double xi;
    };
    for (const Case c : {Case{1, 0.030345}, Case{20, 1.001668}, Case{5, 0.215833}}) {
        const ScaledParams sp = scale({0.3, 0.09, c.T, 0.06});
        const RootResult r = solve_xi(sp.b, sp.zeta);
        EXPECT_NEAR(r.root, c.xi, 1e-6) << c.T;
        EXPECT_LE(std::fabs(eq2(r.root, sp.b, sp.zeta)), 1e-12);
    }
    EXPECT_NEAR(solve_xi(0.0519615, 0.09).root, 0.030345, 1e-6);
}

TEST(SolveXi, ResidualsOnGrid)
{
    for (double zeta : {-1.5, -0.5, 0.0, 0.3, 1.0, 3.0}) {
        for (double b : {0.05, 0.4, 1.0, 3.0, 20.0}) {
            if (b <= branch_boundary(zeta)) {
                continue;
            }
            const RootResult r = solve_xi(b, zeta);
            EXPECT_GT(r.root, 0.0);
            EXPECT_LE(std::fabs(eq2(r.root, b, zeta)), 1e-12 * std::max(1.0, b * b)) << b << " " << zeta;
        }
    }
}

TEST(SolveXi, RootPastHalfPiForPositiveDrift)
{
    // With zeta > 0 the root leaves (0, pi/2) once b is large enough; the
    // bracket runs to the first zero of 2 xi cos xi + zeta sin xi instead.
    const RootResult r = solve_xi(5.0, 1.8);
    EXPECT_GT(r.root, kPi / 2);
    EXPECT_LT(r.root, kPi);
    EXPECT_LE(std::fabs(eq2(r.root, 5.0, 1.8)), 1e-11);
}

TEST(SolveLambda, Values)
{
    double fixed = 0.7;
    for (int i = 0; i < 2000; ++i) {
        fixed = std::cos(fixed);
    }
    EXPECT_NEAR(solve_lambda(1.0).root, fixed, 1e-12);
    EXPECT_NEAR(solve_lambda(1e-6).root, 1e-6, 1e-17);
    for (double b : {10.0, 100.0, 1000.0}) {
        const double eps = kPi / 2 - solve_lambda(b).root;
        EXPECT_NEAR(eps * b / (kPi / 2), 1.0, 2.0 / b) << b;
    }
}

TEST(SolveLambda, DefiningEquation)
{
    for (double b : {0.01, 0.5, 1.0, 4.0, 50.0}) {
        const double lam = solve_lambda(b).root;
        const double c = std::cos(lam);
        EXPECT_LE(std::fabs(lam * lam / (c * c) - b * b), 1e-12 * std::max(1.0, b * b)) << b;
    }
}

TEST(RateR, TableThreeFirstRow)
{
    const ScaledParams sp = scale({0.3, 0.09, 1.0, 0.06});
    const RateEval r = rate_R(sp.b, sp.zeta);
    EXPECT_EQ(r.branch, RateBranch::Trigonometric);
    EXPECT_NEAR(0.06 * r.value, 0.06272, 5e-6);
}

TEST(RateR, TableOneRow)
{
    const ScaledParams sp = scale({0.3, 0.0, 5.0, 0.1});
    EXPECT_NEAR(sp.b, 0.335410, 1e-6);
    EXPECT_NEAR(0.1 * rate_R(sp.b, 0.0).value, 0.09655, 5e-6);
    EXPECT_NEAR(0.1 * rate_R_zero_drift(std::sqrt(1.25)).value, 0.07714, 5e-6);
}

namespace {

// int_0^1 int_0^1 e^{zeta (s + t)} min(s, t) ds dt by nested quadrature.
double small_b_slope(double zeta)
{
    auto outer = [zeta](double t) {
        auto inner = [zeta](double s) { return s * std::exp(zeta * s); };
        return std::exp(zeta * t) * igbm::integrate_gl15(inner, 0.0, t, 1e-16);
    };
    return 2.0 * igbm::integrate_gl15(outer, 0.0, 1.0, 1e-15);
}

} // namespace

TEST(RateR, TinyB)
{
    // R -> (e^zeta - 1) / zeta as b -> 0; the slope is -int int e^{zeta (s + t)} min(s, t).
    for (double zeta : {-1.5, -0.3, 0.3, 2.0}) {
        const double phi1 = std::expm1(zeta) / zeta;
        EXPECT_NEAR(rate_R(1e-9, zeta).value, phi1, 1e-14) << zeta;
        EXPECT_NEAR(rate_R(1e-4, zeta).value, phi1 - 1e-8 * small_b_slope(zeta), 1e-13) << zeta;
        const double edge = 1e-7 * std::min(1.0, std::exp(-zeta));
        EXPECT_NEAR(rate_R(edge * (1 - 1e-9), zeta).value, rate_R(edge * (1 + 1e-9), zeta).value, 1e-10) << zeta;
    }
}

TEST(RateR, ZeroB)
{
    for (double zeta : {-1.0, 0.0, 0.5, 3.0}) {
        EXPECT_EQ(rate_R(0.0, zeta).value, 1.0);
        EXPECT_EQ(jb(0.0, zeta), 0.0);
    }
}

TEST(RateR, ZeroDriftMatchesGeneral)
{
    for (double b : {0.1, 0.5, 1.0, 2.0, 5.0}) {
        EXPECT_NEAR(rate_R(b, 1e-10).value, rate_R_zero_drift(b).value, 1e-6) << b;
        EXPECT_NEAR(rate_R(b, 0.0).value, rate_R_zero_drift(b).value, 1e-10) << b;
    }
}

TEST(RateR, BranchContinuity)
{
    for (double zeta : {0.25, 0.5, 1.0, 2.0, 4.0}) {
        const double bd = branch_boundary(zeta);
        const double eps = 1e-8;
        const RateEval below = rate_R(bd - eps, zeta);
        const RateEval above = rate_R(bd + eps, zeta);
        EXPECT_EQ(below.branch, RateBranch::Hyperbolic);
        EXPECT_EQ(above.branch, RateBranch::Trigonometric);
        EXPECT_NEAR(below.value, above.value, 1e-6) << zeta;
        // At eps = 1e-8 each side is off the boundary value by about |dR/db| eps.
        const double boundary = rate_R_boundary(zeta);
        EXPECT_NEAR(rate_R(bd, zeta).value, boundary, 1e-15);
        EXPECT_NEAR(rate_R(bd - 1e-10, zeta).value, boundary, 1e-8) << zeta;
        EXPECT_NEAR(rate_R(bd + 1e-10, zeta).value, boundary, 1e-8) << zeta;
    }
}

TEST(RateR, BoundaryValueCorrectedForm)
{
    // The closed form as printed (with -1 + zeta) disagrees with both
    // branches; -1 + zeta^2/4 is what they converge to.
    const double zeta = 1.0;
    const double w = 2.0 + zeta;
    const double printed = -(-1.0 + zeta - 0.5 * w * w + w * w * std::log1p(zeta / 2) / zeta);
    const double limit = rate_R(branch_boundary(zeta) + 1e-9, zeta).value;
    EXPECT_NEAR(rate_R_boundary(zeta), 1.6008140, 1e-7);
    EXPECT_NEAR(limit, rate_R_boundary(zeta), 1e-7);
    EXPECT_GT(std::fabs(printed - limit), 0.1);
}

TEST(RateR, NegativeDriftAgainstOracle)
{
    for (double zeta : {-1.5, -0.5, -0.1}) {
        for (double b : {0.05, 0.3, 1.0, 2.0}) {
            EXPECT_NEAR(jb(b, zeta), jb_variational(b, zeta).value, 1e-8) << b << " " << zeta;
        }
    }
}

TEST(RateR, DomainBelowMinusTwo)
{
    EXPECT_THROW(rate_R(0.5, -2.0), DomainError);
    EXPECT_THROW(rate_R(0.5, -3.0), DomainError);
    EXPECT_THROW(rate_R(-0.5, 0.0), InvalidArgument);
    EXPECT_THROW(rate_R(NAN, 0.0), InvalidArgument);
}

TEST(RateR, JbIncreasingInB)
{
    for (double zeta : {-1.0, -0.3, 0.0, 0.5, 1.8, 4.0}) {
        double previous = -1.0;
        for (double b = 0.02; b < 6.0; b *= 1.15) {
            const double v = jb(b, zeta);
            EXPECT_GT(v, previous) << b << " " << zeta;
            previous = v;
        }
    }
}

TEST(RateR, ResidualsWithinTolerance)
{
    for (double zeta : {0.25, 1.0, 4.0}) {
        for (double frac : {0.1, 0.5, 0.9}) {
            const double b = frac * branch_boundary(zeta);
            const RateEval r = rate_R(b, zeta);
            EXPECT_LE(std::fabs(r.residual), 1e-12);
            EXPECT_LE(std::fabs(eq1(r.root, b, zeta)), 1e-12);
        }
    }
}

TEST(Series, PrintedCoefficientsMatchPowerSeries)
{
    const std::vector<double> c = zero_drift_series(12);
    const double printed[] = {1.0, -1.0 / 3.0, 4.0 / 15.0, -92.0 / 315.0, 1072.0 / 2835.0};
    for (int k = 0; k < 5; ++k) {
        EXPECT_NEAR(c[k], printed[k], 1e-13) << k;
        EXPECT_NEAR(rate_R_series(1.0, 2 * k) - (k ? rate_R_series(1.0, 2 * k - 2) : 0.0), printed[k], 1e-15);
    }
}

TEST(Series, RadiusFromCoefficientRatios)
{
    // Domb-Sykes: c_k / c_{k+1} -> -R_b^2 linearly in 1/k.
    const std::vector<double> c = zero_drift_series(40);
    auto ratio = [&](int k) { return c[k] / c[k + 1]; };
    const int k1 = 36;
    const int k2 = 37;
    const double slope = (ratio(k2) - ratio(k1)) / (1.0 / k2 - 1.0 / k1);
    const double limit = ratio(k2) - slope / k2;
    const double rb = convergence_radius().radius;
    EXPECT_NEAR(-limit, rb * rb, 0.01 * rb * rb);
}

TEST(Series, Examples)
{
    EXPECT_EQ(rate_R_series(0.0, 8), 1.0);
    // 1 - 0.03 + 0.00216 - 0.000212914... + 0.0000248190...
    EXPECT_NEAR(rate_R_series(0.3, 8), 0.971971894857143, 1e-14);
    EXPECT_THROW(rate_R_series(0.3, 3), InvalidArgument);
    EXPECT_THROW(rate_R_series(0.3, 10), InvalidArgument);
}

TEST(Series, AccuracyInsideRadius)
{
    // The error is the first omitted term c_5 b^10 (c_5 = -0.54354...), which
    // stays below 1e-6 up to b = 0.27 and reaches 2.8e-6 at b = 0.3.
    const std::vector<double> c = zero_drift_series(30);
    for (double b = 0.0; b <= 0.27; b += 0.01) {
        EXPECT_LE(std::fabs(rate_R_series(b, 8) - rate_R_zero_drift(b).value), 1e-6) << b;
    }
    for (double b : {0.3, 0.4}) {
        const double err = rate_R_zero_drift(b).value - rate_R_series(b, 8);
        double tail = 0.0;
        for (int k = 5; k < 30; ++k) {
            tail += c[k] * std::pow(b, 2 * k);
        }
        EXPECT_NEAR(err, tail, 1e-9) << b;
        EXPECT_NEAR(err, c[5] * std::pow(b, 10), 0.25 * std::fabs(err)) << b;
    }
}

TEST(Series, DivergesOutsideRadius)
{
    for (double b = 0.9; b < 3.0; b += 0.1) {
        EXPECT_GT(std::fabs(rate_R_series(b, 8) - rate_R_zero_drift(b).value), 1e-2) << b;
    }
}

TEST(LargeB, Examples)
{
    // 2/20 - pi^2/6400 - pi^2/64000
    EXPECT_NEAR(rate_R_largeb(20.0), 0.09830366174356277, 1e-15);
    EXPECT_LT(rate_R_largeb(1e9), 1e-8);
}

// Expanding lambda / cos(lambda) = b with lambda = pi/2 - eps gives
// eps = pi / (2 (b + 1)) + O(b^-3) and R = 2 cos(eps) / b - sin^2(eps), so
// R = 2/b - pi^2/(4 b^2) + pi^2/(4 b^3) + O(b^-4). rate_R_largeb's b^-2 and b^-3
// coefficients differ; the gap to the exact value decays only like b^-2.
TEST(LargeB, ExpansionAgainstExact)
{
    const double pi2 = std::numbers::pi * std::numbers::pi;
    for (double b = 30.0; b < 1e4; b *= 1.7) {
        const double derived = 2 / b - pi2 / (4 * b * b) + pi2 / (4 * b * b * b);
        EXPECT_NEAR(derived, rate_R_zero_drift(b).value, 1e-4) << b;
        const double gap = rate_R_largeb(b) - rate_R_zero_drift(b).value;
        EXPECT_NEAR(gap * b * b, 3 * pi2 / 16, 0.1 * 3 * pi2 / 16 + 40 / b) << b;
    }
}

TEST(Jb, AgainstShootingOracle)
{
    EXPECT_NEAR(jb(0.5, 0.0), jb_variational(0.5, 0.0).value, 1e-4);
    const double lam = solve_lambda(0.5).root;
    EXPECT_NEAR(jb(0.5, 0.0), 0.5 * (std::sin(2 * lam) / lam - std::cos(lam) * std::cos(lam)), 1e-14);
}

TEST(ConvergenceRadius, Constants)
{
    const ConvergenceRadius c = convergence_radius();
    EXPECT_NEAR(c.y0, 1.19968, 1e-5);
    EXPECT_NEAR(c.radius, 0.662743, 1e-6);
    EXPECT_LE(std::fabs(c.y0 * std::tanh(c.y0) - 1.0), 1e-12);
}
