#include "igbm/errors.hpp"
#include "igbm/model.hpp"
#include "igbm/ratefn.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

using namespace igbm;

TEST(Scale, TableThreeLongMaturity)
{
    const ScaledParams sp = scale({0.3, 0.09, 20.0, 0.06});
    EXPECT_NEAR(sp.b, 1.0392304845413265, 1e-12);
    EXPECT_NEAR(sp.zeta, 1.8, 1e-15);
}

TEST(Scale, ZeroThetaGivesZeroB)
{
    const ScaledParams sp = scale({0.7, 0.0, 1.0, 0.0});
    EXPECT_EQ(sp.b, 0.0);
    EXPECT_EQ(sp.zeta, 0.0);
}

TEST(Scale, TableThreeOneYear)
{
    const ScaledParams sp = scale({0.3, 0.09, 1.0, 0.06});
    EXPECT_NEAR(sp.b, 0.05196152422706632, 1e-14);
    EXPECT_NEAR(sp.zeta, 0.09, 1e-15);
}

TEST(Scale, RejectsNonFinite)
{
    const double nan = std::numeric_limits<double>::quiet_NaN();
    EXPECT_THROW(scale({nan, 0.0, 1.0, 0.1}), InvalidArgument);
    EXPECT_THROW(scale({0.3, INFINITY, 1.0, 0.1}), InvalidArgument);
}

TEST(Scale, ThetaRoundTrip)
{
    for (double b : {0.01, 0.3, 1.0, 7.5}) {
        for (double sigma : {0.1, 0.5}) {
            for (double T : {0.5, 3.0, 20.0}) {
                const double theta = theta_for_b(b, sigma, T);
                EXPECT_NEAR(scale({sigma, 0.0, T, theta}).b, b, 4e-16 * b) << b << " " << sigma << " " << T;
            }
        }
    }
}

TEST(DothanScale, Examples)
{
    DothanScaled d = dothan_scale({0.1, 0.0, 1.0, 0.1});
    EXPECT_NEAR(d.y, 20.0, 1e-12);
    EXPECT_NEAR(d.s, 0.005, 1e-15);
    d = dothan_scale({0.5, 0.0, 10.0, 0.1});
    EXPECT_NEAR(d.y, 0.8, 1e-14);
    EXPECT_NEAR(d.s, 1.25, 1e-14);
    d = dothan_scale({0.2, 0.0, 2.0, 0.02});
    EXPECT_NEAR(d.y, 1.0, 1e-14);
    EXPECT_NEAR(d.s, 0.04, 1e-15);
}

TEST(DothanScale, RejectsZeroRate)
{
    EXPECT_THROW(dothan_scale({0.3, 0.0, 1.0, 0.0}), InvalidArgument);
}

TEST(Validate, Invariants)
{
    EXPECT_NO_THROW(validate({0.3, -0.2, 1.0, 0.0}));
    EXPECT_THROW(validate({0.0, 0.0, 1.0, 0.1}), InvalidArgument);
    EXPECT_THROW(validate({0.3, 0.0, 0.0, 0.1}), InvalidArgument);
    EXPECT_THROW(validate({0.3, 0.0, 1.0, -0.1}), InvalidArgument);
}

TEST(TMax, ExplicitThreshold)
{
    EXPECT_NEAR(t_max(0.1, 0.3, 0.9), 10.0, 1e-12);
    EXPECT_NEAR(t_max(0.05, 1.0, 0.9), std::sqrt(18.0), 1e-12);
}

TEST(TMax, DefaultThresholdIsTwiceRadiusSquared)
{
    const double rb = convergence_radius().radius;
    EXPECT_NEAR(series_threshold(), 2.0 * rb * rb, 1e-15);
    // Not the 0.582 printed alongside the same definition.
    EXPECT_NEAR(series_threshold(), 0.878457, 1e-6);
    EXPECT_NEAR(t_max(0.1, 0.3), std::sqrt(series_threshold() / 0.009), 1e-12);
}

TEST(TMax, DecreasingInRateAndVolatility)
{
    for (double sigma : {0.1, 0.3, 0.5, 1.0}) {
        double previous = INFINITY;
        for (double r0 = 0.005; r0 < 0.3; r0 += 0.005) {
            const double t = t_max(r0, sigma);
            EXPECT_LT(t, previous);
            previous = t;
        }
    }
    for (double r0 : {0.01, 0.05, 0.2}) {
        double previous = INFINITY;
        for (double sigma = 0.05; sigma < 2.0; sigma += 0.05) {
            const double t = t_max(r0, sigma);
            EXPECT_LT(t, previous);
            previous = t;
        }
    }
}

TEST(TMax, RejectsNonPositive)
{
    EXPECT_THROW(t_max(0.0, 0.3, 0.9), InvalidArgument);
    EXPECT_THROW(t_max(0.1, 0.0, 0.9), InvalidArgument);
    EXPECT_THROW(t_max(0.1, 0.3, 0.0), InvalidArgument);
}
