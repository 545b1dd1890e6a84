#include "igbm/errors.hpp"
#include "igbm/rootfind.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace igbm;

TEST(SolveBracketed, QuadraticRoot)
{
    const RootResult r = solve_bracketed([](double x) { return x * x - 4.0; }, 0.0, 3.0, {1e-12, 200});
    EXPECT_NEAR(r.root, 2.0, 1e-12);
    EXPECT_LE(std::fabs(r.residual), 1e-11);
}

TEST(SolveBracketed, Identity)
{
    const RootResult r = solve_bracketed([](double x) { return x; }, -1.0, 2.0);
    EXPECT_NEAR(r.root, 0.0, 1e-12);
}

TEST(SolveBracketed, LambdaEquation)
{
    // lambda^2 / cos^2(lambda) = b^2 at b = 1 on an inset of (0, pi/2)
    auto f = [](double lam) {
        const double c = std::cos(lam);
        return lam * lam / (c * c) - 1.0;
    };
    const auto [lo, hi] = inset(0.0, 0.5 * std::numbers::pi);
    const RootResult r = solve_bracketed(f, lo, hi, {1e-12, 200});
    EXPECT_LE(std::fabs(f(r.root)), 1e-12);
    // Independent oracle: fixed point of lambda = cos(lambda).
    double x = 0.7;
    for (int i = 0; i < 2000; ++i) {
        x = std::cos(x);
    }
    EXPECT_NEAR(r.root, x, 1e-11);
}

TEST(SolveBracketed, RootStaysInBracket)
{
    auto f = [](double x) { return std::atan(50.0 * (x - 0.3)); };
    for (double lo : {-5.0, 0.0, 0.29}) {
        for (double hi : {0.31, 1.0, 40.0}) {
            const RootResult r = solve_bracketed(f, lo, hi);
            EXPECT_GE(r.root, lo);
            EXPECT_LE(r.root, hi);
            EXPECT_LE(r.lo, r.root);
            EXPECT_GE(r.hi, r.root);
            EXPECT_NEAR(r.root, 0.3, 1e-12);
        }
    }
}

TEST(SolveBracketed, SteepFlatFunction)
{
    // Flat near the root, steep near the right end.
    auto f = [](double x) { return std::pow(x - 1.0, 3) + 1e-3 * std::tan(x); };
    const RootResult r = solve_bracketed(f, 0.0, 1.5, {1e-14, 200});
    EXPECT_LE(std::fabs(f(r.root)), 1e-14);
}

TEST(SolveBracketed, NoSignChange)
{
    EXPECT_THROW(solve_bracketed([](double x) { return x * x + 1.0; }, -1.0, 1.0), NoSignChange);
}

TEST(SolveBracketed, MaxIterations)
{
    // Nonlinear, so the first secant step cannot land on the root.
    auto f = [](double x) { return std::exp(x) - 2.0; };
    EXPECT_THROW(solve_bracketed(f, 0.0, 5.0, {1e-300, 3}), MaxIterations);
}

TEST(SolveBracketed, BadTolerance)
{
    EXPECT_THROW(solve_bracketed([](double x) { return x; }, -1.0, 1.0, {0.0, 10}), InvalidArgument);
}

TEST(SolveBracketed, NanAtEndpoint)
{
    EXPECT_THROW(solve_bracketed([](double x) { return std::log(x); }, -1.0, 2.0), DomainError);
}

TEST(Inset, ShrinksBothEnds)
{
    const auto [lo, hi] = inset(0.0, 2.0, 1e-12);
    EXPECT_GT(lo, 0.0);
    EXPECT_LT(hi, 2.0);
    EXPECT_NEAR(lo, 2e-12, 1e-25);
}
