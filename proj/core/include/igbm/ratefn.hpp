#pragma once

#include "igbm/rootfind.hpp"

namespace igbm {

enum class RateBranch { Hyperbolic, Trigonometric, Boundary, ZeroDrift };

const char* to_string(RateBranch b);

/// Value of the bond-side rate function R(b, zeta) with the positive sign
/// convention: J_B = 2 b^2 R and B_asympt = exp(-r0 T R).
struct RateEval {
    double value = 0.0;
    RateBranch branch = RateBranch::ZeroDrift;
    double root = 0.0;     ///< delta (hyperbolic), xi (trigonometric) or lambda (zero drift)
    double residual = 0.0; ///< residual of the defining equation at root
    int iterations = 0;
};

/// b at which the hyperbolic and trigonometric branches meet: |zeta| / (2 + zeta).
double branch_boundary(double zeta);

/// delta in [0, |zeta|] solving zeta^2 - delta^2 = 4 b^2 (cosh(delta/2) + (zeta/delta) sinh(delta/2))^2.
/// Requires b below branch_boundary(zeta); throws BranchError otherwise.
RootResult solve_delta(double b, double zeta);

/// xi in (0, pi/2) solving 2 xi^2 (4 xi^2 + zeta^2) = 2 b^2 (2 xi cos xi + zeta sin xi)^2.
/// Throws NoRootInInterval when the bracket shows no sign change.
RootResult solve_xi(double b, double zeta);

/// lambda in (0, pi/2) with lambda / cos(lambda) = b, b > 0.
RootResult solve_lambda(double b);

/// R(b, zeta). b = 0 returns 1 by continuity.
RateEval rate_R(double b, double zeta);

/// R(b, 0) = sin(2 lambda) / lambda - cos^2 lambda.
RateEval rate_R_zero_drift(double b);

/// Partial sum of the small-b series of R(b, 0); order in {0, 2, 4, 6, 8}.
double rate_R_series(double b, int order = 8);

/// 2/b - pi^2/(16 b^2) - pi^2/(8 b^3).
double rate_R_largeb(double b);

/// Closed-form R at b = branch_boundary(zeta), zeta != 0.
double rate_R_boundary(double zeta);

/// J_B(b, zeta) = 2 b^2 R(b, zeta).
double jb(double b, double zeta);

struct ConvergenceRadius {
    double y0 = 0.0; ///< positive root of y tanh y = 1
    double radius = 0.0; ///< R_b = y0 / cosh y0
    double residual = 0.0;
};

/// Radius of convergence of the small-b series of R(b, 0).
ConvergenceRadius convergence_radius();

} // namespace igbm
