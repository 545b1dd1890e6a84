#pragma once

#include <cstddef>

namespace igbm {

enum class BondMethod { Asymptotic, ExactQuadrature, SmallRate, TaylorSmallT, Perpetual, MonteCarlo };

const char* to_string(BondMethod m);

/// Zero-coupon bond price P(0,T) = E[exp(-int_0^T r_s ds)] with r_t a
/// geometric Brownian motion started at r0.
struct BondQuote {
    double price = 1.0;
    BondMethod method = BondMethod::Asymptotic;
    double yield_equiv = 0.0; ///< -log(price) / T; 0 for the perpetual bond

    // Method-specific diagnostics; unused fields stay zero.
    double rate = 0.0;           ///< R(b, zeta) (Asymptotic)
    double root = 0.0;           ///< delta / xi / lambda (Asymptotic)
    double error_estimate = 0.0; ///< quadrature error (ExactQuadrature)
    std::size_t lobes = 0;       ///< quadrature lobes (ExactQuadrature)
    double first_term = 0.0;     ///< r0 m1 (SmallRate)
    double second_term = 0.0;    ///< r0^2 m2 / 2 (SmallRate)
    double std_error = 0.0;      ///< MonteCarlo
};

/// exp(-r0 T R(b, zeta)).
BondQuote bond_asymptotic(double r0, double sigma, double a, double T);

/// Exact price for a = 0 from the single oscillatory integral, stabilised by
/// subtracting 2 e^{-z} inside the bracket (its integral is known in closed form).
BondQuote bond_exact_zero_drift(double r0, double sigma, double T, double quad_tol = 1e-9);

/// The same integral with an arbitrary envelope; exposed for the
/// identity check int_0^inf e^{-z} sin(a sinh z) dz = 1/a - K_1(a).
double sine_sinh_exp_integral(double a, double tol = 1e-12);

/// First moment E[X_T] = (e^{aT} - 1) / a.
double moment_m1(double a, double sigma, double T);

/// Second moment E[X_T^2] = 2/(a + sigma^2) [ (e^{(2a+sigma^2)T} - 1)/(2a + sigma^2) - (e^{aT} - 1)/a ].
double moment_m2(double a, double sigma, double T);

/// Upper bound T^2 (e^{3(a + sigma^2)T} - 1) / (3(a + sigma^2)) on E[X_T^3] (Jensen on the cube).
double moment_m3_bound(double a, double sigma, double T);

/// 1 - r0 m1 + r0^2 m2 / 2.
BondQuote bond_small_rate(double r0, double sigma, double a, double T);

/// Small-T expansion of -log(B) / (r0 T) for a = 0, through T^4.
BondQuote bond_taylor_small_T(double r0, double sigma, double T);

/// Limit T -> inf for a < sigma^2 / 2.
BondQuote bond_perpetual(double r0, double sigma, double a);

} // namespace igbm
