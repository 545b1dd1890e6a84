#pragma once

namespace igbm {

/// Complementary error function.
double erfc(double x);

/// Scaled complementary error function exp(x^2) erfc(x). Finite for all
/// x > -26; used where exp(z) erfc(.) would form 0 * inf.
double erfcx(double x);

/// Modified Bessel function of the second kind K_nu(x), nu >= 0, x > 0.
/// Throws DomainError for x <= 0 or nu < 0 (use K_{-nu} = K_nu at the call site).
double bessel_k(double nu, double x);

/// Gamma function. Throws PoleError at non-positive integers.
double gamma_fn(double x);

} // namespace igbm
