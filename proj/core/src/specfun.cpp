#include "igbm/specfun.hpp"

#include "igbm/errors.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace igbm {

double erfc(double x)
{
    return std::erfc(x);
}

double erfcx(double x)
{
    if (std::isnan(x)) {
        return x;
    }
    // exp(x^2) erfc(x) loses nothing below the crossover; erfc itself only
    // underflows past x ~ 26.
    constexpr double crossover = 5.0;
    if (x < crossover) {
        return std::exp(x * x) * std::erfc(x);
    }
    // erfcx(x) = 1/sqrt(pi) * 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...)))), evaluated bottom-up.
    constexpr int depth = 80;
    double tail = x;
    for (int n = depth; n >= 1; --n) {
        tail = x + 0.5 * n / tail;
    }
    return std::numbers::inv_sqrtpi / tail;
}

double bessel_k(double nu, double x)
{
    if (!(x > 0.0)) {
        throw DomainError("bessel_k: x must be positive, got " + std::to_string(x));
    }
    if (!(nu >= 0.0)) {
        throw DomainError("bessel_k: order must be non-negative, got " + std::to_string(nu));
    }
    return std::cyl_bessel_k(nu, x);
}

double gamma_fn(double x)
{
    if (x <= 0.0 && std::floor(x) == x) {
        throw PoleError("gamma_fn: pole at " + std::to_string(x));
    }
    return std::tgamma(x);
}

} // namespace igbm
