#include "igbm/dothan.hpp"

#include "igbm/errors.hpp"
#include "igbm/model.hpp"
#include "igbm/quadrature.hpp"
#include "igbm/ratefn.hpp"
#include "igbm/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace igbm {
namespace {

// (e^x - 1) / x
double phi1(double x)
{
    if (std::fabs(x) < 1e-6) {
        return 1.0 + x / 2.0 + x * x / 6.0;
    }
    return std::expm1(x) / x;
}

// d/dx of phi1
double phi1_prime(double x)
{
    if (std::fabs(x) < 1e-3) {
        return 0.5 + x / 3.0 + x * x / 8.0 + x * x * x / 30.0;
    }
    return (std::exp(x) * (x - 1.0) + 1.0) / (x * x);
}

// (phi1(x2) - phi1(x1)) / (x2 - x1), with the coincident limit.
double phi1_divided(double x1, double x2)
{
    if (std::fabs(x2 - x1) < 1e-5 * std::max(1.0, std::fabs(x1))) {
        return phi1_prime(0.5 * (x1 + x2));
    }
    return (phi1(x2) - phi1(x1)) / (x2 - x1);
}

BondQuote make_quote(double price, BondMethod method, double T)
{
    BondQuote q;
    q.price = price;
    q.method = method;
    q.yield_equiv = T > 0.0 ? -std::log(price) / T : 0.0;
    return q;
}

void require_bond_inputs(double r0, double sigma, double T, const char* op)
{
    detail::require(std::isfinite(r0) && std::isfinite(sigma) && std::isfinite(T), op,
                    "inputs must be finite");
    detail::require(r0 >= 0.0, op, "r0 must be non-negative");
    detail::require(sigma > 0.0, op, "sigma must be positive");
    detail::require(T > 0.0, op, "T must be positive");
}

} // namespace

const char* to_string(BondMethod m)
{
    switch (m) {
    case BondMethod::Asymptotic:
        return "asymptotic";
    case BondMethod::ExactQuadrature:
        return "exact";
    case BondMethod::SmallRate:
        return "small-r0";
    case BondMethod::TaylorSmallT:
        return "taylor";
    case BondMethod::Perpetual:
        return "perpetual";
    case BondMethod::MonteCarlo:
        return "mc";
    }
    return "unknown";
}

BondQuote bond_asymptotic(double r0, double sigma, double a, double T)
{
    require_bond_inputs(r0, sigma, T, "bond_asymptotic");
    if (r0 == 0.0) {
        return make_quote(1.0, BondMethod::Asymptotic, T);
    }
    const ScaledParams sp = scale({sigma, a, T, r0});
    const RateEval rate = rate_R(sp.b, sp.zeta);
    BondQuote q = make_quote(std::exp(-r0 * T * rate.value), BondMethod::Asymptotic, T);
    q.yield_equiv = r0 * rate.value;
    q.rate = rate.value;
    q.root = rate.root;
    return q;
}

BondQuote bond_exact_zero_drift(double r0, double sigma, double T, double quad_tol)
{
    require_bond_inputs(r0, sigma, T, "bond_exact_zero_drift");
    detail::require(quad_tol > 0.0, "bond_exact_zero_drift", "quad_tol must be positive");
    if (r0 == 0.0) {
        return make_quote(1.0, BondMethod::ExactQuadrature, T);
    }
    const DothanScaled ds = dothan_scale({sigma, 0.0, T, r0});
    const double s = ds.s;
    const double root_s = std::sqrt(s);
    const double root_y = std::sqrt(ds.y);

    // e^{-z} Erfc((s-2z)/(2 sqrt s)) - e^{z} Erfc((s+2z)/(2 sqrt s)) - 2 e^{-z}, with
    // both exponentially small pieces written through erfcx and the common
    // factor exp(-s/4 - z^2/s).
    auto bracket = [s, root_s](double z) {
        const double w = (2.0 * z - s) / (2.0 * root_s);
        const double v = (2.0 * z + s) / (2.0 * root_s);
        const double envelope = std::exp(-0.25 * s - z * z / s);
        const double first = w >= 0.0 ? envelope * erfcx(w) : std::exp(-z) * std::erfc(w);
        return -first - envelope * erfcx(v);
    };

    LobeQuadOptions opts;
    opts.tol = quad_tol / std::max(1.0, root_y);
    const LobeQuadResult quad = integrate_sine_sinh(2.0 * root_y, bracket, opts);

    BondQuote q = make_quote(1.0 + root_y * quad.value, BondMethod::ExactQuadrature, T);
    q.error_estimate = root_y * quad.error_estimate;
    q.lobes = quad.lobes;
    return q;
}

double sine_sinh_exp_integral(double a, double tol)
{
    LobeQuadOptions opts;
    opts.tol = tol;
    opts.accelerate = true;
    return integrate_sine_sinh(a, [](double z) { return std::exp(-z); }, opts).value;
}

double moment_m1(double a, double sigma, double T)
{
    (void)sigma;
    detail::require(T > 0.0, "moment_m1", "T must be positive");
    return T * phi1(a * T);
}

double moment_m2(double a, double sigma, double T)
{
    detail::require(T > 0.0, "moment_m2", "T must be positive");
    const double s2 = sigma * sigma;
    return 2.0 * T * T * phi1_divided(a * T, (2.0 * a + s2) * T);
}

double moment_m3_bound(double a, double sigma, double T)
{
    detail::require(T > 0.0, "moment_m3_bound", "T must be positive");
    // E[e^{3 sigma W_s + 3 (a - sigma^2/2) s}] = e^{3 (a + sigma^2) s}.
    return T * T * T * phi1(3.0 * (a + sigma * sigma) * T);
}

BondQuote bond_small_rate(double r0, double sigma, double a, double T)
{
    require_bond_inputs(r0, sigma, T, "bond_small_rate");
    const double first = r0 * moment_m1(a, sigma, T);
    const double second = 0.5 * r0 * r0 * moment_m2(a, sigma, T);
    BondQuote q = make_quote(1.0 - first + second, BondMethod::SmallRate, T);
    q.first_term = first;
    q.second_term = second;
    return q;
}

BondQuote bond_taylor_small_T(double r0, double sigma, double T)
{
    require_bond_inputs(r0, sigma, T, "bond_taylor_small_T");
    const double s2 = sigma * sigma;
    const double s4 = s2 * s2;
    const double T2 = T * T;
    const double per_rate = 1.0 - s2 * r0 * T2 / 6.0 - s4 * r0 * T2 * T / 24.0 -
                            (s4 * s2 * r0 / 120.0 - s4 * r0 * r0 / 15.0) * T2 * T2;
    BondQuote q = make_quote(std::exp(-r0 * T * per_rate), BondMethod::TaylorSmallT, T);
    q.yield_equiv = r0 * per_rate;
    return q;
}

BondQuote bond_perpetual(double r0, double sigma, double a)
{
    detail::require(std::isfinite(r0) && std::isfinite(sigma) && std::isfinite(a), "bond_perpetual",
                    "inputs must be finite");
    detail::require(r0 > 0.0 && sigma > 0.0, "bond_perpetual", "r0 and sigma must be positive");
    const double s2 = sigma * sigma;
    if (!(a < 0.5 * s2)) {
        throw DomainError("bond_perpetual: no finite limit for a >= sigma^2/2 (a=" + std::to_string(a) +
                          ", sigma^2/2=" + std::to_string(0.5 * s2) + ")");
    }
    const double order = 1.0 - 2.0 * a / s2;
    const double y = 2.0 * r0 / s2;
    const double arg = 2.0 * std::sqrt(y);
    // Assembled in logs: y^{order/2} and K_order(arg) can over/underflow separately.
    const double log_price = std::log(2.0) - std::lgamma(order) + 0.5 * order * std::log(y) +
                             std::log(bessel_k(order, arg));
    BondQuote q;
    q.price = std::exp(log_price);
    q.method = BondMethod::Perpetual;
    q.yield_equiv = 0.0;
    return q;
}

} // namespace igbm
