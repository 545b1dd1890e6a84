#include "igbm/asian.hpp"

#include "igbm/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace igbm {
namespace {

constexpr double kSeriesCut = 1e-4;
constexpr double kSolveTol = 1e-13;
constexpr double kAtmWidth = 1e-4;

double sinc(double x)
{
    if (std::fabs(x) < kSeriesCut) {
        const double x2 = x * x;
        return 1.0 - x2 / 6.0 * (1.0 - x2 / 20.0 * (1.0 - x2 / 42.0));
    }
    return std::sin(x) / x;
}

double sinhc(double x)
{
    if (std::fabs(x) < kSeriesCut) {
        const double x2 = x * x;
        return 1.0 + x2 / 6.0 * (1.0 + x2 / 20.0 * (1.0 + x2 / 42.0));
    }
    return std::sinh(x) / x;
}

// tanh(x)/x
double tanhc(double x)
{
    if (std::fabs(x) < kSeriesCut) {
        const double x2 = x * x;
        return 1.0 - x2 / 3.0 + 2.0 * x2 * x2 / 15.0 - 17.0 * x2 * x2 * x2 / 315.0;
    }
    return std::tanh(x) / x;
}

// sinh(d)/d + 2 zeta sinh^2(d/2)/d^2
double hyperbolic_lhs(double d, double zeta)
{
    const double h = sinhc(0.5 * d);
    return sinhc(d) + 0.5 * zeta * h * h;
}

// cos(xi) + zeta sin(xi)/(2 xi)
double trig_factor(double xi, double zeta)
{
    return std::cos(xi) + 0.5 * zeta * sinc(xi);
}

// sin(2 xi)/(2 xi) (1 + zeta tan(xi)/(2 xi)) written as sinc(xi) * trig_factor,
// which stays finite through xi = pi/2.
double trig_lhs(double xi, double zeta)
{
    return sinc(xi) * trig_factor(xi, zeta);
}

// First positive zero of trig_factor.
double trig_limit(double zeta)
{
    if (zeta == 0.0) {
        return 0.5 * std::numbers::pi;
    }
    auto g = [zeta](double xi) { return trig_factor(xi, zeta); };
    const double lo = zeta < 0.0 ? 0.0 : 0.5 * std::numbers::pi;
    const double hi = zeta < 0.0 ? 0.5 * std::numbers::pi : std::numbers::pi;
    return solve_bracketed(g, lo, hi, {1e-15, 200}).root;
}

void require_drift(double zeta, const char* op)
{
    if (!(zeta > -2.0) || !std::isfinite(zeta)) {
        throw DomainError(std::string(op) + ": requires finite zeta > -2, got " + std::to_string(zeta));
    }
}

double norm_cdf(double x)
{
    return 0.5 * std::erfc(-x * std::numbers::sqrt2 * 0.5);
}

} // namespace

const char* to_string(OptionKind k)
{
    return k == OptionKind::Call ? "call" : "put";
}

const char* to_string(IbsBranch b)
{
    return b == IbsBranch::Hyperbolic ? "hyperbolic" : "trigonometric";
}

const char* to_string(AsianMethod m)
{
    switch (m) {
    case AsianMethod::Approx:
        return "approx";
    case AsianMethod::MonteCarlo:
        return "mc";
    case AsianMethod::OtmLimit:
        return "otm-limit";
    }
    return "unknown";
}

void validate(const AsianInputs& inp)
{
    detail::require(std::isfinite(inp.S0) && std::isfinite(inp.K) && std::isfinite(inp.r) &&
                        std::isfinite(inp.q) && std::isfinite(inp.sigma) && std::isfinite(inp.T),
                    "asian", "inputs must be finite");
    detail::require(inp.S0 > 0.0, "asian", "S0 must be positive");
    detail::require(inp.K > 0.0, "asian", "K must be positive");
    detail::require(inp.sigma > 0.0, "asian", "sigma must be positive");
    detail::require(inp.T > 0.0, "asian", "T must be positive");
}

RootResult ibs_solve_delta(double x, double zeta)
{
    require_drift(zeta, "ibs_solve_delta");
    const double edge = 1.0 + 0.5 * zeta;
    if (!(x >= edge)) {
        throw BranchError("ibs_solve_delta: requires x >= 1 + zeta/2, got x=" + std::to_string(x));
    }
    if (x == edge) {
        return {0.0, 0.0, 0, 0.0, 0.0};
    }
    auto f = [x, zeta](double d) { return hyperbolic_lhs(d, zeta) - x; };
    double hi = 1.0;
    while (f(hi) < 0.0) {
        hi *= 2.0;
        if (hi > 1400.0) {
            throw DomainError("ibs_solve_delta: x=" + std::to_string(x) + " is out of range");
        }
    }
    return solve_bracketed(f, 0.0, hi, {kSolveTol, 200});
}

RootResult ibs_solve_xi(double x, double zeta)
{
    require_drift(zeta, "ibs_solve_xi");
    const double edge = 1.0 + 0.5 * zeta;
    if (!(x > 0.0) || x > edge) {
        throw BranchError("ibs_solve_xi: requires 0 < x <= 1 + zeta/2, got x=" + std::to_string(x));
    }
    if (x == edge) {
        return {0.0, 0.0, 0, 0.0, 0.0};
    }
    const double limit = trig_limit(zeta);
    auto f = [x, zeta](double xi) { return trig_lhs(xi, zeta) - x; };
    if (f(limit) > 0.0) {
        throw NoRootInInterval("ibs_solve_xi: x=" + std::to_string(x) + " below the reachable range");
    }
    return solve_bracketed(f, 0.0, limit, {kSolveTol, 200});
}

IbsEval rate_ibs(double x, double zeta)
{
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw DomainError("rate_ibs: x must be positive, got " + std::to_string(x));
    }
    require_drift(zeta, "rate_ibs");
    const double z2 = zeta * zeta;
    if (x >= 1.0 + 0.5 * zeta) {
        const RootResult r = ibs_solve_delta(x, zeta);
        const double d = r.root;
        const double t = 0.5 * tanhc(0.5 * d); // tanh(d/2)/d
        const double v = 0.5 * (d * d - z2) * (1.0 - 2.0 * t / (1.0 + zeta * t)) -
                         2.0 * zeta * std::log(std::cosh(0.5 * d) + 0.5 * zeta * sinhc(0.5 * d)) + z2;
        return {std::max(v, 0.0), IbsBranch::Hyperbolic, d, r.residual};
    }
    const RootResult r = ibs_solve_xi(x, zeta);
    const double xi = r.root;
    const double q = trig_factor(xi, zeta);
    const double v = 2.0 * (xi * xi + 0.25 * z2) * (sinc(xi) / q - 1.0) - 2.0 * zeta * std::log(q) + z2;
    return {std::max(v, 0.0), IbsBranch::Trigonometric, xi, r.residual};
}

double a_fwd(double S0, double a, double T)
{
    detail::require(S0 > 0.0 && T > 0.0, "a_fwd", "S0 and T must be positive");
    const double zeta = a * T;
    if (std::fabs(zeta) < 1e-6) {
        return S0 * (1.0 + zeta / 2.0 + zeta * zeta / 6.0);
    }
    return S0 * std::expm1(zeta) / zeta;
}

double sigma_ln(double K, double S0, double sigma, double a, double T)
{
    detail::require(K > 0.0 && S0 > 0.0, "sigma_ln", "K and S0 must be positive");
    detail::require(sigma > 0.0 && T > 0.0, "sigma_ln", "sigma and T must be positive");
    const double zeta = a * T;
    const double forward = a_fwd(S0, a, T);
    const double x = K / S0;
    const double x0 = forward / S0;

    auto ratio = [&](double xx) {
        const double l = std::log(xx / x0);
        return l * l / (2.0 * rate_ibs(xx, zeta).value);
    };

    if (std::fabs(K / forward - 1.0) < kAtmWidth) {
        // log^2(x/x0) / (2 I(x)) is smooth through x0; symmetric pairs cancel
        // the odd terms and a Richardson step removes the h^2 term.
        const double h = 2e-3;
        const double r1 = 0.5 * (ratio(x0 * (1.0 + h)) + ratio(x0 * (1.0 - h)));
        const double r2 = 0.5 * (ratio(x0 * (1.0 + 2.0 * h)) + ratio(x0 * (1.0 - 2.0 * h)));
        return sigma * std::sqrt((4.0 * r1 - r2) / 3.0);
    }
    return sigma * std::sqrt(ratio(x));
}

double european_bs_price(double F, double K, double T, double vol, double df, OptionKind kind)
{
    detail::require(F > 0.0 && K >= 0.0 && T > 0.0 && df > 0.0, "european_bs_price",
                    "F, T, df must be positive and K non-negative");
    detail::require(vol >= 0.0, "european_bs_price", "vol must be non-negative");
    const double sd = vol * std::sqrt(T);
    double call;
    if (sd == 0.0 || K == 0.0) {
        call = std::max(F - K, 0.0);
    } else {
        const double d1 = (std::log(F / K) + 0.5 * sd * sd) / sd;
        const double d2 = d1 - sd;
        call = F * norm_cdf(d1) - K * norm_cdf(d2);
    }
    if (kind == OptionKind::Call) {
        return df * call;
    }
    return df * (call - (F - K));
}

OptionQuote asian_price_approx(const AsianInputs& inp)
{
    validate(inp);
    const double a = inp.r - inp.q;
    OptionQuote quote;
    quote.method = AsianMethod::Approx;
    quote.forward = a_fwd(inp.S0, a, inp.T);
    quote.rate = rate_ibs(inp.K / inp.S0, a * inp.T).value;
    quote.vol = sigma_ln(inp.K, inp.S0, inp.sigma, a, inp.T);
    quote.price = european_bs_price(quote.forward, inp.K, inp.T, quote.vol, std::exp(-inp.r * inp.T), inp.kind);
    return quote;
}

double otm_log_price_limit(double K, double S0, double sigma, double a, double T, OptionKind kind)
{
    detail::require(K > 0.0 && S0 > 0.0 && sigma > 0.0 && T > 0.0, "otm_log_price_limit",
                    "K, S0, sigma, T must be positive");
    const bool otm = kind == OptionKind::Call ? K >= S0 : K <= S0;
    if (!otm) {
        throw DomainError(std::string("otm_log_price_limit: ") + to_string(kind) + " with K=" +
                          std::to_string(K) + ", S0=" + std::to_string(S0) + " is not out of the money");
    }
    return -rate_ibs(K / S0, a * T).value;
}

} // namespace igbm
