#pragma once

#include "igbm/rootfind.hpp"

namespace igbm {

enum class OptionKind { Call, Put };

const char* to_string(OptionKind k);

/// Continuously averaged Asian option in Black-Scholes, drift a = r - q.
struct AsianInputs {
    double S0 = 0.0;
    double K = 0.0;
    double r = 0.0;
    double q = 0.0;
    double sigma = 0.0;
    double T = 0.0;
    OptionKind kind = OptionKind::Call;
};

void validate(const AsianInputs& inp);

enum class IbsBranch { Hyperbolic, Trigonometric };

const char* to_string(IbsBranch b);

struct IbsEval {
    double value = 0.0;
    IbsBranch branch = IbsBranch::Hyperbolic;
    double root = 0.0;
    double residual = 0.0;
};

enum class AsianMethod { Approx, MonteCarlo, OtmLimit };

const char* to_string(AsianMethod m);

struct OptionQuote {
    double price = 0.0;
    AsianMethod method = AsianMethod::Approx;
    double forward = 0.0;  ///< A_fwd
    double vol = 0.0;      ///< equivalent log-normal volatility (Approx only)
    double rate = 0.0;     ///< I_BS(K/S0)
    double std_error = 0.0; ///< MonteCarlo only
};

/// delta >= 0 with sinh(delta)/delta + 2 zeta sinh^2(delta/2)/delta^2 = x, for x >= 1 + zeta/2.
RootResult ibs_solve_delta(double x, double zeta);

/// xi in [0, pi/2) with sin(2 xi)/(2 xi) (1 + zeta tan(xi) / (2 xi)) = x, for 0 < x <= 1 + zeta/2.
RootResult ibs_solve_xi(double x, double zeta);

/// Rate function I_BS(x) of the time average X_T / T at speed 1/(sigma^2 T).
IbsEval rate_ibs(double x, double zeta);

/// E[A_T] = S0 (e^{aT} - 1) / (aT).
double a_fwd(double S0, double a, double T);

/// Equivalent log-normal volatility
///   sigma_LN = sigma * |log(K / A_fwd)| / sqrt(2 I_BS(K / S0)).
/// Near K = A_fwd (relative distance below 1e-4) the ratio is replaced by
/// its limit from a quadratic fit of I_BS around its zero.
double sigma_ln(double K, double S0, double sigma, double a, double T);

/// Black formula df * (F N(d1) - K N(d2)) for calls, put by parity.
double european_bs_price(double F, double K, double T, double vol, double df, OptionKind kind);

/// Asian price as a European option on A_fwd at volatility sigma_LN.
OptionQuote asian_price_approx(const AsianInputs& inp);

/// Limit of (sigma^2 T) log(price) for an out-of-the-money option: -I_BS(K/S0).
double otm_log_price_limit(double K, double S0, double sigma, double a, double T, OptionKind kind);

} // namespace igbm
