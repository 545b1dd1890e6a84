#pragma once

#include "igbm/asian.hpp"
#include "igbm/rng.hpp"

#include <cstddef>
#include <cstdint>

namespace igbm {

/// Monte Carlo mean with its standard error. n_paths counts individual
/// paths (twice the number of antithetic pairs).
struct MCEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t n_paths = 0;
    std::size_t n_steps = 0;
    std::uint64_t seed = 0;
};

struct MCOptions {
    std::size_t n_paths = 1'000'000;
    std::size_t n_steps = 512;
    std::uint64_t seed = 20240531;
    /// Worker threads; 0 uses the hardware concurrency. Results do not depend
    /// on this value: pairs are reduced in fixed blocks, in block order.
    unsigned threads = 1;
};

/// One sample of X_T = int_0^T exp(sigma W_s + (a - sigma^2/2) s) ds: exact
/// gBM values on a uniform grid, trapezoid rule in time.
double sample_integral_gbm(double sigma, double a, double T, std::size_t n_steps, PathStream& rng);

/// E[exp(-theta X_T)] over antithetic pairs.
MCEstimate mc_laplace(double theta, double sigma, double a, double T, const MCOptions& opts = {});

/// E[X_T^k] over antithetic pairs (plain moments, no closed form needed).
MCEstimate mc_moment(int k, double sigma, double a, double T, const MCOptions& opts = {});

/// Discounted Asian payoff e^{-rT} E[(A_T - K)^+] (or the put) with
/// A_T = S0 X_T / T, a = r - q.
MCEstimate mc_asian_price(const AsianInputs& inp, const MCOptions& opts = {});

/// Same estimator without antithetic pairing (every path independent).
MCEstimate mc_laplace_plain(double theta, double sigma, double a, double T, const MCOptions& opts = {});

struct ShootingResult {
    double value = 0.0;         ///< J_B or I_BS on the computed trajectory
    double initial_slope = 0.0; ///< h'(0)
    double multiplier = 0.0;    ///< constraint multiplier (I_BS only)
    std::size_t ode_steps = 0;
    double bc_residual = 0.0;   ///< residual of the boundary / constraint condition
};

/// Direct minimisation of 2 b^2 int e^h + 1/2 int (h' - zeta)^2 over h(0) = 0
/// by shooting on h'(0) for h'' = 2 b^2 e^h with h'(1) = zeta.
ShootingResult jb_variational(double b, double zeta, double ode_tol = 1e-11);

/// Direct minimisation of 1/2 int (h' - zeta)^2 under h(0) = 0, int e^h = x.
///
/// h'' = -mu e^h with h'(1) = zeta. The problem is shot from t = 1: with
/// g(1) = 0, g'(1) = zeta and g'' = -kappa e^g integrated backwards,
/// h = g - g(0) satisfies both boundary conditions for every kappa, with
/// mu = kappa e^{g(0)}. A scalar solve on kappa enforces the constraint.
ShootingResult ibs_variational(double x, double zeta, double ode_tol = 1e-11);

} // namespace igbm
