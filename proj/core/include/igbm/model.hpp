#pragma once

namespace igbm {

/// Raw inputs of the exponential functional E[exp(-theta X_T)] with
/// X_T = int_0^T exp(sigma W_s + (a - sigma^2/2) s) ds.
///
/// For bond pricing in the Dothan model `theta` is the initial short rate r0;
/// the two are the same field.
struct ModelParams {
    double sigma = 0.0; ///< volatility per sqrt(year), > 0
    double a = 0.0;     ///< drift per year
    double T = 0.0;     ///< maturity in years, > 0
    double theta = 0.0; ///< Laplace variable / initial short rate, >= 0
};

/// Coordinates of the small sigma^2 T limit: b^2 = sigma^2 theta T^2 / 2, zeta = a T.
struct ScaledParams {
    double b = 0.0;
    double zeta = 0.0;
};

/// Variables of the zero-drift Dothan integral: y = 2 r0 / sigma^2, s = sigma^2 T / 2.
struct DothanScaled {
    double y = 0.0;
    double s = 0.0;
};

/// Throws InvalidArgument unless sigma > 0, T > 0, theta >= 0 and all fields are finite.
void validate(const ModelParams& p);

ScaledParams scale(const ModelParams& p);

/// Requires theta (= r0) > 0.
DothanScaled dothan_scale(const ModelParams& p);

/// The theta that maps to a given b at fixed (sigma, T).
double theta_for_b(double b, double sigma, double T);

/// Largest maturity with sigma^2 r0 T^2 < threshold.
double t_max(double r0, double sigma, double threshold);

/// Same with the threshold 2 R_b^2 at which the small-b series of R(b, 0)
/// stops converging.
double t_max(double r0, double sigma);

/// 2 R_b^2, computed from ratefn's convergence_radius().
double series_threshold();

} // namespace igbm
