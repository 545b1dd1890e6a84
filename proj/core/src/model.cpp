#include "igbm/model.hpp"

#include "igbm/errors.hpp"
#include "igbm/ratefn.hpp"

#include <cmath>

namespace igbm {

void validate(const ModelParams& p)
{
    detail::require(std::isfinite(p.sigma) && std::isfinite(p.a) && std::isfinite(p.T) &&
                        std::isfinite(p.theta),
                    "model", "parameters must be finite");
    detail::require(p.sigma > 0.0, "model", "sigma must be positive");
    detail::require(p.T > 0.0, "model", "T must be positive");
    detail::require(p.theta >= 0.0, "model", "theta must be non-negative");
}

ScaledParams scale(const ModelParams& p)
{
    detail::require(std::isfinite(p.sigma) && std::isfinite(p.a) && std::isfinite(p.T) &&
                        std::isfinite(p.theta),
                    "scale", "parameters must be finite");
    detail::require(p.theta >= 0.0 && p.T >= 0.0, "scale", "theta and T must be non-negative");
    return {std::sqrt(0.5 * p.theta) * std::fabs(p.sigma) * p.T, p.a * p.T};
}

DothanScaled dothan_scale(const ModelParams& p)
{
    validate(p);
    detail::require(p.theta > 0.0, "dothan_scale", "r0 (theta) must be positive");
    const double s2 = p.sigma * p.sigma;
    return {2.0 * p.theta / s2, 0.5 * s2 * p.T};
}

double theta_for_b(double b, double sigma, double T)
{
    detail::require(sigma > 0.0 && T > 0.0, "theta_for_b", "sigma and T must be positive");
    return 2.0 * b * b / (sigma * sigma * T * T);
}

double t_max(double r0, double sigma, double threshold)
{
    detail::require(r0 > 0.0 && sigma > 0.0 && threshold > 0.0, "t_max",
                    "r0, sigma and threshold must be positive");
    return std::sqrt(threshold / (sigma * sigma * r0));
}

double series_threshold()
{
    const double rb = convergence_radius().radius;
    return 2.0 * rb * rb;
}

double t_max(double r0, double sigma)
{
    return t_max(r0, sigma, series_threshold());
}

} // namespace igbm
