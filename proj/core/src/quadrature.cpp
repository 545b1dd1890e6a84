#include "igbm/quadrature.hpp"

#include "igbm/errors.hpp"

#include <array>
#include <cmath>
#include <deque>
#include <numbers>
#include <string>

namespace igbm {
namespace {

constexpr int kPoints = 15;

struct GaussLegendre {
    std::array<double, kPoints> nodes{};
    std::array<double, kPoints> weights{};

    GaussLegendre()
    {
        // Newton iteration on P_n from the Chebyshev initial guesses.
        for (int i = 0; i < kPoints; ++i) {
            double x = std::cos(std::numbers::pi * (i + 0.75) / (kPoints + 0.5));
            double dp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0;
                double p1 = x;
                for (int k = 2; k <= kPoints; ++k) {
                    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = kPoints * (x * p1 - p0) / (x * x - 1.0);
                const double dx = p1 / dp;
                x -= dx;
                if (std::fabs(dx) < 1e-16) {
                    break;
                }
            }
            nodes[i] = x;
            weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
    }
};

const GaussLegendre& rule()
{
    static const GaussLegendre gl;
    return gl;
}

double gl15(const std::function<double(double)>& f, double lo, double hi)
{
    const auto& gl = rule();
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    double sum = 0.0;
    for (int i = 0; i < kPoints; ++i) {
        sum += gl.weights[i] * f(mid + half * gl.nodes[i]);
    }
    return sum * half;
}

double adapt(const std::function<double(double)>& f, double lo, double hi, double whole, double tol,
             int depth, double& err)
{
    const double mid = 0.5 * (lo + hi);
    const double left = gl15(f, lo, mid);
    const double right = gl15(f, mid, hi);
    const double diff = std::fabs(left + right - whole);
    if (diff <= tol || depth <= 0 || diff <= 1e-15 * std::fabs(left + right)) {
        err += diff;
        return left + right;
    }
    return adapt(f, lo, mid, left, 0.5 * tol, depth - 1, err) +
           adapt(f, mid, hi, right, 0.5 * tol, depth - 1, err);
}

// Repeated pairwise averaging of partial sums of an alternating series.
double averaged(const std::deque<double>& partial)
{
    std::deque<double> level = partial;
    while (level.size() > 1) {
        for (std::size_t i = 0; i + 1 < level.size(); ++i) {
            level[i] = 0.5 * (level[i] + level[i + 1]);
        }
        level.pop_back();
    }
    return level.front();
}

} // namespace

double integrate_gl15(const std::function<double(double)>& f, double lo, double hi, double tol,
                      double* error_estimate, int max_depth)
{
    double err = 0.0;
    const double v = adapt(f, lo, hi, gl15(f, lo, hi), tol, max_depth, err);
    if (error_estimate != nullptr) {
        *error_estimate = err;
    }
    return v;
}

LobeQuadResult integrate_sine_sinh(double freq, const std::function<double(double)>& g,
                                   const LobeQuadOptions& opts)
{
    if (!(freq > 0.0) || !std::isfinite(freq)) {
        throw InvalidArgument("integrate_sine_sinh: frequency must be positive and finite");
    }
    auto integrand = [&](double z) { return std::sin(freq * std::sinh(z)) * g(z); };
    const double panel_tol = 0.01 * opts.tol;

    constexpr std::size_t kAverageDepth = 12;
    LobeQuadResult res;
    std::deque<double> partial;
    double sum = 0.0;
    double lo = 0.0;
    int quiet = 0;
    double previous_estimate = 0.0;
    for (std::size_t k = 1;; ++k) {
        if (k > opts.max_lobes) {
            throw QuadratureNotConverged("integrate_sine_sinh: no convergence within " +
                                         std::to_string(opts.max_lobes) + " lobes (freq=" +
                                         std::to_string(freq) + ")");
        }
        const double hi = std::asinh(static_cast<double>(k) * std::numbers::pi / freq);
        double panel_err = 0.0;
        const double lobe = integrate_gl15(integrand, lo, hi, panel_tol, &panel_err);
        res.error_estimate += panel_err;
        sum += lobe;
        lo = hi;
        res.lobes = k;

        if (!opts.accelerate) {
            quiet = std::fabs(lobe) < opts.tol ? quiet + 1 : 0;
            if (quiet >= opts.quiet_lobes) {
                res.value = sum;
                res.error_estimate += std::fabs(lobe);
                return res;
            }
            continue;
        }

        partial.push_back(sum);
        if (partial.size() > kAverageDepth) {
            partial.pop_front();
        }
        if (partial.size() < kAverageDepth) {
            continue;
        }
        const double estimate = averaged(partial);
        quiet = std::fabs(estimate - previous_estimate) < opts.tol ? quiet + 1 : 0;
        previous_estimate = estimate;
        if (quiet >= opts.quiet_lobes) {
            res.value = estimate;
            res.error_estimate += std::fabs(estimate - sum) * 1e-3;
            return res;
        }
    }
}

} // namespace igbm
