#pragma once

#include <cstddef>
#include <functional>

namespace igbm {

struct LobeQuadOptions {
    double tol = 1e-9;               ///< per-lobe stopping threshold and panel tolerance
    std::size_t max_lobes = 100000;
    int quiet_lobes = 3;             ///< stop after this many consecutive lobes below tol
    bool accelerate = false;         ///< repeated averaging of the alternating partial sums
};

struct LobeQuadResult {
    double value = 0.0;
    double error_estimate = 0.0;
    std::size_t lobes = 0;
};

/// Integral over [0, inf) of sin(freq * sinh z) * g(z).
///
/// The range is split at the zeros z_k = asinh(k pi / freq); each lobe is
/// integrated with adaptively bisected 15-point Gauss-Legendre panels and the
/// lobes are summed until `quiet_lobes` consecutive lobes each contribute
/// less than `tol`. Throws QuadratureNotConverged past `max_lobes`.
LobeQuadResult integrate_sine_sinh(double freq, const std::function<double(double)>& g,
                                   const LobeQuadOptions& opts = {});

/// Adaptive Gauss-Legendre (15 point, bisection on a two-half comparison) on [lo, hi].
double integrate_gl15(const std::function<double(double)>& f, double lo, double hi, double tol,
                      double* error_estimate = nullptr, int max_depth = 30);

} // namespace igbm
