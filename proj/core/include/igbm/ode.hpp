#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>

namespace igbm {

template <std::size_t N>
using OdeState = std::array<double, N>;

enum class OdeStatus { Ok, Stopped, StepUnderflow, TooManySteps };

template <std::size_t N>
struct OdeResult {
    OdeState<N> y{};
    double t = 0.0;
    std::size_t steps = 0;
    OdeStatus status = OdeStatus::Ok;
};

struct OdeOptions {
    double rtol = 1e-10;
    double atol = 1e-10;
    std::size_t max_steps = 200000;
};

/// Dormand-Prince 5(4) with standard step-size control, from t0 to t1
/// (either direction). `stop(y)` is checked after every accepted step and
/// ends the integration early with status Stopped.
template <std::size_t N, class Rhs, class Stop>
OdeResult<N> integrate_dopri5(Rhs&& rhs, OdeState<N> y, double t0, double t1, const OdeOptions& opts,
                              Stop&& stop)
{
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                            a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                            b6 = 11.0 / 84;
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                            e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    OdeResult<N> res;
    const double dir = t1 >= t0 ? 1.0 : -1.0;
    const double span = std::fabs(t1 - t0);
    double t = t0;
    double h = dir * std::min(span, 1e-3 * std::max(span, 1e-12));
    OdeState<N> k1 = rhs(t, y);
    OdeState<N> tmp{};
    OdeState<N> k2{}, k3{}, k4{}, k5{}, k6{}, k7{};

    auto axpy = [&](auto&&... terms) {
        // tmp = y + h * sum(coef * k)
        for (std::size_t i = 0; i < N; ++i) {
            double acc = 0.0;
            ((acc += terms.first * (*terms.second)[i]), ...);
            tmp[i] = y[i] + h * acc;
        }
        return tmp;
    };
    using P = std::pair<double, const OdeState<N>*>;

    while (dir * (t1 - t) > 0.0) {
        if (res.steps >= opts.max_steps) {
            res.status = OdeStatus::TooManySteps;
            break;
        }
        if (dir * (t + h - t1) > 0.0) {
            h = t1 - t;
        }
        k2 = rhs(t + c2 * h, axpy(P{a21, &k1}));
        k3 = rhs(t + c3 * h, axpy(P{a31, &k1}, P{a32, &k2}));
        k4 = rhs(t + c4 * h, axpy(P{a41, &k1}, P{a42, &k2}, P{a43, &k3}));
        k5 = rhs(t + c5 * h, axpy(P{a51, &k1}, P{a52, &k2}, P{a53, &k3}, P{a54, &k4}));
        k6 = rhs(t + h, axpy(P{a61, &k1}, P{a62, &k2}, P{a63, &k3}, P{a64, &k4}, P{a65, &k5}));
        const OdeState<N> y_new = axpy(P{b1, &k1}, P{b3, &k3}, P{b4, &k4}, P{b5, &k5}, P{b6, &k6});
        k7 = rhs(t + h, y_new);

        double err = 0.0;
        bool finite = true;
        for (std::size_t i = 0; i < N; ++i) {
            const double ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
            const double sc = opts.atol + opts.rtol * std::max(std::fabs(y[i]), std::fabs(y_new[i]));
            err = std::max(err, std::fabs(ei) / sc);
            finite = finite && std::isfinite(y_new[i]);
        }
        if (!finite) {
            err = 1e10;
        }

        if (err <= 1.0) {
            t += h;
            y = y_new;
            k1 = k7;
            ++res.steps;
            if (stop(y)) {
                res.status = OdeStatus::Stopped;
                break;
            }
        }
        const double factor = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
        h *= factor;
        if (std::fabs(h) < 1e-14 * std::max(1.0, std::fabs(t))) {
            res.status = OdeStatus::StepUnderflow;
            break;
        }
    }
    res.y = y;
    res.t = t;
    return res;
}

} // namespace igbm
