#include "igbm/oracles.hpp"

#include "igbm/errors.hpp"
#include "igbm/ode.hpp"
#include "igbm/rootfind.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <string>
#include <thread>
#include <vector>

namespace igbm {
namespace {

constexpr std::size_t kBlock = 4096;

struct Moments {
    double sum = 0.0;
    double sum_sq = 0.0;
};

void require_mc(double sigma, double T, const MCOptions& opts, const char* op)
{
    detail::require(std::isfinite(sigma) && sigma > 0.0, op, "sigma must be positive");
    detail::require(std::isfinite(T) && T > 0.0, op, "T must be positive");
    detail::require(opts.n_paths >= 2, op, "n_paths must be at least 2");
    detail::require(opts.n_steps >= 1, op, "n_steps must be at least 1");
}

// Mean and standard error of unit(i) over i < n_units. Units are summed in
// fixed blocks and the blocks combined in order, whatever the thread count.
template <class Unit>
std::pair<double, double> run_blocks(std::size_t n_units, unsigned threads, Unit&& unit)
{
    const std::size_t n_blocks = (n_units + kBlock - 1) / kBlock;
    std::vector<Moments> blocks(n_blocks);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t blk = next++; blk < n_blocks; blk = next++) {
            Moments m;
            const std::size_t end = std::min(n_units, (blk + 1) * kBlock);
            for (std::size_t i = blk * kBlock; i < end; ++i) {
                const double v = unit(i);
                m.sum += v;
                m.sum_sq += v * v;
            }
            blocks[blk] = m;
        }
    };
    unsigned n_threads = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
    n_threads = static_cast<unsigned>(std::min<std::size_t>(n_threads, n_blocks));
    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < n_threads; ++t) {
            pool.emplace_back(worker);
        }
        for (auto& th : pool) {
            th.join();
        }
    }
    Moments total;
    for (const auto& m : blocks) {
        total.sum += m.sum;
        total.sum_sq += m.sum_sq;
    }
    const double n = static_cast<double>(n_units);
    const double mean = total.sum / n;
    const double var = n > 1.0 ? std::max(0.0, (total.sum_sq - n * mean * mean) / (n - 1.0)) : 0.0;
    return {mean, std::sqrt(var / n)};
}

// Trapezoid integral of exact gBM values driven by sign * z.
double path_integral(double sigma, double a, double T, const std::vector<double>& z, double sign)
{
    const std::size_t n = z.size();
    const double dt = T / static_cast<double>(n);
    const double drift = (a - 0.5 * sigma * sigma) * dt;
    const double vol = sigma * std::sqrt(dt);
    double log_s = 0.0;
    double sum = 0.5;
    for (std::size_t k = 0; k < n; ++k) {
        log_s += drift + vol * sign * z[k];
        sum += k + 1 < n ? std::exp(log_s) : 0.5 * std::exp(log_s);
    }
    return sum * dt;
}

// Antithetic estimator of E[payoff(X_T)].
template <class Payoff>
MCEstimate antithetic(double sigma, double a, double T, const MCOptions& opts, Payoff&& payoff)
{
    const std::size_t n_pairs = (opts.n_paths + 1) / 2;
    auto unit = [&](std::size_t pair) {
        PathStream rng(opts.seed, pair);
        std::vector<double> z(opts.n_steps);
        for (auto& v : z) {
            v = rng.next_normal();
        }
        return 0.5 * (payoff(path_integral(sigma, a, T, z, 1.0)) + payoff(path_integral(sigma, a, T, z, -1.0)));
    };
    const auto [mean, se] = run_blocks(n_pairs, opts.threads, unit);
    return {mean, se, 2 * n_pairs, opts.n_steps, opts.seed};
}

using State4 = OdeState<4>;

} // namespace

double sample_integral_gbm(double sigma, double a, double T, std::size_t n_steps, PathStream& rng)
{
    detail::require(n_steps >= 1, "sample_integral_gbm", "n_steps must be at least 1");
    std::vector<double> z(n_steps);
    for (auto& v : z) {
        v = rng.next_normal();
    }
    return path_integral(sigma, a, T, z, 1.0);
}

MCEstimate mc_laplace(double theta, double sigma, double a, double T, const MCOptions& opts)
{
    require_mc(sigma, T, opts, "mc_laplace");
    detail::require(theta >= 0.0, "mc_laplace", "theta must be non-negative");
    return antithetic(sigma, a, T, opts, [theta](double x) { return std::exp(-theta * x); });
}

MCEstimate mc_moment(int k, double sigma, double a, double T, const MCOptions& opts)
{
    require_mc(sigma, T, opts, "mc_moment");
    detail::require(k >= 1, "mc_moment", "k must be at least 1");
    return antithetic(sigma, a, T, opts, [k](double x) { return std::pow(x, k); });
}

MCEstimate mc_asian_price(const AsianInputs& inp, const MCOptions& opts)
{
    validate(inp);
    require_mc(inp.sigma, inp.T, opts, "mc_asian_price");
    const double df = std::exp(-inp.r * inp.T);
    const double scale = inp.S0 / inp.T;
    const double K = inp.K;
    const bool call = inp.kind == OptionKind::Call;
    MCEstimate est = antithetic(inp.sigma, inp.r - inp.q, inp.T, opts, [&](double x) {
        const double avg = scale * x;
        return df * (call ? std::max(avg - K, 0.0) : std::max(K - avg, 0.0));
    });
    return est;
}

MCEstimate mc_laplace_plain(double theta, double sigma, double a, double T, const MCOptions& opts)
{
    require_mc(sigma, T, opts, "mc_laplace_plain");
    detail::require(theta >= 0.0, "mc_laplace_plain", "theta must be non-negative");
    auto unit = [&](std::size_t path) {
        PathStream rng(opts.seed, path);
        return std::exp(-theta * sample_integral_gbm(sigma, a, T, opts.n_steps, rng));
    };
    const auto [mean, se] = run_blocks(opts.n_paths, opts.threads, unit);
    return {mean, se, opts.n_paths, opts.n_steps, opts.seed};
}

ShootingResult jb_variational(double b, double zeta, double ode_tol)
{
    detail::require(std::isfinite(b) && b >= 0.0, "jb_variational", "b must be non-negative");
    detail::require(std::isfinite(zeta), "jb_variational", "zeta must be finite");
    detail::require(ode_tol > 0.0, "jb_variational", "ode_tol must be positive");
    if (b == 0.0) {
        ShootingResult out;
        out.initial_slope = zeta; // h = zeta t
        return out;
    }
    const double c = 2.0 * b * b;
    const OdeOptions ode{ode_tol, 0.1 * ode_tol, 200000};
    // y = [h, h', int e^h, int (h' - zeta)^2 / 2]
    auto rhs = [c, zeta](double, const State4& y) {
        const double e = std::exp(std::min(y[0], 700.0));
        const double d = y[1] - zeta;
        return State4{y[1], c * e, e, 0.5 * d * d};
    };
    auto run = [&](double slope) {
        return integrate_dopri5<4>(rhs, State4{0.0, slope, 0.0, 0.0}, 0.0, 1.0, ode,
                                   [](const State4& y) { return y[0] > 300.0; });
    };
    // h'(1) increases with h'(0); a trajectory that blows up counts as overshoot.
    auto miss = [&](double slope) {
        const auto r = run(slope);
        if (r.status != OdeStatus::Ok) {
            return 1e300;
        }
        return r.y[1] - zeta;
    };
    const double lo = std::min(-50.0, zeta - 50.0);
    const double hi = std::max(50.0, zeta + 50.0);
    RootResult root;
    try {
        root = solve_bracketed(miss, lo, hi, {1e-13, 400});
    } catch (const NoSignChange& e) {
        throw ShootingFailed(std::string("jb_variational: ") + e.what());
    }
    const auto r = run(root.root);
    if (r.status != OdeStatus::Ok) {
        throw ShootingFailed("jb_variational: final trajectory did not reach t = 1");
    }
    ShootingResult out;
    out.value = c * r.y[2] + r.y[3];
    out.initial_slope = root.root;
    out.ode_steps = r.steps;
    out.bc_residual = r.y[1] - zeta;
    return out;
}

ShootingResult ibs_variational(double x, double zeta, double ode_tol)
{
    detail::require(std::isfinite(x) && x > 0.0, "ibs_variational", "x must be positive");
    detail::require(std::isfinite(zeta), "ibs_variational", "zeta must be finite");
    detail::require(ode_tol > 0.0, "ibs_variational", "ode_tol must be positive");
    const OdeOptions ode{ode_tol, 0.1 * ode_tol, 200000};

    struct Shot {
        double x = 0.0;
        double value = 0.0;
        double g0 = 0.0;
        double slope0 = 0.0;
        std::size_t steps = 0;
    };
    // Backwards from t = 1; y = [g, g', int_t^1 e^g, int_t^1 (g' - zeta)^2 / 2].
    auto shoot = [&](double kappa) {
        auto rhs = [kappa, zeta](double, const State4& y) {
            const double e = std::exp(std::min(y[0], 700.0));
            const double d = y[1] - zeta;
            return State4{y[1], -kappa * e, -e, -0.5 * d * d};
        };
        const auto r = integrate_dopri5<4>(rhs, State4{0.0, zeta, 0.0, 0.0}, 1.0, 0.0, ode,
                                           [](const State4& y) { return y[0] > 40.0; });
        Shot s;
        s.steps = r.steps;
        if (r.status == OdeStatus::Stopped) {
            // Past g = 40 the blow-up is imminent and g' ~ e^{g/2}, so
            // x = int e^{g - g(0)} < e^{-20}: treat as x = 0.
            return s;
        }
        if (r.status != OdeStatus::Ok) {
            throw ShootingFailed("ibs_variational: integration failed at kappa=" + std::to_string(kappa));
        }
        s.g0 = r.y[0];
        s.slope0 = r.y[1];
        s.x = std::exp(std::log(r.y[2]) - r.y[0]);
        s.value = r.y[3];
        return s;
    };

    // x(kappa) increases; kappa = 0 is the straight line h = zeta t.
    const double neutral = std::fabs(zeta) < 1e-12 ? 1.0 + 0.5 * zeta : std::expm1(zeta) / zeta;
    auto miss = [&](double kappa) { return shoot(kappa).x - x; };
    double lo = 0.0;
    double hi = 0.0;
    if (x >= neutral) {
        hi = 1.0;
        while (miss(hi) < 0.0) {
            lo = hi;
            hi *= 2.0;
            if (hi > 1e9) {
                throw ShootingFailed("ibs_variational: cannot bracket x=" + std::to_string(x));
            }
        }
    } else {
        lo = -1.0;
        while (miss(lo) > 0.0) {
            hi = lo;
            lo *= 2.0;
            if (lo < -1e9) {
                throw ShootingFailed("ibs_variational: cannot bracket x=" + std::to_string(x));
            }
        }
    }
    const RootResult root = solve_bracketed(miss, lo, hi, {1e-14 * std::max(1.0, x), 400});
    const Shot s = shoot(root.root);
    ShootingResult out;
    out.value = s.value;
    out.initial_slope = s.slope0;
    out.multiplier = root.root * std::exp(s.g0);
    out.ode_steps = s.steps;
    out.bc_residual = s.x - x;
    return out;
}

} // namespace igbm
