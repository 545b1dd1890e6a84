#include "validation.hpp"

#include "tables.hpp"

#include "igbm/igbm.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <exception>
#include <functional>

namespace igbm::validation {
namespace {

std::string fmt(const char* f, ...)
{
    char buf[512];
    va_list args;
    va_start(args, f);
    std::vsnprintf(buf, sizeof buf, f, args);
    va_end(args);
    return buf;
}

// Runs body with timing; an exception is a failure carrying its message.
CheckResult timed(int criterion, const char* name, double budget_s,
                  const std::function<void(CheckResult&)>& body)
{
    CheckResult r;
    r.criterion = criterion;
    r.name = name;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        r.passed = true;
        body(r);
    } catch (const std::exception& e) {
        r.passed = false;
        r.detail += std::string(r.detail.empty() ? "" : "; ") + "exception: " + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (r.seconds > budget_s) {
        r.passed = false;
        r.detail += fmt("; over time budget %.0f s", budget_s);
    }
    return r;
}

// Absolute comparison with a little slack for binary rounding of the tolerance itself.
bool within(double got, double want, double tol)
{
    return std::fabs(got - want) <= tol * (1.0 + 1e-9);
}

std::vector<double> linspace(double lo, double hi, int n)
{
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) {
        v[i] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
    }
    return v;
}

void note_miss(CheckResult& r, int& misses, const std::string& what)
{
    r.passed = false;
    if (misses++ < 4) {
        r.detail += (r.detail.empty() ? "" : "; ") + what;
    }
}

} // namespace

CheckResult check_table1(const Options&)
{
    return timed(1, "table 1 reproduction", 10.0, [](CheckResult& r) {
        double worst_r = 0.0;
        double worst_b = 0.0;
        int misses = 0;
        for (const auto& row : tables::kTable1) {
            const double r_asy = 100.0 * bond_asymptotic(tables::kTable1R0, row.sigma, 0.0, row.T).yield_equiv;
            const double b_exact = bond_exact_zero_drift(tables::kTable1R0, row.sigma, row.T).price;
            worst_r = std::max(worst_r, std::fabs(r_asy - row.R_asympt_pct));
            worst_b = std::max(worst_b, std::fabs(b_exact - row.B_exact));
            if (!within(r_asy, row.R_asympt_pct, 5e-4)) {
                note_miss(r, misses, fmt("(T=%g, sigma=%g) R_asympt %.5f%% vs %.3f%%", row.T, row.sigma, r_asy,
                                         row.R_asympt_pct));
            }
            if (!within(b_exact, row.B_exact, 2e-6)) {
                note_miss(r, misses,
                          fmt("(T=%g, sigma=%g) B %.7f vs %.6f", row.T, row.sigma, b_exact, row.B_exact));
            }
        }
        r.detail = fmt("max|dR|=%.2e%% (tol 5e-4%%), max|dB|=%.2e (tol 2e-6)", worst_r, worst_b) +
                   (r.detail.empty() ? "" : "; " + r.detail);
    });
}

CheckResult check_table3(const Options&)
{
    return timed(2, "table 3 reproduction", 1.0, [](CheckResult& r) {
        double worst_xi = 0.0;
        double worst_y = 0.0;
        double worst_b = 0.0;
        int misses = 0;
        for (const auto& row : tables::kTable3) {
            const BondQuote q =
                bond_asymptotic(tables::kTable3R0, tables::kTable3Sigma, tables::kTable3A, row.T);
            worst_xi = std::max(worst_xi, std::fabs(q.root - row.xi));
            worst_y = std::max(worst_y, std::fabs(q.yield_equiv - row.neg_log_B_over_T));
            worst_b = std::max(worst_b, std::fabs(q.price - row.B_asympt));
            if (!within(q.root, row.xi, 1e-6)) {
                note_miss(r, misses, fmt("T=%g xi %.7f vs %.6f", row.T, q.root, row.xi));
            }
            if (!within(q.yield_equiv, row.neg_log_B_over_T, 5e-5)) {
                note_miss(r, misses,
                          fmt("T=%g -log(B)/T %.6f vs %.5f", row.T, q.yield_equiv, row.neg_log_B_over_T));
            }
            if (!within(q.price, row.B_asympt, 5e-4)) {
                note_miss(r, misses, fmt("T=%g B_asympt %.6f vs %.3f", row.T, q.price, row.B_asympt));
            }
        }
        r.detail = fmt("max|dxi|=%.1e, max|dy|=%.1e, max|dB|=%.1e", worst_xi, worst_y, worst_b) +
                   (r.detail.empty() ? "" : "; " + r.detail);
    });
}

CheckResult check_convergence_radius(const Options&)
{
    return timed(3, "convergence radius", 1.0, [](CheckResult& r) {
        const ConvergenceRadius c = convergence_radius();
        r.passed = within(c.y0, 1.19968, 1e-5) && within(c.radius, 0.662743, 1e-6);
        r.detail = fmt("y0=%.7f R_b=%.7f 2R_b^2=%.6f", c.y0, c.radius, 2.0 * c.radius * c.radius);
    });
}

CheckResult check_series(const Options& opts)
{
    return timed(4, "series convergence", 5.0, [&opts](CheckResult& r) {
        const int n = opts.quick ? 7 : 31;
        double worst_inside = 0.0;
        for (double b : linspace(0.0, 0.3, n)) {
            const double diff = std::fabs(rate_R_series(b, 8) - rate_R_zero_drift(b).value);
            worst_inside = std::max(worst_inside, diff);
        }
        double least_outside = INFINITY;
        double previous = INFINITY;
        bool monotone = true;
        for (double b : linspace(0.9, 5.0, opts.quick ? 9 : 42)) {
            const double full = rate_R_zero_drift(b).value;
            least_outside = std::min(least_outside, std::fabs(rate_R_series(b, 8) - full));
            monotone = monotone && std::isfinite(full) && full > 0.0 && full < previous;
            previous = full;
        }
        r.passed = worst_inside <= 1e-6 && least_outside > 1e-2 && monotone;
        r.detail = fmt("max err b<=0.3: %.1e (tol 1e-6); min err b>=0.9: %.3f (need >1e-2); full solve %s",
                       worst_inside, least_outside, monotone ? "finite and decreasing" : "NOT monotone");
    });
}

CheckResult check_jb_oracle(const Options& opts)
{
    return timed(5, "variational oracle for J_B", 30.0, [&opts](CheckResult& r) {
        const int n = opts.quick ? 3 : 5;
        double worst = 0.0;
        int hyperbolic = 0;
        int trigonometric = 0;
        for (double b : linspace(0.1, 2.0, n)) {
            for (double zeta : linspace(-0.5, 2.0, n)) {
                const RateEval re = rate_R(b, zeta);
                (re.branch == RateBranch::Hyperbolic ? hyperbolic : trigonometric) += 1;
                const double closed = 2.0 * b * b * re.value;
                worst = std::max(worst, std::fabs(jb_variational(b, zeta).value - closed));
            }
        }
        r.passed = worst <= 1e-4;
        r.detail = fmt("%dx%d grid, max|diff|=%.1e (tol 1e-4), branches: %d hyperbolic, %d trigonometric", n, n,
                       worst, hyperbolic, trigonometric);
    });
}

CheckResult check_asian_rate(const Options& opts)
{
    return timed(6, "Asian rate function", 30.0, [&opts](CheckResult& r) {
        double worst_zero = 0.0;
        for (double zeta : {0.0, 0.25, 0.5, 1.0}) {
            const double x = zeta == 0.0 ? 1.0 : std::expm1(zeta) / zeta;
            worst_zero = std::max(worst_zero, std::fabs(rate_ibs(x, zeta).value));
        }
        const std::vector<double> xs = opts.quick ? std::vector<double>{0.5, 2.0}
                                                  : std::vector<double>{0.5, 0.8, 1.2, 2.0, 3.0};
        double worst_oracle = 0.0;
        for (double x : xs) {
            for (double zeta : {0.0, 0.5, 1.0}) {
                worst_oracle =
                    std::max(worst_oracle, std::fabs(ibs_variational(x, zeta).value - rate_ibs(x, zeta).value));
            }
        }
        const double sigma = 0.2;
        const double atm = sigma_ln(100.0, 100.0, sigma, 0.0, 1.0);
        const double atm_err = std::fabs(atm - sigma / std::sqrt(3.0));
        r.passed = worst_zero <= 1e-10 && worst_oracle <= 1e-4 && atm_err <= 1e-3 * sigma;
        r.detail = fmt("max|I at zero|=%.1e (tol 1e-10), max|oracle diff|=%.1e (tol 1e-4), "
                       "|Sigma_ATM - sigma/sqrt3|=%.1e (tol %.0e)",
                       worst_zero, worst_oracle, atm_err, 1e-3 * sigma);
    });
}

CheckResult check_monte_carlo(const Options& opts)
{
    return timed(7, "Monte Carlo cross-checks", 60.0, [&opts](CheckResult& r) {
        MCOptions mc;
        mc.threads = opts.threads;
        const MCEstimate bond = mc_laplace(0.1, 0.1, 0.0, 1.0, mc);
        const double bond_ref = tables::kTable1[0].B_exact;
        const bool bond_ok = std::fabs(bond.mean - bond_ref) <= 3.0 * bond.std_error;

        const AsianInputs inp{100.0, 110.0, 0.05, 0.0, 0.3, 1.0, OptionKind::Call};
        const MCEstimate asian = mc_asian_price(inp, mc);
        const double approx = asian_price_approx(inp).price;
        const double bound = std::max(3.0 * asian.std_error, 0.02 * std::fabs(asian.mean));
        const bool asian_ok = std::fabs(asian.mean - approx) <= bound;
        r.passed = bond_ok && asian_ok;
        r.detail = fmt("bond %.7f +- %.1e vs %.6f (%.1f se); Asian MC %.4f +- %.4f vs approx %.4f (bound %.4f)",
                       bond.mean, bond.std_error, bond_ref, std::fabs(bond.mean - bond_ref) / bond.std_error,
                       asian.mean, asian.std_error, approx, bound);
    });
}

CheckResult check_small_rate(const Options&)
{
    return timed(8, "small-r0 expansion", 10.0, [](CheckResult& r) {
        const double sigma = 0.2;
        const double T = 1.0;
        const double m1 = moment_m1(0.0, sigma, T);
        const double half_m2 = 0.5 * moment_m2(0.0, sigma, T);
        const double m3 = moment_m3_bound(0.0, sigma, T);
        double previous_gap = INFINITY;
        bool monotone = true;
        bool bounds = true;
        double gap = 0.0;
        for (double r0 : {0.02, 0.01, 0.005}) {
            const double b = bond_exact_zero_drift(r0, sigma, T, 1e-13).price;
            const double scaled = (b - 1.0 + r0 * m1) / (r0 * r0);
            gap = std::fabs(scaled - half_m2);
            monotone = monotone && gap < previous_gap;
            previous_gap = gap;
            const double upper = 1.0 - r0 * m1 + r0 * r0 * half_m2;
            bounds = bounds && upper - r0 * r0 * r0 * m3 / 6.0 <= b && b <= upper;
        }
        r.passed = monotone && bounds && gap < 1e-2 * half_m2;
        r.detail = fmt("m2/2=%.6f, final gap %.2e (tol %.2e), approach %s, two-sided bound %s", half_m2, gap,
                       1e-2 * half_m2, monotone ? "monotone" : "NOT monotone", bounds ? "holds" : "VIOLATED");
    });
}

CheckResult check_perpetual(const Options& opts)
{
    return timed(9, "perpetual bond", 10.0, [&opts](CheckResult& r) {
        const double r0 = 0.05;
        const double sigma = 0.5;
        const double exact = bond_exact_zero_drift(r0, sigma, 200.0).price;
        const double perpetual = bond_perpetual(r0, sigma, 0.0).price;
        const double lead = 2.0 * std::sqrt(2.0 * r0 / (sigma * sigma));
        // Bounded: finite everywhere and never larger in size than at the
        // shortest maturity (the correction decays like 1/T).
        const int n = opts.quick ? 5 : 41;
        double first = 0.0;
        double worst = 0.0;
        bool bounded = true;
        for (int i = 0; i < n; ++i) {
            const double T = 50.0 * std::pow(100.0, static_cast<double>(i) / (n - 1));
            const ScaledParams sp = scale({sigma, 0.0, T, r0});
            const double v = r0 * T * rate_R(sp.b, 0.0).value - lead;
            if (i == 0) {
                first = std::fabs(v);
            }
            worst = std::max(worst, std::fabs(v));
            bounded = bounded && std::isfinite(v) && std::fabs(v) <= first * (1.0 + 1e-12);
        }
        r.passed = std::fabs(exact - perpetual) <= 1e-3 && bounded;
        r.detail = fmt("|B(200) - B_perp|=%.1e (tol 1e-3); |r0 T R - 2 sqrt(2 r0/sigma^2)| <= %.4f over "
                       "T in [50, 5000], largest at T=50: %s",
                       std::fabs(exact - perpetual), worst, bounded ? "yes" : "NO");
    });
}

std::vector<CheckResult> run_all(const Options& opts)
{
    std::vector<CheckResult> out;
    out.push_back(check_table1(opts));
    out.push_back(check_table3(opts));
    out.push_back(check_convergence_radius(opts));
    out.push_back(check_series(opts));
    out.push_back(check_jb_oracle(opts));
    out.push_back(check_asian_rate(opts));
    if (opts.monte_carlo) {
        out.push_back(check_monte_carlo(opts));
    }
    out.push_back(check_small_rate(opts));
    out.push_back(check_perpetual(opts));
    return out;
}

std::string format(const CheckResult& r)
{
    return fmt("criterion %d (%s): %s  ", r.criterion, r.name.c_str(), r.passed ? "PASS" : "FAIL") + r.detail +
           fmt("  [%.2f s]", r.seconds);
}

} // namespace igbm::validation
