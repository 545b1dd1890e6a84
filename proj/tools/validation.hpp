#pragma once

#include <string>
#include <vector>

namespace igbm::validation {

struct CheckResult {
    int criterion = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

struct Options {
    bool quick = false;      ///< coarse grids, for the fast smoke run
    bool monte_carlo = false; ///< include the Monte Carlo cross-checks
    unsigned threads = 1;    ///< MC worker threads
};

CheckResult check_table1(const Options& opts);
CheckResult check_table3(const Options& opts);
CheckResult check_convergence_radius(const Options& opts);
CheckResult check_series(const Options& opts);
CheckResult check_jb_oracle(const Options& opts);
CheckResult check_asian_rate(const Options& opts);
CheckResult check_monte_carlo(const Options& opts);
CheckResult check_small_rate(const Options& opts);
CheckResult check_perpetual(const Options& opts);

/// Criteria 1-9, skipping 7 unless opts.monte_carlo is set.
std::vector<CheckResult> run_all(const Options& opts);

/// "criterion N (name): PASS|FAIL  detail  [t s]"
std::string format(const CheckResult& r);

} // namespace igbm::validation
