#pragma once

#include <array>

// Published reference values. Table 1: r0 = 0.1, a = 0. Table 3: r0 = 0.06,
// sigma = 0.3, a = 0.09. Percent columns are kept in percent.
namespace igbm::tables {

struct Table1Row {
    double T;
    double sigma;
    double B_exact;
    double R_exact_pct;
    double R_asympt_pct;
};

inline constexpr double kTable1R0 = 0.1;

inline constexpr std::array<Table1Row, 15> kTable1{{
    {1, 0.1, 0.904853, 9.998, 9.998},
    {1, 0.2, 0.904898, 9.993, 9.993},
    {1, 0.3, 0.904976, 9.985, 9.985},
    {1, 0.4, 0.905087, 9.972, 9.973},
    {1, 0.5, 0.905235, 9.956, 9.959},
    {5, 0.1, 0.607799, 9.958, 9.959},
    {5, 0.2, 0.611650, 9.832, 9.840},
    {5, 0.3, 0.618183, 9.619, 9.655},
    {5, 0.4, 0.627431, 9.322, 9.421},
    {5, 0.5, 0.639230, 8.950, 9.155},
    {10, 0.1, 0.373968, 9.836, 9.839},
    {10, 0.2, 0.391646, 9.374, 9.421},
    {10, 0.3, 0.418920, 8.701, 8.869},
    {10, 0.4, 0.452708, 7.925, 8.282},
    {10, 0.5, 0.489961, 7.134, 7.714},
}};

struct Table3Row {
    double T;
    double xi;
    double neg_log_B_over_T;
    double B_asympt;
    double B_reference; // exact value quoted from the benchmark scenario
};

inline constexpr double kTable3R0 = 0.06;
inline constexpr double kTable3Sigma = 0.3;
inline constexpr double kTable3A = 0.09;

inline constexpr std::array<Table3Row, 8> kTable3{{
    {1, 0.030345, 0.06272, 0.939, 0.939},
    {2, 0.068373, 0.06547, 0.877, 0.877},
    {3, 0.112756, 0.06821, 0.814, 0.815},
    {4, 0.162295, 0.07091, 0.753, 0.753},
    {5, 0.215833, 0.07354, 0.692, 0.693},
    {10, 0.507276, 0.08454, 0.429, 0.438},
    {15, 0.777869, 0.09113, 0.255, 0.275},
    {20, 1.001668, 0.09411, 0.152, 0.179},
}};

inline constexpr std::array<double, 3> kFigure1Sigmas{0.3, 0.5, 1.0};

} // namespace igbm::tables
