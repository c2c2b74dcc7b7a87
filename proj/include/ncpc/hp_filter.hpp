#pragma once

#include <span>
#include <vector>

#include "ncpc/series.hpp"

namespace ncpc {

/// Hodrick-Prescott decomposition: trend + cycle = input at every present
/// index, with the trend solving (I + lambda D'D) tau = y for the
/// second-difference operator D.
struct TrendDecomposition {
    QuarterlySeries trend;
    QuarterlySeries cycle;
    double lambda = 0.0;
};

/// Frequency rule for the smoothing parameter:
/// (periods_per_year / 4)^x * 1600. Quarterly data with x=2 gives 1600.
double ravn_uhlig_lambda(int periods_per_year, double x);

/// Solves the HP first-order system for a dense sample. O(n) banded
/// Cholesky with iterative refinement; residual ||(I+lambda D'D)tau - y||_inf
/// stays below 1e-10 for the lambdas used here.
std::vector<double> hp_trend(std::span<const double> y, double lambda);

/// Filters the series' single contiguous present run. Throws SeriesTooShort
/// (< 4 present values) or NonContiguous (present values split by interior
/// gaps). Output series cover the run's quarters only.
TrendDecomposition hp_filter(const QuarterlySeries& s, double lambda);

/// Long-run unemployment level: the HP trend of the unemployment series.
QuarterlySeries nairu(const QuarterlySeries& u, double lambda);

enum class GapMode {
    Levels,  // u - nairu(u)
    Logs,    // log(u+c) - nairu(log(u+c))
};

/// Cyclical unemployment: the deviation of the (optionally logged) rate from
/// its HP trend.
QuarterlySeries unemployment_gap(const QuarterlySeries& u, GapMode mode, double shift,
                                 double lambda);

}  // namespace ncpc
