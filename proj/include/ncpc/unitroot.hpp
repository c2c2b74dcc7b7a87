#pragma once

#include <span>

#include "ncpc/series.hpp"

namespace ncpc {

struct UnitRootResult {
    double statistic = 0.0;
    double p_value = 1.0;
    int lags_or_bandwidth = 0;  // ADF: augmentation lag; PP: kernel bandwidth
    int nobs = 0;               // observations in the final test regression
};

/// Schwarz criterion log(RSS/n) + k*log(n)/n (constants dropped); lower wins.
double sic(std::span<const double> residuals, int k, int n);

/// Augmented Dickey-Fuller test with intercept. The augmentation lag is
/// chosen by SIC over 0..max_lag on the common sample implied by max_lag,
/// then the test regression is refit on the maximal sample for the chosen
/// lag. The p-value is the MacKinnon response-surface value for the
/// constant-only case. Operates on the longest contiguous present run.
UnitRootResult adf(const QuarterlySeries& s, int max_lag = 13);

enum class PpBandwidthRule {
    FixedFourNinths,  // floor(4*(n/100)^(2/9))
    NeweyWestAuto,    // Newey-West (1994) data-dependent selection
};

/// Phillips-Perron Z_tau test with intercept and a Bartlett-kernel long-run
/// variance. Operates on the longest contiguous present run.
UnitRootResult pp(const QuarterlySeries& s,
                  PpBandwidthRule rule = PpBandwidthRule::FixedFourNinths);

/// Same, at a caller-chosen bandwidth. Bandwidth 0 reduces Z_tau to the
/// plain Dickey-Fuller t-ratio.
UnitRootResult pp_with_bandwidth(const QuarterlySeries& s, int bandwidth);

/// Newey-West (1994) automatic Bartlett bandwidth for a residual vector.
int newey_west_auto_bandwidth(std::span<const double> residuals);

/// MacKinnon response-surface p-value for a Dickey-Fuller t-statistic,
/// intercept case.
double mackinnon_pvalue(double tau);

}  // namespace ncpc
