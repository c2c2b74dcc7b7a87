#pragma once

#include <Eigen/Dense>
#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ncpc/hp_filter.hpp"
#include "ncpc/quarter.hpp"
#include "ncpc/regime.hpp"
#include "ncpc/series.hpp"

namespace ncpc {

/// Expectation proxy: lagged inflation (backward) or the survey-based
/// expected-inflation series (forward).
enum class SpecKind { Backward, Forward };

/// Knobs shared by frame construction and estimation. Defaults reproduce
/// the published configuration.
struct TransformConfig {
    double shift = 1.0;                 // constant added before logs
    double lambda = 1600.0;             // HP smoothing parameter
    GapMode gap_mode = GapMode::Levels;
    Quarter window_start{1980, 1};
    Quarter window_end{2016, 1};
    std::optional<int> hac_bandwidth;   // empty = floor(4*(n/100)^(2/9))
    bool strict_recession = false;      // growth < 0 instead of <= 0
};

/// Aligned regression sample for
///   pi_t = b0 + b1*infl_term_t + b2*gap_t + b3*infl_term_t*D_t + b4*gap_t*D_t + e_t
/// Rows with any missing component are dropped; the const column is 1.
struct ModelFrame {
    std::string country;
    SpecKind spec = SpecKind::Backward;
    std::vector<Quarter> quarters;
    Eigen::VectorXd y;
    Eigen::MatrixXd X;      // columns: const, infl_term, u_gap, infl_term*D, u_gap*D
    Eigen::VectorXd dummy;  // recession indicator per row (0/1)

    static constexpr int kCols = 5;
    static constexpr std::array<const char*, 5> column_names{"const", "infl_term", "u_gap",
                                                             "infl_term_x_dummy",
                                                             "u_gap_x_dummy"};
    [[nodiscard]] int rows() const { return static_cast<int>(y.size()); }
    /// Recession rows (dummy = 1) in the sample.
    [[nodiscard]] int recession_rows() const;
};

/// Builds the Eq.-style frame for one country and specification. Throws
/// EmptyFrame when fewer than 10 complete rows survive inside the window.
ModelFrame build_frame(const CountryDataset& d, SpecKind spec, const RegimeSeries& regimes,
                       const TransformConfig& cfg);

struct OlsFit {
    Eigen::VectorXd beta;
    Eigen::VectorXd residuals;
};

/// Least squares on an arbitrary design. Throws RankDeficient, naming
/// all-zero columns when that is the cause.
OlsFit ols(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
           std::span<const char* const> column_names = {});
OlsFit ols(const ModelFrame& f);

/// Standard automatic truncation lag floor(4*(n/100)^(2/9)).
int newey_west_fixed_bandwidth(int n);

/// Bartlett-kernel HAC sandwich (X'X)^-1 S (X'X)^-1 with
/// S = sum_t e_t^2 x_t x_t' + sum_l w_l sum_t e_t e_{t-l} (x_t x_{t-l}' + x_{t-l} x_t'),
/// w_l = 1 - l/(bandwidth+1). Bandwidth 0 reduces to the White estimator.
Eigen::MatrixXd newey_west(const Eigen::MatrixXd& X, const Eigen::VectorXd& residuals,
                           int bandwidth);

struct RegressionResult {
    Eigen::VectorXd beta;      // b0..b4
    Eigen::MatrixXd hac_cov;   // 5x5
    Eigen::VectorXd residuals;
    int nobs = 0;
    int bandwidth = 0;

    [[nodiscard]] double se(int i) const { return std::sqrt(hac_cov(i, i)); }
};

/// OLS + HAC covariance for a frame; bandwidth from cfg or the fixed rule.
RegressionResult fit_equation(const ModelFrame& f, std::optional<int> bandwidth = {});

/// Sum of two coefficients with the two standard-error routes: se_paper
/// ignores the covariance term, se_exact includes it (absent when the
/// radicand is nonpositive).
struct CombinedCoefficient {
    double value = 0.0;
    double se_paper = 0.0;
    std::optional<double> se_exact;
};

CombinedCoefficient combine(const RegressionResult& r, int i, int j);

enum class Significance { None, P10, P5, P1 };

/// Two-sided t-test of coef = 0 at 10/5/1% with df degrees of freedom.
Significance stars(double coef, double se, int df);

/// Marker string for a table cell: "", "*", "**", "***".
const char* stars_text(Significance s);

struct Cell {
    double coef = 0.0;
    double se = 0.0;
    Significance sig = Significance::None;
};

/// One country-row of the regression table: tranquil coefficients, combined
/// recession coefficients (empty when the sample has no recession quarters),
/// the constant, and the row count.
struct CountryReport {
    std::string country;
    MarketClass market_class = MarketClass::Developed;
    SpecKind spec = SpecKind::Backward;
    Cell tranquil_infl;
    Cell tranquil_gap;
    std::optional<Cell> recession_infl;
    std::optional<Cell> recession_gap;
    Cell constant;
    int obs = 0;
    int bandwidth = 0;
};

CountryReport estimate_country(const CountryDataset& d, SpecKind spec,
                               const TransformConfig& cfg);

enum class Regime { Tranquil, Recession };
enum class CoefPick { InflationTerm, Gap };

/// Cross-country mean of one coefficient over a market class, optionally
/// restricted to entries with at least one significance star. Throws
/// EmptySelection when nothing matches.
double aggregate_fraction(std::span<const CountryReport> reports, MarketClass cls,
                          SpecKind spec, Regime regime, CoefPick pick, bool significant_only);

}  // namespace ncpc
