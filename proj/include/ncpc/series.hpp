#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ncpc/quarter.hpp"

namespace ncpc {

/// One variable for one country on a contiguous quarterly index.
/// Gaps are explicit missing cells, never skipped quarters.
struct QuarterlySeries {
    std::string country;
    std::string name;
    Quarter start{};
    std::vector<std::optional<double>> values;

    [[nodiscard]] std::size_t size() const { return values.size(); }
    [[nodiscard]] Quarter quarter_at(std::size_t i) const {
        return start.plus(static_cast<int>(i));
    }
    [[nodiscard]] Quarter last_quarter() const {
        return start.plus(static_cast<int>(values.size()) - 1);
    }

    /// Value at a calendar quarter; empty outside the index range or where missing.
    [[nodiscard]] std::optional<double> at(Quarter q) const;

    [[nodiscard]] std::size_t present_count() const;

    /// Restriction to [lo, hi] inclusive (intersection with the index range).
    [[nodiscard]] QuarterlySeries clipped(Quarter lo, Quarter hi) const;

    /// The longest contiguous run of present values, as its own series
    /// (earliest run wins ties). Empty series if nothing is present.
    [[nodiscard]] QuarterlySeries longest_present_run() const;

    /// True when the present values form a single contiguous block
    /// (leading/trailing missing allowed).
    [[nodiscard]] bool present_is_contiguous() const;

    /// Present values of a fully-contiguous block as a dense vector.
    /// Throws NonContiguous if interior cells are missing.
    [[nodiscard]] std::vector<double> dense_present() const;
};

/// log(v + shift) elementwise; missing stays missing.
/// Throws NonPositiveAfterShift if any present v + shift <= 0.
QuarterlySeries shifted_log(const QuarterlySeries& s, double shift);

/// value_t = s_t - s_{t-1}; result starts one quarter later and is missing
/// wherever either operand is. Throws SeriesTooShort for length < 2.
QuarterlySeries first_diff(const QuarterlySeries& s);

/// Shifts the series k quarters forward: result value at quarter q is the
/// input value at q - k. Requires k >= 1.
QuarterlySeries lag(const QuarterlySeries& s, int k);

/// Quarterly inflation proxy: first difference of the shifted log of a
/// price-level series.
QuarterlySeries inflation_proxy(const QuarterlySeries& cpi, double shift);

struct SummaryStats {
    double mean = 0.0;
    double stddev = 0.0;  // sample (n-1) standard deviation
};

/// Mean and sample standard deviation over present values only.
/// Throws InsufficientData with fewer than 2 present values.
SummaryStats describe(const QuarterlySeries& s);

/// a - b on the intersection of their quarter ranges; missing where either is.
QuarterlySeries subtract(const QuarterlySeries& a, const QuarterlySeries& b);

enum class MarketClass { Developed, Emerging, Frontier };

/// One country's raw panel: price levels, survey price levels, unemployment
/// rate (decimal), and GDP, all on quarterly indices.
struct CountryDataset {
    std::string code;
    MarketClass market_class = MarketClass::Developed;
    QuarterlySeries cpi;
    QuarterlySeries expected_cpi;
    QuarterlySeries unemployment;
    QuarterlySeries gdp;
};

}  // namespace ncpc
