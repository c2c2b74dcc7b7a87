#pragma once

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ncpc/series.hpp"

namespace ncpc {

struct CountryInfo {
    std::string_view code;  // 2-letter panel code
    std::string_view name;
    MarketClass market_class;
};

/// The 41-country registry (codes, names, S&P market classes).
std::span<const CountryInfo> country_registry();

/// Registry lookup; nullptr for unknown codes.
const CountryInfo* find_country(std::string_view code);

const char* market_class_letter(MarketClass c);  // "D" / "E" / "F"

using Panel = std::map<std::string, CountryDataset>;

/// Loads the long-format panel CSV:
///   country,date,cpi,expected_cpi,unemployment,gdp
/// with YYYYQn dates and empty cells for missing. Per-country dates must be
/// strictly increasing; gaps become explicit missing quarters. Throws
/// ParseError / UnknownCountry / NonMonotonicDates.
Panel load_panel(const std::filesystem::path& path);

enum class IssueKind { Notice, Violation };

struct ValidationIssue {
    IssueKind kind = IssueKind::Violation;
    std::string country;
    std::string series;
    std::string message;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    [[nodiscard]] bool has_violations() const;
};

/// Per-country sanity checks: CPI > 0, GDP > 0, unemployment within scale.
/// Unemployment columns that look like percent (any value > 1.5) are
/// normalized to decimals in place, with a notice. Never throws; every
/// problem is listed in the report.
ValidationReport validate_panel(Panel& panel);

/// Writes a panel back out in the canonical long format (lossless for
/// reloading).
void write_panel(const Panel& panel, const std::filesystem::path& path);

/// Converts a wide export (date,<CODE>_cpi,<CODE>_expected_cpi,
/// <CODE>_unemployment,<CODE>_gdp,...) to the canonical long format.
void convert_wide_csv(const std::filesystem::path& in, const std::filesystem::path& out);

}  // namespace ncpc
