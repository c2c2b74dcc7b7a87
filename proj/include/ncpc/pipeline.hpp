#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ncpc/estimate.hpp"
#include "ncpc/ingest.hpp"
#include "ncpc/unitroot.hpp"

namespace ncpc {

enum class OutputFormat { Markdown, Csv, Json };

enum class SpecSelect { Backward, Forward, Both };

/// Full run configuration; defaults reproduce the published tables.
struct RunConfig {
    std::filesystem::path data_path;           // or NCPC_DATA
    SpecSelect spec = SpecSelect::Both;
    std::vector<std::string> countries;        // empty = all loaded
    GapMode gap_mode = GapMode::Levels;
    double shift = 1.0;
    double lambda = 1600.0;
    std::optional<int> hac_bandwidth;
    PpBandwidthRule pp_rule = PpBandwidthRule::NeweyWestAuto;
    int adf_max_lag = 13;
    Quarter window_start{1980, 1};
    Quarter window_end{2016, 1};
    OutputFormat format = OutputFormat::Markdown;
    std::optional<std::filesystem::path> out_path;
    std::filesystem::path golden_dir = "data/golden_paper";
    int jobs = 0;  // 0 = hardware concurrency

    [[nodiscard]] TransformConfig transforms() const;
};

/// One rendered cell: display text plus the raw value when numeric, so the
/// JSON output can carry full precision alongside the 4-decimal tables.
struct TableCell {
    std::string text;
    std::optional<double> value;

    static TableCell num(double v, int decimals = 4);
    static TableCell txt(std::string t);
};

struct Table {
    std::string title;
    std::vector<std::string> columns;
    std::vector<std::vector<TableCell>> rows;
};

std::string render(const Table& t, OutputFormat format);

/// Per-country means/stddevs of the six overview variables.
Table cmd_describe(const Panel& panel, const RunConfig& cfg);

/// Regression table: one row per (country, spec) grouped D->E->F, with
/// aggregate-fraction footer rows. Per-country failures become annotated
/// rows; the run continues.
Table cmd_estimate(const Panel& panel, const RunConfig& cfg);

/// Recession-quarter counts over the five report windows.
Table cmd_recessions(const Panel& panel, const RunConfig& cfg);

/// ADF and PP p-values for inflation, expected inflation, and the gap.
Table cmd_unitroot(const Panel& panel, const RunConfig& cfg);

struct ReplicateTableStat {
    std::string table;
    int checked = 0;
    int failed = 0;
};

struct ReplicateOutcome {
    std::vector<ReplicateTableStat> tables;
    int cells_checked = 0;
    int cells_failed = 0;
    Table diff;  // one row per failed cell
    [[nodiscard]] bool ok() const { return cells_failed == 0; }
};

/// Runs every command and diffs the results against the golden tables in
/// cfg.golden_dir at the per-table tolerances.
ReplicateOutcome cmd_replicate(const Panel& panel, const RunConfig& cfg);

/// Reports for the selected countries/specs, estimated concurrently and
/// merged in (market class, country code) order. Failures are returned as
/// (country, spec, message) annotations.
struct EstimationRun {
    std::vector<CountryReport> reports;
    std::vector<std::string> failures;
};
EstimationRun run_estimations(const Panel& panel, const RunConfig& cfg);

}  // namespace ncpc
