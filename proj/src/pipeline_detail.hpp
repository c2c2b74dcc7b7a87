#pragma once

// Internal helpers shared by the table commands and the replication diff.

#include <array>
#include <functional>
#include <optional>

#include "ncpc/pipeline.hpp"

namespace ncpc::detail {

std::vector<std::string> selected_codes(const Panel& panel, const RunConfig& cfg);

// bounded worker pool over country indices; deterministic because each task
// writes only its own slot
void run_over_countries(std::size_t count, int jobs,
                        const std::function<void(std::size_t)>& task);

struct ReportWindow {
    const char* label;
    Quarter lo;
    Quarter hi;
};
extern const std::array<ReportWindow, 5> kRecessionWindows;

// counts per report window; empty where the window has no GDP coverage
std::array<std::optional<int>, 5> recession_counts(const CountryDataset& d);

// the six (mean, stddev) pairs of the overview table, in column order
std::array<double, 12> overview_stats(const CountryDataset& d, const RunConfig& cfg);

// ADF and PP results for inflation / expected inflation / gap; empty slots
// carry the error text instead
struct UnitrootRow {
    std::array<std::optional<UnitRootResult>, 3> adf;
    std::array<std::optional<UnitRootResult>, 3> pp;
    std::array<std::string, 3> adf_error;
    std::array<std::string, 3> pp_error;
};
UnitrootRow unitroot_row(const CountryDataset& d, const RunConfig& cfg);

}  // namespace ncpc::detail
