#include "ncpc/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <thread>

#include "ncpc/errors.hpp"
#include "pipeline_detail.hpp"

namespace ncpc {

TransformConfig RunConfig::transforms() const {
    TransformConfig t;
    t.shift = shift;
    t.lambda = lambda;
    t.gap_mode = gap_mode;
    t.window_start = window_start;
    t.window_end = window_end;
    t.hac_bandwidth = hac_bandwidth;
    return t;
}

namespace detail {

std::vector<std::string> selected_codes(const Panel& panel, const RunConfig& cfg) {
    std::vector<std::string> codes;
    if (cfg.countries.empty()) {
        for (const auto& [code, _] : panel) {
            codes.push_back(code);
        }
    } else {
        for (const auto& c : cfg.countries) {
            if (find_country(c) == nullptr) {
                throw UnknownCountry("unknown country code '" + c + "'");
            }
            if (panel.count(c) != 0) {
                codes.push_back(c);
            }
        }
        std::sort(codes.begin(), codes.end());
        codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
    }
    return codes;
}

void run_over_countries(std::size_t count, int jobs,
                        const std::function<void(std::size_t)>& task) {
    unsigned hw = std::thread::hardware_concurrency();
    int n = jobs > 0 ? jobs : static_cast<int>(hw ? hw : 1);
    n = std::min<int>(n, static_cast<int>(count));
    if (n <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            task(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n));
    for (int w = 0; w < n; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
                task(i);
            }
        });
    }
    for (auto& t : pool) {
        t.join();
    }
}

const std::array<ReportWindow, 5> kRecessionWindows{{
    {"w1980_1990", {1980, 1}, {1989, 4}},
    {"w1990_2000", {1990, 1}, {1999, 4}},
    {"w1980_2016", {1980, 1}, {2016, 1}},
    {"w1990_2016", {1990, 1}, {2016, 1}},
    {"w2000_2016", {2000, 1}, {2016, 1}},
}};

std::array<std::optional<int>, 5> recession_counts(const CountryDataset& d) {
    RegimeSeries r = recession_dummy(d.gdp);
    std::array<std::optional<int>, 5> out;
    for (std::size_t i = 0; i < kRecessionWindows.size(); ++i) {
        const auto& w = kRecessionWindows[i];
        if (has_flag_in_window(r, w.lo, w.hi)) {
            out[i] = count_recessions(r, w.lo, w.hi);
        }
    }
    return out;
}

std::array<double, 12> overview_stats(const CountryDataset& d, const RunConfig& cfg) {
    auto window = [&](QuarterlySeries s) {
        return s.clipped(cfg.window_start, cfg.window_end);
    };
    QuarterlySeries infl = window(inflation_proxy(d.cpi, cfg.shift));
    QuarterlySeries ei = window(inflation_proxy(d.expected_cpi, cfg.shift));
    QuarterlySeries trend = hp_filter(infl.longest_present_run(), cfg.lambda).trend;
    QuarterlySeries u = window(d.unemployment).longest_present_run();
    QuarterlySeries ustar = nairu(u, cfg.lambda);
    QuarterlySeries gap = unemployment_gap(u, cfg.gap_mode, cfg.shift, cfg.lambda);

    std::array<double, 12> out{};
    std::size_t i = 0;
    for (const QuarterlySeries* s : {&infl, &ei, &trend, &u, &ustar, &gap}) {
        SummaryStats st = describe(*s);
        out[i++] = st.mean;
        out[i++] = st.stddev;
    }
    return out;
}

UnitrootRow unitroot_row(const CountryDataset& d, const RunConfig& cfg) {
    UnitrootRow row;
    auto window = [&](QuarterlySeries s) {
        return s.clipped(cfg.window_start, cfg.window_end).longest_present_run();
    };
    std::array<QuarterlySeries, 3> series;
    try {
        series[0] = window(inflation_proxy(d.cpi, cfg.shift));
        series[1] = window(inflation_proxy(d.expected_cpi, cfg.shift));
        series[2] = unemployment_gap(window(d.unemployment), cfg.gap_mode, cfg.shift,
                                     cfg.lambda);
    } catch (const Error& e) {
        for (std::size_t i = 0; i < 3; ++i) {
            row.adf_error[i] = row.pp_error[i] = e.what();
        }
        return row;
    }
    for (std::size_t i = 0; i < 3; ++i) {
        try {
            row.adf[i] = adf(series[i], cfg.adf_max_lag);
        } catch (const Error& e) {
            row.adf_error[i] = e.what();
        }
        try {
            row.pp[i] = pp(series[i], cfg.pp_rule);
        } catch (const Error& e) {
            row.pp_error[i] = e.what();
        }
    }
    return row;
}

}  // namespace detail

namespace {

using detail::kRecessionWindows;

// regression-table order: market class D -> E -> F, then code
std::vector<std::string> class_sorted_codes(const Panel& panel, const RunConfig& cfg) {
    auto codes = detail::selected_codes(panel, cfg);
    std::stable_sort(codes.begin(), codes.end(), [](const auto& a, const auto& b) {
        MarketClass ca = find_country(a)->market_class;
        MarketClass cb = find_country(b)->market_class;
        if (ca != cb) {
            return static_cast<int>(ca) < static_cast<int>(cb);
        }
        return a < b;
    });
    return codes;
}

std::vector<SpecKind> selected_specs(const RunConfig& cfg) {
    switch (cfg.spec) {
        case SpecSelect::Backward: return {SpecKind::Backward};
        case SpecSelect::Forward: return {SpecKind::Forward};
        case SpecSelect::Both: break;
    }
    return {SpecKind::Backward, SpecKind::Forward};
}

const char* spec_name(SpecKind s) { return s == SpecKind::Backward ? "backward" : "forward"; }

TableCell coef_cell(const Cell& c) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4f%s", c.coef, stars_text(c.sig));
    return TableCell{buf, c.coef};
}

TableCell se_cell(const Cell& c) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "(%.4f)", c.se);
    return TableCell{buf, c.se};
}

TableCell blank() { return TableCell::txt(""); }

}  // namespace

EstimationRun run_estimations(const Panel& panel, const RunConfig& cfg) {
    auto codes = class_sorted_codes(panel, cfg);
    auto specs = selected_specs(cfg);
    TransformConfig tc = cfg.transforms();

    struct Slot {
        std::optional<CountryReport> report;
        std::string failure;
    };
    std::vector<std::vector<Slot>> slots(codes.size(), std::vector<Slot>(specs.size()));

    detail::run_over_countries(codes.size(), cfg.jobs, [&](std::size_t i) {
        const CountryDataset& d = panel.at(codes[i]);
        for (std::size_t s = 0; s < specs.size(); ++s) {
            try {
                slots[i][s].report = estimate_country(d, specs[s], tc);
            } catch (const Error& e) {
                slots[i][s].failure = e.what();
            }
        }
    });

    EstimationRun out;
    for (std::size_t i = 0; i < codes.size(); ++i) {
        for (std::size_t s = 0; s < specs.size(); ++s) {
            if (slots[i][s].report.has_value()) {
                out.reports.push_back(std::move(*slots[i][s].report));
            } else {
                out.failures.push_back(codes[i] + " " + spec_name(specs[s]) + ": " +
                                       slots[i][s].failure);
            }
        }
    }
    return out;
}

Table cmd_describe(const Panel& panel, const RunConfig& cfg) {
    Table t;
    t.title = "Overview of mean and standard deviation of variables";
    t.columns = {"country",    "infl_mean", "infl_sd",    "ei_mean",   "ei_sd",
                 "trend_mean", "trend_sd",  "unemp_mean", "unemp_sd",  "nairu_mean",
                 "nairu_sd",   "gap_mean",  "gap_sd"};

    auto codes = detail::selected_codes(panel, cfg);
    std::vector<std::vector<TableCell>> rows(codes.size());
    detail::run_over_countries(codes.size(), cfg.jobs, [&](std::size_t i) {
        std::vector<TableCell> row{TableCell::txt(codes[i])};
        try {
            for (double v : detail::overview_stats(panel.at(codes[i]), cfg)) {
                row.push_back(TableCell::num(v));
            }
        } catch (const Error& e) {
            row.resize(1);
            row.push_back(TableCell::txt(std::string("error: ") + e.what()));
            row.resize(t.columns.size(), blank());
        }
        rows[i] = std::move(row);
    });
    t.rows = std::move(rows);
    return t;
}

Table cmd_estimate(const Panel& panel, const RunConfig& cfg) {
    Table t;
    t.title = "Phillips-curve estimates during tranquil and recessionary periods";
    t.columns = {"class",    "country", "spec",      "n_infl", "n_infl_se", "n_gap",
                 "n_gap_se", "r_infl",  "r_infl_se", "r_gap",  "r_gap_se",  "const",
                 "const_se", "obs"};

    EstimationRun run = run_estimations(panel, cfg);
    for (const auto& rep : run.reports) {
        std::vector<TableCell> row;
        row.push_back(TableCell::txt(market_class_letter(rep.market_class)));
        row.push_back(TableCell::txt(rep.country));
        row.push_back(TableCell::txt(spec_name(rep.spec)));
        row.push_back(coef_cell(rep.tranquil_infl));
        row.push_back(se_cell(rep.tranquil_infl));
        row.push_back(coef_cell(rep.tranquil_gap));
        row.push_back(se_cell(rep.tranquil_gap));
        if (rep.recession_infl.has_value()) {
            row.push_back(coef_cell(*rep.recession_infl));
            row.push_back(se_cell(*rep.recession_infl));
            row.push_back(coef_cell(*rep.recession_gap));
            row.push_back(se_cell(*rep.recession_gap));
        } else {
            row.push_back(TableCell::txt("n/a"));
            row.push_back(blank());
            row.push_back(TableCell::txt("n/a"));
            row.push_back(blank());
        }
        row.push_back(coef_cell(rep.constant));
        row.push_back(se_cell(rep.constant));
        row.push_back(TableCell::num(rep.obs, 0));
        t.rows.push_back(std::move(row));
    }
    for (const auto& f : run.failures) {
        std::vector<TableCell> row(t.columns.size(), blank());
        row[1] = TableCell::txt(f.substr(0, f.find(' ')));
        row[3] = TableCell::txt("error: " + f);
        t.rows.push_back(std::move(row));
    }

    // aggregate-fraction footers, with and without the significance filter
    for (SpecKind spec : selected_specs(cfg)) {
        for (MarketClass cls :
             {MarketClass::Developed, MarketClass::Emerging, MarketClass::Frontier}) {
            for (bool sig_only : {false, true}) {
                std::vector<TableCell> row(t.columns.size(), blank());
                row[0] = TableCell::txt(market_class_letter(cls));
                row[1] = TableCell::txt(sig_only ? "mean|significant" : "mean");
                row[2] = TableCell::txt(spec_name(spec));
                auto put = [&](std::size_t col, Regime reg, CoefPick pick) {
                    try {
                        row[col] = TableCell::num(
                            aggregate_fraction(run.reports, cls, spec, reg, pick, sig_only));
                    } catch (const EmptySelection&) {
                        row[col] = TableCell::txt("n/a");
                    }
                };
                put(3, Regime::Tranquil, CoefPick::InflationTerm);
                put(5, Regime::Tranquil, CoefPick::Gap);
                put(7, Regime::Recession, CoefPick::InflationTerm);
                put(9, Regime::Recession, CoefPick::Gap);
                t.rows.push_back(std::move(row));
            }
        }
    }
    return t;
}

Table cmd_recessions(const Panel& panel, const RunConfig& cfg) {
    Table t;
    t.title = "Recession quarters per window";
    t.columns = {"country"};
    for (const auto& w : kRecessionWindows) {
        t.columns.emplace_back(w.label);
    }

    for (const auto& code : detail::selected_codes(panel, cfg)) {
        std::vector<TableCell> row{TableCell::txt(code)};
        try {
            for (const auto& c : detail::recession_counts(panel.at(code))) {
                row.push_back(c.has_value() ? TableCell::num(*c, 0) : TableCell::txt("-"));
            }
        } catch (const Error& e) {
            row.resize(1);
            row.push_back(TableCell::txt(std::string("error: ") + e.what()));
            row.resize(t.columns.size(), blank());
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

Table cmd_unitroot(const Panel& panel, const RunConfig& cfg) {
    Table t;
    t.title = "Unit-root tests (p-values)";
    t.columns = {"country", "adf_cpi", "adf_ei", "adf_gap", "pp_cpi", "pp_ei", "pp_gap"};

    auto codes = detail::selected_codes(panel, cfg);
    std::vector<std::vector<TableCell>> rows(codes.size());
    detail::run_over_countries(codes.size(), cfg.jobs, [&](std::size_t i) {
        detail::UnitrootRow ur = detail::unitroot_row(panel.at(codes[i]), cfg);
        std::vector<TableCell> row{TableCell::txt(codes[i])};
        char buf[64];
        for (std::size_t j = 0; j < 3; ++j) {
            if (ur.adf[j].has_value()) {
                std::snprintf(buf, sizeof(buf), "%.4f (L:%d N:%d)", ur.adf[j]->p_value,
                              ur.adf[j]->lags_or_bandwidth, ur.adf[j]->nobs);
                row.push_back(TableCell{buf, ur.adf[j]->p_value});
            } else {
                row.push_back(TableCell::txt("error: " + ur.adf_error[j]));
            }
        }
        for (std::size_t j = 0; j < 3; ++j) {
            if (ur.pp[j].has_value()) {
                std::snprintf(buf, sizeof(buf), "%.4f (B:%d N:%d)", ur.pp[j]->p_value,
                              ur.pp[j]->lags_or_bandwidth, ur.pp[j]->nobs);
                row.push_back(TableCell{buf, ur.pp[j]->p_value});
            } else {
                row.push_back(TableCell::txt("error: " + ur.pp_error[j]));
            }
        }
        rows[i] = std::move(row);
    });
    t.rows = std::move(rows);
    return t;
}

}  // namespace ncpc
