#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "ncpc/errors.hpp"
#include "ncpc/pipeline.hpp"
#include "pipeline_detail.hpp"

namespace ncpc {

namespace {

// replication tolerances
constexpr double kOverviewTol = 0.0005;   // descriptive means/stddevs, absolute
constexpr double kCoefTol = 0.02;         // regression coefficients, absolute
constexpr double kSeRelTol = 0.30;        // HAC standard errors, relative
constexpr double kFractionTol = 0.02;     // aggregate fractions, absolute
constexpr double kPValueTol = 0.02;       // unit-root p-values, absolute

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) {
        while (!field.empty() && (field.back() == '\r' || field.back() == ' ')) {
            field.pop_back();
        }
        out.push_back(field);
    }
    if (!line.empty() && line.back() == ',') {
        out.emplace_back();
    }
    return out;
}

std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& path,
                                               std::size_t min_fields) {
    std::ifstream in(path);
    if (!in) {
        throw Error("golden table missing: " + path.string());
    }
    std::vector<std::vector<std::string>> rows;
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        auto fields = split_line(line);
        if (header) {
            header = false;
            continue;
        }
        if (fields.size() < min_fields) {
            throw Error(path.string() + ": short row '" + line + "'");
        }
        rows.push_back(std::move(fields));
    }
    return rows;
}

double to_num(const std::string& s, const std::filesystem::path& path) {
    try {
        return std::stod(s);
    } catch (...) {
        throw Error(path.string() + ": bad number '" + s + "'");
    }
}

Significance stars_from_count(int n) {
    switch (n) {
        case 3: return Significance::P1;
        case 2: return Significance::P5;
        case 1: return Significance::P10;
        default: return Significance::None;
    }
}

struct GoldenUnitRoot {
    double p = 0.0;
    int param = 0;
    int nobs = 0;
};

struct Golden {
    std::map<std::string, std::array<std::optional<int>, 5>> counts;
    std::map<std::string, std::array<double, 12>> overview;
    std::map<std::string, CountryReport> regression;  // key: code|spec
    std::map<std::string, GoldenUnitRoot> unitroot;   // key: code|test|series
};

std::string reg_key(const std::string& code, SpecKind spec) {
    return code + "|" + (spec == SpecKind::Backward ? "backward" : "forward");
}

Golden load_golden(const std::filesystem::path& dir) {
    Golden g;

    for (const auto& f : read_csv(dir / "recession_counts.csv", 6)) {
        std::array<std::optional<int>, 5> row;
        for (int i = 0; i < 5; ++i) {
            const std::string& cell = f[static_cast<std::size_t>(i) + 1];
            if (cell != "-" && !cell.empty()) {
                row[static_cast<std::size_t>(i)] =
                    static_cast<int>(to_num(cell, dir / "recession_counts.csv"));
            }
        }
        g.counts[f[0]] = row;
    }

    for (const auto& f : read_csv(dir / "table1_overview.csv", 13)) {
        std::array<double, 12> row{};
        for (std::size_t i = 0; i < 12; ++i) {
            row[i] = to_num(f[i + 1], dir / "table1_overview.csv");
        }
        g.overview[f[0]] = row;
    }

    // country,spec,n_infl,se,stars,n_gap,se,stars,r_infl,se,stars,r_gap,se,stars,
    // const,se,stars,obs
    for (const auto& f : read_csv(dir / "table1_regression.csv", 18)) {
        const auto path = dir / "table1_regression.csv";
        CountryReport rep;
        rep.country = f[0];
        const CountryInfo* info = find_country(rep.country);
        if (info == nullptr) {
            throw Error("table1_regression.csv: unknown country " + f[0]);
        }
        rep.market_class = info->market_class;
        rep.spec = f[1] == "forward" ? SpecKind::Forward : SpecKind::Backward;
        auto cell = [&](std::size_t base) {
            return Cell{to_num(f[base], path), to_num(f[base + 1], path),
                        stars_from_count(static_cast<int>(to_num(f[base + 2], path)))};
        };
        rep.tranquil_infl = cell(2);
        rep.tranquil_gap = cell(5);
        if (f[8] != "n/a" && !f[8].empty()) {
            rep.recession_infl = cell(8);
            rep.recession_gap = cell(11);
        }
        rep.constant = cell(14);
        rep.obs = static_cast<int>(to_num(f[17], path));
        g.regression[reg_key(rep.country, rep.spec)] = rep;
    }

    for (const auto& f : read_csv(dir / "unitroot.csv", 6)) {
        const auto path = dir / "unitroot.csv";
        GoldenUnitRoot u;
        u.p = to_num(f[3], path);
        u.param = static_cast<int>(to_num(f[4], path));
        u.nobs = static_cast<int>(to_num(f[5], path));
        g.unitroot[f[0] + "|" + f[1] + "|" + f[2]] = u;
    }

    return g;
}

class DiffBuilder {
  public:
    explicit DiffBuilder(ReplicateOutcome& out) : out_(out) {
        out_.diff.title = "Replication diff (failing cells)";
        out_.diff.columns = {"table", "cell", "expected", "actual"};
    }

    void table(const std::string& name) {
        out_.tables.push_back({name, 0, 0});
    }

    void check(const std::string& cell, const std::string& expected, const std::string& actual,
               bool pass) {
        auto& stat = out_.tables.back();
        ++stat.checked;
        ++out_.cells_checked;
        if (!pass) {
            ++stat.failed;
            ++out_.cells_failed;
            out_.diff.rows.push_back({TableCell::txt(stat.table), TableCell::txt(cell),
                                      TableCell::txt(expected), TableCell::txt(actual)});
        }
    }

    void check_abs(const std::string& cell, double expected, double actual, double tol) {
        char e[64], a[64];
        std::snprintf(e, sizeof(e), "%.4f", expected);
        std::snprintf(a, sizeof(a), "%.4f", actual);
        check(cell, e, a, std::abs(expected - actual) <= tol);
    }

    void check_rel(const std::string& cell, double expected, double actual, double rel) {
        char e[64], a[64];
        std::snprintf(e, sizeof(e), "%.4f", expected);
        std::snprintf(a, sizeof(a), "%.4f", actual);
        check(cell, e, a, std::abs(expected - actual) <= rel * std::abs(expected));
    }

    void check_int(const std::string& cell, int expected, int actual) {
        check(cell, std::to_string(expected), std::to_string(actual), expected == actual);
    }

    void missing(const std::string& cell, const std::string& why) {
        check(cell, "value", "missing: " + why, false);
    }

  private:
    ReplicateOutcome& out_;
};

const std::array<const char*, 12> kOverviewCols{
    "infl_mean",  "infl_sd",  "ei_mean",    "ei_sd",    "trend_mean", "trend_sd",
    "unemp_mean", "unemp_sd", "nairu_mean", "nairu_sd", "gap_mean",   "gap_sd"};

void compare_cell(DiffBuilder& diff, const std::string& name, const Cell& golden,
                  const Cell& actual) {
    diff.check_abs(name, golden.coef, actual.coef, kCoefTol);
    diff.check_rel(name + "_se", golden.se, actual.se, kSeRelTol);
}

}  // namespace

ReplicateOutcome cmd_replicate(const Panel& panel, const RunConfig& cfg) {
    Golden golden = load_golden(cfg.golden_dir);
    ReplicateOutcome out;
    DiffBuilder diff(out);

    auto codes = detail::selected_codes(panel, cfg);
    auto in_selection = [&](const std::string& code) {
        return std::find(codes.begin(), codes.end(), code) != codes.end();
    };

    // recession counts: exact
    diff.table("recession_counts");
    for (const auto& [code, expected] : golden.counts) {
        if (!in_selection(code)) {
            continue;
        }
        std::array<std::optional<int>, 5> actual;
        try {
            actual = detail::recession_counts(panel.at(code));
        } catch (const Error& e) {
            diff.missing(code, e.what());
            continue;
        }
        for (std::size_t i = 0; i < 5; ++i) {
            std::string cell = code + " " + detail::kRecessionWindows[i].label;
            std::string e = expected[i].has_value() ? std::to_string(*expected[i]) : "-";
            std::string a = actual[i].has_value() ? std::to_string(*actual[i]) : "-";
            diff.check(cell, e, a, e == a);
        }
    }

    // overview descriptive statistics
    diff.table("table1_overview");
    for (const auto& [code, expected] : golden.overview) {
        if (!in_selection(code)) {
            continue;
        }
        std::array<double, 12> actual{};
        try {
            actual = detail::overview_stats(panel.at(code), cfg);
        } catch (const Error& e) {
            diff.missing(code, e.what());
            continue;
        }
        for (std::size_t i = 0; i < 12; ++i) {
            diff.check_abs(code + " " + kOverviewCols[i], expected[i], actual[i], kOverviewTol);
        }
    }

    // regression panels
    diff.table("table1_regression");
    EstimationRun run = run_estimations(panel, cfg);
    std::map<std::string, const CountryReport*> computed;
    for (const auto& rep : run.reports) {
        computed[reg_key(rep.country, rep.spec)] = &rep;
    }
    std::vector<CountryReport> golden_reports;
    for (const auto& [key, grep] : golden.regression) {
        if (!in_selection(grep.country)) {
            continue;
        }
        golden_reports.push_back(grep);
        auto it = computed.find(key);
        if (it == computed.end()) {
            diff.missing(key, "no estimate produced");
            continue;
        }
        const CountryReport& act = *it->second;
        compare_cell(diff, key + " n_infl", grep.tranquil_infl, act.tranquil_infl);
        compare_cell(diff, key + " n_gap", grep.tranquil_gap, act.tranquil_gap);
        if (grep.recession_infl.has_value()) {
            if (act.recession_infl.has_value()) {
                compare_cell(diff, key + " r_infl", *grep.recession_infl, *act.recession_infl);
                compare_cell(diff, key + " r_gap", *grep.recession_gap, *act.recession_gap);
            } else {
                diff.missing(key + " r_infl", "no recession quarters in computed sample");
            }
        }
        compare_cell(diff, key + " const", grep.constant, act.constant);
        diff.check_int(key + " obs", grep.obs, act.obs);
    }

    // aggregate fractions derived from both sides of the regression table
    diff.table("fractions");
    for (SpecKind spec : {SpecKind::Backward, SpecKind::Forward}) {
        for (MarketClass cls :
             {MarketClass::Developed, MarketClass::Emerging, MarketClass::Frontier}) {
            for (Regime reg : {Regime::Tranquil, Regime::Recession}) {
                for (CoefPick pick : {CoefPick::InflationTerm, CoefPick::Gap}) {
                    double expected, actual;
                    try {
                        expected =
                            aggregate_fraction(golden_reports, cls, spec, reg, pick, true);
                        actual = aggregate_fraction(run.reports, cls, spec, reg, pick, true);
                    } catch (const EmptySelection&) {
                        continue;
                    }
                    std::string cell =
                        std::string(market_class_letter(cls)) + " " +
                        (spec == SpecKind::Backward ? "backward" : "forward") + " " +
                        (reg == Regime::Tranquil ? "tranquil" : "recession") + " " +
                        (pick == CoefPick::InflationTerm ? "infl" : "gap");
                    diff.check_abs(cell, expected, actual, kFractionTol);
                }
            }
        }
    }

    // unit-root panel
    diff.table("unitroot");
    std::map<std::string, detail::UnitrootRow> ur_cache;
    constexpr std::array<const char*, 3> kSeries{"cpi", "ei", "gap"};
    for (const auto& [key, expected] : golden.unitroot) {
        auto bar1 = key.find('|');
        auto bar2 = key.find('|', bar1 + 1);
        std::string code = key.substr(0, bar1);
        std::string test = key.substr(bar1 + 1, bar2 - bar1 - 1);
        std::string series = key.substr(bar2 + 1);
        if (!in_selection(code)) {
            continue;
        }
        auto it = ur_cache.find(code);
        if (it == ur_cache.end()) {
            it = ur_cache.emplace(code, detail::unitroot_row(panel.at(code), cfg)).first;
        }
        std::size_t si = static_cast<std::size_t>(
            std::find(kSeries.begin(), kSeries.end(), series) - kSeries.begin());
        if (si >= 3) {
            throw Error("unitroot.csv: unknown series '" + series + "'");
        }
        const auto& slot = test == "pp" ? it->second.pp[si] : it->second.adf[si];
        const auto& err = test == "pp" ? it->second.pp_error[si] : it->second.adf_error[si];
        std::string cell = code + " " + test + " " + series;
        if (!slot.has_value()) {
            diff.missing(cell, err);
            continue;
        }
        diff.check_abs(cell + " p", expected.p, slot->p_value, kPValueTol);
        diff.check_int(cell + (test == "pp" ? " bandwidth" : " lag"), expected.param,
                       slot->lags_or_bandwidth);
        diff.check_int(cell + " nobs", expected.nobs, slot->nobs);
    }

    return out;
}

}  // namespace ncpc
