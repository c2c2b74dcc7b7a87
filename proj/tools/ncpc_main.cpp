// ncpc: multi-country Phillips-curve replication pipeline.
//
// Subcommands render the descriptive, regression, recession-count, and
// unit-root tables from a quarterly panel CSV, and `replicate` diffs a full
// run against vendored reference tables.

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "ncpc/errors.hpp"
#include "ncpc/pipeline.hpp"

namespace {

struct CliOptions {
    ncpc::RunConfig cfg;
    std::string data;
    std::string spec = "both";
    std::string countries;
    std::string gap_mode = "levels";
    std::string window = "1980Q1:2016Q1";
    std::string format = "md";
    std::string out;
    std::string golden;
    std::string pp_bandwidth = "nw";
    int hac_bandwidth = -1;
};

void add_common_flags(CLI::App* cmd, CliOptions& opt) {
    cmd->add_option("--data", opt.data, "panel CSV path (default: $NCPC_DATA)");
    cmd->add_option("--spec", opt.spec, "backward|forward|both")
        ->check(CLI::IsMember({"backward", "forward", "both"}));
    cmd->add_option("--country", opt.countries, "comma-separated country codes");
    cmd->add_option("--gap-mode", opt.gap_mode, "levels|logs")
        ->check(CLI::IsMember({"levels", "logs"}));
    cmd->add_option("--shift-const", opt.cfg.shift, "constant added before logs");
    cmd->add_option("--lambda", opt.cfg.lambda, "HP smoothing parameter");
    cmd->add_option("--hac-bandwidth", opt.hac_bandwidth, "HAC lag override (>= 0)");
    cmd->add_option("--pp-bandwidth", opt.pp_bandwidth,
                    "PP bandwidth rule: nw (automatic) or fixed")
        ->check(CLI::IsMember({"nw", "fixed"}));
    cmd->add_option("--adf-max-lag", opt.cfg.adf_max_lag, "ADF maximum augmentation lag");
    cmd->add_option("--window", opt.window, "sample window, e.g. 1980Q1:2016Q1");
    cmd->add_option("--format", opt.format, "md|csv|json")
        ->check(CLI::IsMember({"md", "csv", "json"}));
    cmd->add_option("--out", opt.out, "output path (default: stdout)");
    cmd->add_option("--jobs", opt.cfg.jobs, "worker threads (0 = hardware)");
}

// exit code 2 is reserved for input problems
int finalize_config(CliOptions& opt) {
    if (opt.data.empty()) {
        if (const char* env = std::getenv("NCPC_DATA")) {
            opt.data = env;
        }
    }
    if (opt.data.empty()) {
        std::cerr << "error: no dataset; pass --data or set NCPC_DATA\n";
        return 2;
    }
    opt.cfg.data_path = opt.data;

    opt.cfg.spec = opt.spec == "backward"  ? ncpc::SpecSelect::Backward
                   : opt.spec == "forward" ? ncpc::SpecSelect::Forward
                                           : ncpc::SpecSelect::Both;
    opt.cfg.gap_mode = opt.gap_mode == "logs" ? ncpc::GapMode::Logs : ncpc::GapMode::Levels;
    opt.cfg.format = opt.format == "csv"    ? ncpc::OutputFormat::Csv
                     : opt.format == "json" ? ncpc::OutputFormat::Json
                                            : ncpc::OutputFormat::Markdown;
    opt.cfg.pp_rule = opt.pp_bandwidth == "fixed" ? ncpc::PpBandwidthRule::FixedFourNinths
                                                  : ncpc::PpBandwidthRule::NeweyWestAuto;
    if (opt.hac_bandwidth >= 0) {
        opt.cfg.hac_bandwidth = opt.hac_bandwidth;
    }
    if (!opt.out.empty()) {
        opt.cfg.out_path = opt.out;
    }
    if (!opt.golden.empty()) {
        opt.cfg.golden_dir = opt.golden;
    }

    if (!opt.countries.empty()) {
        std::string cur;
        for (char c : opt.countries + ",") {
            if (c == ',') {
                if (!cur.empty()) {
                    opt.cfg.countries.push_back(cur);
                }
                cur.clear();
            } else {
                cur += c;
            }
        }
    }

    auto colon = opt.window.find(':');
    if (colon == std::string::npos) {
        std::cerr << "error: --window must be START:END, e.g. 1980Q1:2016Q1\n";
        return 2;
    }
    auto ws = ncpc::Quarter::parse(opt.window.substr(0, colon));
    auto we = ncpc::Quarter::parse(opt.window.substr(colon + 1));
    if (!ws || !we || *we < *ws) {
        std::cerr << "error: bad --window '" << opt.window << "'\n";
        return 2;
    }
    opt.cfg.window_start = *ws;
    opt.cfg.window_end = *we;

    if (opt.cfg.lambda <= 0.0 || opt.cfg.shift < 0.0) {
        std::cerr << "error: --lambda must be > 0 and --shift-const >= 0\n";
        return 2;
    }
    return 0;
}

int emit(const std::string& text, const ncpc::RunConfig& cfg) {
    if (cfg.out_path.has_value()) {
        std::ofstream out(*cfg.out_path, std::ios::binary);
        if (!out) {
            std::cerr << "error: cannot write " << cfg.out_path->string() << "\n";
            return 2;
        }
        out << text;
    } else {
        std::cout << text;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Phillips-curve panel replication"};
    app.require_subcommand(1);

    CliOptions opt;
    CLI::App* describe = app.add_subcommand("describe", "overview means and stddevs");
    CLI::App* estimate = app.add_subcommand("estimate", "regression table");
    CLI::App* recessions = app.add_subcommand("recessions", "recession-quarter counts");
    CLI::App* unitroot = app.add_subcommand("unitroot", "ADF/PP unit-root panel");
    CLI::App* replicate =
        app.add_subcommand("replicate", "run everything and diff against reference tables");
    for (CLI::App* cmd : {describe, estimate, recessions, unitroot, replicate}) {
        add_common_flags(cmd, opt);
    }
    replicate->add_option("--golden", opt.golden, "reference-table directory");

    std::string conv_in, conv_out;
    CLI::App* convert = app.add_subcommand("convert", "wide CSV -> canonical long panel CSV");
    convert->add_option("--in", conv_in, "wide input CSV")->required();
    convert->add_option("--out", conv_out, "long output CSV")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (convert->parsed()) {
            ncpc::convert_wide_csv(conv_in, conv_out);
            return 0;
        }

        if (int rc = finalize_config(opt); rc != 0) {
            return rc;
        }
        ncpc::Panel panel = ncpc::load_panel(opt.cfg.data_path);
        ncpc::ValidationReport validation = ncpc::validate_panel(panel);
        for (const auto& issue : validation.issues) {
            std::cerr << (issue.kind == ncpc::IssueKind::Notice ? "notice: " : "violation: ")
                      << issue.country << "/" << issue.series << ": " << issue.message << "\n";
        }

        if (replicate->parsed()) {
            ncpc::ReplicateOutcome outcome = ncpc::cmd_replicate(panel, opt.cfg);
            for (const auto& t : outcome.tables) {
                std::cout << t.table << ": " << (t.checked - t.failed) << "/" << t.checked
                          << " cells pass\n";
            }
            if (!outcome.ok()) {
                std::cout << render(outcome.diff, opt.cfg.format);
                std::cout << "FAIL: " << outcome.cells_failed << " of "
                          << outcome.cells_checked << " cells\n";
                return 1;
            }
            std::cout << "PASS: all " << outcome.cells_checked << " cells\n";
            return 0;
        }

        ncpc::Table table;
        if (describe->parsed()) {
            table = ncpc::cmd_describe(panel, opt.cfg);
        } else if (estimate->parsed()) {
            table = ncpc::cmd_estimate(panel, opt.cfg);
        } else if (recessions->parsed()) {
            table = ncpc::cmd_recessions(panel, opt.cfg);
        } else if (unitroot->parsed()) {
            table = ncpc::cmd_unitroot(panel, opt.cfg);
        }
        return emit(render(table, opt.cfg.format), opt.cfg);
    } catch (const ncpc::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
