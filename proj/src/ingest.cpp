#include "ncpc/ingest.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "ncpc/errors.hpp"

namespace ncpc {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) {
        out.push_back(field);
    }
    if (!line.empty() && line.back() == ',') {
        out.emplace_back();
    }
    return out;
}

std::string strip(std::string s) {
    auto issp = [](unsigned char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
    while (!s.empty() && issp(static_cast<unsigned char>(s.back()))) {
        s.pop_back();
    }
    std::size_t i = 0;
    while (i < s.size() && issp(static_cast<unsigned char>(s[i]))) {
        ++i;
    }
    return s.substr(i);
}

std::optional<double> parse_cell(const std::string& raw, int row, const char* col) {
    std::string v = strip(raw);
    if (v.empty() || v == "NA" || v == "na") {
        return std::nullopt;
    }
    char* end = nullptr;
    double d = std::strtod(v.c_str(), &end);
    if (end != v.c_str() + v.size()) {
        throw ParseError("row " + std::to_string(row) + ", column " + col +
                         ": cannot parse number '" + v + "'");
    }
    return d;
}

struct RawRow {
    Quarter quarter;
    std::array<std::optional<double>, 4> vals;  // cpi, expected_cpi, unemployment, gdp
};

constexpr std::array<const char*, 4> kValueCols{"cpi", "expected_cpi", "unemployment", "gdp"};

QuarterlySeries make_series(const std::string& code, const char* name,
                            const std::vector<RawRow>& rows, std::size_t which) {
    QuarterlySeries s{code, name, rows.front().quarter, {}};
    int span = quarters_between(rows.front().quarter, rows.back().quarter) + 1;
    s.values.resize(static_cast<std::size_t>(span));
    for (const auto& r : rows) {
        s.values[static_cast<std::size_t>(quarters_between(s.start, r.quarter))] = r.vals[which];
    }
    return s;
}

}  // namespace

Panel load_panel(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open " + path.string());
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw ParseError(path.string() + ": empty file");
    }
    auto header = split_csv_line(strip(line));
    const std::vector<std::string> expected{"country", "date",         "cpi",
                                            "expected_cpi", "unemployment", "gdp"};
    if (std::vector<std::string>(header.begin(), header.end()) != expected) {
        throw ParseError(path.string() + ": header must be country,date,cpi,expected_cpi,"
                                         "unemployment,gdp");
    }

    std::map<std::string, std::vector<RawRow>> rows;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        std::string stripped = strip(line);
        if (stripped.empty()) {
            continue;
        }
        auto fields = split_csv_line(stripped);
        if (fields.size() != 6) {
            throw ParseError("row " + std::to_string(lineno) + ": expected 6 fields, got " +
                             std::to_string(fields.size()));
        }
        std::string code = strip(fields[0]);
        if (find_country(code) == nullptr) {
            throw UnknownCountry("row " + std::to_string(lineno) + ": unknown country code '" +
                                 code + "'");
        }
        auto q = Quarter::parse(strip(fields[1]));
        if (!q.has_value()) {
            throw ParseError("row " + std::to_string(lineno) + ", column date: bad quarter '" +
                             strip(fields[1]) + "'");
        }
        RawRow r;
        r.quarter = *q;
        for (std::size_t j = 0; j < 4; ++j) {
            r.vals[j] = parse_cell(fields[j + 2], lineno, kValueCols[j]);
        }
        auto& vec = rows[code];
        if (!vec.empty() && !(vec.back().quarter < r.quarter)) {
            throw NonMonotonicDates("row " + std::to_string(lineno) + ": " + code + " date " +
                                    r.quarter.str() + " does not follow " +
                                    vec.back().quarter.str());
        }
        vec.push_back(r);
    }

    Panel panel;
    for (const auto& [code, vec] : rows) {
        const CountryInfo* info = find_country(code);
        CountryDataset d;
        d.code = code;
        d.market_class = info->market_class;
        d.cpi = make_series(code, "cpi", vec, 0);
        d.expected_cpi = make_series(code, "expected_cpi", vec, 1);
        d.unemployment = make_series(code, "unemployment", vec, 2);
        d.gdp = make_series(code, "gdp", vec, 3);
        panel.emplace(code, std::move(d));
    }
    return panel;
}

bool ValidationReport::has_violations() const {
    return std::any_of(issues.begin(), issues.end(),
                       [](const ValidationIssue& i) { return i.kind == IssueKind::Violation; });
}

ValidationReport validate_panel(Panel& panel) {
    ValidationReport rep;
    auto violation = [&](const std::string& c, const char* s, std::string msg) {
        rep.issues.push_back({IssueKind::Violation, c, s, std::move(msg)});
    };
    for (auto& [code, d] : panel) {
        for (const QuarterlySeries* s : {&d.cpi, &d.gdp}) {
            for (std::size_t i = 0; i < s->values.size(); ++i) {
                if (s->values[i].has_value() && *s->values[i] <= 0.0) {
                    violation(code, s->name.c_str(),
                              "nonpositive value " + std::to_string(*s->values[i]) + " at " +
                                  s->quarter_at(i).str());
                }
            }
        }
        // percent-scale unemployment (anything above 1.5) is normalized to
        // decimals so every downstream consumer sees one scale
        bool percent = false;
        for (const auto& v : d.unemployment.values) {
            if (v.has_value() && *v > 1.5) {
                percent = true;
                break;
            }
        }
        if (percent) {
            for (auto& v : d.unemployment.values) {
                if (v.has_value()) {
                    v = *v / 100.0;
                }
            }
            rep.issues.push_back({IssueKind::Notice, code, "unemployment",
                                  "values look like percent; normalized to decimals"});
        }
        for (std::size_t i = 0; i < d.unemployment.values.size(); ++i) {
            const auto& v = d.unemployment.values[i];
            if (v.has_value() && (*v < 0.0 || *v > 1.0)) {
                violation(code, "unemployment",
                          "rate " + std::to_string(*v) + " outside [0,1] at " +
                              d.unemployment.quarter_at(i).str());
            }
        }
    }
    return rep;
}

void write_panel(const Panel& panel, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw Error("cannot write " + path.string());
    }
    out << "country,date,cpi,expected_cpi,unemployment,gdp\n";
    char buf[64];
    auto cell = [&](const QuarterlySeries& s, Quarter q) -> std::string {
        auto v = s.at(q);
        if (!v.has_value()) {
            return "";
        }
        std::snprintf(buf, sizeof(buf), "%.17g", *v);
        return buf;
    };
    for (const auto& [code, d] : panel) {
        Quarter lo = d.cpi.start;
        Quarter hi = d.cpi.last_quarter();
        for (const QuarterlySeries* s : {&d.expected_cpi, &d.unemployment, &d.gdp}) {
            lo = std::min(lo, s->start);
            hi = std::max(hi, s->last_quarter());
        }
        for (Quarter q = lo; q <= hi; q = q.plus(1)) {
            out << code << ',' << q.str() << ',' << cell(d.cpi, q) << ','
                << cell(d.expected_cpi, q) << ',' << cell(d.unemployment, q) << ','
                << cell(d.gdp, q) << '\n';
        }
    }
}

void convert_wide_csv(const std::filesystem::path& in_path,
                      const std::filesystem::path& out_path) {
    std::ifstream in(in_path);
    if (!in) {
        throw ParseError("cannot open " + in_path.string());
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw ParseError(in_path.string() + ": empty file");
    }
    auto header = split_csv_line(strip(line));
    if (header.empty() || strip(header[0]) != "date") {
        throw ParseError(in_path.string() + ": first wide column must be 'date'");
    }

    struct ColRef {
        std::string code;
        std::size_t which;  // index into kValueCols
    };
    std::vector<ColRef> cols;
    for (std::size_t j = 1; j < header.size(); ++j) {
        std::string h = strip(header[j]);
        std::size_t us = h.find('_');
        if (us == std::string::npos) {
            throw ParseError("wide header '" + h + "': expected <CODE>_<variable>");
        }
        std::string code = h.substr(0, us);
        std::string var = h.substr(us + 1);
        if (find_country(code) == nullptr) {
            throw UnknownCountry("wide header '" + h + "': unknown country code");
        }
        auto it = std::find_if(kValueCols.begin(), kValueCols.end(),
                               [&](const char* c) { return var == c; });
        if (it == kValueCols.end()) {
            throw ParseError("wide header '" + h + "': unknown variable '" + var + "'");
        }
        cols.push_back({code, static_cast<std::size_t>(it - kValueCols.begin())});
    }

    // code -> quarter -> 4 cells
    std::map<std::string, std::map<Quarter, std::array<std::string, 4>>> data;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        std::string stripped = strip(line);
        if (stripped.empty()) {
            continue;
        }
        auto fields = split_csv_line(stripped);
        if (fields.size() != header.size()) {
            throw ParseError("row " + std::to_string(lineno) + ": expected " +
                             std::to_string(header.size()) + " fields");
        }
        auto q = Quarter::parse(strip(fields[0]));
        if (!q.has_value()) {
            throw ParseError("row " + std::to_string(lineno) + ": bad quarter '" +
                             strip(fields[0]) + "'");
        }
        for (std::size_t j = 0; j < cols.size(); ++j) {
            std::string v = strip(fields[j + 1]);
            if (!v.empty()) {
                data[cols[j].code][*q][cols[j].which] = v;
            }
        }
    }

    std::ofstream out(out_path);
    if (!out) {
        throw Error("cannot write " + out_path.string());
    }
    out << "country,date,cpi,expected_cpi,unemployment,gdp\n";
    for (const auto& [code, by_quarter] : data) {
        for (const auto& [q, cells] : by_quarter) {
            out << code << ',' << q.str() << ',' << cells[0] << ',' << cells[1] << ','
                << cells[2] << ',' << cells[3] << '\n';
        }
    }
}

}  // namespace ncpc
