#include <cstdio>

#include "json.hpp"
#include "ncpc/pipeline.hpp"

namespace ncpc {

TableCell TableCell::num(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
    return TableCell{buf, v};
}

TableCell TableCell::txt(std::string t) { return TableCell{std::move(t), std::nullopt}; }

namespace {

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    out += '"';
    return out;
}

std::string render_markdown(const Table& t) {
    std::string out = "# " + t.title + "\n\n|";
    for (const auto& c : t.columns) {
        out += " " + c + " |";
    }
    out += "\n|";
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
        out += " --- |";
    }
    out += "\n";
    for (const auto& row : t.rows) {
        out += "|";
        for (const auto& cell : row) {
            out += " " + cell.text + " |";
        }
        out += "\n";
    }
    return out;
}

std::string render_csv(const Table& t) {
    std::string out;
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
        out += (i ? "," : "") + csv_escape(t.columns[i]);
    }
    out += "\n";
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out += (i ? "," : "") + csv_escape(row[i].text);
        }
        out += "\n";
    }
    return out;
}

std::string render_json(const Table& t) {
    nlohmann::ordered_json j;
    j["title"] = t.title;
    j["columns"] = t.columns;
    auto& rows = j["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        nlohmann::ordered_json jr = nlohmann::ordered_json::array();
        for (const auto& cell : row) {
            if (cell.value.has_value()) {
                jr.push_back({{"text", cell.text}, {"value", *cell.value}});
            } else {
                jr.push_back(cell.text);
            }
        }
        rows.push_back(std::move(jr));
    }
    return j.dump(2) + "\n";
}

}  // namespace

std::string render(const Table& t, OutputFormat format) {
    switch (format) {
        case OutputFormat::Markdown: return render_markdown(t);
        case OutputFormat::Csv: return render_csv(t);
        case OutputFormat::Json: return render_json(t);
    }
    return {};
}

}  // namespace ncpc
