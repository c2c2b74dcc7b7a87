#include "ncpc/quarter.hpp"

#include <charconv>
#include <cstdio>

namespace ncpc {

std::string Quarter::str() const {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%dQ%d", year, q);
    return buf;
}

std::optional<Quarter> Quarter::parse(std::string_view text) {
    // YYYYQn, with at least one year digit and exactly one quarter digit
    std::size_t sep = text.find_first_of("Qq");
    if (sep == std::string_view::npos || sep == 0 || sep + 2 != text.size()) {
        return std::nullopt;
    }
    int year = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + sep, year);
    if (ec != std::errc{} || ptr != text.data() + sep) {
        return std::nullopt;
    }
    char qc = text[sep + 1];
    if (qc < '1' || qc > '4') {
        return std::nullopt;
    }
    return Quarter{year, qc - '0'};
}

}  // namespace ncpc
