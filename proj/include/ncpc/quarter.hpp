#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace ncpc {

/// A calendar quarter, e.g. 1980Q1. Ordering is calendar order.
struct Quarter {
    int year = 0;
    int q = 1;  // 1..4

    /// Flat index on the quarter timeline (4 per year); inverse of from_index.
    [[nodiscard]] constexpr int index() const { return year * 4 + (q - 1); }

    static constexpr Quarter from_index(int idx) {
        // round toward -inf so pre-year-0 indices stay consistent
        int y = idx >= 0 ? idx / 4 : -((-idx + 3) / 4);
        return Quarter{y, idx - y * 4 + 1};
    }

    [[nodiscard]] constexpr Quarter plus(int k) const { return from_index(index() + k); }

    [[nodiscard]] constexpr bool valid() const { return q >= 1 && q <= 4; }

    friend constexpr auto operator<=>(const Quarter& a, const Quarter& b) {
        return a.index() <=> b.index();
    }
    friend constexpr bool operator==(const Quarter& a, const Quarter& b) {
        return a.index() == b.index();
    }

    [[nodiscard]] std::string str() const;  // "1980Q1"

    /// Parses "1980Q1" (also accepts lowercase q). Empty optional on any
    /// malformed input, including quarter digits outside 1..4.
    static std::optional<Quarter> parse(std::string_view text);
};

/// Number of quarters from a to b (b - a); negative when b precedes a.
constexpr int quarters_between(Quarter a, Quarter b) { return b.index() - a.index(); }

}  // namespace ncpc
