#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ncpc/quarter.hpp"
#include "ncpc/series.hpp"

namespace ncpc {

/// Per-quarter recession flags for one country (true = recession).
/// Indexed like QuarterlySeries; missing where GDP growth is undefined
/// because of missing data.
struct RegimeSeries {
    std::string country;
    Quarter start{};
    std::vector<std::optional<bool>> flags;

    [[nodiscard]] std::size_t size() const { return flags.size(); }
    [[nodiscard]] Quarter quarter_at(std::size_t i) const {
        return start.plus(static_cast<int>(i));
    }
    [[nodiscard]] std::optional<bool> at(Quarter q) const;
};

struct RegimeOptions {
    // growth <= 0 counts as recession ("non-growing"); set strict_negative
    // for growth < 0 only.
    bool strict_negative = false;
};

/// Recession dummy from GDP: growth_t = log(gdp_t) - log(gdp_{t-1}),
/// flag_t = growth_t <= 0. The first quarter of a present GDP run has
/// undefined growth and is flagged false (tranquil is the base regime);
/// missing GDP on either side of the difference gives a missing flag.
/// Throws NonPositiveGdp if any present GDP value is <= 0, and
/// SeriesTooShort for fewer than 2 observations.
RegimeSeries recession_dummy(const QuarterlySeries& gdp, const RegimeOptions& opt = {});

/// Count of true flags with quarter in [lo, hi] inclusive; missing flags
/// contribute nothing.
int count_recessions(const RegimeSeries& r, Quarter lo, Quarter hi);

/// True when at least one flag (true or false) is defined in the window —
/// the renderer prints "-" for windows with no GDP coverage at all.
bool has_flag_in_window(const RegimeSeries& r, Quarter lo, Quarter hi);

}  // namespace ncpc
