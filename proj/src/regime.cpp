#include "ncpc/regime.hpp"

#include <cmath>

#include "ncpc/errors.hpp"

namespace ncpc {

std::optional<bool> RegimeSeries::at(Quarter q) const {
    int i = quarters_between(start, q);
    if (i < 0 || i >= static_cast<int>(flags.size())) {
        return std::nullopt;
    }
    return flags[static_cast<std::size_t>(i)];
}

RegimeSeries recession_dummy(const QuarterlySeries& gdp, const RegimeOptions& opt) {
    if (gdp.size() < 2) {
        throw SeriesTooShort(gdp.country + "/gdp: recession dummy needs length >= 2");
    }
    for (const auto& v : gdp.values) {
        if (v.has_value() && *v <= 0.0) {
            throw NonPositiveGdp(gdp.country + "/gdp: nonpositive level " + std::to_string(*v));
        }
    }
    RegimeSeries out{gdp.country, gdp.start, {}};
    out.flags.resize(gdp.size());
    for (std::size_t t = 0; t < gdp.size(); ++t) {
        if (!gdp.values[t].has_value()) {
            continue;  // missing GDP -> missing flag
        }
        if (t == 0 || !gdp.values[t - 1].has_value()) {
            // growth undefined at the start of a run; tranquil is the base regime
            out.flags[t] = false;
            continue;
        }
        double growth = std::log(*gdp.values[t]) - std::log(*gdp.values[t - 1]);
        out.flags[t] = opt.strict_negative ? growth < 0.0 : growth <= 0.0;
    }
    return out;
}

int count_recessions(const RegimeSeries& r, Quarter lo, Quarter hi) {
    if (hi < lo) {
        throw Error("count_recessions: window end precedes start");
    }
    int count = 0;
    for (std::size_t i = 0; i < r.flags.size(); ++i) {
        Quarter q = r.quarter_at(i);
        if (q < lo || hi < q) {
            continue;
        }
        if (r.flags[i].has_value() && *r.flags[i]) {
            ++count;
        }
    }
    return count;
}

bool has_flag_in_window(const RegimeSeries& r, Quarter lo, Quarter hi) {
    for (std::size_t i = 0; i < r.flags.size(); ++i) {
        Quarter q = r.quarter_at(i);
        if (lo <= q && q <= hi && r.flags[i].has_value()) {
            return true;
        }
    }
    return false;
}

}  // namespace ncpc
