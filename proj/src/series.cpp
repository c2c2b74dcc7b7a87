#include "ncpc/series.hpp"

#include <algorithm>
#include <cmath>

#include "ncpc/errors.hpp"

namespace ncpc {

std::optional<double> QuarterlySeries::at(Quarter q) const {
    int i = quarters_between(start, q);
    if (i < 0 || i >= static_cast<int>(values.size())) {
        return std::nullopt;
    }
    return values[static_cast<std::size_t>(i)];
}

std::size_t QuarterlySeries::present_count() const {
    return static_cast<std::size_t>(
        std::count_if(values.begin(), values.end(), [](const auto& v) { return v.has_value(); }));
}

QuarterlySeries QuarterlySeries::clipped(Quarter lo, Quarter hi) const {
    QuarterlySeries out{country, name, start, {}};
    if (values.empty() || hi < lo) {
        return out;
    }
    int first = std::max(0, quarters_between(start, lo));
    int last = std::min(static_cast<int>(values.size()) - 1, quarters_between(start, hi));
    if (last < first) {
        return out;
    }
    out.start = start.plus(first);
    out.values.assign(values.begin() + first, values.begin() + last + 1);
    return out;
}

QuarterlySeries QuarterlySeries::longest_present_run() const {
    std::size_t best_start = 0, best_len = 0;
    std::size_t run_start = 0, run_len = 0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i].has_value()) {
            if (run_len == 0) {
                run_start = i;
            }
            ++run_len;
            if (run_len > best_len) {
                best_len = run_len;
                best_start = run_start;
            }
        } else {
            run_len = 0;
        }
    }
    QuarterlySeries out{country, name, start.plus(static_cast<int>(best_start)), {}};
    out.values.assign(values.begin() + static_cast<long>(best_start),
                      values.begin() + static_cast<long>(best_start + best_len));
    return out;
}

bool QuarterlySeries::present_is_contiguous() const {
    return longest_present_run().size() == present_count();
}

std::vector<double> QuarterlySeries::dense_present() const {
    if (!present_is_contiguous()) {
        throw NonContiguous(country + "/" + name + ": present values are not contiguous");
    }
    std::vector<double> out;
    out.reserve(present_count());
    for (const auto& v : values) {
        if (v.has_value()) {
            out.push_back(*v);
        }
    }
    return out;
}

QuarterlySeries shifted_log(const QuarterlySeries& s, double shift) {
    QuarterlySeries out = s;
    for (auto& v : out.values) {
        if (!v.has_value()) {
            continue;
        }
        double shifted = *v + shift;
        if (shifted <= 0.0) {
            throw NonPositiveAfterShift(s.country + "/" + s.name + ": value " +
                                        std::to_string(*v) + " + shift " + std::to_string(shift) +
                                        " is not positive");
        }
        v = std::log(shifted);
    }
    return out;
}

QuarterlySeries first_diff(const QuarterlySeries& s) {
    if (s.size() < 2) {
        throw SeriesTooShort(s.country + "/" + s.name + ": first difference needs length >= 2");
    }
    QuarterlySeries out{s.country, s.name, s.start.plus(1), {}};
    out.values.resize(s.size() - 1);
    for (std::size_t t = 1; t < s.size(); ++t) {
        if (s.values[t].has_value() && s.values[t - 1].has_value()) {
            out.values[t - 1] = *s.values[t] - *s.values[t - 1];
        }
    }
    return out;
}

QuarterlySeries lag(const QuarterlySeries& s, int k) {
    if (k < 1) {
        throw Error("lag requires k >= 1");
    }
    QuarterlySeries out = s;
    out.start = s.start.plus(k);
    return out;
}

QuarterlySeries inflation_proxy(const QuarterlySeries& cpi, double shift) {
    return first_diff(shifted_log(cpi, shift));
}

SummaryStats describe(const QuarterlySeries& s) {
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto& v : s.values) {
        if (v.has_value()) {
            sum += *v;
            ++n;
        }
    }
    if (n < 2) {
        throw InsufficientData(s.country + "/" + s.name + ": describe needs >= 2 present values");
    }
    double mean = sum / static_cast<double>(n);
    double ss = 0.0;
    for (const auto& v : s.values) {
        if (v.has_value()) {
            double d = *v - mean;
            ss += d * d;
        }
    }
    return SummaryStats{mean, std::sqrt(ss / static_cast<double>(n - 1))};
}

QuarterlySeries subtract(const QuarterlySeries& a, const QuarterlySeries& b) {
    Quarter lo = std::max(a.start, b.start);
    Quarter hi = std::min(a.last_quarter(), b.last_quarter());
    QuarterlySeries out{a.country, a.name, lo, {}};
    int n = quarters_between(lo, hi) + 1;
    if (n <= 0) {
        out.start = a.start;
        return out;
    }
    out.values.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        Quarter q = lo.plus(i);
        auto va = a.at(q);
        auto vb = b.at(q);
        if (va.has_value() && vb.has_value()) {
            out.values[static_cast<std::size_t>(i)] = *va - *vb;
        }
    }
    return out;
}

}  // namespace ncpc
