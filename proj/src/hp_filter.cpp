#include "ncpc/hp_filter.hpp"

#include <cmath>
#include <stdexcept>

#include "ncpc/errors.hpp"

namespace ncpc {

namespace {

// Symmetric pentadiagonal matrix A = I + lambda D'D stored by diagonals
// (d0 main, d1 first sub, d2 second sub).
struct Pentadiagonal {
    std::vector<double> d0, d1, d2;
};

Pentadiagonal hp_system(std::size_t n, double lambda) {
    Pentadiagonal a;
    a.d0.assign(n, 1.0);
    a.d1.assign(n > 1 ? n - 1 : 0, 0.0);
    a.d2.assign(n > 2 ? n - 2 : 0, 0.0);
    // accumulate lambda * D'D from the (1,-2,1) row stencils
    for (std::size_t r = 0; r + 2 < n; ++r) {
        a.d0[r] += lambda;
        a.d0[r + 1] += 4.0 * lambda;
        a.d0[r + 2] += lambda;
        a.d1[r] += -2.0 * lambda;
        a.d1[r + 1] += -2.0 * lambda;
        a.d2[r] += lambda;
    }
    return a;
}

// y - A*x for the pentadiagonal system, used for refinement residuals.
// Accumulated in extended precision: at lambda ~ 1e12 the conditioning of A
// makes double-precision residuals stall the refinement around 1e-3, while
// the system matrix itself is exactly representable.
std::vector<double> residual(const Pentadiagonal& a, std::span<const double> x,
                             std::span<const double> y) {
    std::size_t n = x.size();
    std::vector<double> r(n);
    for (std::size_t i = 0; i < n; ++i) {
        long double s = static_cast<long double>(a.d0[i]) * x[i];
        if (i >= 1) s += static_cast<long double>(a.d1[i - 1]) * x[i - 1];
        if (i + 1 < n) s += static_cast<long double>(a.d1[i]) * x[i + 1];
        if (i >= 2) s += static_cast<long double>(a.d2[i - 2]) * x[i - 2];
        if (i + 2 < n) s += static_cast<long double>(a.d2[i]) * x[i + 2];
        r[i] = static_cast<double>(static_cast<long double>(y[i]) - s);
    }
    return r;
}

// Banded Cholesky A = L L' with bandwidth 2; factors stored by diagonals.
struct BandedCholesky {
    std::vector<double> l0, l1, l2;

    explicit BandedCholesky(const Pentadiagonal& a) {
        std::size_t n = a.d0.size();
        l0.assign(n, 0.0);
        l1.assign(n > 1 ? n - 1 : 0, 0.0);
        l2.assign(n > 2 ? n - 2 : 0, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            double s2 = i >= 2 ? a.d2[i - 2] : 0.0;  // L(i, i-2)
            if (i >= 2) {
                l2[i - 2] = s2 / l0[i - 2];
            }
            double s1 = i >= 1 ? a.d1[i - 1] : 0.0;  // L(i, i-1)
            if (i >= 1) {
                if (i >= 2) s1 -= l2[i - 2] * l1[i - 2];
                l1[i - 1] = s1 / l0[i - 1];
            }
            double s0 = a.d0[i];
            if (i >= 1) s0 -= l1[i - 1] * l1[i - 1];
            if (i >= 2) s0 -= l2[i - 2] * l2[i - 2];
            if (s0 <= 0.0) {
                throw std::runtime_error("HP system lost positive definiteness");
            }
            l0[i] = std::sqrt(s0);
        }
    }

    [[nodiscard]] std::vector<double> solve(std::span<const double> b) const {
        std::size_t n = l0.size();
        std::vector<double> x(b.begin(), b.end());
        // forward: L z = b
        for (std::size_t i = 0; i < n; ++i) {
            double s = x[i];
            if (i >= 1) s -= l1[i - 1] * x[i - 1];
            if (i >= 2) s -= l2[i - 2] * x[i - 2];
            x[i] = s / l0[i];
        }
        // backward: L' x = z
        for (std::size_t ii = n; ii-- > 0;) {
            double s = x[ii];
            if (ii + 1 < n) s -= l1[ii] * x[ii + 1];
            if (ii + 2 < n) s -= l2[ii] * x[ii + 2];
            x[ii] = s / l0[ii];
        }
        return x;
    }
};

double inf_norm(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) {
        m = std::max(m, std::abs(x));
    }
    return m;
}

}  // namespace

double ravn_uhlig_lambda(int periods_per_year, double x) {
    if (periods_per_year < 1) {
        throw Error("ravn_uhlig_lambda: periods_per_year must be >= 1");
    }
    return std::pow(static_cast<double>(periods_per_year) / 4.0, x) * 1600.0;
}

std::vector<double> hp_trend(std::span<const double> y, double lambda) {
    if (lambda < 0.0) {
        throw Error("hp_trend: lambda must be nonnegative");
    }
    std::size_t n = y.size();
    if (lambda == 0.0 || n < 3) {
        return {y.begin(), y.end()};
    }
    Pentadiagonal a = hp_system(n, lambda);
    BandedCholesky chol(a);
    std::vector<double> tau = chol.solve(y);
    // Iterative refinement keeps the optimality residual near machine
    // precision even at very large lambda, where the raw factorization
    // alone would lose digits to the O(lambda) conditioning.
    double prev = std::numeric_limits<double>::infinity();
    for (int it = 0; it < 4; ++it) {
        std::vector<double> r = residual(a, tau, y);
        double rn = inf_norm(r);
        if (rn == 0.0 || rn >= prev) {
            break;
        }
        prev = rn;
        std::vector<double> dx = chol.solve(r);
        for (std::size_t i = 0; i < n; ++i) {
            tau[i] += dx[i];
        }
    }
    return tau;
}

TrendDecomposition hp_filter(const QuarterlySeries& s, double lambda) {
    QuarterlySeries run = s.longest_present_run();
    if (run.present_count() != s.present_count()) {
        throw NonContiguous(s.country + "/" + s.name +
                            ": interior missing values; filter a contiguous run");
    }
    if (run.size() < 4) {
        throw SeriesTooShort(s.country + "/" + s.name + ": HP filter needs >= 4 present values");
    }
    std::vector<double> y = run.dense_present();
    std::vector<double> tau = hp_trend(y, lambda);

    TrendDecomposition out;
    out.lambda = lambda;
    out.trend = QuarterlySeries{s.country, s.name + "_trend", run.start, {}};
    out.cycle = QuarterlySeries{s.country, s.name + "_cycle", run.start, {}};
    out.trend.values.resize(y.size());
    out.cycle.values.resize(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        out.trend.values[i] = tau[i];
        out.cycle.values[i] = y[i] - tau[i];
    }
    return out;
}

QuarterlySeries nairu(const QuarterlySeries& u, double lambda) {
    QuarterlySeries trend = hp_filter(u, lambda).trend;
    trend.name = "nairu";
    return trend;
}

QuarterlySeries unemployment_gap(const QuarterlySeries& u, GapMode mode, double shift,
                                 double lambda) {
    QuarterlySeries base = mode == GapMode::Logs ? shifted_log(u, shift) : u;
    QuarterlySeries gap = subtract(base, nairu(base, lambda));
    gap.name = "u_gap";
    return gap;
}

}  // namespace ncpc
