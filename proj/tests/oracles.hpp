#pragma once

// Test-only reference implementations, deliberately written with plain
// loops and Gaussian elimination so they share no code path with the
// library routines they cross-check.

#include <cmath>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "ncpc/series.hpp"

namespace oracle {

using Matrix = std::vector<std::vector<double>>;

// Gaussian elimination with partial pivoting.
inline std::vector<double> solve_dense(Matrix a, std::vector<double> b) {
    const std::size_t n = b.size();
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t pivot = i;
        for (std::size_t r = i + 1; r < n; ++r) {
            if (std::abs(a[r][i]) > std::abs(a[pivot][i])) {
                pivot = r;
            }
        }
        if (std::abs(a[pivot][i]) < 1e-300) {
            throw std::runtime_error("oracle: singular system");
        }
        std::swap(a[i], a[pivot]);
        std::swap(b[i], b[pivot]);
        for (std::size_t r = i + 1; r < n; ++r) {
            double f = a[r][i] / a[i][i];
            for (std::size_t c = i; c < n; ++c) {
                a[r][c] -= f * a[i][c];
            }
            b[r] -= f * b[i];
        }
    }
    std::vector<double> x(n);
    for (std::size_t ii = n; ii-- > 0;) {
        double s = b[ii];
        for (std::size_t c = ii + 1; c < n; ++c) {
            s -= a[ii][c] * x[c];
        }
        x[ii] = s / a[ii][ii];
    }
    return x;
}

// Dense I + lambda*D'D with D the (n-2) x n second-difference operator.
inline Matrix hp_system_dense(std::size_t n, double lambda) {
    Matrix d(n > 2 ? n - 2 : 0, std::vector<double>(n, 0.0));
    for (std::size_t r = 0; r + 2 < n; ++r) {
        d[r][r] = 1.0;
        d[r][r + 1] = -2.0;
        d[r][r + 2] = 1.0;
    }
    Matrix a(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        a[i][i] = 1.0;
    }
    for (std::size_t r = 0; r < d.size(); ++r) {
        for (std::size_t i = 0; i < n; ++i) {
            if (d[r][i] == 0.0) {
                continue;
            }
            for (std::size_t j = 0; j < n; ++j) {
                a[i][j] += lambda * d[r][i] * d[r][j];
            }
        }
    }
    return a;
}

inline std::vector<double> hp_trend_dense(const std::vector<double>& y, double lambda) {
    if (lambda == 0.0 || y.size() < 3) {
        return y;
    }
    return solve_dense(hp_system_dense(y.size(), lambda), y);
}

// Normal-equations OLS: (X'X)^{-1} X'y via the dense solver.
inline std::vector<double> ols_normal_equations(const Matrix& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    const std::size_t k = x[0].size();
    Matrix xtx(k, std::vector<double>(k, 0.0));
    std::vector<double> xty(k, 0.0);
    for (std::size_t t = 0; t < n; ++t) {
        for (std::size_t i = 0; i < k; ++i) {
            xty[i] += x[t][i] * y[t];
            for (std::size_t j = 0; j < k; ++j) {
                xtx[i][j] += x[t][i] * x[t][j];
            }
        }
    }
    return solve_dense(xtx, xty);
}

inline Matrix invert_dense(const Matrix& a) {
    const std::size_t n = a.size();
    Matrix inv(n, std::vector<double>(n, 0.0));
    for (std::size_t c = 0; c < n; ++c) {
        std::vector<double> e(n, 0.0);
        e[c] = 1.0;
        auto col = solve_dense(a, e);
        for (std::size_t r = 0; r < n; ++r) {
            inv[r][c] = col[r];
        }
    }
    return inv;
}

// Heteroskedasticity-only sandwich (X'X)^{-1} (sum e_t^2 x_t x_t') (X'X)^{-1}.
inline Matrix white_covariance(const Matrix& x, const std::vector<double>& e) {
    const std::size_t n = x.size();
    const std::size_t k = x[0].size();
    Matrix xtx(k, std::vector<double>(k, 0.0));
    Matrix meat(k, std::vector<double>(k, 0.0));
    for (std::size_t t = 0; t < n; ++t) {
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = 0; j < k; ++j) {
                xtx[i][j] += x[t][i] * x[t][j];
                meat[i][j] += e[t] * e[t] * x[t][i] * x[t][j];
            }
        }
    }
    Matrix bread = invert_dense(xtx);
    auto mul = [&](const Matrix& l, const Matrix& r) {
        Matrix out(k, std::vector<double>(k, 0.0));
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = 0; j < k; ++j) {
                for (std::size_t m = 0; m < k; ++m) {
                    out[i][j] += l[i][m] * r[m][j];
                }
            }
        }
        return out;
    };
    return mul(mul(bread, meat), bread);
}

struct DickeyFullerOracle {
    double statistic = 0.0;
    double rss = 0.0;
    int nobs = 0;
    std::vector<double> residuals;
};

// Reference Dickey-Fuller regression: dy_t on [1, y_{t-1}, dy_{t-1..t-L}],
// t-ratio on the level term, built with raw loops and the dense solver.
inline DickeyFullerOracle df_regression(const std::vector<double>& y, int lags, int first) {
    const int n = static_cast<int>(y.size());
    const int T = n - first;
    const int k = 2 + lags;
    Matrix x(static_cast<std::size_t>(T), std::vector<double>(static_cast<std::size_t>(k)));
    std::vector<double> dy(static_cast<std::size_t>(T));
    for (int i = 0; i < T; ++i) {
        int t = first + i;
        dy[i] = y[t] - y[t - 1];
        x[i][0] = 1.0;
        x[i][1] = y[t - 1];
        for (int l = 1; l <= lags; ++l) {
            x[i][1 + l] = y[t - l] - y[t - l - 1];
        }
    }
    auto beta = ols_normal_equations(x, dy);

    DickeyFullerOracle out;
    out.nobs = T;
    out.residuals.resize(static_cast<std::size_t>(T));
    for (int i = 0; i < T; ++i) {
        double fit = 0.0;
        for (int j = 0; j < k; ++j) {
            fit += x[i][j] * beta[static_cast<std::size_t>(j)];
        }
        out.residuals[i] = dy[i] - fit;
        out.rss += out.residuals[i] * out.residuals[i];
    }
    double s2 = out.rss / (T - k);

    Matrix xtx(static_cast<std::size_t>(k), std::vector<double>(static_cast<std::size_t>(k), 0.0));
    for (int t = 0; t < T; ++t) {
        for (int i = 0; i < k; ++i) {
            for (int j = 0; j < k; ++j) {
                xtx[i][j] += x[t][i] * x[t][j];
            }
        }
    }
    auto inv = invert_dense(xtx);
    out.statistic = beta[1] / std::sqrt(s2 * inv[1][1]);
    return out;
}

// Reference ADF with common-sample SIC selection over 0..max_lag.
inline DickeyFullerOracle adf_reference(const std::vector<double>& y, int max_lag,
                                        int* chosen_lag = nullptr) {
    const int n = static_cast<int>(y.size());
    const int common_first = max_lag + 1;
    const int common_T = n - common_first;
    int best = 0;
    double best_sic = 1e300;
    for (int L = 0; L <= max_lag; ++L) {
        auto fit = df_regression(y, L, common_first);
        double ic = std::log(fit.rss / common_T) +
                    (2 + L) * std::log(static_cast<double>(common_T)) / common_T;
        if (ic < best_sic) {
            best_sic = ic;
            best = L;
        }
    }
    if (chosen_lag != nullptr) {
        *chosen_lag = best;
    }
    return df_regression(y, best, best + 1);
}

// Reference Phillips-Perron Z_tau at a given Bartlett bandwidth.
inline double pp_reference(const std::vector<double>& y, int bandwidth) {
    const int n = static_cast<int>(y.size());
    const int T = n - 1;
    Matrix x(static_cast<std::size_t>(T), std::vector<double>(2));
    std::vector<double> dy(static_cast<std::size_t>(T));
    for (int i = 0; i < T; ++i) {
        dy[i] = y[i + 1] - y[i];
        x[i][0] = 1.0;
        x[i][1] = y[i];
    }
    auto beta = ols_normal_equations(x, dy);
    std::vector<double> e(static_cast<std::size_t>(T));
    double rss = 0.0;
    for (int i = 0; i < T; ++i) {
        e[i] = dy[i] - beta[0] - beta[1] * x[i][1];
        rss += e[i] * e[i];
    }
    double s2 = rss / (T - 2);
    Matrix xtx(2, std::vector<double>(2, 0.0));
    for (int t = 0; t < T; ++t) {
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
                xtx[i][j] += x[t][i] * x[t][j];
            }
        }
    }
    auto inv = invert_dense(xtx);
    double se = std::sqrt(s2 * inv[1][1]);
    double tstat = beta[1] / se;

    double gamma0 = rss / T;
    double f0 = gamma0;
    for (int l = 1; l <= bandwidth && l < T; ++l) {
        double g = 0.0;
        for (int t = l; t < T; ++t) {
            g += e[t] * e[t - l];
        }
        f0 += 2.0 * (1.0 - static_cast<double>(l) / (bandwidth + 1.0)) * (g / T);
    }
    return tstat * std::sqrt(gamma0 / f0) -
           T * (f0 - gamma0) * se / (2.0 * std::sqrt(f0) * std::sqrt(s2));
}

// Simple-regression line fit y = a + b*t, closed form.
inline std::pair<double, double> line_fit(const std::vector<double>& y) {
    const double n = static_cast<double>(y.size());
    double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        double t = static_cast<double>(i);
        st += t;
        sy += y[i];
        stt += t * t;
        sty += t * y[i];
    }
    double b = (n * sty - st * sy) / (n * stt - st * st);
    double a = (sy - b * st) / n;
    return {a, b};
}

// Series helpers -----------------------------------------------------------

inline ncpc::QuarterlySeries make_series(std::vector<std::optional<double>> values,
                                         ncpc::Quarter start = {2000, 1},
                                         const std::string& name = "x") {
    return ncpc::QuarterlySeries{"AU", name, start, std::move(values)};
}

inline ncpc::QuarterlySeries make_dense_series(const std::vector<double>& values,
                                               ncpc::Quarter start = {2000, 1},
                                               const std::string& name = "x") {
    std::vector<std::optional<double>> v(values.begin(), values.end());
    return ncpc::QuarterlySeries{"AU", name, start, std::move(v)};
}

}  // namespace oracle
