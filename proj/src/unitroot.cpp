#include "ncpc/unitroot.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>

#include "ncpc/errors.hpp"
#include "ncpc/estimate.hpp"

namespace ncpc {

namespace {

double norm_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

// Dickey-Fuller regression internals shared by ADF and PP: the t-ratio on
// the lagged level plus what the PP correction needs.
struct DfFit {
    double gamma = 0.0;      // coefficient on y_{t-1}
    double se_gamma = 0.0;   // OLS standard error
    double t_gamma = 0.0;
    double s = 0.0;          // regression standard error sqrt(RSS/(T-k))
    double rss = 0.0;
    int nobs = 0;
    std::vector<double> residuals;
};

// Delta-y_t on 1, y_{t-1}, and L lagged differences, over t = first..n-1.
DfFit df_regression(std::span<const double> y, int lags, int first) {
    const int n = static_cast<int>(y.size());
    const int T = n - first;
    const int k = 2 + lags;
    if (lags < 0 || first <= lags) {
        throw Error("unit-root regression: need first > lags >= 0");
    }
    if (T <= k) {
        throw SeriesTooShort("unit-root regression: sample smaller than parameter count");
    }
    Eigen::MatrixXd X(T, k);
    Eigen::VectorXd dy(T);
    for (int i = 0; i < T; ++i) {
        int t = first + i;
        dy(i) = y[t] - y[t - 1];
        X(i, 0) = 1.0;
        X(i, 1) = y[t - 1];
        for (int l = 1; l <= lags; ++l) {
            X(i, 1 + l) = y[t - l] - y[t - l - 1];
        }
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
    if (qr.rank() < k) {
        throw RankDeficient("unit-root regression: collinear design (degenerate series)", {});
    }
    Eigen::VectorXd beta = qr.solve(dy);
    Eigen::VectorXd e = dy - X * beta;

    DfFit fit;
    fit.rss = e.squaredNorm();
    fit.nobs = T;
    fit.s = std::sqrt(fit.rss / (T - k));
    Eigen::MatrixXd xtx_inv =
        (X.transpose() * X).ldlt().solve(Eigen::MatrixXd::Identity(k, k));
    fit.gamma = beta(1);
    fit.se_gamma = fit.s * std::sqrt(xtx_inv(1, 1));
    if (!(fit.se_gamma > 0.0) || !std::isfinite(fit.se_gamma)) {
        throw RankDeficient("unit-root regression: zero-variance level regressor", {});
    }
    fit.t_gamma = fit.gamma / fit.se_gamma;
    fit.residuals.assign(e.data(), e.data() + T);
    return fit;
}

std::vector<double> test_sample(const QuarterlySeries& s) {
    return s.longest_present_run().dense_present();
}

}  // namespace

double sic(std::span<const double> residuals, int k, int n) {
    if (n <= k) {
        throw Error("sic: n must exceed the parameter count");
    }
    double rss = 0.0;
    for (double e : residuals) {
        rss += e * e;
    }
    return std::log(rss / n) + k * std::log(static_cast<double>(n)) / n;
}

double mackinnon_pvalue(double tau) {
    // MacKinnon response-surface approximation, intercept case: the p-value
    // is the normal CDF of a polynomial in tau, with one polynomial below
    // tau* and one above.
    constexpr double tau_min = -18.83, tau_max = 2.74, tau_star = -1.61;
    if (tau <= tau_min) {
        return 0.0;
    }
    if (tau >= tau_max) {
        return 1.0;
    }
    double z;
    if (tau <= tau_star) {
        z = 2.1659 + tau * (1.4412 + tau * 0.038269);
    } else {
        z = 1.7339 + tau * (0.93202 + tau * (-0.12745 + tau * -0.010368));
    }
    return norm_cdf(z);
}

UnitRootResult adf(const QuarterlySeries& s, int max_lag) {
    if (max_lag < 0) {
        throw Error("adf: max_lag must be nonnegative");
    }
    std::vector<double> y = test_sample(s);
    const int n = static_cast<int>(y.size());
    if (n <= max_lag + 3) {
        throw SeriesTooShort(s.country + "/" + s.name + ": ADF needs n > max_lag + 3");
    }

    // All candidates are compared on the common sample implied by max_lag,
    // then the chosen lag is refit on its own maximal sample.
    const int common_first = max_lag + 1;
    const int common_T = n - common_first;
    int best_lag = -1;
    double best_sic = std::numeric_limits<double>::infinity();
    for (int L = 0; L <= max_lag; ++L) {
        if (common_T <= 2 + L) {
            break;
        }
        DfFit fit = df_regression(y, L, common_first);
        double ic = sic(fit.residuals, 2 + L, common_T);
        if (ic < best_sic) {
            best_sic = ic;
            best_lag = L;
        }
    }
    if (best_lag < 0) {
        throw SeriesTooShort(s.country + "/" + s.name + ": no estimable ADF candidate");
    }

    DfFit fit = df_regression(y, best_lag, best_lag + 1);
    return UnitRootResult{fit.t_gamma, mackinnon_pvalue(fit.t_gamma), best_lag, fit.nobs};
}

int newey_west_auto_bandwidth(std::span<const double> residuals) {
    // Newey-West (1994) plug-in selection for the Bartlett kernel.
    const int T = static_cast<int>(residuals.size());
    if (T < 2) {
        return 0;
    }
    const int n = static_cast<int>(std::floor(4.0 * std::pow(T / 100.0, 2.0 / 9.0)));
    auto acov = [&](int j) {
        double s = 0.0;
        for (int t = j; t < T; ++t) {
            s += residuals[t] * residuals[t - j];
        }
        return s / T;
    };
    double s0 = acov(0);
    double s1 = 0.0;
    for (int j = 1; j <= n && j < T; ++j) {
        double g = acov(j);
        s0 += 2.0 * g;
        s1 += 2.0 * j * g;
    }
    if (s0 == 0.0) {
        return 0;
    }
    double gamma_hat = 1.1447 * std::cbrt((s1 / s0) * (s1 / s0));
    double m = gamma_hat * std::cbrt(static_cast<double>(T));
    if (!std::isfinite(m) || m < 0.0) {
        return 0;
    }
    return static_cast<int>(std::min(m, static_cast<double>(T - 1)));
}

UnitRootResult pp_with_bandwidth(const QuarterlySeries& s, int bandwidth) {
    if (bandwidth < 0) {
        throw Error("pp: bandwidth must be nonnegative");
    }
    std::vector<double> y = test_sample(s);
    const int n = static_cast<int>(y.size());
    if (n < 10) {
        throw SeriesTooShort(s.country + "/" + s.name + ": PP needs n >= 10");
    }

    DfFit fit = df_regression(y, 0, 1);
    const int T = fit.nobs;
    const auto& e = fit.residuals;

    double gamma0 = fit.rss / T;
    double f0 = gamma0;
    for (int l = 1; l <= bandwidth && l < T; ++l) {
        double g = 0.0;
        for (int t = l; t < T; ++t) {
            g += e[t] * e[t - l];
        }
        g /= T;
        f0 += 2.0 * (1.0 - static_cast<double>(l) / (bandwidth + 1.0)) * g;
    }
    if (!(f0 > 0.0)) {
        throw Error(s.country + "/" + s.name + ": nonpositive long-run variance estimate");
    }

    // Z_tau: scale the t-ratio by sqrt(gamma0/f0) and subtract the serial-
    // correlation correction term.
    double z = fit.t_gamma * std::sqrt(gamma0 / f0) -
               T * (f0 - gamma0) * fit.se_gamma / (2.0 * std::sqrt(f0) * fit.s);
    return UnitRootResult{z, mackinnon_pvalue(z), bandwidth, T};
}

UnitRootResult pp(const QuarterlySeries& s, PpBandwidthRule rule) {
    std::vector<double> y = test_sample(s);
    const int n = static_cast<int>(y.size());
    if (n < 10) {
        throw SeriesTooShort(s.country + "/" + s.name + ": PP needs n >= 10");
    }
    int bw;
    if (rule == PpBandwidthRule::FixedFourNinths) {
        bw = newey_west_fixed_bandwidth(n - 1);
    } else {
        DfFit fit = df_regression(y, 0, 1);
        bw = newey_west_auto_bandwidth(fit.residuals);
    }
    return pp_with_bandwidth(s, bw);
}

}  // namespace ncpc
