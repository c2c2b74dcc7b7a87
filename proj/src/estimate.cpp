#include "ncpc/estimate.hpp"

#include <boost/math/distributions/students_t.hpp>
#include <cmath>

#include "ncpc/errors.hpp"

namespace ncpc {

int ModelFrame::recession_rows() const {
    int n = 0;
    for (int i = 0; i < dummy.size(); ++i) {
        if (dummy(i) > 0.5) {
            ++n;
        }
    }
    return n;
}

ModelFrame build_frame(const CountryDataset& d, SpecKind spec, const RegimeSeries& regimes,
                       const TransformConfig& cfg) {
    try {
        // Transforms use all loaded data so the first window row keeps its
        // lagged regressor; HP trends are fit on the window-clipped sample.
        QuarterlySeries infl = inflation_proxy(d.cpi, cfg.shift);
        QuarterlySeries infl_term =
            spec == SpecKind::Backward ? lag(infl, 1) : inflation_proxy(d.expected_cpi, cfg.shift);
        QuarterlySeries u =
            d.unemployment.clipped(cfg.window_start, cfg.window_end).longest_present_run();
        QuarterlySeries gap = unemployment_gap(u, cfg.gap_mode, cfg.shift, cfg.lambda);

        std::vector<Quarter> quarters;
        std::vector<double> ys, xs, gs, ds;
        for (Quarter q = cfg.window_start; q <= cfg.window_end; q = q.plus(1)) {
            auto vy = infl.at(q);
            auto vx = infl_term.at(q);
            auto vg = gap.at(q);
            auto vd = regimes.at(q);
            if (!vy || !vx || !vg || !vd) {
                continue;
            }
            quarters.push_back(q);
            ys.push_back(*vy);
            xs.push_back(*vx);
            gs.push_back(*vg);
            ds.push_back(*vd ? 1.0 : 0.0);
        }

        const int n = static_cast<int>(quarters.size());
        if (n < 10) {
            throw EmptyFrame(d.code + ": only " + std::to_string(n) +
                             " complete rows in the sample window");
        }

        ModelFrame f;
        f.country = d.code;
        f.spec = spec;
        f.quarters = std::move(quarters);
        f.y = Eigen::Map<Eigen::VectorXd>(ys.data(), n);
        f.dummy = Eigen::Map<Eigen::VectorXd>(ds.data(), n);
        f.X.resize(n, ModelFrame::kCols);
        for (int i = 0; i < n; ++i) {
            f.X(i, 0) = 1.0;
            f.X(i, 1) = xs[static_cast<std::size_t>(i)];
            f.X(i, 2) = gs[static_cast<std::size_t>(i)];
            f.X(i, 3) = xs[static_cast<std::size_t>(i)] * ds[static_cast<std::size_t>(i)];
            f.X(i, 4) = gs[static_cast<std::size_t>(i)] * ds[static_cast<std::size_t>(i)];
        }
        return f;
    } catch (const SeriesTooShort& e) {
        // a component too short to transform means the pair is unusable
        throw EmptyFrame(d.code + ": " + e.what());
    }
}

OlsFit ols(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
           std::span<const char* const> column_names) {
    const auto n = X.rows();
    const auto k = X.cols();
    if (n <= k) {
        throw RankDeficient("ols: need more rows than columns", {});
    }

    std::vector<std::string> zero_cols;
    for (Eigen::Index j = 0; j < k; ++j) {
        if (X.col(j).cwiseAbs().maxCoeff() == 0.0) {
            zero_cols.push_back(j < static_cast<Eigen::Index>(column_names.size())
                                    ? column_names[static_cast<std::size_t>(j)]
                                    : "col" + std::to_string(j));
        }
    }
    if (!zero_cols.empty()) {
        std::string msg = "ols: all-zero regressor(s):";
        for (const auto& c : zero_cols) {
            msg += " " + c;
        }
        throw RankDeficient(msg, zero_cols);
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
    if (qr.rank() < k) {
        throw RankDeficient(
            "ols: design matrix rank " + std::to_string(qr.rank()) + " < " + std::to_string(k),
            {});
    }
    OlsFit fit;
    fit.beta = qr.solve(y);
    fit.residuals = y - X * fit.beta;
    return fit;
}

OlsFit ols(const ModelFrame& f) {
    return ols(f.X, f.y, std::span<const char* const>(ModelFrame::column_names));
}

int newey_west_fixed_bandwidth(int n) {
    if (n <= 0) {
        return 0;
    }
    return static_cast<int>(std::floor(4.0 * std::pow(n / 100.0, 2.0 / 9.0)));
}

Eigen::MatrixXd newey_west(const Eigen::MatrixXd& X, const Eigen::VectorXd& residuals,
                           int bandwidth) {
    const auto n = X.rows();
    const auto k = X.cols();
    if (residuals.size() != n) {
        throw Error("newey_west: residual length does not match design rows");
    }
    if (bandwidth < 0) {
        throw Error("newey_west: bandwidth must be nonnegative");
    }

    Eigen::MatrixXd S = Eigen::MatrixXd::Zero(k, k);
    for (Eigen::Index t = 0; t < n; ++t) {
        S += residuals(t) * residuals(t) * X.row(t).transpose() * X.row(t);
    }
    for (int l = 1; l <= bandwidth && l < n; ++l) {
        double w = 1.0 - static_cast<double>(l) / (bandwidth + 1.0);
        Eigen::MatrixXd G = Eigen::MatrixXd::Zero(k, k);
        for (Eigen::Index t = l; t < n; ++t) {
            G += residuals(t) * residuals(t - l) * X.row(t).transpose() * X.row(t - l);
        }
        S += w * (G + G.transpose());
    }

    Eigen::MatrixXd xtx = X.transpose() * X;
    Eigen::MatrixXd xtx_inv = xtx.ldlt().solve(Eigen::MatrixXd::Identity(k, k));
    Eigen::MatrixXd cov = xtx_inv * S * xtx_inv;
    return 0.5 * (cov + cov.transpose());  // exact symmetry for downstream checks
}

RegressionResult fit_equation(const ModelFrame& f, std::optional<int> bandwidth) {
    OlsFit fit = ols(f);
    int bw = bandwidth.value_or(newey_west_fixed_bandwidth(f.rows()));
    RegressionResult r;
    r.beta = fit.beta;
    r.residuals = fit.residuals;
    r.hac_cov = newey_west(f.X, fit.residuals, bw);
    r.nobs = f.rows();
    r.bandwidth = bw;
    return r;
}

CombinedCoefficient combine(const RegressionResult& r, int i, int j) {
    if (i == j || i < 0 || j < 0 || i >= r.beta.size() || j >= r.beta.size()) {
        throw Error("combine: invalid coefficient indices");
    }
    CombinedCoefficient c;
    c.value = r.beta(i) + r.beta(j);
    double vi = r.hac_cov(i, i);
    double vj = r.hac_cov(j, j);
    c.se_paper = std::sqrt(vi + vj);
    double radicand = vi + vj + 2.0 * r.hac_cov(i, j);
    if (radicand > 0.0) {
        c.se_exact = std::sqrt(radicand);
    }
    return c;
}

Significance stars(double coef, double se, int df) {
    if (se <= 0.0) {
        throw Error("stars: standard error must be positive");
    }
    if (df <= 0) {
        throw Error("stars: degrees of freedom must be positive");
    }
    boost::math::students_t dist(df);
    double t = std::abs(coef / se);
    if (t > boost::math::quantile(dist, 0.995)) {
        return Significance::P1;
    }
    if (t > boost::math::quantile(dist, 0.975)) {
        return Significance::P5;
    }
    if (t > boost::math::quantile(dist, 0.95)) {
        return Significance::P10;
    }
    return Significance::None;
}

const char* stars_text(Significance s) {
    switch (s) {
        case Significance::P1: return "***";
        case Significance::P5: return "**";
        case Significance::P10: return "*";
        case Significance::None: break;
    }
    return "";
}

CountryReport estimate_country(const CountryDataset& d, SpecKind spec,
                               const TransformConfig& cfg) {
    RegimeSeries regimes =
        recession_dummy(d.gdp, RegimeOptions{.strict_negative = cfg.strict_recession});
    ModelFrame f = build_frame(d, spec, regimes, cfg);

    CountryReport rep;
    rep.country = d.code;
    rep.market_class = d.market_class;
    rep.spec = spec;
    rep.obs = f.rows();

    if (f.recession_rows() == 0) {
        // no recession quarters in sample: the interaction columns are
        // all-zero, so fit the tranquil-only model and leave the recession
        // cells unavailable
        Eigen::MatrixXd Xr = f.X.leftCols(3);
        static constexpr std::array<const char*, 3> names{"const", "infl_term", "u_gap"};
        OlsFit fit = ols(Xr, f.y, std::span<const char* const>(names));
        int bw = cfg.hac_bandwidth.value_or(newey_west_fixed_bandwidth(f.rows()));
        Eigen::MatrixXd cov = newey_west(Xr, fit.residuals, bw);
        int df = f.rows() - 3;
        auto cell = [&](int i) {
            double se = std::sqrt(cov(i, i));
            return Cell{fit.beta(i), se, stars(fit.beta(i), se, df)};
        };
        rep.constant = cell(0);
        rep.tranquil_infl = cell(1);
        rep.tranquil_gap = cell(2);
        rep.bandwidth = bw;
        return rep;
    }

    RegressionResult r = fit_equation(f, cfg.hac_bandwidth);
    rep.bandwidth = r.bandwidth;
    int df = r.nobs - ModelFrame::kCols;
    auto cell = [&](int i) { return Cell{r.beta(i), r.se(i), stars(r.beta(i), r.se(i), df)}; };
    rep.constant = cell(0);
    rep.tranquil_infl = cell(1);
    rep.tranquil_gap = cell(2);

    CombinedCoefficient ci = combine(r, 1, 3);
    CombinedCoefficient cg = combine(r, 2, 4);
    rep.recession_infl = Cell{ci.value, ci.se_paper, stars(ci.value, ci.se_paper, df)};
    rep.recession_gap = Cell{cg.value, cg.se_paper, stars(cg.value, cg.se_paper, df)};
    return rep;
}

double aggregate_fraction(std::span<const CountryReport> reports, MarketClass cls,
                          SpecKind spec, Regime regime, CoefPick pick, bool significant_only) {
    double sum = 0.0;
    int n = 0;
    for (const auto& rep : reports) {
        if (rep.market_class != cls || rep.spec != spec) {
            continue;
        }
        const Cell* cell = nullptr;
        if (regime == Regime::Tranquil) {
            cell = pick == CoefPick::InflationTerm ? &rep.tranquil_infl : &rep.tranquil_gap;
        } else {
            const auto& opt =
                pick == CoefPick::InflationTerm ? rep.recession_infl : rep.recession_gap;
            if (!opt.has_value()) {
                continue;
            }
            cell = &*opt;
        }
        if (significant_only && cell->sig == Significance::None) {
            continue;
        }
        sum += cell->coef;
        ++n;
    }
    if (n == 0) {
        throw EmptySelection("aggregate_fraction: no matching reports");
    }
    return sum / n;
}

}  // namespace ncpc
