#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/students_t.hpp>

#include "netmark/common.hpp"

namespace netmark {

/// Upper-tail probability of the chi-square distribution (regularized
/// upper incomplete gamma). Negative statistics (which can arise from
/// rounding a likelihood-ratio near zero) are clamped to 0.
inline double chi_square_sf(double stat, int df = 1) {
    if (!std::isfinite(stat)) throw Error("chi_square_sf: statistic must be finite");
    if (df < 1) throw Error("chi_square_sf: df must be at least 1");
    if (stat <= 0.0) return 1.0;
    const boost::math::chi_squared_distribution<double> dist(df);
    return boost::math::cdf(boost::math::complement(dist, stat));
}

/// Upper-tail probability of Student's t distribution (regularized
/// incomplete beta).
inline double t_sf(double stat, int df) {
    if (!std::isfinite(stat)) throw Error("t_sf: statistic must be finite");
    if (df < 1) throw Error("t_sf: df must be at least 1");
    const boost::math::students_t_distribution<double> dist(df);
    return boost::math::cdf(boost::math::complement(dist, stat));
}

/// Maximum-likelihood logistic regression of a binary outcome on one
/// predictor, with the inference quantities reported alongside it.
struct LogisticFit {
    double intercept = 0.0;
    double slope = 0.0;             ///< per unit of x
    double odds_ratio = 1.0;        ///< exp(slope)
    double p_value = 1.0;           ///< likelihood-ratio chi-square, 1 df
    double r2_nagelkerke = 0.0;
    bool converged = false;
    int iterations = 0;
    double log_likelihood = 0.0;       ///< at the fitted coefficients
    double null_log_likelihood = 0.0;  ///< intercept-only model
    double lr_statistic = 0.0;         ///< 2 (l_full - l_null), clamped at 0
};

namespace detail {

/// log(1 + e^eta) evaluated without overflow.
inline double log1p_exp(double eta) {
    return std::max(eta, 0.0) + std::log1p(std::exp(-std::abs(eta)));
}

inline double bernoulli_log_likelihood(const std::vector<double>& x,
                                       const std::vector<int>& y,
                                       double intercept, double slope) {
    double ll = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        const double eta = intercept + slope * x[i];
        ll += y[i] * eta - log1p_exp(eta);
    }
    return ll;
}

} // namespace detail

/// Fit by iteratively reweighted least squares (Newton's method on the
/// log-likelihood), starting from zero coefficients; converged when the
/// largest coefficient change drops below 1e-10, capped at 50 iterations.
///
/// The predictor is centered internally for numerical stability (the
/// normal equations are badly conditioned for regressors like calendar
/// years); the intercept is mapped back to the caller's coding, which
/// changes nothing else because the fit is equivariant to shifting x.
///
/// A slope whose magnitude crosses `separation_bound` while the likelihood
/// is still improving indicates (quasi-)complete separation: the MLE is at
/// infinity, so the fit aborts with an error instead of returning garbage
/// coefficients.
inline LogisticFit logistic_fit(const std::vector<double>& x,
                                const std::vector<int>& y,
                                double separation_bound = 30.0) {
    const size_t n = x.size();
    if (y.size() != n) throw Error("logistic_fit: x and y lengths differ");
    if (n < 3) throw Error("logistic_fit: needs at least 3 observations");
    int ones = 0;
    for (int v : y) {
        if (v != 0 && v != 1) throw Error("logistic_fit: y values must be 0 or 1");
        ones += v;
    }
    if (ones == 0 || ones == static_cast<int>(n))
        throw Error("logistic_fit: degenerate outcome (y is single-class)");
    for (double v : x)
        if (!std::isfinite(v)) throw Error("logistic_fit: x values must be finite");

    double x_mean = 0.0;
    for (double v : x) x_mean += v;
    x_mean /= static_cast<double>(n);
    std::vector<double> xc(n);
    for (size_t i = 0; i < n; ++i) xc[i] = x[i] - x_mean;

    double b0 = 0.0, b1 = 0.0;   // intercept and slope in centered coding
    double previous_ll = detail::bernoulli_log_likelihood(xc, y, b0, b1);
    bool converged = false;
    int iterations = 0;
    constexpr double kTolerance = 1e-10;
    constexpr int kMaxIterations = 50;

    while (iterations < kMaxIterations) {
        ++iterations;
        double g0 = 0.0, g1 = 0.0;         // gradient X'(y - p)
        double h00 = 0.0, h01 = 0.0, h11 = 0.0;  // Hessian X'WX
        for (size_t i = 0; i < n; ++i) {
            const double eta = b0 + b1 * xc[i];
            const double p = 1.0 / (1.0 + std::exp(-eta));
            const double w = p * (1.0 - p);
            const double r = static_cast<double>(y[i]) - p;
            g0 += r;
            g1 += r * xc[i];
            h00 += w;
            h01 += w * xc[i];
            h11 += w * xc[i] * xc[i];
        }
        const double det = h00 * h11 - h01 * h01;
        if (!(std::abs(det) > 1e-300))
            throw Error("logistic_fit: singular weighted normal equations "
                        "(x may be constant)");
        const double step0 = (h11 * g0 - h01 * g1) / det;
        const double step1 = (h00 * g1 - h01 * g0) / det;
        b0 += step0;
        b1 += step1;

        const double ll = detail::bernoulli_log_likelihood(xc, y, b0, b1);
        if (std::abs(b1) > separation_bound) {
            if (ll >= previous_ll)
                throw Error("logistic_fit: separation (|slope| exceeded " +
                            detail::format_double(separation_bound) +
                            " with the likelihood still improving)");
            throw Error("logistic_fit: diverged (|slope| exceeded " +
                        detail::format_double(separation_bound) + ")");
        }
        previous_ll = ll;
        if (std::max(std::abs(step0), std::abs(step1)) < kTolerance) {
            converged = true;
            break;
        }
    }

    LogisticFit fit;
    fit.slope = b1;
    fit.intercept = b0 - b1 * x_mean;
    fit.odds_ratio = std::exp(b1);
    fit.converged = converged;
    fit.iterations = iterations;
    fit.log_likelihood = detail::bernoulli_log_likelihood(xc, y, b0, b1);

    const double p_bar = static_cast<double>(ones) / static_cast<double>(n);
    fit.null_log_likelihood = static_cast<double>(n) *
        (p_bar * std::log(p_bar) + (1.0 - p_bar) * std::log(1.0 - p_bar));
    fit.lr_statistic = std::max(0.0, 2.0 * (fit.log_likelihood - fit.null_log_likelihood));
    fit.p_value = chi_square_sf(fit.lr_statistic, 1);

    // Nagelkerke (maximum rescaled) R^2: Cox-Snell divided by its maximum.
    const double nn = static_cast<double>(n);
    const double cox_snell =
        1.0 - std::exp(2.0 * (fit.null_log_likelihood - fit.log_likelihood) / nn);
    const double maximum = 1.0 - std::exp(2.0 * fit.null_log_likelihood / nn);
    fit.r2_nagelkerke = maximum > 0.0 ? cox_snell / maximum : 0.0;
    return fit;
}

/// Fitted probability at x: 1 / (1 + exp(-(intercept + slope x))).
inline double predict_probability(const LogisticFit& fit, double x) {
    if (!std::isfinite(x)) throw Error("predict_probability: x must be finite");
    return 1.0 / (1.0 + std::exp(-(fit.intercept + fit.slope * x)));
}

/// Ordinary least squares of y on one predictor.
struct OlsFit {
    double intercept = 0.0;
    double slope = 0.0;
    double slope_se = 0.0;
    double t_stat = 0.0;
    double slope_p_value = 1.0;   ///< two-sided, t distribution with n-2 df
    double r2 = 0.0;
    size_t n = 0;
};

/// Closed-form least squares on centered sums. Perfect fits (zero residual
/// sum of squares) report p = 0 for a nonzero slope and p = 1 for a zero
/// slope; a constant outcome lies exactly on the zero-slope line, so it
/// reports r2 = 1 with p = 1.
inline OlsFit ols_fit(const std::vector<double>& x, const std::vector<double>& y) {
    const size_t n = x.size();
    if (y.size() != n) throw Error("ols_fit: x and y lengths differ");
    if (n < 3) throw Error("ols_fit: needs at least 3 observations");
    for (size_t i = 0; i < n; ++i)
        if (!std::isfinite(x[i]) || !std::isfinite(y[i]))
            throw Error("ols_fit: values must be finite");

    const double nn = static_cast<double>(n);
    double x_mean = 0.0, y_mean = 0.0;
    for (size_t i = 0; i < n; ++i) { x_mean += x[i]; y_mean += y[i]; }
    x_mean /= nn;
    y_mean /= nn;

    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double dx = x[i] - x_mean;
        const double dy = y[i] - y_mean;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (!(sxx > 0.0)) throw Error("ols_fit: no variance in regressor");

    OlsFit fit;
    fit.n = n;
    fit.slope = sxy / sxx;
    fit.intercept = y_mean - fit.slope * x_mean;

    double sse = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double r = y[i] - fit.intercept - fit.slope * x[i];
        sse += r * r;
    }
    fit.r2 = syy > 0.0 ? std::max(0.0, std::min(1.0, 1.0 - sse / syy)) : 1.0;

    const double residual_variance = sse / static_cast<double>(n - 2);
    fit.slope_se = std::sqrt(residual_variance / sxx);
    if (fit.slope_se > 0.0) {
        fit.t_stat = fit.slope / fit.slope_se;
        fit.slope_p_value = 2.0 * t_sf(std::abs(fit.t_stat), static_cast<int>(n - 2));
    } else {
        fit.t_stat = 0.0;
        fit.slope_p_value = fit.slope == 0.0 ? 1.0 : 0.0;
    }
    return fit;
}

/// One organization's product-feature record: launch year plus named
/// binary feature flags, optionally with audience reach for reach-on-year
/// regressions.
struct FeatureRow {
    std::string id;
    int setup_year = 0;
    std::vector<int> flags;   ///< parallel to FeatureTable::feature_names
    std::optional<double> reach_pct;
};

class FeatureTable {
public:
    FeatureTable(std::vector<std::string> feature_names, std::vector<FeatureRow> rows)
        : feature_names_(std::move(feature_names)), rows_(std::move(rows)) {
        if (feature_names_.empty())
            throw Error("feature table: no feature columns");
        for (size_t i = 0; i < feature_names_.size(); ++i) {
            if (feature_names_[i].empty())
                throw Error("feature table: empty feature name");
            for (size_t j = 0; j < i; ++j)
                if (feature_names_[j] == feature_names_[i])
                    throw Error("feature table: duplicate feature '" + feature_names_[i] + "'");
        }
        for (size_t i = 0; i < rows_.size(); ++i) {
            const FeatureRow& r = rows_[i];
            if (r.id.empty())
                throw Error("feature table: row " + std::to_string(i + 1) + " has an empty id");
            for (size_t j = 0; j < i; ++j)
                if (rows_[j].id == r.id)
                    throw Error("feature table: duplicate id '" + r.id + "'");
            if (r.setup_year < 1990 || r.setup_year > 2005)
                throw Error("feature table: setup_year " + std::to_string(r.setup_year) +
                            " for '" + r.id + "' outside the plausible range [1990, 2005]");
            if (r.flags.size() != feature_names_.size())
                throw Error("feature table: row '" + r.id + "' has " +
                            std::to_string(r.flags.size()) + " flags, expected " +
                            std::to_string(feature_names_.size()));
            for (int f : r.flags)
                if (f != 0 && f != 1)
                    throw Error("feature table: flag for '" + r.id + "' must be 0 or 1");
            if (r.reach_pct && !(*r.reach_pct >= 0.0 && *r.reach_pct <= 100.0))
                throw Error("feature table: reach_pct for '" + r.id + "' must lie in [0, 100]");
        }
    }

    const std::vector<std::string>& feature_names() const { return feature_names_; }
    const std::vector<FeatureRow>& rows() const { return rows_; }
    size_t size() const { return rows_.size(); }

    std::vector<double> setup_years() const {
        std::vector<double> out;
        out.reserve(rows_.size());
        for (const auto& r : rows_) out.push_back(static_cast<double>(r.setup_year));
        return out;
    }

    std::vector<int> feature_column(std::string_view feature) const {
        for (size_t f = 0; f < feature_names_.size(); ++f)
            if (feature_names_[f] == feature) {
                std::vector<int> out;
                out.reserve(rows_.size());
                for (const auto& r : rows_) out.push_back(r.flags[f]);
                return out;
            }
        throw Error("feature table: unknown feature '" + std::string(feature) + "'");
    }

    /// Reach values for the reach-on-year regression; errors if any row
    /// lacks one (mirroring the share-table policy on missing reach).
    std::vector<double> reach_values() const {
        std::vector<double> out;
        out.reserve(rows_.size());
        for (const auto& r : rows_) {
            if (!r.reach_pct)
                throw Error("feature table: missing reach_pct for '" + r.id + "'");
            out.push_back(*r.reach_pct);
        }
        return out;
    }

private:
    std::vector<std::string> feature_names_;
    std::vector<FeatureRow> rows_;
};

} // namespace netmark
