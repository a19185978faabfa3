#include "leaguestat/stats.hpp"

#include <cmath>

#include "leaguestat/errors.hpp"

namespace leaguestat::stats {

double mean(std::span<const double> values) {
    if (values.empty()) throw ValidationError("mean of empty range");
    double s = 0.0;
    for (double v : values) s += v;
    return s / static_cast<double>(values.size());
}

double population_variance(std::span<const double> values) {
    return population_variance_around(values, mean(values));
}

double population_variance_around(std::span<const double> values, double center) {
    if (values.empty()) throw ValidationError("variance of empty range");
    double s = 0.0;
    for (double v : values) {
        const double d = v - center;
        s += d * d;
    }
    return s / static_cast<double>(values.size());
}

double pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw ValidationError("pearson: size mismatch");
    if (x.size() < 2) throw ValidationError("pearson: need at least 2 points");
    const double mx = mean(x);
    const double my = mean(y);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) return 0.0;
    return sxy / std::sqrt(sxx * syy);
}

LineFit ols(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw ValidationError("ols: size mismatch");
    if (x.size() < 2) throw ValidationError("ols: need at least 2 points");
    const double mx = mean(x);
    const double my = mean(y);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0) throw ValidationError("ols: independent variable is constant");
    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    if (syy == 0.0) {
        fit.r2 = 1.0;
    } else {
        double ss_res = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double e = y[i] - (fit.intercept + fit.slope * x[i]);
            ss_res += e * e;
        }
        fit.r2 = 1.0 - ss_res / syy;
    }
    return fit;
}

LineFit weighted_ols(std::span<const double> x, std::span<const double> y,
                     std::span<const double> w) {
    if (x.size() != y.size() || x.size() != w.size())
        throw ValidationError("weighted_ols: size mismatch");
    double sw = 0.0;
    std::size_t positive = 0;
    for (double wi : w) {
        if (wi < 0.0) throw ValidationError("weighted_ols: negative weight");
        if (wi > 0.0) ++positive;
        sw += wi;
    }
    if (positive < 2) throw ValidationError("weighted_ols: need 2 positive weights");
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += w[i] * x[i];
        my += w[i] * y[i];
    }
    mx /= sw;
    my /= sw;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxy += w[i] * dx * dy;
        sxx += w[i] * dx * dx;
        syy += w[i] * dy * dy;
    }
    if (sxx == 0.0) throw ValidationError("weighted_ols: independent variable is constant");
    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    if (syy == 0.0) {
        fit.r2 = 1.0;
    } else {
        double ss_res = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double e = y[i] - (fit.intercept + fit.slope * x[i]);
            ss_res += w[i] * e * e;
        }
        fit.r2 = 1.0 - ss_res / syy;
    }
    return fit;
}

}  // namespace leaguestat::stats
