#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace leaguestat::stats {

double mean(std::span<const double> values);

/// Population variance (divisor N) around the sample mean.
double population_variance(std::span<const double> values);

/// Population variance around a fixed center instead of the sample mean.
double population_variance_around(std::span<const double> values, double center);

/// Pearson correlation coefficient. Returns 0 when either side is constant.
double pearson(std::span<const double> x, std::span<const double> y);

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};

/// Ordinary least squares y = intercept + slope * x.
/// Throws ValidationError for fewer than 2 points or constant x.
LineFit ols(std::span<const double> x, std::span<const double> y);

/// Weighted least squares with non-negative weights (at least two positive).
LineFit weighted_ols(std::span<const double> x, std::span<const double> y,
                     std::span<const double> w);

}  // namespace leaguestat::stats
