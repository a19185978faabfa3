#pragma once

#include <array>
#include <string>
#include <vector>

#include "leaguestat/dataset.hpp"

namespace leaguestat {

/// One team's match-by-match goal differences within one league-season.
struct FitnessSeries {
    TeamId team;
    std::string season;
    int tier = 1;
    std::vector<int> days;             // match days played, ascending
    std::vector<double> per_match_diff;  // signed goal difference per day played
    double half_sum_first = 0.0;       // sum over days in [1, T/2]
    double half_sum_second = 0.0;      // sum over days in (T/2, T]
    double season_sum = 0.0;
    bool halves_defined = false;       // false when the division's T is odd
};

/// Series for every team of a season (all tiers). Throws on unknown season.
std::vector<FitnessSeries> fitness_series(const LeagueDataset& dataset,
                                          const std::string& season);

struct HalfSeasonCorrelation {
    double r = 0.0;
    double r2 = 0.0;
    std::size_t n = 0;
    std::vector<std::pair<double, double>> points;  // (first half, second half)
};

/// Pearson correlation of first- vs second-half goal difference sums over
/// all complete team-seasons, pooled across seasons.
/// Throws ValidationError with fewer than 3 points.
HalfSeasonCorrelation half_season_correlation(const LeagueDataset& dataset);

struct AutocorrelationCurve {
    std::vector<int> lags;       // match-day separations, >= 1
    std::vector<double> values;  // h(lag)
    std::vector<long> counts;    // averaged products per lag
    std::vector<double> stderrs; // standard error of each lag's mean product
    double mean_level = 0.0;     // <h> over reported lags
    double mean_level_stderr = 0.0;
};

struct AutocorrelationOptions {
    bool neutralize = false;             // subtract the seasonal home advantage first
    bool exclude_mirror_lag_from_mean = false;  // drop lag T/2 from <h>
};

/// Average over teams, seasons and start days of the product of a team's
/// goal differences `lag` match days apart. Pairs straddling unplayed days
/// are skipped. Throws ValidationError on empty data.
AutocorrelationCurve matchday_autocorrelation(const LeagueDataset& dataset,
                                              const AutocorrelationOptions& options = {});

/// Least-squares fit of value = c1 + c2 * exp(-lag / tau).
struct ExponentialFit {
    double c1 = 0.0;
    double c2 = 0.0;
    double tau = 0.0;
    double c1_stderr = 0.0;
    double c2_stderr = 0.0;
    double tau_stderr = 0.0;
    std::array<std::array<double, 3>, 3> covariance{};  // (c1, c2, tau) order
    bool tau_identifiable = true;
    int lag_min = 0;
    int lag_max = 0;
    double sse = 0.0;
    std::vector<double> residuals;  // per fitted lag, data minus model
};

/// Deterministic: coarse grid over tau (linear in c1, c2), then damped
/// Gauss-Newton refinement. Uses lags in [1, max_lag]; needs at least 4.
/// Parameter uncertainties come from the linearized covariance at the
/// optimum with residual variance. When the decay amplitude is statistically
/// empty, tau is flagged unidentifiable instead of reporting an arbitrary
/// value. Throws ValidationError (too few lags) or NumericalError.
ExponentialFit fit_exponential(const AutocorrelationCurve& curve, int max_lag);

struct SeasonalAutocorrelation {
    std::vector<int> lags;        // season separations, starting at 0
    std::vector<double> values;   // c_y(lag); c_y(0) == 1 exactly
    std::vector<long> pair_counts;
};

/// Cross-half products of half-season goal-difference sums, averaged over
/// teams present in both seasons of a pair (same tier), normalized by the
/// within-season cross-half product. Lags with no contributing pair are
/// omitted. Throws ValidationError with fewer than 2 seasons.
SeasonalAutocorrelation seasonal_autocorrelation(const LeagueDataset& dataset);

}  // namespace leaguestat
