#include "leaguestat/fitness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "leaguestat/errors.hpp"
#include "leaguestat/stats.hpp"

namespace leaguestat {

namespace {

double division_home_advantage(const LeagueDataset& dataset,
                               const LeagueDataset::Division& div) {
    double home = 0.0, away = 0.0;
    for (auto idx : div.matches) {
        const auto& m = dataset.matches()[idx];
        home += m.goals_home;
        away += m.goals_away;
    }
    const auto n = static_cast<double>(div.matches.size());
    return (home - away) / n;
}

// (team -> day-ordered (day, signed goal difference)) for one division.
// With neutralize, half the seasonal home advantage moves from the home side
// to the away side, i.e. the home view loses the full advantage.
std::map<TeamId, std::vector<std::pair<int, double>>> division_diffs(
    const LeagueDataset& dataset, const LeagueDataset::Division& div, bool neutralize) {
    const double adv = neutralize ? division_home_advantage(dataset, div) : 0.0;
    std::map<TeamId, std::vector<std::pair<int, double>>> per_team;
    for (auto idx : div.matches) {
        const auto& m = dataset.matches()[idx];
        const double d = m.goal_difference() - adv;
        per_team[m.home].emplace_back(m.match_day, d);
        per_team[m.away].emplace_back(m.match_day, -d);
    }
    for (auto& [team, v] : per_team) std::sort(v.begin(), v.end());
    return per_team;
}

}  // namespace

std::vector<FitnessSeries> fitness_series(const LeagueDataset& dataset,
                                          const std::string& season) {
    dataset.season_index(season);
    std::vector<FitnessSeries> out;
    for (const auto* div : dataset.divisions_of(season)) {
        const bool even_days = div->n_match_days % 2 == 0;
        const int half_end = div->n_match_days / 2;
        for (auto& [team, diffs] : division_diffs(dataset, *div, false)) {
            FitnessSeries fs;
            fs.team = team;
            fs.season = season;
            fs.tier = div->tier;
            fs.halves_defined = even_days;
            for (const auto& [day, d] : diffs) {
                fs.days.push_back(day);
                fs.per_match_diff.push_back(d);
                fs.season_sum += d;
                if (even_days) {
                    if (day <= half_end)
                        fs.half_sum_first += d;
                    else
                        fs.half_sum_second += d;
                }
            }
            out.push_back(std::move(fs));
        }
    }
    return out;
}

HalfSeasonCorrelation half_season_correlation(const LeagueDataset& dataset) {
    HalfSeasonCorrelation hc;
    for (const auto& season : dataset.seasons()) {
        for (const auto& fs : fitness_series(dataset, season)) {
            const auto* div = dataset.find_division(season, fs.tier);
            if (!fs.halves_defined) continue;
            // Only team-seasons with a full schedule contribute.
            if (static_cast<int>(fs.days.size()) != div->n_match_days) continue;
            hc.points.emplace_back(fs.half_sum_first, fs.half_sum_second);
        }
    }
    hc.n = hc.points.size();
    if (hc.n < 3) throw ValidationError("need at least 3 complete team-seasons");
    std::vector<double> x, y;
    x.reserve(hc.n);
    y.reserve(hc.n);
    for (const auto& [a, b] : hc.points) {
        x.push_back(a);
        y.push_back(b);
    }
    hc.r = stats::pearson(x, y);
    hc.r2 = hc.r * hc.r;
    return hc;
}

AutocorrelationCurve matchday_autocorrelation(const LeagueDataset& dataset,
                                              const AutocorrelationOptions& options) {
    struct Acc {
        double sum = 0.0;
        double sum_sq = 0.0;
        long count = 0;
    };
    std::map<int, Acc> acc;  // lag -> accumulated products
    int max_days = 0;
    for (const auto& div : dataset.divisions()) {
        max_days = std::max(max_days, div.n_match_days);
        for (auto& [team, diffs] : division_diffs(dataset, div, options.neutralize)) {
            for (std::size_t a = 0; a < diffs.size(); ++a) {
                for (std::size_t b = a + 1; b < diffs.size(); ++b) {
                    const int lag = diffs[b].first - diffs[a].first;
                    const double product = diffs[a].second * diffs[b].second;
                    auto& slot = acc[lag];
                    slot.sum += product;
                    slot.sum_sq += product * product;
                    ++slot.count;
                }
            }
        }
    }
    if (acc.empty()) throw ValidationError("no lagged match pairs in dataset");

    AutocorrelationCurve curve;
    for (const auto& [lag, slot] : acc) {
        const auto n = static_cast<double>(slot.count);
        const double mean = slot.sum / n;
        curve.lags.push_back(lag);
        curve.values.push_back(mean);
        curve.counts.push_back(slot.count);
        const double var = std::max(0.0, slot.sum_sq / n - mean * mean);
        curve.stderrs.push_back(slot.count > 1 ? std::sqrt(var / (n - 1.0)) : 0.0);
    }
    std::vector<double> level_values;
    for (std::size_t i = 0; i < curve.lags.size(); ++i) {
        if (options.exclude_mirror_lag_from_mean && curve.lags[i] == max_days / 2) continue;
        level_values.push_back(curve.values[i]);
    }
    curve.mean_level = stats::mean(level_values);
    if (level_values.size() > 1) {
        const double var = stats::population_variance(level_values);
        curve.mean_level_stderr =
            std::sqrt(var / static_cast<double>(level_values.size() - 1));
    }
    return curve;
}

namespace {

// Solves a symmetric 3x3 system in place; returns false when singular.
bool solve3(double a[3][3], double b[3], double x[3]) {
    int idx[3] = {0, 1, 2};
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::abs(a[idx[r]][col]) > std::abs(a[idx[piv]][col])) piv = r;
        std::swap(idx[col], idx[piv]);
        const double p = a[idx[col]][col];
        if (p == 0.0 || !std::isfinite(p)) return false;
        for (int r = col + 1; r < 3; ++r) {
            const double f = a[idx[r]][col] / p;
            for (int c = col; c < 3; ++c) a[idx[r]][c] -= f * a[idx[col]][c];
            b[idx[r]] -= f * b[idx[col]];
        }
    }
    for (int col = 2; col >= 0; --col) {
        double s = b[idx[col]];
        for (int c = col + 1; c < 3; ++c) s -= a[idx[col]][c] * x[c];
        const double p = a[idx[col]][col];
        if (p == 0.0 || !std::isfinite(p)) return false;
        x[col] = s / p;
    }
    return true;
}

// Inverse of a symmetric positive 3x3 via adjugate; returns false when the
// determinant is not usable.
bool invert3(const double m[3][3], double inv[3][3]) {
    const double det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                       m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                       m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    double scale = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) scale = std::max(scale, std::abs(m[i][j]));
    if (!std::isfinite(det) || std::abs(det) <= scale * scale * scale * 1e-14) return false;
    inv[0][0] = (m[1][1] * m[2][2] - m[1][2] * m[2][1]) / det;
    inv[0][1] = (m[0][2] * m[2][1] - m[0][1] * m[2][2]) / det;
    inv[0][2] = (m[0][1] * m[1][2] - m[0][2] * m[1][1]) / det;
    inv[1][0] = inv[0][1];
    inv[1][1] = (m[0][0] * m[2][2] - m[0][2] * m[2][0]) / det;
    inv[1][2] = (m[0][2] * m[1][0] - m[0][0] * m[1][2]) / det;
    inv[2][0] = inv[0][2];
    inv[2][1] = inv[1][2];
    inv[2][2] = (m[0][0] * m[1][1] - m[0][1] * m[1][0]) / det;
    return true;
}

struct LinearAtTau {
    bool ok = false;
    double c1 = 0.0, c2 = 0.0, sse = 0.0;
};

LinearAtTau linear_fit_at_tau(const std::vector<double>& lags,
                              const std::vector<double>& values, double tau) {
    const auto n = static_cast<double>(lags.size());
    double se = 0.0, see = 0.0, sy = 0.0, sey = 0.0;
    std::vector<double> e(lags.size());
    for (std::size_t i = 0; i < lags.size(); ++i) {
        e[i] = std::exp(-lags[i] / tau);
        se += e[i];
        see += e[i] * e[i];
        sy += values[i];
        sey += e[i] * values[i];
    }
    LinearAtTau out;
    const double det = n * see - se * se;
    if (std::abs(det) <= 1e-14 * n * see) return out;
    out.c2 = (n * sey - se * sy) / det;
    out.c1 = (sy - out.c2 * se) / n;
    out.sse = 0.0;
    for (std::size_t i = 0; i < lags.size(); ++i) {
        const double r = values[i] - out.c1 - out.c2 * e[i];
        out.sse += r * r;
    }
    out.ok = true;
    return out;
}

}  // namespace

ExponentialFit fit_exponential(const AutocorrelationCurve& curve, int max_lag) {
    std::vector<double> lags, values;
    for (std::size_t i = 0; i < curve.lags.size(); ++i) {
        if (curve.lags[i] >= 1 && curve.lags[i] <= max_lag) {
            lags.push_back(curve.lags[i]);
            values.push_back(curve.values[i]);
        }
    }
    if (lags.size() < 4)
        throw ValidationError("fit_exponential: need at least 4 lags in [1, max_lag]");
    const auto m = static_cast<double>(lags.size());

    // Stage 1: deterministic grid over tau, ordinary least squares in (c1, c2).
    constexpr int kGridSteps = 400;
    const double tau_lo = 0.5, tau_hi = static_cast<double>(max_lag);
    double best_sse = std::numeric_limits<double>::infinity();
    double best_tau = tau_lo, best_c1 = 0.0, best_c2 = 0.0;
    for (int k = 0; k < kGridSteps; ++k) {
        const double tau = tau_lo + (tau_hi - tau_lo) * k / (kGridSteps - 1);
        auto fit = linear_fit_at_tau(lags, values, tau);
        if (fit.ok && fit.sse < best_sse) {
            best_sse = fit.sse;
            best_tau = tau;
            best_c1 = fit.c1;
            best_c2 = fit.c2;
        }
    }
    if (!std::isfinite(best_sse))
        throw NumericalError("fit_exponential: no usable grid point");

    // Stage 2: damped Gauss-Newton from the grid optimum.
    double p[3] = {best_c1, best_c2, best_tau};
    double sse = best_sse;
    const double data_scale = std::max(1e-30, std::abs(stats::mean(values)));
    for (int iter = 0; iter < 200; ++iter) {
        double jtj[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
        double jtr[3] = {0, 0, 0};
        for (std::size_t i = 0; i < lags.size(); ++i) {
            const double e = std::exp(-lags[i] / p[2]);
            const double r = values[i] - p[0] - p[1] * e;
            const double j[3] = {1.0, e, p[1] * e * lags[i] / (p[2] * p[2])};
            for (int a = 0; a < 3; ++a) {
                jtr[a] += j[a] * r;
                for (int b = 0; b < 3; ++b) jtj[a][b] += j[a] * j[b];
            }
        }
        double work[3][3];
        std::copy(&jtj[0][0], &jtj[0][0] + 9, &work[0][0]);
        double rhs[3] = {jtr[0], jtr[1], jtr[2]};
        double step[3];
        if (!solve3(work, rhs, step)) break;  // singular: tau not identifiable
        double lambda = 1.0;
        bool accepted = false;
        for (int halvings = 0; halvings < 40; ++halvings) {
            const double q[3] = {p[0] + lambda * step[0], p[1] + lambda * step[1],
                                 p[2] + lambda * step[2]};
            if (q[2] > 0.0) {
                double s = 0.0;
                for (std::size_t i = 0; i < lags.size(); ++i) {
                    const double r = values[i] - q[0] - q[1] * std::exp(-lags[i] / q[2]);
                    s += r * r;
                }
                if (s <= sse) {
                    p[0] = q[0];
                    p[1] = q[1];
                    p[2] = q[2];
                    const double improved = sse - s;
                    sse = s;
                    accepted = true;
                    const double step_norm = std::abs(lambda) *
                        std::sqrt(step[0] * step[0] + step[1] * step[1] + step[2] * step[2]);
                    if (step_norm < 1e-12 * (1.0 + std::abs(p[0]) + std::abs(p[1]) +
                                             std::abs(p[2])) ||
                        improved < 1e-15 * (sse + data_scale * data_scale)) {
                        iter = 1000;  // converged
                    }
                    break;
                }
            }
            lambda *= 0.5;
        }
        if (!accepted) break;
    }

    ExponentialFit fit;
    fit.c1 = p[0];
    fit.c2 = p[1];
    fit.tau = p[2];
    fit.lag_min = static_cast<int>(lags.front());
    fit.lag_max = static_cast<int>(lags.back());
    fit.sse = sse;
    fit.residuals.resize(lags.size());
    double jtj[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
    for (std::size_t i = 0; i < lags.size(); ++i) {
        const double e = std::exp(-lags[i] / p[2]);
        fit.residuals[i] = values[i] - p[0] - p[1] * e;
        const double j[3] = {1.0, e, p[1] * e * lags[i] / (p[2] * p[2])};
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) jtj[a][b] += j[a] * j[b];
    }
    const double dof = m - 3.0;
    const double s2 = dof > 0 ? sse / dof : 0.0;
    double inv[3][3];
    if (invert3(jtj, inv) && inv[2][2] >= 0.0) {
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) fit.covariance[a][b] = s2 * inv[a][b];
        fit.c1_stderr = std::sqrt(std::max(0.0, fit.covariance[0][0]));
        fit.c2_stderr = std::sqrt(std::max(0.0, fit.covariance[1][1]));
        fit.tau_stderr = std::sqrt(std::max(0.0, fit.covariance[2][2]));
        // Covariance blow-up: the decay time is not constrained by the data.
        if (!std::isfinite(fit.tau_stderr) ||
            fit.tau_stderr > 10.0 * static_cast<double>(max_lag))
            fit.tau_identifiable = false;
    } else {
        fit.tau_identifiable = false;
    }
    if (!fit.tau_identifiable) {
        // Fall back to the linearization in (c1, c2) at fixed tau so the
        // amplitude still carries an uncertainty.
        double se = 0.0, see = 0.0;
        for (std::size_t i = 0; i < lags.size(); ++i) {
            const double e = std::exp(-lags[i] / p[2]);
            se += e;
            see += e * e;
        }
        const double det = m * see - se * se;
        const double s2lin = m > 2 ? sse / (m - 2.0) : 0.0;
        if (std::abs(det) > 0.0) {
            fit.covariance = {};
            fit.covariance[0][0] = s2lin * see / det;
            fit.covariance[0][1] = fit.covariance[1][0] = -s2lin * se / det;
            fit.covariance[1][1] = s2lin * m / det;
            fit.c1_stderr = std::sqrt(std::max(0.0, fit.covariance[0][0]));
            fit.c2_stderr = std::sqrt(std::max(0.0, fit.covariance[1][1]));
        }
        fit.tau_stderr = std::numeric_limits<double>::infinity();
        fit.covariance[2][2] = std::numeric_limits<double>::infinity();
    }
    return fit;
}

SeasonalAutocorrelation seasonal_autocorrelation(const LeagueDataset& dataset) {
    if (dataset.seasons().size() < 2)
        throw ValidationError("seasonal autocorrelation needs at least 2 seasons");

    // (team, tier) -> season index -> (first-half sum, second-half sum)
    std::map<std::pair<TeamId, int>, std::map<std::size_t, std::pair<double, double>>> halves;
    for (const auto& season : dataset.seasons()) {
        const auto sidx = dataset.season_index(season);
        for (const auto& fs : fitness_series(dataset, season)) {
            if (!fs.halves_defined) continue;
            bool first = false, second = false;
            const int half_end =
                dataset.find_division(season, fs.tier)->n_match_days / 2;
            for (int day : fs.days) (day <= half_end ? first : second) = true;
            if (!first || !second) continue;
            halves[{fs.team, fs.tier}][sidx] = {fs.half_sum_first, fs.half_sum_second};
        }
    }

    double den_sum = 0.0;
    long den_count = 0;
    std::map<int, std::pair<double, long>> num;  // lag -> (sum, count)
    for (const auto& [key, by_season] : halves) {
        for (const auto& [s0, h0] : by_season) {
            den_sum += h0.first * h0.second;
            ++den_count;
            for (const auto& [s1, h1] : by_season) {
                if (s1 <= s0) continue;
                const int dn = static_cast<int>(s1 - s0);
                auto& [sum, count] = num[dn];
                // Cross-half products only; the within-season cross product is
                // the normalization, so c_y(0) = 1 holds by construction.
                sum += h0.first * h1.second;
                sum += h0.second * h1.first;
                count += 2;
            }
        }
    }
    if (den_count == 0)
        throw ValidationError("no team-season with both halves defined");
    const double den = den_sum / static_cast<double>(den_count);
    if (den == 0.0)
        throw NumericalError("seasonal autocorrelation normalization is zero");

    SeasonalAutocorrelation out;
    out.lags.push_back(0);
    out.values.push_back(1.0);
    out.pair_counts.push_back(den_count);
    for (const auto& [lag, sc] : num) {
        out.lags.push_back(lag);
        out.values.push_back(sc.first / static_cast<double>(sc.second) / den);
        out.pair_counts.push_back(sc.second);
    }
    return out;
}

}  // namespace leaguestat
