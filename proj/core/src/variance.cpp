#include "leaguestat/variance.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "leaguestat/errors.hpp"
#include "leaguestat/stats.hpp"

namespace leaguestat {

std::vector<NeutralizedSeries> neutralize(const LeagueDataset& dataset) {
    std::vector<NeutralizedSeries> out;
    for (const auto& div : dataset.divisions()) {
        double home = 0.0, away = 0.0;
        for (auto idx : div.matches) {
            const auto& m = dataset.matches()[idx];
            home += m.goals_home;
            away += m.goals_away;
        }
        const double adv = (home - away) / static_cast<double>(div.matches.size());

        std::map<TeamId, std::vector<NeutralizedMatch>> per_team;
        for (auto idx : div.matches) {
            const auto& m = dataset.matches()[idx];
            NeutralizedMatch h;
            h.match_day = m.match_day;
            h.g_plus = m.goals_home - adv / 2.0;
            h.g_minus = m.goals_away + adv / 2.0;
            per_team[m.home].push_back(h);
            NeutralizedMatch a;
            a.match_day = m.match_day;
            a.g_plus = m.goals_away + adv / 2.0;
            a.g_minus = m.goals_home - adv / 2.0;
            per_team[m.away].push_back(a);
        }
        for (auto& [team, matches] : per_team) {
            std::sort(matches.begin(), matches.end(),
                      [](const NeutralizedMatch& x, const NeutralizedMatch& y) {
                          return x.match_day < y.match_day;
                      });
            NeutralizedSeries s;
            s.team = team;
            s.season = div.season;
            s.tier = div.tier;
            s.matches = std::move(matches);
            out.push_back(std::move(s));
        }
    }
    return out;
}

namespace {

double quantity_value(const NeutralizedMatch& m, VarQuantity q) {
    switch (q) {
        case VarQuantity::goal_difference: return m.delta();
        case VarQuantity::goals_for: return m.g_plus;
        case VarQuantity::goals_against: return m.g_minus;
    }
    return 0.0;
}

}  // namespace

VarianceDecomposition variance_decomposition(std::span<const NeutralizedSeries> series,
                                             VarQuantity quantity,
                                             const DecompositionOptions& options) {
    if (options.t_min < 1 || options.t_max < options.t_min)
        throw ValidationError("invalid t range");

    std::vector<std::vector<double>> values;
    double global_sum = 0.0;
    long global_count = 0;
    for (const auto& s : series) {
        std::vector<double> v;
        v.reserve(s.matches.size());
        for (const auto& m : s.matches) v.push_back(quantity_value(m, quantity));
        for (double x : v) global_sum += x;
        global_count += static_cast<long>(v.size());
        values.push_back(std::move(v));
    }
    if (global_count == 0) throw ValidationError("no matches in series");
    const double global_mean = global_sum / static_cast<double>(global_count);

    VarianceDecomposition dec;
    dec.quantity = quantity;
    for (int t = options.t_min; t <= options.t_max; ++t) {
        double acc = 0.0;
        long windows = 0;
        for (const auto& v : values) {
            if (static_cast<int>(v.size()) < t) continue;
            if (options.overlapping) {
                double wsum = 0.0;
                for (int i = 0; i < t; ++i) wsum += v[i];
                for (std::size_t start = 0;; ++start) {
                    const double m = wsum / t - global_mean;
                    acc += m * m;
                    ++windows;
                    if (start + t >= v.size()) break;
                    wsum += v[start + t] - v[start];
                }
            } else {
                for (std::size_t start = 0; start + t <= v.size(); start += t) {
                    double wsum = 0.0;
                    for (int i = 0; i < t; ++i) wsum += v[start + i];
                    const double m = wsum / t - global_mean;
                    acc += m * m;
                    ++windows;
                }
            }
        }
        if (windows == 0)
            throw ValidationError("t range too large for data: no window of length " +
                                  std::to_string(t));
        dec.points.push_back({t, acc / static_cast<double>(windows), windows});
    }
    if (dec.points.size() < 2)
        throw ValidationError("need at least 2 distinct t values");

    std::vector<double> x, y, w;
    for (const auto& p : dec.points) {
        x.push_back(1.0 / p.t);
        y.push_back(p.variance);
        w.push_back(static_cast<double>(p.windows));
    }
    const auto fit = options.weight_by_windows ? stats::weighted_ols(x, y, w)
                                               : stats::ols(x, y);
    dec.sigma2_infinity = fit.intercept;
    dec.A = fit.slope;
    dec.r2 = fit.r2;
    return dec;
}

StochasticInfluenceCurve stochastic_influence_curve(const VarianceDecomposition& decomposition,
                                                    int max_t) {
    const double s2 = decomposition.sigma2_infinity;
    const double A = decomposition.A;
    if (s2 + A <= 0.0)
        throw NumericalError("stochastic influence undefined for non-positive variance");
    StochasticInfluenceCurve curve;
    const double share1 = A / (s2 + A);
    const double target = share1 / std::exp(1.0);
    curve.t_star = 0;
    for (int t = 1; t <= max_t; ++t) {
        const double share = (A / t) / (s2 + A / t);
        curve.t.push_back(t);
        curve.share.push_back(share);
        if (curve.t_star == 0 && share <= target) curve.t_star = t;
    }
    if (curve.t_star == 0 && s2 > 0.0) {
        // Closed form beyond the tabulated range: share(t) <= target once
        // sigma2 * t >= A * (1/target - 1).
        curve.t_star = static_cast<int>(std::ceil(A * (1.0 / target - 1.0) / s2));
    }
    return curve;
}

TransferComparison transfer_comparison(const VarianceDecomposition& decomposition,
                                       double sigma2_reference, double A_reference,
                                       double goals_this_league, double goals_reference) {
    if (goals_this_league <= 0.0 || goals_reference <= 0.0)
        throw ValidationError("transfer comparison needs positive goal means");
    TransferComparison t;
    t.goals_ratio = goals_this_league / goals_reference;
    t.transferred_A = A_reference * t.goals_ratio;
    t.transferred_sigma2 = sigma2_reference * t.goals_ratio * t.goals_ratio;
    if (decomposition.sigma2_infinity == 0.0)
        throw NumericalError("transfer comparison: zero persistent variance");
    t.ratio_this_league = decomposition.A / decomposition.sigma2_infinity;
    t.ratio_reference = t.transferred_A / t.transferred_sigma2;
    return t;
}

BinomialCheck binomial_check(const VarianceDecomposition& decomposition, double mean_goals) {
    if (mean_goals <= 0.0) throw ValidationError("binomial check needs positive mean goals");
    BinomialCheck c;
    c.ratio = decomposition.A / mean_goals;
    c.implied_efficiency = 1.0 - c.ratio;
    return c;
}

}  // namespace leaguestat
