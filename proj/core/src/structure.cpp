#include "leaguestat/structure.hpp"

#include <algorithm>
#include <map>

#include "leaguestat/errors.hpp"
#include "leaguestat/stats.hpp"

namespace leaguestat {

std::vector<TeamSeasonTotals> team_season_totals(const LeagueDataset& dataset,
                                                 double elite_threshold) {
    std::vector<TeamSeasonTotals> out;
    for (const auto& div : dataset.divisions()) {
        std::map<TeamId, std::pair<long, long>> tally;  // team -> (for, against)
        for (auto idx : div.matches) {
            const auto& m = dataset.matches()[idx];
            tally[m.home].first += m.goals_home;
            tally[m.home].second += m.goals_away;
            tally[m.away].first += m.goals_away;
            tally[m.away].second += m.goals_home;
        }
        for (const auto& [team, fa] : tally) {
            TeamSeasonTotals t;
            t.team = team;
            t.season = div.season;
            t.tier = div.tier;
            t.goals_for = fa.first;
            t.goals_against = fa.second;
            t.goal_difference = fa.first - fa.second;
            t.elite = static_cast<double>(t.goal_difference) > elite_threshold;
            out.push_back(std::move(t));
        }
    }
    return out;
}

AttackDefenseSlopes attack_defense_slopes(std::span<const TeamSeasonTotals> totals,
                                          double elite_threshold) {
    std::vector<double> diff, gfor, gagainst;
    AttackDefenseSlopes result;
    for (const auto& t : totals) {
        if (static_cast<double>(t.goal_difference) > elite_threshold) {
            auto copy = t;
            copy.elite = true;
            result.elite_points.push_back(std::move(copy));
            continue;
        }
        diff.push_back(t.goal_difference);
        gfor.push_back(t.goals_for);
        gagainst.push_back(t.goals_against);
    }
    if (diff.size() < 3)
        throw ValidationError("attack/defense slopes need at least 3 non-elite points");
    const auto attack = stats::ols(diff, gfor);
    const auto defense = stats::ols(diff, gagainst);
    result.slope_attack = attack.slope;
    result.slope_defense = defense.slope;
    result.intercept_attack = attack.intercept;
    result.intercept_defense = defense.intercept;
    result.n_regular = diff.size();
    for (const auto& e : result.elite_points) {
        const double d = e.goal_difference;
        result.elite_residuals.emplace_back(
            e.goals_for - (attack.intercept + attack.slope * d),
            e.goals_against - (defense.intercept + defense.slope * d));
    }
    return result;
}

namespace {

GroupCorrelations group_correlations(const std::vector<const TeamSeasonTotals*>& group) {
    GroupCorrelations g;
    g.n = group.size();
    if (g.n < 3) return g;  // undersized group flagged via valid=false
    std::vector<double> diff, gfor, gagainst;
    for (const auto* t : group) {
        diff.push_back(t->goal_difference);
        gfor.push_back(t->goals_for);
        gagainst.push_back(t->goals_against);
    }
    g.corr_diff_for = stats::pearson(diff, gfor);
    g.corr_diff_against = stats::pearson(diff, gagainst);
    g.corr_for_against = stats::pearson(gfor, gagainst);
    g.valid = true;
    return g;
}

}  // namespace

SplitCorrelations split_correlations(std::span<const TeamSeasonTotals> totals) {
    std::vector<const TeamSeasonTotals*> pos, neg;
    for (const auto& t : totals)
        (t.goal_difference >= 0 ? pos : neg).push_back(&t);
    SplitCorrelations s;
    s.non_negative = group_correlations(pos);
    s.negative = group_correlations(neg);
    return s;
}

double variance_ratio_attack_defense(const VarianceDecomposition& goals_for,
                                     const VarianceDecomposition& goals_against) {
    if (goals_against.sigma2_infinity == 0.0)
        throw NumericalError("attack/defense variance ratio: zero denominator");
    return goals_for.sigma2_infinity / goals_against.sigma2_infinity;
}

PromotionRegression promotion_analysis(const LeagueDataset& dataset) {
    const auto totals = team_season_totals(dataset);
    // (season index, tier, team) -> goal difference
    std::map<std::tuple<std::size_t, int, TeamId>, long> by_key;
    for (const auto& t : totals)
        by_key[{dataset.season_index(t.season), t.tier, t.team}] = t.goal_difference;

    PromotionRegression reg;
    for (const auto& t : totals) {
        if (t.tier != 2) continue;
        const auto sidx = dataset.season_index(t.season);
        if (sidx + 1 >= dataset.seasons().size()) continue;
        auto next = by_key.find({sidx + 1, 1, t.team});
        if (next == by_key.end()) continue;
        PromotionPair p;
        p.team = t.team;
        p.season_second_tier = t.season;
        p.season_first_tier = dataset.seasons()[sidx + 1];
        p.delta_g_second = t.goal_difference;
        p.delta_g_first = next->second;
        reg.pairs.push_back(std::move(p));
    }
    if (reg.pairs.size() < 2)
        throw ValidationError("promotion analysis needs at least 2 promotion pairs");
    std::vector<double> x, y;
    for (const auto& p : reg.pairs) {
        x.push_back(p.delta_g_second);
        y.push_back(p.delta_g_first);
    }
    const auto fit = stats::ols(x, y);
    reg.slope = fit.slope;
    reg.intercept = fit.intercept;
    return reg;
}

}  // namespace leaguestat
