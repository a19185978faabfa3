#include "leaguestat/descriptive.hpp"

#include <algorithm>
#include <cmath>

#include "leaguestat/errors.hpp"
#include "leaguestat/stats.hpp"

namespace leaguestat {

namespace {

std::vector<const MatchRecord*> select(const LeagueDataset& dataset,
                                       const std::optional<std::set<std::string>>& seasons) {
    std::vector<const MatchRecord*> out;
    for (const auto& m : dataset.matches()) {
        if (!seasons || seasons->contains(m.season)) out.push_back(&m);
    }
    return out;
}

}  // namespace

MatchStatistics match_statistics(const LeagueDataset& dataset,
                                 const std::optional<std::set<std::string>>& seasons) {
    auto rows = select(dataset, seasons);
    if (rows.empty()) throw ValidationError("empty selection");

    std::vector<double> total, home, away;
    total.reserve(rows.size());
    home.reserve(rows.size());
    away.reserve(rows.size());
    long home_wins = 0, away_wins = 0, draws = 0;
    for (const auto* m : rows) {
        total.push_back(m->total_goals());
        home.push_back(m->goals_home);
        away.push_back(m->goals_away);
        if (m->goals_home > m->goals_away)
            ++home_wins;
        else if (m->goals_home < m->goals_away)
            ++away_wins;
        else
            ++draws;
    }
    MatchStatistics s;
    s.n_matches = rows.size();
    s.mean_home = stats::mean(home);
    s.mean_away = stats::mean(away);
    s.mean_total = s.mean_home + s.mean_away;  // exact decomposition
    s.var_total = stats::population_variance(total);
    s.var_home = stats::population_variance(home);
    s.var_away = stats::population_variance(away);
    s.home_advantage = s.mean_home - s.mean_away;
    const auto n = static_cast<double>(rows.size());
    s.p_home_win = home_wins / n;
    s.p_away_win = away_wins / n;
    s.p_draw = draws / n;
    return s;
}

GoalHistogram goal_histogram(const LeagueDataset& dataset, Side side) {
    if (dataset.size() == 0) throw ValidationError("empty selection");
    GoalHistogram h;
    std::vector<double> obs;
    for (const auto& m : dataset.matches()) {
        if (side == Side::home || side == Side::pooled) {
            ++h.counts[m.goals_home];
            obs.push_back(m.goals_home);
        }
        if (side == Side::away || side == Side::pooled) {
            ++h.counts[m.goals_away];
            obs.push_back(m.goals_away);
        }
    }
    h.total_count = static_cast<long>(obs.size());
    h.min_goals = h.counts.begin()->first;
    h.max_goals = h.counts.rbegin()->first;
    h.fitted_mean = stats::mean(obs);
    h.fitted_variance = stats::population_variance(obs);
    return h;
}

namespace {

// Per-season team totals pooled over the season's divisions.
struct SeasonTotals {
    long positive_gd_teams = 0;
    long teams = 0;
    long goals_by_positive = 0;
    long goals = 0;
};

SeasonTotals season_totals(const LeagueDataset& dataset, const std::string& season) {
    std::map<TeamId, std::pair<long, long>> scored_conceded;
    for (const auto* div : dataset.divisions_of(season)) {
        for (auto idx : div->matches) {
            const auto& m = dataset.matches()[idx];
            scored_conceded[m.home].first += m.goals_home;
            scored_conceded[m.home].second += m.goals_away;
            scored_conceded[m.away].first += m.goals_away;
            scored_conceded[m.away].second += m.goals_home;
        }
    }
    SeasonTotals t;
    for (const auto& [team, sc] : scored_conceded) {
        ++t.teams;
        t.goals += sc.first;
        if (sc.first > sc.second) {
            ++t.positive_gd_teams;
            t.goals_by_positive += sc.first;
        }
    }
    return t;
}

}  // namespace

std::vector<std::pair<std::string, double>> per_season_series(const LeagueDataset& dataset,
                                                              SeasonQuantity quantity) {
    std::vector<std::pair<std::string, double>> out;
    for (const auto& season : dataset.seasons()) {
        double value = 0.0;
        switch (quantity) {
            case SeasonQuantity::total_goals:
            case SeasonQuantity::home_advantage: {
                auto s = match_statistics(dataset, std::set<std::string>{season});
                value = quantity == SeasonQuantity::total_goals ? s.mean_total
                                                                : s.home_advantage;
                break;
            }
            case SeasonQuantity::positive_gd_share: {
                auto t = season_totals(dataset, season);
                value = t.teams ? static_cast<double>(t.positive_gd_teams) / t.teams : 0.0;
                break;
            }
            case SeasonQuantity::positive_gd_goals_share: {
                auto t = season_totals(dataset, season);
                value = t.goals ? static_cast<double>(t.goals_by_positive) / t.goals : 0.0;
                break;
            }
        }
        out.emplace_back(season, value);
    }
    return out;
}

ExtremeMatches extreme_matches(const LeagueDataset& dataset) {
    if (dataset.size() == 0) throw ValidationError("empty selection");
    ExtremeMatches e;
    e.max_total = std::numeric_limits<int>::min();
    e.min_total = std::numeric_limits<int>::max();
    e.max_abs_difference = -1;
    for (const auto& m : dataset.matches()) {
        const int total = m.total_goals();
        const int diff = std::abs(m.goal_difference());
        if (total > e.max_total) {
            e.max_total = total;
            e.max_total_matches.clear();
        }
        if (total == e.max_total) e.max_total_matches.push_back(m);
        if (total < e.min_total) {
            e.min_total = total;
            e.min_total_matches.clear();
        }
        if (total == e.min_total) e.min_total_matches.push_back(m);
        if (diff > e.max_abs_difference) {
            e.max_abs_difference = diff;
            e.max_difference_matches.clear();
        }
        if (diff == e.max_abs_difference) e.max_difference_matches.push_back(m);
    }
    return e;
}

TeamShareReport team_share_report(const LeagueDataset& dataset) {
    TeamShareReport r;
    long teams = 0, pos_teams = 0, goals = 0, pos_goals = 0;
    std::vector<double> share_values, goals_share_values;
    for (const auto& season : dataset.seasons()) {
        auto t = season_totals(dataset, season);
        teams += t.teams;
        pos_teams += t.positive_gd_teams;
        goals += t.goals;
        pos_goals += t.goals_by_positive;
        if (t.teams) share_values.push_back(static_cast<double>(t.positive_gd_teams) / t.teams);
        if (t.goals)
            goals_share_values.push_back(static_cast<double>(t.goals_by_positive) / t.goals);
    }
    if (!share_values.empty())
        r.positive_gd_share_season_mean = stats::mean(share_values);
    if (!goals_share_values.empty())
        r.positive_gd_goals_share_season_mean = stats::mean(goals_share_values);
    if (teams) r.positive_gd_share_pooled = static_cast<double>(pos_teams) / teams;
    if (goals) r.positive_gd_goals_share_pooled = static_cast<double>(pos_goals) / goals;
    return r;
}

}  // namespace leaguestat
