#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "leaguestat/dataset.hpp"

namespace leaguestat {

/// Per-match summary statistics over a match selection.
/// Variances are population variances (divisor N).
struct MatchStatistics {
    std::size_t n_matches = 0;
    double mean_total = 0.0;
    double mean_home = 0.0;
    double mean_away = 0.0;
    double var_total = 0.0;
    double var_home = 0.0;
    double var_away = 0.0;
    double home_advantage = 0.0;  // mean_home - mean_away
    double p_home_win = 0.0;
    double p_away_win = 0.0;
    double p_draw = 0.0;
};

/// Goal-count frequencies with a Gaussian moment fit (sample mean/variance,
/// no optimization).
struct GoalHistogram {
    std::map<int, long> counts;
    long total_count = 0;
    int min_goals = 0;
    int max_goals = 0;
    double fitted_mean = 0.0;
    double fitted_variance = 0.0;
};

enum class Side { home, away, pooled };

enum class SeasonQuantity {
    total_goals,             // mean g per match within the season
    home_advantage,          // mean home minus away goals within the season
    positive_gd_share,       // fraction of team-seasons with positive goal difference
    positive_gd_goals_share  // share of all goals scored by those teams
};

struct ExtremeMatches {
    int max_total = 0;
    int min_total = 0;
    int max_abs_difference = 0;
    std::vector<MatchRecord> max_total_matches;  // all ties listed
    std::vector<MatchRecord> min_total_matches;
    std::vector<MatchRecord> max_difference_matches;
};

/// Throws ValidationError when the (filtered) selection is empty.
MatchStatistics match_statistics(const LeagueDataset& dataset,
                                 const std::optional<std::set<std::string>>& seasons = {});

GoalHistogram goal_histogram(const LeagueDataset& dataset, Side side);

/// One value per season, in season order.
std::vector<std::pair<std::string, double>> per_season_series(const LeagueDataset& dataset,
                                                              SeasonQuantity quantity);

ExtremeMatches extreme_matches(const LeagueDataset& dataset);

/// Team-share figures under both aggregation conventions: averaged over
/// per-season values and pooled over all team-seasons.
struct TeamShareReport {
    double positive_gd_share_season_mean = 0.0;
    double positive_gd_share_pooled = 0.0;
    double positive_gd_goals_share_season_mean = 0.0;
    double positive_gd_goals_share_pooled = 0.0;
};
TeamShareReport team_share_report(const LeagueDataset& dataset);

}  // namespace leaguestat
