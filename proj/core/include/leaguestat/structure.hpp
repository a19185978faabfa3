#pragma once

#include <span>
#include <string>
#include <vector>

#include "leaguestat/dataset.hpp"
#include "leaguestat/variance.hpp"

namespace leaguestat {

struct TeamSeasonTotals {
    TeamId team;
    std::string season;
    int tier = 1;
    long goals_for = 0;      // G+
    long goals_against = 0;  // G-
    long goal_difference = 0;
    bool elite = false;      // goal_difference > threshold
};

/// Season totals for every team-season, elite-flagged at `elite_threshold`.
std::vector<TeamSeasonTotals> team_season_totals(const LeagueDataset& dataset,
                                                 double elite_threshold = 150.0);

struct AttackDefenseSlopes {
    double slope_attack = 0.0;    // OLS of G+ on goal difference, non-elite points
    double slope_defense = 0.0;   // OLS of G- on goal difference, non-elite points
    double intercept_attack = 0.0;
    double intercept_defense = 0.0;
    std::size_t n_regular = 0;
    std::vector<TeamSeasonTotals> elite_points;
    // Residuals of each elite point against the two regression lines.
    std::vector<std::pair<double, double>> elite_residuals;
};

/// Regression slopes of scored/conceded season totals on the season goal
/// difference over non-elite team-seasons. slope_attack - slope_defense = 1
/// exactly (shared points, G+ - G- = goal difference).
/// Throws ValidationError with <3 non-elite points or constant differences.
AttackDefenseSlopes attack_defense_slopes(std::span<const TeamSeasonTotals> totals,
                                          double elite_threshold = 150.0);

struct GroupCorrelations {
    double corr_diff_for = 0.0;      // corr(goal difference, G+)
    double corr_diff_against = 0.0;  // corr(goal difference, G-)
    double corr_for_against = 0.0;   // corr(G+, G-)
    std::size_t n = 0;
    bool valid = false;  // false when the group has fewer than 3 points
};

struct SplitCorrelations {
    GroupCorrelations non_negative;  // goal difference >= 0
    GroupCorrelations negative;      // goal difference < 0
};

/// Pearson correlations per sign group, pooled over all team-seasons.
SplitCorrelations split_correlations(std::span<const TeamSeasonTotals> totals);

/// Ratio of the persistent variances of the goals-for and goals-against
/// decompositions. Throws NumericalError on a zero denominator.
double variance_ratio_attack_defense(const VarianceDecomposition& goals_for,
                                     const VarianceDecomposition& goals_against);

struct PromotionPair {
    TeamId team;
    std::string season_second_tier;
    std::string season_first_tier;
    long delta_g_second = 0;
    long delta_g_first = 0;
};

struct PromotionRegression {
    double slope = 0.0;
    double intercept = 0.0;
    std::vector<PromotionPair> pairs;
};

/// Finds teams playing tier 2 in one season and tier 1 in the next, and
/// regresses the first-tier goal difference on the second-tier one.
/// Throws ValidationError with fewer than 2 pairs.
PromotionRegression promotion_analysis(const LeagueDataset& dataset);

}  // namespace leaguestat
