#pragma once

#include <span>
#include <string>
#include <vector>

#include "leaguestat/dataset.hpp"

namespace leaguestat {

/// One match from one team's perspective with the seasonal home advantage
/// split off: the home side gives up half, the away side gains half.
struct NeutralizedMatch {
    int match_day = 0;
    double g_plus = 0.0;   // corrected goals scored
    double g_minus = 0.0;  // corrected goals conceded

    double delta() const noexcept { return g_plus - g_minus; }
};

/// Day-ordered neutralized matches of one team in one league-season.
struct NeutralizedSeries {
    TeamId team;
    std::string season;
    int tier = 1;
    std::vector<NeutralizedMatch> matches;
};

/// Neutralizes every division with its own seasonal home advantage.
std::vector<NeutralizedSeries> neutralize(const LeagueDataset& dataset);

enum class VarQuantity { goal_difference, goals_for, goals_against };

struct RegressionPoint {
    int t = 0;
    double variance = 0.0;
    long windows = 0;
};

struct VarianceDecomposition {
    VarQuantity quantity = VarQuantity::goal_difference;
    double sigma2_infinity = 0.0;  // regression intercept
    double A = 0.0;                // regression slope on 1/t
    double r2 = 0.0;
    std::vector<RegressionPoint> points;
};

struct DecompositionOptions {
    int t_min = 1;
    int t_max = 17;
    bool overlapping = true;       // windows overlap within a team-season
    bool weight_by_windows = false;  // weighted regression instead of plain OLS
};

/// For each t, the variance (around the global per-match mean of the
/// quantity) of the mean over every window of t consecutive matches of a
/// team; windows never straddle seasons. OLS of variance on 1/t gives
/// (sigma2_infinity, A). Throws ValidationError when a t has no window or
/// fewer than 2 distinct t values remain.
VarianceDecomposition variance_decomposition(std::span<const NeutralizedSeries> series,
                                             VarQuantity quantity,
                                             const DecompositionOptions& options = {});

struct StochasticInfluenceCurve {
    std::vector<int> t;
    std::vector<double> share;  // (A/t) / (sigma2 + A/t)
    int t_star = 0;             // first t where the share decays to 1/e of share(1)
};

/// Relative stochastic share per t; monotonically decreasing.
StochasticInfluenceCurve stochastic_influence_curve(const VarianceDecomposition& decomposition,
                                                    int max_t = 34);

/// Literature reference constants for the comparison sport (per-match scale).
struct SoccerReference {
    double sigma2_dg = 0.24;
    double A_dg = 3.0;
    double sigma2_gplus = 0.076;
    double A_gplus = 1.7;
    double sigma2_gminus = 0.06;
    double A_gminus = 1.3;
    double mean_goals = 2.75;
};

struct TransferComparison {
    double goals_ratio = 0.0;          // mean goals, this league / reference
    double transferred_A = 0.0;        // A_ref * ratio
    double transferred_sigma2 = 0.0;   // sigma2_ref * ratio^2
    double ratio_this_league = 0.0;    // A / sigma2 of the analyzed league
    double ratio_reference = 0.0;      // transferred A / transferred sigma2
};

/// Rescales reference-sport constants to this league's goal level: the
/// stochastic term scales linearly with the goals ratio, the persistent
/// variance quadratically.
TransferComparison transfer_comparison(const VarianceDecomposition& decomposition,
                                       double sigma2_reference, double A_reference,
                                       double goals_this_league, double goals_reference);

struct BinomialCheck {
    double ratio = 0.0;               // A / <g>
    double reference = 0.5;           // coin-flip benchmark
    double implied_efficiency = 0.0;  // 1 - A/<g> under Binomial goals
};

/// Compares A/<g> of a goal-difference decomposition against the
/// equal-odds Binomial benchmark of 0.5.
BinomialCheck binomial_check(const VarianceDecomposition& decomposition, double mean_goals);

}  // namespace leaguestat
