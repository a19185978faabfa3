#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "leaguestat/dataset.hpp"

namespace leaguestat {

enum class FitnessRedraw { per_season, persistent, ar1 };

struct SimulationConfig {
    int n_teams = 18;
    int n_seasons = 1;
    int attacks_per_team = 55;     // Binomial trial count per side
    double base_efficiency = 0.5;  // p0
    double fitness_sd = 0.0;       // goals per match
    FitnessRedraw fitness_redraw = FitnessRedraw::per_season;
    double ar1_rho = 0.0;          // only used with FitnessRedraw::ar1
    double home_advantage = 0.0;   // goals per match
    /// Nonzero simulates a parallel second tier whose teams' fitness is drawn
    /// `tier_offset` goals/match lower; promotion swaps teams between seasons.
    double tier_offset = 0.0;
    int promoted_per_season = 2;   // teams swapped when a second tier exists
    /// Explicit season-1 fitness values for tier 1 (size n_teams); overrides
    /// the random draw.
    std::optional<std::vector<double>> team_fitness;
    /// Clamp out-of-range efficiencies instead of failing; events counted.
    bool allow_clamping = false;
    std::uint64_t seed = 0;
    std::string first_season = "2001";  // integer label, incremented per season
};

/// Everything needed to compare estimates against the generating model.
struct GroundTruth {
    std::string rng_algorithm;  // identity of the generator / stream scheme
    SimulationConfig config;
    /// 2 * n_a * p0 * (1 - p0): per-match Binomial noise variance of the
    /// goal difference between equal teams.
    double implied_A = 0.0;
    /// implied_A + fitness_sd^2: the slope the window-variance
    /// regression actually converges to (window opponents contribute their
    /// own fitness variance at rate 1/t).
    double implied_decomposition_slope = 0.0;
    /// season label -> team name -> fitness (goals per match).
    std::map<std::string, std::map<std::string, double>> fitness;
    long clamp_events = 0;
};

struct SimulatedLeague {
    LeagueDataset dataset;
    GroundTruth truth;
};

/// Per-day fixtures as (home, away) team indices; a full double round-robin
/// built with the circle method, return legs mirroring with venues swapped.
/// Odd team counts get a bye (one team rests per day).
/// Throws ValidationError for n_teams < 2.
std::vector<std::vector<std::pair<int, int>>> schedule_round_robin(int n_teams);

/// Deterministic in the seed: each match draws from its own RNG stream keyed
/// by (seed, season, tier, day, match), so results do not depend on
/// evaluation order. Each side's goals are Binomial(n_a, p) with
///   p_home = p0 + (f_home - f_away + h) / (2 n_a)
///   p_away = p0 + (f_away - f_home - h) / (2 n_a)
/// giving an expected goal difference of (f_home - f_away) + h.
/// Efficiencies outside [0, 1] raise ValidationError listing the offending
/// pairings unless allow_clamping is set.
SimulatedLeague simulate_league(const SimulationConfig& config);

/// Ground truth as a JSON document (the sidecar emitted next to the CSV).
std::string ground_truth_json(const GroundTruth& truth);

}  // namespace leaguestat
