#pragma once

#include <optional>
#include <string>
#include <vector>

#include "leaguestat/dataset.hpp"

namespace leaguestat {

/// How the home-advantage term of a prediction is chosen.
struct HomeAdvStrategy {
    enum class Kind {
        season_to_date,  // mean home-minus-away goals over days < t (no lookahead)
        prior_season,    // mean home-minus-away goals of the previous season
        constant
    };
    Kind kind = Kind::season_to_date;
    double constant = 0.0;

    /// Parses "season", "prior" or "constant:X".
    static HomeAdvStrategy parse(const std::string& text);
    std::string describe() const;
};

struct PredictOptions {
    HomeAdvStrategy home_advantage{};
    bool draw_calls = true;   // |predicted diff| < draw_band predicts a draw
    double draw_band = 0.5;   // ignored when draw_calls is false
};

enum class WinnerCall { home, away, draw };

struct Prediction {
    std::string season;
    int match_day = 0;
    int tier = 1;
    TeamId home;
    TeamId away;
    double predicted_diff = 0.0;  // home perspective, incl. home advantage
    WinnerCall predicted_winner = WinnerCall::draw;
    std::optional<int> actual_diff;
    std::optional<bool> correct_winner;
};

struct MatchdayPredictions {
    std::vector<Prediction> predictions;
    std::vector<std::string> warnings;  // fixtures skipped for lack of history
};

/// Predicts every fixture of match day t of a season from running average
/// goal differences through day t-1 plus the home-advantage term.
/// Throws ValidationError for t < 2 ("no history") or unknown season.
MatchdayPredictions predict_matchday(const LeagueDataset& dataset, const std::string& season,
                                     int match_day, const PredictOptions& options = {});

struct PredictionEvaluation {
    struct DayRow {
        int match_day = 0;
        double error_variance = 0.0;  // variance of predicted minus actual diff
        double accuracy = 0.0;        // correct winner calls / n
        long n = 0;
    };
    std::vector<DayRow> per_matchday;  // pooled across seasons per day
    double overall_accuracy = 0.0;     // match-weighted over all predictions
    long n_predictions = 0;
    long n_correct = 0;
    std::vector<std::string> warnings;
};

/// Rolling evaluation over every season and every day in [2, T].
PredictionEvaluation evaluate_predictions(const LeagueDataset& dataset,
                                          const PredictOptions& options = {});

}  // namespace leaguestat
