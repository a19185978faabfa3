#include "leaguestat/predict.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "leaguestat/errors.hpp"
#include "leaguestat/stats.hpp"

namespace leaguestat {

HomeAdvStrategy HomeAdvStrategy::parse(const std::string& text) {
    HomeAdvStrategy s;
    if (text == "season") {
        s.kind = Kind::season_to_date;
    } else if (text == "prior") {
        s.kind = Kind::prior_season;
    } else if (text.rfind("constant:", 0) == 0) {
        s.kind = Kind::constant;
        try {
            s.constant = std::stod(text.substr(9));
        } catch (const std::exception&) {
            throw ValidationError("invalid home-advantage constant in '" + text + "'");
        }
    } else {
        throw ValidationError("unknown home-advantage strategy '" + text +
                              "' (want season|prior|constant:X)");
    }
    return s;
}

std::string HomeAdvStrategy::describe() const {
    switch (kind) {
        case Kind::season_to_date: return "season";
        case Kind::prior_season: return "prior";
        case Kind::constant: return "constant:" + std::to_string(constant);
    }
    return "?";
}

namespace {

struct TeamHistory {
    double diff_sum = 0.0;
    long matches = 0;
};

// Home advantage of one division restricted to days < cutoff (or all days
// when cutoff is 0). Returns nullopt when no match qualifies.
std::optional<double> division_advantage(const LeagueDataset& dataset,
                                         const LeagueDataset::Division& div, int cutoff) {
    double home = 0.0, away = 0.0;
    long n = 0;
    for (auto idx : div.matches) {
        const auto& m = dataset.matches()[idx];
        if (cutoff > 0 && m.match_day >= cutoff) continue;
        home += m.goals_home;
        away += m.goals_away;
        ++n;
    }
    if (n == 0) return std::nullopt;
    return (home - away) / static_cast<double>(n);
}

std::optional<double> advantage_for(const LeagueDataset& dataset,
                                    const LeagueDataset::Division& div, int match_day,
                                    const HomeAdvStrategy& strategy) {
    switch (strategy.kind) {
        case HomeAdvStrategy::Kind::constant:
            return strategy.constant;
        case HomeAdvStrategy::Kind::season_to_date:
            return division_advantage(dataset, div, match_day);
        case HomeAdvStrategy::Kind::prior_season: {
            const auto sidx = dataset.season_index(div.season);
            if (sidx == 0) return std::nullopt;
            const auto* prior =
                dataset.find_division(dataset.seasons()[sidx - 1], div.tier);
            if (!prior) return std::nullopt;
            return division_advantage(dataset, *prior, 0);
        }
    }
    return std::nullopt;
}

WinnerCall call_winner(double predicted_diff, const PredictOptions& options) {
    if (options.draw_calls && std::abs(predicted_diff) < options.draw_band)
        return WinnerCall::draw;
    if (predicted_diff < 0.0) return WinnerCall::away;
    return WinnerCall::home;  // exact zero maps to home under no-draw calls
}

bool winner_correct(WinnerCall call, int actual_diff) {
    if (actual_diff > 0) return call == WinnerCall::home;
    if (actual_diff < 0) return call == WinnerCall::away;
    return call == WinnerCall::draw;
}

void predict_division_day(const LeagueDataset& dataset,
                          const LeagueDataset::Division& div, int match_day,
                          const PredictOptions& options, std::vector<Prediction>& out,
                          std::vector<std::string>& warnings) {
    std::map<TeamId, TeamHistory> history;
    std::vector<std::size_t> day_matches;
    for (auto idx : div.matches) {
        const auto& m = dataset.matches()[idx];
        if (m.match_day < match_day) {
            const int d = m.goal_difference();
            auto& h = history[m.home];
            h.diff_sum += d;
            ++h.matches;
            auto& a = history[m.away];
            a.diff_sum -= d;
            ++a.matches;
        } else if (m.match_day == match_day) {
            day_matches.push_back(idx);
        }
    }
    const auto adv = advantage_for(dataset, div, match_day, options.home_advantage);
    if (!adv) {
        warnings.push_back("season " + div.season + " day " + std::to_string(match_day) +
                           ": no home-advantage history for strategy " +
                           options.home_advantage.describe() + "; fixtures skipped");
        return;
    }
    for (auto idx : day_matches) {
        const auto& m = dataset.matches()[idx];
        const auto hi = history.find(m.home);
        const auto ai = history.find(m.away);
        if (hi == history.end() || hi->second.matches == 0 || ai == history.end() ||
            ai->second.matches == 0) {
            warnings.push_back("season " + div.season + " day " + std::to_string(match_day) +
                               ": " + m.home.name() + " vs " + m.away.name() +
                               " skipped (a team has no prior match)");
            continue;
        }
        Prediction p;
        p.season = div.season;
        p.match_day = match_day;
        p.tier = div.tier;
        p.home = m.home;
        p.away = m.away;
        p.predicted_diff = hi->second.diff_sum / hi->second.matches -
                           ai->second.diff_sum / ai->second.matches + *adv;
        p.predicted_winner = call_winner(p.predicted_diff, options);
        p.actual_diff = m.goal_difference();
        p.correct_winner = winner_correct(p.predicted_winner, *p.actual_diff);
        out.push_back(std::move(p));
    }
}

}  // namespace

MatchdayPredictions predict_matchday(const LeagueDataset& dataset, const std::string& season,
                                     int match_day, const PredictOptions& options) {
    if (match_day < 2) throw ValidationError("no history before match day 2");
    dataset.season_index(season);
    MatchdayPredictions result;
    for (const auto* div : dataset.divisions_of(season))
        predict_division_day(dataset, *div, match_day, options, result.predictions,
                             result.warnings);
    return result;
}

PredictionEvaluation evaluate_predictions(const LeagueDataset& dataset,
                                          const PredictOptions& options) {
    PredictionEvaluation eval;
    std::map<int, std::vector<const Prediction*>> per_day;
    std::vector<Prediction> all;
    for (const auto& div : dataset.divisions()) {
        for (int t = 2; t <= div.n_match_days; ++t)
            predict_division_day(dataset, div, t, options, all, eval.warnings);
    }
    for (const auto& p : all) per_day[p.match_day].push_back(&p);

    for (const auto& [day, preds] : per_day) {
        PredictionEvaluation::DayRow row;
        row.match_day = day;
        row.n = static_cast<long>(preds.size());
        std::vector<double> errors;
        long correct = 0;
        for (const auto* p : preds) {
            errors.push_back(p->predicted_diff - *p->actual_diff);
            if (*p->correct_winner) ++correct;
        }
        row.error_variance = stats::population_variance(errors);
        row.accuracy = static_cast<double>(correct) / static_cast<double>(row.n);
        eval.n_predictions += row.n;
        eval.n_correct += correct;
        eval.per_matchday.push_back(row);
    }
    if (eval.n_predictions > 0)
        eval.overall_accuracy =
            static_cast<double>(eval.n_correct) / static_cast<double>(eval.n_predictions);
    return eval;
}

}  // namespace leaguestat
