#include <doctest.h>

#include <cmath>
#include <map>

#include "helpers.hpp"
#include "leaguestat/descriptive.hpp"
#include "leaguestat/errors.hpp"
#include "leaguestat/simulate.hpp"

using namespace leaguestat;
using test_helpers::Row;
using test_helpers::make_dataset;
using test_helpers::mirror_dataset;

TEST_CASE("single drawn match") {
    const auto ds = make_dataset({{"2001", 1, "a", "b", 10, 10}});
    const auto s = match_statistics(ds);
    CHECK(s.mean_total == 20.0);
    CHECK(s.home_advantage == 0.0);
    CHECK(s.p_draw == 1.0);
    CHECK(s.p_home_win == 0.0);
    CHECK(s.var_total == 0.0);
}

TEST_CASE("two mirrored results balance home and away") {
    const auto ds = make_dataset({{"2001", 1, "a", "b", 30, 28},
                                  {"2001", 2, "b", "a", 28, 30}});
    const auto s = match_statistics(ds);
    CHECK(s.home_advantage == 0.0);
    CHECK(s.p_home_win == 0.5);
    CHECK(s.p_away_win == 0.5);
    CHECK(s.mean_total == 58.0);
}

TEST_CASE("mean decomposition is exact on simulated data") {
    SimulationConfig config;
    config.n_teams = 10;
    config.n_seasons = 3;
    config.fitness_sd = 2.5;
    config.home_advantage = 1.2;
    config.seed = 11;
    const auto league = simulate_league(config);
    const auto s = match_statistics(league.dataset);
    CHECK(s.mean_total == s.mean_home + s.mean_away);  // bitwise by construction
    CHECK(s.p_home_win + s.p_away_win + s.p_draw == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("fully mirrored dataset has exactly zero home advantage") {
    const auto ds = mirror_dataset({{"2001", 1, "a", "b", 33, 21},
                                    {"2001", 2, "c", "a", 17, 28},
                                    {"2001", 3, "b", "c", 40, 22}},
                                   10);
    CHECK(match_statistics(ds).home_advantage == 0.0);
}

TEST_CASE("season filter and empty selection") {
    const auto ds = make_dataset({{"2001", 1, "a", "b", 10, 20},
                                  {"2002", 1, "a", "b", 30, 20}});
    const auto s = match_statistics(ds, std::set<std::string>{"2002"});
    CHECK(s.mean_total == 50.0);
    CHECK_THROWS_AS((void)match_statistics(ds, std::set<std::string>{"1999"}),
                    ValidationError);
}

TEST_CASE("histogram of one drawn match") {
    const auto ds = make_dataset({{"2001", 1, "a", "b", 20, 20}});
    const auto h = goal_histogram(ds, Side::pooled);
    CHECK(h.counts.at(20) == 2);
    CHECK(h.total_count == 2);
    CHECK(h.fitted_variance == 0.0);
    CHECK(h.fitted_mean == 20.0);
}

TEST_CASE("pooled histogram mass is twice the match count") {
    SimulationConfig config;
    config.n_teams = 8;
    config.n_seasons = 2;
    config.seed = 21;
    const auto league = simulate_league(config);
    const auto h = goal_histogram(league.dataset, Side::pooled);
    CHECK(h.total_count == 2 * static_cast<long>(league.dataset.size()));
    long sum = 0;
    for (const auto& [goals, count] : h.counts) sum += count;
    CHECK(sum == h.total_count);
}

TEST_CASE("Binomial(55, 0.5) simulated goals match the binomial moments") {
    // np = 27.5 and np(1-p) = 13.75 are the oracle values.
    SimulationConfig config;
    config.n_teams = 18;
    config.n_seasons = 33;  // 306 * 33 = 10098 >= 10000 matches
    config.seed = 22;
    const auto league = simulate_league(config);
    REQUIRE(league.dataset.size() >= 10000);
    const auto h = goal_histogram(league.dataset, Side::pooled);
    CHECK(std::abs(h.fitted_mean - 27.5) / 27.5 < 0.02);
    CHECK(std::abs(h.fitted_variance - 13.75) / 13.75 < 0.10);
}

TEST_CASE("per-season series") {
    const auto ds = make_dataset({{"2001", 1, "a", "b", 10, 20},
                                  {"2001", 2, "b", "a", 15, 15},
                                  {"2002", 1, "a", "b", 40, 20}});
    const auto totals = per_season_series(ds, SeasonQuantity::total_goals);
    REQUIRE(totals.size() == 2);
    CHECK(totals[0] == std::pair<std::string, double>{"2001", 30.0});
    CHECK(totals[1] == std::pair<std::string, double>{"2002", 60.0});
    const auto adv = per_season_series(ds, SeasonQuantity::home_advantage);
    CHECK(adv[0].second == doctest::Approx(-5.0));
    CHECK(adv[1].second == doctest::Approx(20.0));
}

TEST_CASE("zero configured home advantage stays within three standard errors") {
    SimulationConfig config;
    config.n_teams = 18;
    config.n_seasons = 1;
    config.seed = 23;
    const auto league = simulate_league(config);
    const auto series = per_season_series(league.dataset, SeasonQuantity::home_advantage);
    // Per-match goal difference variance for equal binomial sides is
    // 2 n p (1-p) = 27.5; the home-advantage estimate over 306 matches has
    // stderr sqrt(27.5 / 306).
    const double se = std::sqrt(27.5 / 306.0);
    CHECK(std::abs(series[0].second) < 3.0 * se);
}

TEST_CASE("goal conservation per season") {
    SimulationConfig config;
    config.n_teams = 6;
    config.n_seasons = 2;
    config.fitness_sd = 3.0;
    config.seed = 24;
    const auto league = simulate_league(config);
    for (const auto& season : league.dataset.seasons()) {
        long scored = 0, conceded = 0, total = 0;
        std::map<TeamId, std::pair<long, long>> per_team;
        for (const auto& m : league.dataset.matches()) {
            if (m.season != season) continue;
            per_team[m.home].first += m.goals_home;
            per_team[m.home].second += m.goals_away;
            per_team[m.away].first += m.goals_away;
            per_team[m.away].second += m.goals_home;
            total += m.total_goals();
        }
        for (const auto& [team, sc] : per_team) {
            scored += sc.first;
            conceded += sc.second;
        }
        CHECK(scored == total);
        CHECK(conceded == total);
    }
}

TEST_CASE("extreme matches") {
    SUBCASE("a single match is every extreme") {
        const auto ds = make_dataset({{"2001", 1, "a", "b", 31, 24}});
        const auto e = extreme_matches(ds);
        CHECK(e.max_total == 55);
        CHECK(e.min_total == 55);
        CHECK(e.max_abs_difference == 7);
        CHECK(e.max_total_matches.size() == 1);
        CHECK(e.min_total_matches.size() == 1);
        CHECK(e.max_difference_matches.size() == 1);
    }
    SUBCASE("ties are all listed") {
        const auto ds = make_dataset({{"2001", 1, "a", "b", 30, 20},
                                      {"2001", 2, "c", "d", 25, 25}});
        const auto e = extreme_matches(ds);
        CHECK(e.max_total == 50);
        CHECK(e.max_total_matches.size() == 2);
        CHECK(e.max_abs_difference == 10);
        CHECK(e.max_difference_matches.size() == 1);
    }
}

TEST_CASE("team share report exposes both aggregation conventions") {
    // 2001: a (+) ; 2002: a,b (+,-): season means differ from pooled.
    const auto ds = make_dataset({{"2001", 1, "a", "b", 30, 20},
                                  {"2001", 2, "b", "a", 20, 25},
                                  {"2002", 1, "a", "b", 21, 20},
                                  {"2002", 2, "b", "a", 19, 20}});
    const auto r = team_share_report(ds);
    CHECK(r.positive_gd_share_season_mean == doctest::Approx(0.5));
    CHECK(r.positive_gd_share_pooled == doctest::Approx(0.5));
    CHECK(r.positive_gd_goals_share_pooled > 0.5);  // winners score more
}
