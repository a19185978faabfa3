#include <doctest.h>

#include <cmath>
#include <map>
#include <set>

#include <nlohmann/json.hpp>

#include "helpers.hpp"
#include "leaguestat/descriptive.hpp"
#include "leaguestat/errors.hpp"
#include "leaguestat/fitness.hpp"
#include "leaguestat/rng.hpp"
#include "leaguestat/simulate.hpp"

using namespace leaguestat;

TEST_CASE("round robin schedule shapes") {
    SUBCASE("4 teams: 6 days of 2 matches") {
        const auto days = schedule_round_robin(4);
        CHECK(days.size() == 6);
        for (const auto& day : days) CHECK(day.size() == 2);
    }
    SUBCASE("18 teams: 34 days of 9 matches, 306 total") {
        const auto days = schedule_round_robin(18);
        CHECK(days.size() == 34);
        std::size_t total = 0;
        for (const auto& day : days) {
            CHECK(day.size() == 9);
            total += day.size();
        }
        CHECK(total == 306);
    }
    SUBCASE("odd team count gets a bye") {
        const auto days = schedule_round_robin(5);
        CHECK(days.size() == 10);
        std::map<int, int> played;
        for (const auto& day : days) {
            CHECK(day.size() == 2);
            for (const auto& [h, a] : day) {
                ++played[h];
                ++played[a];
            }
        }
        for (int t = 0; t < 5; ++t) CHECK(played[t] == 8);
    }
    SUBCASE("fewer than 2 teams is an error") {
        CHECK_THROWS_AS((void)schedule_round_robin(1), ValidationError);
    }
}

TEST_CASE("every pair meets exactly twice with opposite venues") {
    for (int n : {4, 9, 18}) {
        const auto days = schedule_round_robin(n);
        std::set<std::pair<int, int>> ordered;
        std::map<int, std::set<std::size_t>> team_days;
        for (std::size_t d = 0; d < days.size(); ++d) {
            for (const auto& [h, a] : days[d]) {
                CHECK(ordered.emplace(h, a).second);  // no ordered pair repeats
                CHECK(team_days[h].insert(d).second);  // one match per team-day
                CHECK(team_days[a].insert(d).second);
            }
        }
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i != j) CHECK(ordered.contains({i, j}));
    }
}

TEST_CASE("identical seeds reproduce the league byte for byte") {
    SimulationConfig config;
    config.n_teams = 10;
    config.n_seasons = 3;
    config.fitness_sd = 2.0;
    config.home_advantage = 1.87;
    config.seed = 71;
    const auto a = simulate_league(config);
    const auto b = simulate_league(config);
    CHECK(serialize_dataset(a.dataset) == serialize_dataset(b.dataset));
    CHECK(ground_truth_json(a.truth) == ground_truth_json(b.truth));
    config.seed = 72;
    const auto c = simulate_league(config);
    CHECK(serialize_dataset(a.dataset) != serialize_dataset(c.dataset));
}

TEST_CASE("draws depend only on their stream, not on how much else is simulated") {
    // A longer run must reproduce the shorter run's seasons exactly: every
    // match and every fitness draw is keyed by (season, tier, day, match).
    SimulationConfig config;
    config.n_teams = 8;
    config.fitness_sd = 2.0;
    config.home_advantage = 1.0;
    config.fitness_redraw = FitnessRedraw::persistent;
    config.seed = 70;
    config.n_seasons = 1;
    const auto short_run = simulate_league(config);
    config.n_seasons = 3;
    const auto long_run = simulate_league(config);
    std::vector<MatchRecord> first_season;
    for (const auto& m : long_run.dataset.matches())
        if (m.season == "2001") first_season.push_back(m);
    CHECK(serialize_dataset(LeagueDataset::from_records(std::move(first_season))) ==
          serialize_dataset(short_run.dataset));
    CHECK(long_run.truth.fitness.at("2001") == short_run.truth.fitness.at("2001"));
}

TEST_CASE("mean total goals tracks the binomial mean") {
    SimulationConfig config;
    config.n_teams = 18;
    config.n_seasons = 10;
    config.seed = 73;
    const auto league = simulate_league(config);
    const auto s = match_statistics(league.dataset);
    CHECK(std::abs(s.mean_total - 55.0) / 55.0 < 0.01);
}

TEST_CASE("configured home advantage is recovered within three standard errors") {
    SimulationConfig config;
    config.n_teams = 18;
    config.n_seasons = 10;
    config.home_advantage = 1.87;
    config.seed = 74;
    const auto league = simulate_league(config);
    const auto s = match_statistics(league.dataset);
    const double se = std::sqrt(s.var_home + s.var_away) / std::sqrt(3060.0);
    CHECK(std::abs(s.home_advantage - 1.87) < 3.0 * se);
}

TEST_CASE("fixture replay matches the model moments") {
    // Oracle from the model definition: goals ~ Binomial(n_a, p) with
    // p = p0 + (f_i - f_j +- h) / (2 n_a), so E[diff] = f_i - f_j + h and
    // Var(goals) = n_a p (1 - p).
    const double f_home = 3.0, f_away = -1.5, h = 1.87;
    const int na = 55;
    const double p_home = 0.5 + (f_home - f_away + h) / (2.0 * na);
    const double p_away = 0.5 + (f_away - f_home - h) / (2.0 * na);
    const int replays = 10000;
    double diff_sum = 0.0, home_sum = 0.0, home_sq = 0.0;
    for (int r = 0; r < replays; ++r) {
        rng::SplitMix64 gen(rng::match_stream(4242, 0, 1, 0, static_cast<std::uint64_t>(r)));
        const int gh = gen.binomial(na, p_home);
        const int ga = gen.binomial(na, p_away);
        diff_sum += gh - ga;
        home_sum += gh;
        home_sq += static_cast<double>(gh) * gh;
    }
    const double mean_diff = diff_sum / replays;
    const double expected_diff = (f_home - f_away) + h;
    const double se_diff = std::sqrt(2.0 * na * 0.25 / replays);
    CHECK(std::abs(mean_diff - expected_diff) < 4.0 * se_diff);
    const double var_home = home_sq / replays - (home_sum / replays) * (home_sum / replays);
    const double expected_var = na * p_home * (1.0 - p_home);
    CHECK(std::abs(var_home - expected_var) / expected_var < 0.1);
}

TEST_CASE("efficiencies outside the unit interval fail loudly, or clamp on request") {
    SimulationConfig config;
    config.n_teams = 4;
    config.n_seasons = 1;
    config.fitness_redraw = FitnessRedraw::persistent;
    config.team_fitness = std::vector<double>{80.0, 0.0, 0.0, -80.0};
    config.seed = 75;
    try {
        (void)simulate_league(config);
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        const std::string what = e.what();
        CHECK(what.find("p = ") != std::string::npos);  // offending pairs listed
        CHECK(what.find("club 01") != std::string::npos);
    }
    config.allow_clamping = true;
    const auto league = simulate_league(config);
    CHECK(league.truth.clamp_events > 0);
}

TEST_CASE("degenerate efficiencies give deterministic goals") {
    SimulationConfig config;
    config.n_teams = 4;
    config.n_seasons = 1;
    config.seed = 76;
    config.base_efficiency = 1.0;
    const auto all_in = simulate_league(config);
    for (const auto& m : all_in.dataset.matches()) {
        CHECK(m.goals_home == 55);
        CHECK(m.goals_away == 55);
    }
    config.base_efficiency = 0.0;
    const auto none_in = simulate_league(config);
    for (const auto& m : none_in.dataset.matches()) {
        CHECK(m.goals_home == 0);
        CHECK(m.goals_away == 0);
    }
}

TEST_CASE("simulated output passes every dataset validation") {
    SimulationConfig config;
    config.n_teams = 18;
    config.n_seasons = 3;
    config.fitness_sd = 3.0;
    config.home_advantage = 1.5;
    config.tier_offset = 8.0;
    config.fitness_redraw = FitnessRedraw::persistent;
    config.seed = 77;
    const auto league = simulate_league(config);
    // Re-validating from raw records exercises every construction check.
    auto records = league.dataset.matches();
    CHECK_NOTHROW((void)LeagueDataset::from_records(std::move(records)));
    for (const auto& season : league.dataset.seasons()) {
        for (int tier : league.dataset.tiers(season)) {
            CHECK(season_profile(league.dataset, season, tier).complete);
        }
    }
}

TEST_CASE("seasonal autocorrelation follows the configured fitness evolution") {
    auto measure = [](FitnessRedraw mode, double rho, std::uint64_t seed) {
        SimulationConfig config;
        config.n_teams = 18;
        config.n_seasons = 30;
        config.fitness_sd = 3.0;
        config.fitness_redraw = mode;
        config.ar1_rho = rho;
        config.seed = seed;
        const auto league = simulate_league(config);
        return seasonal_autocorrelation(league.dataset);
    };
    SUBCASE("persistent fitness stays correlated") {
        const auto cy = measure(FitnessRedraw::persistent, 0.0, 81);
        for (std::size_t i = 0; i < cy.lags.size() && cy.lags[i] <= 4; ++i)
            CHECK(std::abs(cy.values[i] - 1.0) < 0.1);
    }
    SUBCASE("per-season redraw decorrelates") {
        const auto cy = measure(FitnessRedraw::per_season, 0.0, 82);
        for (std::size_t i = 1; i < cy.lags.size() && cy.lags[i] <= 4; ++i)
            CHECK(std::abs(cy.values[i]) < 0.1);
    }
    SUBCASE("AR(1) decays geometrically") {
        const double rho = 0.6;
        const auto cy = measure(FitnessRedraw::ar1, rho, 83);
        for (std::size_t i = 0; i < cy.lags.size() && cy.lags[i] <= 4; ++i)
            CHECK(std::abs(cy.values[i] - std::pow(rho, cy.lags[i])) < 0.1);
    }
}

TEST_CASE("explicit team fitness drives the expected season sum") {
    SimulationConfig config;
    config.n_teams = 18;
    config.n_seasons = 1;
    config.fitness_redraw = FitnessRedraw::persistent;
    std::vector<double> fitness(18, 0.0);
    fitness[0] = 5.0;
    config.team_fitness = fitness;
    config.seed = 84;
    const auto league = simulate_league(config);
    CHECK(league.truth.fitness.at("2001").at("club 01") == 5.0);
    CHECK(league.truth.implied_A == doctest::Approx(27.5));
}

TEST_CASE("ground truth JSON is parseable and complete") {
    SimulationConfig config;
    config.n_teams = 4;
    config.n_seasons = 2;
    config.fitness_sd = 1.0;
    config.seed = 85;
    const auto league = simulate_league(config);
    const auto j = nlohmann::json::parse(ground_truth_json(league.truth));
    CHECK(j.at("schema") == 1);
    CHECK(j.at("rng_algorithm") == "splitmix64/match-stream-v1");
    CHECK(j.at("config").at("n_teams") == 4);
    CHECK(j.at("fitness").at("2001").size() == 4);
    CHECK(j.at("implied_A").get<double>() == doctest::Approx(27.5));
}

TEST_CASE("tiered simulation keeps divisions apart and promotes between seasons") {
    SimulationConfig config;
    config.n_teams = 6;
    config.n_seasons = 3;
    config.tier_offset = 6.0;
    config.fitness_redraw = FitnessRedraw::persistent;
    config.promoted_per_season = 1;
    config.seed = 86;
    const auto league = simulate_league(config);
    for (const auto& season : league.dataset.seasons()) {
        CHECK(league.dataset.tiers(season) == std::vector<int>{1, 2});
        // no cross-tier fixtures by construction of divisions
        const auto* d1 = league.dataset.find_division(season, 1);
        const auto* d2 = league.dataset.find_division(season, 2);
        std::set<TeamId> t1(d1->teams.begin(), d1->teams.end());
        for (const auto& team : d2->teams) CHECK_FALSE(t1.contains(team));
    }
    // the promotion swap changes top-tier membership between adjacent seasons
    const auto* first = league.dataset.find_division("2001", 1);
    const auto* second = league.dataset.find_division("2002", 1);
    CHECK(std::set<TeamId>(first->teams.begin(), first->teams.end()) !=
          std::set<TeamId>(second->teams.begin(), second->teams.end()));
}
