// Acceptance suite: prints one PASS/FAIL line per criterion check and exits
// nonzero when any always-on check fails. Golden checks against the real
// league results run only when LEAGUESTAT_GOLDEN_CSV points at the data file
// (standard CSV, tier column included for the second-tier rows); they skip
// cleanly otherwise.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "leaguestat/dataset.hpp"
#include "leaguestat/descriptive.hpp"
#include "leaguestat/errors.hpp"
#include "leaguestat/fitness.hpp"
#include "leaguestat/predict.hpp"
#include "leaguestat/rng.hpp"
#include "leaguestat/simulate.hpp"
#include "leaguestat/structure.hpp"
#include "leaguestat/variance.hpp"

using namespace leaguestat;

namespace {

struct Gate {
    int passed = 0;
    int failed = 0;
    int skipped = 0;

    void check(int criterion, const std::string& what, bool ok,
               const std::string& detail = "") {
        std::cout << "[criterion " << criterion << "] " << (ok ? "PASS" : "FAIL") << "  "
                  << what;
        if (!detail.empty()) std::cout << "  (" << detail << ")";
        std::cout << '\n';
        (ok ? passed : failed)++;
    }

    void skip(int criterion, const std::string& what, const std::string& why) {
        std::cout << "[criterion " << criterion << "] SKIP  " << what << "  (" << why
                  << ")\n";
        ++skipped;
    }
};

std::string fmt(double v) {
    std::ostringstream ss;
    ss.precision(4);
    ss << v;
    return ss.str();
}

bool within(double value, double target, double tolerance) {
    return std::abs(value - target) <= tolerance;
}

bool within_rel(double value, double target, double rel) {
    return std::abs(value - target) <= rel * std::abs(target);
}

LeagueDataset tier_subset(const LeagueDataset& ds, int tier) {
    std::vector<MatchRecord> records;
    for (const auto& m : ds.matches())
        if (m.tier == tier) records.push_back(m);
    return LeagueDataset::from_records(std::move(records));
}

// ---------------------------------------------------------------------------
// Conditional golden criteria (1-5)
// ---------------------------------------------------------------------------

void golden_criteria(Gate& gate) {
    const char* path = std::getenv("LEAGUESTAT_GOLDEN_CSV");
    if (!path || !*path) {
        for (int c = 1; c <= 5; ++c)
            gate.skip(c, "golden reproduction", "set LEAGUESTAT_GOLDEN_CSV to run");
        return;
    }
    const auto full = parse_dataset_file(path);
    const auto ds = tier_subset(full, 1);

    {  // 1: per-match table
        const auto start = std::chrono::steady_clock::now();
        const auto s = match_statistics(ds);
        const auto elapsed = std::chrono::duration<double>(
                                 std::chrono::steady_clock::now() - start)
                                 .count();
        gate.check(1, "mean total goals", within(s.mean_total, 57.19, 0.05),
                   fmt(s.mean_total) + " vs 57.19 +- 0.05");
        gate.check(1, "mean home goals", within(s.mean_home, 29.53, 0.05),
                   fmt(s.mean_home) + " vs 29.53 +- 0.05");
        gate.check(1, "mean away goals", within(s.mean_away, 27.66, 0.05),
                   fmt(s.mean_away) + " vs 27.66 +- 0.05");
        gate.check(1, "variance of total goals", within(s.var_total, 53.88, 0.5),
                   fmt(s.var_total) + " vs 53.88 +- 0.5");
        gate.check(1, "variance of home goals", within(s.var_home, 25.42, 0.5),
                   fmt(s.var_home) + " vs 25.42 +- 0.5");
        gate.check(1, "variance of away goals", within(s.var_away, 23.81, 0.5),
                   fmt(s.var_away) + " vs 23.81 +- 0.5");
        gate.check(1, "home advantage", within(s.home_advantage, 1.87, 0.05),
                   fmt(s.home_advantage) + " vs 1.87 +- 0.05");
        gate.check(1, "home win probability", within(s.p_home_win, 0.589, 0.005),
                   fmt(s.p_home_win) + " vs 0.589 +- 0.005");
        gate.check(1, "away win probability", within(s.p_away_win, 0.332, 0.005),
                   fmt(s.p_away_win) + " vs 0.332 +- 0.005");
        gate.check(1, "draw probability", within(s.p_draw, 0.079, 0.005),
                   fmt(s.p_draw) + " vs 0.079 +- 0.005");
        gate.check(1, "runtime under one second", elapsed < 1.0, fmt(elapsed) + " s");
    }

    {  // 2: fitness persistence
        const auto hc = half_season_correlation(ds);
        gate.check(2, "half-season r^2", within(hc.r2, 0.88, 0.03),
                   fmt(hc.r2) + " vs 0.88 +- 0.03");
        const auto curve = matchday_autocorrelation(ds);
        gate.check(2, "mean autocorrelation level", within(curve.mean_level, 11.38, 0.4),
                   fmt(curve.mean_level) + " vs 11.38 +- 0.4");
        const auto fit = fit_exponential(curve, 14);
        gate.check(2, "fit asymptote c1", within(fit.c1, 11.2, 0.8),
                   fmt(fit.c1) + " vs 11.2 +- 0.8");
        gate.check(2, "fit amplitude c2", within(fit.c2, 2.76, 1.2),
                   fmt(fit.c2) + " vs 2.76 +- 1.2");
        gate.check(2, "fit decay time tau", within(fit.tau, 3.31, 1.6),
                   fmt(fit.tau) + " vs 3.31 +- 1.6");
    }

    {  // 3: variance decomposition
        const auto series = neutralize(ds);
        const auto dg = variance_decomposition(series, VarQuantity::goal_difference, {});
        const auto gp = variance_decomposition(series, VarQuantity::goals_for, {});
        const auto gm = variance_decomposition(series, VarQuantity::goals_against, {});
        gate.check(3, "goal-difference sigma2", within_rel(dg.sigma2_infinity, 13.3, 0.10),
                   fmt(dg.sigma2_infinity) + " vs 13.3 +- 10%");
        gate.check(3, "goal-difference A", within_rel(dg.A, 31.0, 0.10),
                   fmt(dg.A) + " vs 31 +- 10%");
        gate.check(3, "goals-for sigma2", within_rel(gp.sigma2_infinity, 8.2, 0.15),
                   fmt(gp.sigma2_infinity) + " vs 8.2 +- 15%");
        gate.check(3, "goals-for A", within_rel(gp.A, 17.0, 0.15),
                   fmt(gp.A) + " vs 17 +- 15%");
        gate.check(3, "goals-against sigma2", within_rel(gm.sigma2_infinity, 3.7, 0.15),
                   fmt(gm.sigma2_infinity) + " vs 3.7 +- 15%");
        gate.check(3, "goals-against A", within_rel(gm.A, 22.0, 0.15),
                   fmt(gm.A) + " vs 22 +- 15%");
        const auto mean_goals = match_statistics(ds).mean_total;
        const auto bc = binomial_check(dg, mean_goals);
        gate.check(3, "A over mean goals", within(bc.ratio, 0.55, 0.05),
                   fmt(bc.ratio) + " vs 0.55 +- 0.05");
        const auto influence = stochastic_influence_curve(dg);
        gate.check(3, "1/e decay point", influence.t_star >= 6 && influence.t_star <= 8,
                   "t* = " + std::to_string(influence.t_star) + " vs 7 +- 1");
        const SoccerReference ref;
        const auto tr =
            transfer_comparison(dg, ref.sigma2_dg, ref.A_dg, mean_goals, ref.mean_goals);
        gate.check(3, "A/sigma2 of this league", within(tr.ratio_this_league, 2.3, 0.2),
                   fmt(tr.ratio_this_league) + " vs 2.3 +- 0.2");
        gate.check(3, "transferred reference ratio",
                   within(tr.ratio_reference, 0.64, 0.05),
                   fmt(tr.ratio_reference) + " vs 0.64 +- 0.05");
    }

    {  // 4: prediction
        PredictOptions with_draws;  // season-to-date advantage, draw band 0.5
        PredictOptions no_draws;
        no_draws.draw_calls = false;
        const auto a = evaluate_predictions(ds, with_draws);
        const auto b = evaluate_predictions(ds, no_draws);
        const bool ok = within(a.overall_accuracy, 0.74, 0.03) ||
                        within(b.overall_accuracy, 0.74, 0.03);
        gate.check(4, "winner accuracy under a documented convention", ok,
                   "draw-band " + fmt(a.overall_accuracy) + ", sign-only " +
                       fmt(b.overall_accuracy) + " vs 0.74 +- 0.03");
        double day2 = 0.0, late_sum = 0.0;
        long late_n = 0;
        for (const auto& row : a.per_matchday) {
            if (row.match_day == 2) day2 = row.error_variance;
            if (row.match_day >= 15) {
                late_sum += row.error_variance;
                ++late_n;
            }
        }
        const double late = late_sum / static_cast<double>(late_n);
        gate.check(4, "late error variance below 60% of day 2", late < 0.6 * day2,
                   fmt(late) + " vs 0.6 * " + fmt(day2));
    }

    {  // 5: attack/defense structure and promotion
        const auto totals = team_season_totals(ds, 150.0);
        const auto slopes = attack_defense_slopes(totals, 150.0);
        gate.check(5, "attack slope", within(slopes.slope_attack, 0.64, 0.03),
                   fmt(slopes.slope_attack) + " vs 0.64 +- 0.03");
        gate.check(5, "defense slope", within(slopes.slope_defense, -0.36, 0.03),
                   fmt(slopes.slope_defense) + " vs -0.36 +- 0.03");
        gate.check(5, "slope difference is exactly one",
                   std::abs(slopes.slope_attack - slopes.slope_defense - 1.0) < 1e-9);
        const auto corr = split_correlations(totals);
        gate.check(5, "corr(diff, attack) for positive group",
                   within(corr.non_negative.corr_diff_for, 0.797, 0.05),
                   fmt(corr.non_negative.corr_diff_for) + " vs 0.797 +- 0.05");
        gate.check(5, "corr(diff, defense) for positive group",
                   within(corr.non_negative.corr_diff_against, -0.231, 0.05),
                   fmt(corr.non_negative.corr_diff_against) + " vs -0.231 +- 0.05");
        gate.check(5, "corr(diff, attack) for negative group",
                   within(corr.negative.corr_diff_for, 0.449, 0.05),
                   fmt(corr.negative.corr_diff_for) + " vs 0.449 +- 0.05");
        gate.check(5, "corr(diff, defense) for negative group",
                   within(corr.negative.corr_diff_against, -0.597, 0.05),
                   fmt(corr.negative.corr_diff_against) + " vs -0.597 +- 0.05");
        gate.check(5, "attack-defense correlation (positive group)",
                   within(corr.non_negative.corr_for_against, 0.403, 0.05),
                   fmt(corr.non_negative.corr_for_against) + " vs 0.403 +- 0.05");
        gate.check(5, "attack-defense correlation (negative group)",
                   within(corr.negative.corr_for_against, 0.449, 0.05),
                   fmt(corr.negative.corr_for_against) + " vs 0.449 +- 0.05");
        bool has_tier2 = false;
        for (const auto& m : full.matches()) has_tier2 |= m.tier == 2;
        if (!has_tier2) {
            gate.skip(5, "promotion regression", "no tier-2 rows in the golden data");
        } else {
            const auto reg = promotion_analysis(full);
            gate.check(5, "promotion slope", within(reg.slope, 1.0, 0.25),
                       fmt(reg.slope) + " vs 1.0 +- 0.25");
            gate.check(5, "promotion intercept", within(reg.intercept, -325.0, 50.0),
                       fmt(reg.intercept) + " vs -325 +- 50");
        }
    }
}

// ---------------------------------------------------------------------------
// Always-on criteria (6-10)
// ---------------------------------------------------------------------------

void criterion6(Gate& gate) {
    struct Config {
        double sf2;
        double h;
        std::uint64_t seed;
    };
    const std::vector<Config> configs{
        {0.0, 0.0, 601}, {0.0, 1.87, 602}, {5.0, 0.0, 603}, {13.0, 0.0, 604},
        {13.0, 1.87, 605}};
    for (const auto& c : configs) {
        SimulationConfig config;
        config.n_teams = 18;
        config.n_seasons = 10;
        config.fitness_sd = std::sqrt(c.sf2);
        config.home_advantage = c.h;
        config.seed = c.seed;
        const auto league = simulate_league(config);
        const auto series = neutralize(league.dataset);
        const auto dec = variance_decomposition(series, VarQuantity::goal_difference, {});
        const std::string tag =
            "sf2=" + fmt(c.sf2) + " h=" + fmt(c.h) + ": ";

        const double sigma_tol = std::max(0.15 * c.sf2, 1.0);
        gate.check(6, tag + "sigma2 recovery", within(dec.sigma2_infinity, c.sf2, sigma_tol),
                   fmt(dec.sigma2_infinity) + " vs " + fmt(c.sf2) + " +- " + fmt(sigma_tol));

        const double analytic_A = league.truth.implied_A;  // 2 n_a p (1-p)
        std::string note = fmt(dec.A) + " vs analytic " + fmt(analytic_A) + " +- 15%";
        if (c.sf2 > 0.0)
            note += "; window slope converges to analytic + sigma_f^2 = " +
                    fmt(league.truth.implied_decomposition_slope) +
                    " because window opponents carry their own fitness variance";
        gate.check(6, tag + "A recovery", within_rel(dec.A, analytic_A, 0.15), note);

        const auto stats = match_statistics(league.dataset);
        const double se = std::sqrt(stats.var_home + stats.var_away) /
                          std::sqrt(static_cast<double>(stats.n_matches));
        gate.check(6, tag + "home-advantage recovery",
                   std::abs(stats.home_advantage - c.h) < 3.0 * se,
                   fmt(stats.home_advantage) + " vs " + fmt(c.h) + " +- 3 x " + fmt(se));
    }
}

void criterion7(Gate& gate) {
    bool all_ok = true;
    double lo = 1.0, hi = 0.0;
    for (int rep = 0; rep < 20; ++rep) {
        SimulationConfig config;
        config.n_teams = 18;
        config.n_seasons = 10;
        config.seed = 700 + static_cast<std::uint64_t>(rep);
        const auto league = simulate_league(config);
        const auto dec = variance_decomposition(neutralize(league.dataset),
                                                VarQuantity::goal_difference, {});
        const double ratio = binomial_check(dec, match_statistics(league.dataset).mean_total).ratio;
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
        all_ok = all_ok && ratio >= 0.45 && ratio <= 0.55;
    }
    gate.check(7, "A over mean goals in [0.45, 0.55] for 20 equal-strength leagues",
               all_ok, "range [" + fmt(lo) + ", " + fmt(hi) + "]");
}

void criterion8(Gate& gate) {
    {  // flat autocorrelation under persistent fitness
        SimulationConfig config;
        config.n_teams = 18;
        config.n_seasons = 10;
        config.fitness_sd = 3.0;
        config.fitness_redraw = FitnessRedraw::persistent;
        config.seed = 801;
        const auto league = simulate_league(config);
        const auto curve = matchday_autocorrelation(league.dataset);
        const auto fit = fit_exponential(curve, 14);
        gate.check(8, "no fitted decay on static fitness (|c2| <= 2 sigma)",
                   std::abs(fit.c2) <= 2.0 * fit.c2_stderr,
                   "c2 = " + fmt(fit.c2) + " +- " + fmt(fit.c2_stderr));
    }
    struct Mode {
        FitnessRedraw redraw;
        double rho;
        std::uint64_t seed;
        const char* name;
    };
    const std::vector<Mode> modes{{FitnessRedraw::per_season, 0.0, 802, "rho=0"},
                                  {FitnessRedraw::ar1, 0.6, 803, "rho=0.6"},
                                  {FitnessRedraw::persistent, 1.0, 804, "rho=1"}};
    for (const auto& mode : modes) {
        SimulationConfig config;
        config.n_teams = 18;
        config.n_seasons = 30;
        config.fitness_sd = 3.0;
        config.fitness_redraw = mode.redraw;
        config.ar1_rho = mode.rho;
        config.seed = mode.seed;
        const auto league = simulate_league(config);
        const auto cy = seasonal_autocorrelation(league.dataset);
        bool ok = true;
        double worst = 0.0;
        for (std::size_t i = 0; i < cy.lags.size(); ++i) {
            if (cy.lags[i] > 4) break;
            const double target = std::pow(mode.rho, cy.lags[i]);
            const double dev = std::abs(cy.values[i] - target);
            worst = std::max(worst, dev);
            ok = ok && dev <= 0.1;
        }
        gate.check(8, std::string("seasonal autocorrelation matches ") + mode.name, ok,
                   "max |c_y - rho^dn| = " + fmt(worst) + " for dn <= 4");
    }
}

void criterion9(Gate& gate) {
    {  // noise-free recovery to six significant digits
        AutocorrelationCurve curve;
        for (int lag = 1; lag <= 14; ++lag) {
            curve.lags.push_back(lag);
            curve.values.push_back(10.0 + 3.0 * std::exp(-lag / 4.0));
            curve.counts.push_back(1);
            curve.stderrs.push_back(0.0);
        }
        const auto fit = fit_exponential(curve, 14);
        const bool ok = within_rel(fit.c1, 10.0, 1e-6) && within_rel(fit.c2, 3.0, 1e-6) &&
                        within_rel(fit.tau, 4.0, 1e-6);
        gate.check(9, "noise-free (10, 3, 4) recovered to 6 significant digits", ok,
                   fmt(fit.c1) + ", " + fmt(fit.c2) + ", " + fmt(fit.tau));
    }
    {  // noisy calibration over a full season of lags
        rng::SplitMix64 gen(900);
        int hits = 0;
        const int trials = 1000;
        for (int trial = 0; trial < trials; ++trial) {
            AutocorrelationCurve curve;
            for (int lag = 1; lag <= 33; ++lag) {
                curve.lags.push_back(lag);
                curve.values.push_back(10.0 + 3.0 * std::exp(-lag / 4.0) +
                                       0.2 * gen.normal());
                curve.counts.push_back(1);
                curve.stderrs.push_back(0.2);
            }
            const auto fit = fit_exponential(curve, 33);
            if (fit.tau >= 2.5 && fit.tau <= 6.0) ++hits;
        }
        gate.check(9, "noisy tau recovery in [2.5, 6] for >= 95% of 1000 trials",
                   hits >= 950, std::to_string(hits) + "/1000");
    }
}

void criterion10(Gate& gate) {
    {  // slope identity
        SimulationConfig config;
        config.n_teams = 14;
        config.n_seasons = 5;
        config.fitness_sd = 3.5;
        config.home_advantage = 1.2;
        config.seed = 1001;
        const auto league = simulate_league(config);
        const auto slopes = attack_defense_slopes(team_season_totals(league.dataset));
        gate.check(10, "slope_attack - slope_defense = 1",
                   std::abs(slopes.slope_attack - slopes.slope_defense - 1.0) < 1e-9,
                   fmt(slopes.slope_attack) + " - (" + fmt(slopes.slope_defense) + ")");
    }
    {  // c_y(0) normalization
        SimulationConfig config;
        config.n_teams = 10;
        config.n_seasons = 4;
        config.fitness_sd = 2.0;
        config.seed = 1002;
        const auto league = simulate_league(config);
        const auto cy = seasonal_autocorrelation(league.dataset);
        gate.check(10, "c_y(0) = 1 exactly", cy.lags[0] == 0 && cy.values[0] == 1.0);
    }
    {  // mirrored dataset home advantage
        SimulationConfig config;
        config.n_teams = 8;
        config.n_seasons = 1;
        config.fitness_sd = 2.0;
        config.home_advantage = 2.0;
        config.seed = 1003;
        const auto league = simulate_league(config);
        // first half only, then every fixture mirrored onto the second half
        const int t_max = season_profile(league.dataset, "2001").n_match_days;
        std::vector<MatchRecord> mirrored;
        for (const auto& m : league.dataset.matches()) {
            if (m.match_day > t_max / 2) continue;
            mirrored.push_back(m);
            MatchRecord rev = m;
            std::swap(rev.home, rev.away);
            std::swap(rev.goals_home, rev.goals_away);
            rev.match_day = m.match_day + t_max / 2;
            mirrored.push_back(rev);
        }
        const auto ds = LeagueDataset::from_records(std::move(mirrored));
        gate.check(10, "mirrored dataset home advantage = 0",
                   match_statistics(ds).home_advantage == 0.0);
    }
    {  // per-day goal-difference conservation
        SimulationConfig config;
        config.n_teams = 12;
        config.n_seasons = 2;
        config.fitness_sd = 2.5;
        config.home_advantage = 1.4;
        config.seed = 1004;
        const auto league = simulate_league(config);
        std::map<std::pair<std::string, int>, long> sums;
        for (const auto& season : league.dataset.seasons())
            for (const auto& fs : fitness_series(league.dataset, season))
                for (std::size_t i = 0; i < fs.days.size(); ++i)
                    sums[{season, fs.days[i]}] += static_cast<long>(fs.per_match_diff[i]);
        bool ok = true;
        for (const auto& [key, sum] : sums) ok = ok && sum == 0;
        gate.check(10, "per-match-day goal differences sum to 0", ok);
    }
    {  // no lookahead, bit-exact
        SimulationConfig config;
        config.n_teams = 12;
        config.n_seasons = 1;
        config.fitness_sd = 2.0;
        config.home_advantage = 1.0;
        config.seed = 1005;
        const auto league = simulate_league(config);
        const int day = 13;
        const auto full = predict_matchday(league.dataset, "2001", day, {});
        std::vector<MatchRecord> cut;
        for (const auto& m : league.dataset.matches())
            if (m.match_day <= day) cut.push_back(m);
        const auto truncated = LeagueDataset::from_records(std::move(cut));
        const auto partial = predict_matchday(truncated, "2001", day, {});
        bool ok = full.predictions.size() == partial.predictions.size();
        for (std::size_t i = 0; ok && i < full.predictions.size(); ++i)
            ok = full.predictions[i].predicted_diff == partial.predictions[i].predicted_diff;
        gate.check(10, "prediction uses no data from day t onward (bit-exact)", ok);
    }
    {  // simulate -> serialize -> parse round trip
        SimulationConfig config;
        config.n_teams = 18;
        config.n_seasons = 2;
        config.fitness_sd = 3.0;
        config.home_advantage = 1.87;
        config.tier_offset = 6.0;
        config.fitness_redraw = FitnessRedraw::persistent;
        config.seed = 1006;
        const auto league = simulate_league(config);
        const auto text = serialize_dataset(league.dataset);
        const auto reparsed = parse_dataset(text);
        gate.check(10, "seeded simulate/serialize/parse round trip is byte-identical",
                   serialize_dataset(reparsed) == text);
    }
}

}  // namespace

int main() {
    Gate gate;
    try {
        golden_criteria(gate);
        criterion6(gate);
        criterion7(gate);
        criterion8(gate);
        criterion9(gate);
        criterion10(gate);
    } catch (const std::exception& e) {
        std::cerr << "acceptance suite aborted: " << e.what() << '\n';
        return 2;
    }
    std::cout << "acceptance: " << gate.passed << " passed, " << gate.failed
              << " failed, " << gate.skipped << " skipped\n";
    return gate.failed == 0 ? 0 : 1;
}
