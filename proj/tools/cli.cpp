#include "cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "leaguestat/dataset.hpp"
#include "leaguestat/descriptive.hpp"
#include "leaguestat/errors.hpp"
#include "leaguestat/fitness.hpp"
#include "leaguestat/predict.hpp"
#include "leaguestat/simulate.hpp"
#include "leaguestat/structure.hpp"
#include "leaguestat/variance.hpp"
#include "leaguestat/version.hpp"

namespace leaguestat::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct CommonOptions {
    std::string input;
    std::string seasons_range;  // "A..B", "A.." or "..B"
    int tier = 0;               // 0 keeps all tiers
    std::string format = "json";
    std::string out_dir;
    bool neutralize = false;
    double elite_threshold = 150.0;
    std::string home_adv = "season";
    std::uint64_t seed = 0;
    int fit_max_lag = 14;
    bool no_draw_calls = false;
    bool tiled_windows = false;
    bool weighted_regression = false;
    int t_max = 17;
};

void add_common_flags(CLI::App* cmd, CommonOptions& opt, bool needs_input) {
    auto* in = cmd->add_option("--input", opt.input,
                               "input CSV ('-' for stdin): season,match_day,home,away,"
                               "goals_home,goals_away[,tier]");
    if (needs_input) in->required();
    cmd->add_option("--seasons", opt.seasons_range,
                    "season range A..B (inclusive; either side open)");
    cmd->add_option("--tier", opt.tier, "restrict to one league tier (default: all)");
    cmd->add_option("--format", opt.format, "stdout format: json|csv")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--out", opt.out_dir, "directory for report files");
}

std::string read_stream_text(std::istream& in) {
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct LoadedInput {
    LeagueDataset dataset;
    std::string path;
    std::uint64_t digest = 0;
};

std::uint64_t fnv1a64(std::string_view text) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

LoadedInput load_input(const CommonOptions& opt) {
    std::string text;
    if (opt.input == "-") {
        text = read_stream_text(std::cin);
    } else {
        std::ifstream in(opt.input);
        if (!in) throw ValidationError("cannot open '" + opt.input + "'");
        text = read_stream_text(in);
    }
    LoadedInput li{parse_dataset(text), opt.input, fnv1a64(text)};
    if (!opt.seasons_range.empty()) {
        const auto sep = opt.seasons_range.find("..");
        if (sep == std::string::npos)
            throw ValidationError("--seasons wants A..B, got '" + opt.seasons_range + "'");
        li.dataset = filter_seasons(li.dataset, opt.seasons_range.substr(0, sep),
                                    opt.seasons_range.substr(sep + 2));
    }
    if (opt.tier > 0) {
        std::vector<MatchRecord> records;
        for (const auto& m : li.dataset.matches())
            if (m.tier == opt.tier) records.push_back(m);
        if (records.empty())
            throw ValidationError("no matches in tier " + std::to_string(opt.tier));
        li.dataset = LeagueDataset::from_records(std::move(records));
    }
    return li;
}

json meta_json(const std::string& command, const LoadedInput& input) {
    json j;
    j["schema"] = 1;
    j["tool"] = "leaguestat";
    j["version"] = kVersion;
    j["command"] = command;
    j["input"] = {{"path", input.path},
                  {"digest_fnv1a64", hex64(input.digest)},
                  {"matches", input.dataset.size()},
                  {"seasons", input.dataset.seasons()}};
    return j;
}

void write_file(const fs::path& path, const std::string& text,
                std::vector<std::string>* files) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write '" + path.string() + "'");
    out << text;
    if (files) files->push_back(path.filename().string());
}

std::string csv_line(std::initializer_list<std::string> fields) {
    std::string line;
    for (const auto& f : fields) {
        if (!line.empty()) line += ',';
        line += f;
    }
    line += '\n';
    return line;
}

std::string num(double v) {
    json j = v;
    return j.dump();  // shortest round-trip representation
}

// ----- describe ------------------------------------------------------------

json stats_json(const MatchStatistics& s) {
    return json{{"n_matches", s.n_matches},
                {"mean_total", s.mean_total},
                {"mean_home", s.mean_home},
                {"mean_away", s.mean_away},
                {"var_total", s.var_total},
                {"var_home", s.var_home},
                {"var_away", s.var_away},
                {"home_advantage", s.home_advantage},
                {"p_home_win", s.p_home_win},
                {"p_away_win", s.p_away_win},
                {"p_draw", s.p_draw}};
}

json histogram_json(const GoalHistogram& h) {
    json counts = json::object();
    for (const auto& [goals, count] : h.counts) counts[std::to_string(goals)] = count;
    return json{{"counts", std::move(counts)},
                {"total_count", h.total_count},
                {"min_goals", h.min_goals},
                {"max_goals", h.max_goals},
                {"fitted_mean", h.fitted_mean},
                {"fitted_variance", h.fitted_variance}};
}

json match_json(const MatchRecord& m) {
    return json{{"season", m.season},   {"match_day", m.match_day},
                {"home", m.home.name()}, {"away", m.away.name()},
                {"goals_home", m.goals_home}, {"goals_away", m.goals_away},
                {"tier", m.tier}};
}

json series_json(const std::vector<std::pair<std::string, double>>& series) {
    json arr = json::array();
    for (const auto& [season, value] : series)
        arr.push_back(json{{"season", season}, {"value", value}});
    return arr;
}

std::string series_csv(const std::vector<std::pair<std::string, double>>& series,
                       const std::string& name) {
    std::string out = csv_line({"season", name});
    for (const auto& [season, value] : series) out += csv_line({season, num(value)});
    return out;
}

json describe_json(const LeagueDataset& ds) {
    json j;
    j["statistics"] = stats_json(match_statistics(ds));
    j["histogram"] = {{"pooled", histogram_json(goal_histogram(ds, Side::pooled))},
                      {"home", histogram_json(goal_histogram(ds, Side::home))},
                      {"away", histogram_json(goal_histogram(ds, Side::away))}};
    j["per_season"] = {
        {"total_goals", series_json(per_season_series(ds, SeasonQuantity::total_goals))},
        {"home_advantage",
         series_json(per_season_series(ds, SeasonQuantity::home_advantage))},
        {"positive_gd_share",
         series_json(per_season_series(ds, SeasonQuantity::positive_gd_share))},
        {"positive_gd_goals_share",
         series_json(per_season_series(ds, SeasonQuantity::positive_gd_goals_share))}};
    const auto shares = team_share_report(ds);
    j["team_shares"] = {
        {"positive_gd_share",
         {{"season_mean", shares.positive_gd_share_season_mean},
          {"pooled", shares.positive_gd_share_pooled}}},
        {"positive_gd_goals_share",
         {{"season_mean", shares.positive_gd_goals_share_season_mean},
          {"pooled", shares.positive_gd_goals_share_pooled}}}};
    const auto ex = extreme_matches(ds);
    auto list = [](const std::vector<MatchRecord>& ms) {
        json arr = json::array();
        for (const auto& m : ms) arr.push_back(match_json(m));
        return arr;
    };
    j["extremes"] = {{"max_total", ex.max_total},
                     {"max_total_matches", list(ex.max_total_matches)},
                     {"min_total", ex.min_total},
                     {"min_total_matches", list(ex.min_total_matches)},
                     {"max_abs_difference", ex.max_abs_difference},
                     {"max_difference_matches", list(ex.max_difference_matches)}};
    return j;
}

void describe_files(const LeagueDataset& ds, const fs::path& dir,
                    std::vector<std::string>* files) {
    const auto hist = goal_histogram(ds, Side::pooled);
    std::string csv = csv_line({"goals", "count"});
    for (const auto& [goals, count] : hist.counts)
        csv += csv_line({std::to_string(goals), std::to_string(count)});
    write_file(dir / "goal_histogram.csv", csv, files);
    write_file(dir / "per_season_total_goals.csv",
               series_csv(per_season_series(ds, SeasonQuantity::total_goals), "total_goals"),
               files);
    write_file(
        dir / "per_season_home_advantage.csv",
        series_csv(per_season_series(ds, SeasonQuantity::home_advantage), "home_advantage"),
        files);
}

// ----- fitness ---------------------------------------------------------------

json fitness_json(const LeagueDataset& ds, const CommonOptions& opt) {
    json j;
    const auto hc = half_season_correlation(ds);
    j["half_season"] = {{"r", hc.r}, {"r2", hc.r2}, {"n", hc.n}};
    AutocorrelationOptions aopt;
    aopt.neutralize = opt.neutralize;
    const auto curve = matchday_autocorrelation(ds, aopt);
    j["autocorrelation"] = {{"lags", curve.lags},
                            {"values", curve.values},
                            {"counts", curve.counts},
                            {"stderrs", curve.stderrs},
                            {"mean_level", curve.mean_level},
                            {"mean_level_stderr", curve.mean_level_stderr},
                            {"neutralized", opt.neutralize}};
    const auto fit = fit_exponential(curve, opt.fit_max_lag);
    j["exponential_fit"] = {{"c1", fit.c1},
                            {"c2", fit.c2},
                            {"tau", fit.tau},
                            {"c1_stderr", fit.c1_stderr},
                            {"c2_stderr", fit.c2_stderr},
                            {"tau_stderr", fit.tau_stderr},
                            {"tau_identifiable", fit.tau_identifiable},
                            {"lag_min", fit.lag_min},
                            {"lag_max", fit.lag_max},
                            {"sse", fit.sse}};
    const auto cy = seasonal_autocorrelation(ds);
    j["seasonal_autocorrelation"] = {
        {"lags", cy.lags}, {"values", cy.values}, {"pair_counts", cy.pair_counts}};
    return j;
}

std::string autocorrelation_csv(const AutocorrelationCurve& curve) {
    std::string out = csv_line({"lag", "value", "count", "stderr"});
    for (std::size_t i = 0; i < curve.lags.size(); ++i)
        out += csv_line({std::to_string(curve.lags[i]), num(curve.values[i]),
                         std::to_string(curve.counts[i]), num(curve.stderrs[i])});
    return out;
}

void fitness_files(const LeagueDataset& ds, const CommonOptions& opt, const fs::path& dir,
                   std::vector<std::string>* files) {
    AutocorrelationOptions aopt;
    aopt.neutralize = opt.neutralize;
    write_file(dir / "matchday_autocorrelation.csv",
               autocorrelation_csv(matchday_autocorrelation(ds, aopt)), files);
    const auto cy = seasonal_autocorrelation(ds);
    std::string csv = csv_line({"lag", "value", "pairs"});
    for (std::size_t i = 0; i < cy.lags.size(); ++i)
        csv += csv_line({std::to_string(cy.lags[i]), num(cy.values[i]),
                         std::to_string(cy.pair_counts[i])});
    write_file(dir / "seasonal_autocorrelation.csv", csv, files);
    const auto hc = half_season_correlation(ds);
    std::string scatter = csv_line({"first_half", "second_half"});
    for (const auto& [a, b] : hc.points) scatter += csv_line({num(a), num(b)});
    write_file(dir / "half_season_scatter.csv", scatter, files);
}

// ----- variance --------------------------------------------------------------

const char* quantity_name(VarQuantity q) {
    switch (q) {
        case VarQuantity::goal_difference: return "goal_difference";
        case VarQuantity::goals_for: return "goals_for";
        case VarQuantity::goals_against: return "goals_against";
    }
    return "?";
}

json decomposition_json(const VarianceDecomposition& d) {
    json points = json::array();
    for (const auto& p : d.points)
        points.push_back(
            json{{"t", p.t}, {"variance", p.variance}, {"windows", p.windows}});
    return json{{"quantity", quantity_name(d.quantity)},
                {"sigma2", d.sigma2_infinity},
                {"A", d.A},
                {"r2", d.r2},
                {"points", std::move(points)}};
}

std::string decomposition_csv(const VarianceDecomposition& d) {
    std::string out = csv_line({"t", "variance", "windows"});
    for (const auto& p : d.points)
        out += csv_line({std::to_string(p.t), num(p.variance), std::to_string(p.windows)});
    return out;
}

struct VarianceResults {
    VarianceDecomposition dg, gplus, gminus;
    StochasticInfluenceCurve influence;
    TransferComparison transfer;
    BinomialCheck binomial;
    double mean_goals = 0.0;
};

int usable_t_max(const std::vector<NeutralizedSeries>& series, int requested) {
    std::size_t longest = 0;
    for (const auto& s : series) longest = std::max(longest, s.matches.size());
    return std::max(2, std::min(requested, static_cast<int>(longest)));
}

VarianceResults variance_results(const LeagueDataset& ds, const CommonOptions& opt) {
    const auto series = neutralize(ds);
    DecompositionOptions dopt;
    dopt.t_max = usable_t_max(series, opt.t_max);
    dopt.overlapping = !opt.tiled_windows;
    dopt.weight_by_windows = opt.weighted_regression;
    VarianceResults r;
    r.dg = variance_decomposition(series, VarQuantity::goal_difference, dopt);
    r.gplus = variance_decomposition(series, VarQuantity::goals_for, dopt);
    r.gminus = variance_decomposition(series, VarQuantity::goals_against, dopt);
    r.influence = stochastic_influence_curve(r.dg);
    r.mean_goals = match_statistics(ds).mean_total;
    const SoccerReference ref;
    r.transfer = transfer_comparison(r.dg, ref.sigma2_dg, ref.A_dg, r.mean_goals,
                                     ref.mean_goals);
    r.binomial = binomial_check(r.dg, r.mean_goals);
    return r;
}

json variance_json(const VarianceResults& r) {
    json j;
    j["decompositions"] = {{"goal_difference", decomposition_json(r.dg)},
                           {"goals_for", decomposition_json(r.gplus)},
                           {"goals_against", decomposition_json(r.gminus)}};
    j["stochastic_influence"] = {
        {"t", r.influence.t}, {"share", r.influence.share}, {"t_star", r.influence.t_star}};
    const SoccerReference ref;
    j["transfer"] = {{"reference",
                      {{"source", "literature constants"},
                       {"sigma2_dg", ref.sigma2_dg},
                       {"A_dg", ref.A_dg},
                       {"mean_goals", ref.mean_goals}}},
                     {"goals_ratio", r.transfer.goals_ratio},
                     {"transferred_A", r.transfer.transferred_A},
                     {"transferred_sigma2", r.transfer.transferred_sigma2},
                     {"ratio_this_league", r.transfer.ratio_this_league},
                     {"ratio_reference", r.transfer.ratio_reference}};
    j["binomial_check"] = {{"ratio_A_over_mean_goals", r.binomial.ratio},
                           {"reference", r.binomial.reference},
                           {"implied_efficiency", r.binomial.implied_efficiency},
                           {"mean_goals", r.mean_goals}};
    j["attack_defense_variance_ratio"] = variance_ratio_attack_defense(r.gplus, r.gminus);
    return j;
}

void variance_files(const VarianceResults& r, const fs::path& dir,
                    std::vector<std::string>* files) {
    write_file(dir / "variance_points_goal_difference.csv", decomposition_csv(r.dg), files);
    write_file(dir / "variance_points_goals_for.csv", decomposition_csv(r.gplus), files);
    write_file(dir / "variance_points_goals_against.csv", decomposition_csv(r.gminus),
               files);
    std::string csv = csv_line({"t", "share"});
    for (std::size_t i = 0; i < r.influence.t.size(); ++i)
        csv += csv_line({std::to_string(r.influence.t[i]), num(r.influence.share[i])});
    write_file(dir / "stochastic_influence.csv", csv, files);
}

// ----- predict ---------------------------------------------------------------

PredictOptions predict_options(const CommonOptions& opt) {
    PredictOptions p;
    p.home_advantage = HomeAdvStrategy::parse(opt.home_adv);
    p.draw_calls = !opt.no_draw_calls;
    return p;
}

json predict_json(const PredictionEvaluation& eval, const PredictOptions& popt) {
    json days = json::array();
    for (const auto& row : eval.per_matchday)
        days.push_back(json{{"match_day", row.match_day},
                            {"error_variance", row.error_variance},
                            {"accuracy", row.accuracy},
                            {"n", row.n}});
    return json{{"strategy", popt.home_advantage.describe()},
                {"draw_calls", popt.draw_calls},
                {"per_matchday", std::move(days)},
                {"overall_accuracy", eval.overall_accuracy},
                {"n_predictions", eval.n_predictions},
                {"n_correct", eval.n_correct},
                {"warnings", eval.warnings}};
}

std::string predict_csv(const PredictionEvaluation& eval) {
    std::string out = csv_line({"t", "error_variance", "accuracy", "n"});
    for (const auto& row : eval.per_matchday)
        out += csv_line({std::to_string(row.match_day), num(row.error_variance),
                         num(row.accuracy), std::to_string(row.n)});
    return out;
}

// ----- structure -------------------------------------------------------------

json structure_json(const LeagueDataset& ds, const CommonOptions& opt) {
    json j;
    const auto totals = team_season_totals(ds, opt.elite_threshold);
    const auto slopes = attack_defense_slopes(totals, opt.elite_threshold);
    j["slopes"] = {{"attack", slopes.slope_attack},
                   {"defense", slopes.slope_defense},
                   {"intercept_attack", slopes.intercept_attack},
                   {"intercept_defense", slopes.intercept_defense},
                   {"n_regular", slopes.n_regular},
                   {"n_elite", slopes.elite_points.size()},
                   {"elite_threshold", opt.elite_threshold}};
    const auto corr = split_correlations(totals);
    auto group = [](const GroupCorrelations& g) {
        return json{{"corr_diff_for", g.corr_diff_for},
                    {"corr_diff_against", g.corr_diff_against},
                    {"corr_for_against", g.corr_for_against},
                    {"n", g.n},
                    {"valid", g.valid}};
    };
    j["split_correlations"] = {{"non_negative", group(corr.non_negative)},
                               {"negative", group(corr.negative)}};
    const auto series = neutralize(ds);
    DecompositionOptions dopt;
    dopt.t_max = usable_t_max(series, opt.t_max);
    const auto gplus = variance_decomposition(series, VarQuantity::goals_for, dopt);
    const auto gminus = variance_decomposition(series, VarQuantity::goals_against, dopt);
    j["attack_defense_variance_ratio"] = variance_ratio_attack_defense(gplus, gminus);
    try {
        const auto promo = promotion_analysis(ds);
        json pairs = json::array();
        for (const auto& p : promo.pairs)
            pairs.push_back(json{{"team", p.team.name()},
                                 {"season_second_tier", p.season_second_tier},
                                 {"season_first_tier", p.season_first_tier},
                                 {"delta_g_second", p.delta_g_second},
                                 {"delta_g_first", p.delta_g_first}});
        j["promotion"] = {{"slope", promo.slope},
                          {"intercept", promo.intercept},
                          {"pairs", std::move(pairs)}};
    } catch (const ValidationError& e) {
        j["promotion"] = {{"unavailable", e.what()}};
    }
    return j;
}

void structure_files(const LeagueDataset& ds, const CommonOptions& opt, const fs::path& dir,
                     std::vector<std::string>* files) {
    const auto totals = team_season_totals(ds, opt.elite_threshold);
    std::string csv = csv_line(
        {"team", "season", "tier", "goal_difference", "goals_for", "goals_against",
         "elite"});
    for (const auto& t : totals)
        csv += csv_line({t.team.name(), t.season, std::to_string(t.tier),
                         std::to_string(t.goal_difference), std::to_string(t.goals_for),
                         std::to_string(t.goals_against), t.elite ? "1" : "0"});
    write_file(dir / "attack_defense_scatter.csv", csv, files);
    try {
        const auto promo = promotion_analysis(ds);
        std::string pcsv = csv_line(
            {"team", "season_second_tier", "season_first_tier", "delta_g_second",
             "delta_g_first"});
        for (const auto& p : promo.pairs)
            pcsv += csv_line({p.team.name(), p.season_second_tier, p.season_first_tier,
                              std::to_string(p.delta_g_second),
                              std::to_string(p.delta_g_first)});
        write_file(dir / "promotion_pairs.csv", pcsv, files);
    } catch (const ValidationError&) {
        // no tier-2 data; nothing to export
    }
}

// ----- output plumbing -------------------------------------------------------

void emit(const CommonOptions& opt, const std::string& command, const LoadedInput& input,
          json results, const std::string& primary_csv,
          const std::function<void(const fs::path&, std::vector<std::string>*)>& file_writer) {
    if (!opt.out_dir.empty()) {
        fs::create_directories(opt.out_dir);
        std::vector<std::string> files;
        if (file_writer) file_writer(opt.out_dir, &files);
        json j = meta_json(command, input);
        j["results"] = std::move(results);
        j["files"] = files;
        write_file(fs::path(opt.out_dir) / (command + ".json"), j.dump(2) + "\n", nullptr);
        std::cout << "wrote " << (fs::path(opt.out_dir) / (command + ".json")).string()
                  << '\n';
        return;
    }
    if (opt.format == "csv") {
        std::cout << primary_csv;
        return;
    }
    json j = meta_json(command, input);
    j["results"] = std::move(results);
    std::cout << j.dump(2) << '\n';
}

// ----- simulate --------------------------------------------------------------

struct SimulateOptions {
    SimulationConfig config;
    std::string redraw = "per-season";
    std::string out_dir;
};

void run_simulate(SimulateOptions& opt) {
    if (opt.redraw == "per-season") {
        opt.config.fitness_redraw = FitnessRedraw::per_season;
    } else if (opt.redraw == "persistent") {
        opt.config.fitness_redraw = FitnessRedraw::persistent;
    } else if (opt.redraw.rfind("ar1:", 0) == 0) {
        opt.config.fitness_redraw = FitnessRedraw::ar1;
        opt.config.ar1_rho = std::stod(opt.redraw.substr(4));
    } else {
        throw ValidationError("--redraw wants per-season|persistent|ar1:RHO");
    }
    const auto league = simulate_league(opt.config);
    const auto csv = serialize_dataset(league.dataset);
    if (opt.out_dir.empty()) {
        std::cout << csv;
        return;
    }
    fs::create_directories(opt.out_dir);
    write_file(fs::path(opt.out_dir) / "league.csv", csv, nullptr);
    write_file(fs::path(opt.out_dir) / "ground_truth.json",
               ground_truth_json(league.truth), nullptr);
    std::cout << "wrote " << (fs::path(opt.out_dir) / "league.csv").string() << " and "
              << (fs::path(opt.out_dir) / "ground_truth.json").string() << '\n';
}

}  // namespace

int run(int argc, char** argv) {
    CLI::App app{"model-free statistics for round-robin league match results"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kVersion));

    CommonOptions opt;
    SimulateOptions sim;

    auto* describe = app.add_subcommand(
        "describe", "per-match means/variances, outcome probabilities, home advantage, "
                    "goal histogram, extremes");
    add_common_flags(describe, opt, true);

    auto* fitness = app.add_subcommand(
        "fitness", "half-season correlation, match-day autocorrelation with exponential "
                   "fit, seasonal autocorrelation");
    add_common_flags(fitness, opt, true);
    fitness->add_flag("--neutralize", opt.neutralize,
                      "subtract the seasonal home advantage before correlating");
    fitness->add_option("--max-lag", opt.fit_max_lag, "largest lag used by the fit")
        ->default_val(14);

    auto* variance = app.add_subcommand(
        "variance", "window-variance decomposition, stochastic influence curve, "
                    "cross-sport transfer, Binomial check");
    add_common_flags(variance, opt, true);
    variance->add_option("--t-max", opt.t_max, "largest window length")->default_val(17);
    variance->add_flag("--tiled", opt.tiled_windows, "tile windows instead of overlapping");
    variance->add_flag("--weighted", opt.weighted_regression,
                       "weight regression points by window count");

    auto* predict = app.add_subcommand(
        "predict", "rolling match-outcome prediction from running goal differences");
    add_common_flags(predict, opt, true);
    predict->add_option("--home-adv", opt.home_adv,
                        "home-advantage strategy: season|prior|constant:X");
    predict->add_flag("--no-draw-calls", opt.no_draw_calls,
                      "always call home or away, never a draw");

    auto* structure = app.add_subcommand(
        "structure", "attack/defense slopes and correlations, promotion regression");
    add_common_flags(structure, opt, true);
    structure->add_option("--elite-threshold", opt.elite_threshold,
                          "goal-difference cutoff for elite team-seasons")
        ->default_val(150.0);

    auto* simulate = app.add_subcommand(
        "simulate", "generate a synthetic league with known ground truth");
    simulate->add_option("--teams", sim.config.n_teams, "teams per division")
        ->default_val(18);
    simulate->add_option("--n-seasons", sim.config.n_seasons, "number of seasons")
        ->default_val(1);
    simulate->add_option("--attacks", sim.config.attacks_per_team,
                         "Binomial attacks per team and match")
        ->default_val(55);
    simulate->add_option("--efficiency", sim.config.base_efficiency,
                         "base goal efficiency p0")
        ->default_val(0.5);
    simulate->add_option("--fitness-sd", sim.config.fitness_sd,
                         "team fitness spread (goals/match)")
        ->default_val(0.0);
    simulate->add_option("--redraw", sim.redraw,
                         "fitness evolution: per-season|persistent|ar1:RHO");
    simulate->add_option("--home-advantage", sim.config.home_advantage,
                         "home advantage (goals/match)")
        ->default_val(0.0);
    simulate->add_option("--tier-offset", sim.config.tier_offset,
                         "fitness gap of a simulated second tier (goals/match)")
        ->default_val(0.0);
    simulate->add_option("--promoted", sim.config.promoted_per_season,
                         "teams promoted per season when a second tier exists")
        ->default_val(2);
    simulate->add_flag("--clamp", sim.config.allow_clamping,
                       "clamp out-of-range efficiencies instead of failing");
    simulate->add_option("--seed", sim.config.seed, "64-bit RNG seed")->default_val(0);
    simulate->add_option("--first-season", sim.config.first_season,
                         "integer label of the first season");
    simulate->add_option("--out", sim.out_dir,
                         "directory for league.csv and ground_truth.json "
                         "(default: CSV to stdout)");

    auto* report = app.add_subcommand("report", "run every analysis into one bundle");
    add_common_flags(report, opt, true);
    report->add_flag("--neutralize", opt.neutralize,
                     "subtract the seasonal home advantage in the autocorrelation");
    report->add_option("--max-lag", opt.fit_max_lag, "largest lag used by the fit")
        ->default_val(14);
    report->add_option("--home-adv", opt.home_adv,
                       "home-advantage strategy: season|prior|constant:X");
    report->add_option("--elite-threshold", opt.elite_threshold,
                       "goal-difference cutoff for elite team-seasons")
        ->default_val(150.0);
    report->add_option("--t-max", opt.t_max, "largest window length")->default_val(17);

    std::vector<char*> raw;
    raw.reserve(static_cast<std::size_t>(argc));
    for (int i = 0; i < argc; ++i) raw.push_back(argv[i]);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;  // usage problems map to exit 1
    }

    try {
        if (describe->parsed()) {
            auto input = load_input(opt);
            emit(opt, "describe", input, describe_json(input.dataset), [&] {
                std::string csv = csv_line({"key", "value"});
                const auto s = match_statistics(input.dataset);
                csv += csv_line({"mean_total", num(s.mean_total)});
                csv += csv_line({"mean_home", num(s.mean_home)});
                csv += csv_line({"mean_away", num(s.mean_away)});
                csv += csv_line({"var_total", num(s.var_total)});
                csv += csv_line({"var_home", num(s.var_home)});
                csv += csv_line({"var_away", num(s.var_away)});
                csv += csv_line({"home_advantage", num(s.home_advantage)});
                csv += csv_line({"p_home_win", num(s.p_home_win)});
                csv += csv_line({"p_away_win", num(s.p_away_win)});
                csv += csv_line({"p_draw", num(s.p_draw)});
                return csv;
            }(), [&](const fs::path& dir, std::vector<std::string>* files) {
                describe_files(input.dataset, dir, files);
            });
        } else if (fitness->parsed()) {
            auto input = load_input(opt);
            AutocorrelationOptions aopt;
            aopt.neutralize = opt.neutralize;
            emit(opt, "fitness", input, fitness_json(input.dataset, opt),
                 autocorrelation_csv(matchday_autocorrelation(input.dataset, aopt)),
                 [&](const fs::path& dir, std::vector<std::string>* files) {
                     fitness_files(input.dataset, opt, dir, files);
                 });
        } else if (variance->parsed()) {
            auto input = load_input(opt);
            const auto results = variance_results(input.dataset, opt);
            emit(opt, "variance", input, variance_json(results),
                 decomposition_csv(results.dg),
                 [&](const fs::path& dir, std::vector<std::string>* files) {
                     variance_files(results, dir, files);
                 });
        } else if (predict->parsed()) {
            auto input = load_input(opt);
            const auto popt = predict_options(opt);
            const auto eval = evaluate_predictions(input.dataset, popt);
            emit(opt, "predict", input, predict_json(eval, popt), predict_csv(eval),
                 [&](const fs::path& dir, std::vector<std::string>* files) {
                     write_file(dir / "prediction_per_day.csv", predict_csv(eval), files);
                 });
        } else if (structure->parsed()) {
            auto input = load_input(opt);
            emit(opt, "structure", input, structure_json(input.dataset, opt), [&] {
                const auto totals = team_season_totals(input.dataset, opt.elite_threshold);
                std::string csv = csv_line({"team", "season", "tier", "goal_difference",
                                            "goals_for", "goals_against", "elite"});
                for (const auto& t : totals)
                    csv += csv_line({t.team.name(), t.season, std::to_string(t.tier),
                                     std::to_string(t.goal_difference),
                                     std::to_string(t.goals_for),
                                     std::to_string(t.goals_against), t.elite ? "1" : "0"});
                return csv;
            }(), [&](const fs::path& dir, std::vector<std::string>* files) {
                structure_files(input.dataset, opt, dir, files);
            });
        } else if (simulate->parsed()) {
            run_simulate(sim);
        } else if (report->parsed()) {
            if (opt.out_dir.empty())
                throw ValidationError("report requires --out DIR");
            auto input = load_input(opt);
            fs::create_directories(opt.out_dir);
            std::vector<std::string> files;
            const fs::path dir = opt.out_dir;
            describe_files(input.dataset, dir, &files);
            fitness_files(input.dataset, opt, dir, &files);
            const auto vres = variance_results(input.dataset, opt);
            variance_files(vres, dir, &files);
            const auto popt = predict_options(opt);
            const auto eval = evaluate_predictions(input.dataset, popt);
            write_file(dir / "prediction_per_day.csv", predict_csv(eval), &files);
            structure_files(input.dataset, opt, dir, &files);

            json j = meta_json("report", input);
            json args = json::array();
            for (int i = 1; i < static_cast<int>(raw.size()); ++i) args.push_back(raw[i]);
            j["arguments"] = std::move(args);
            j["results"] = {{"describe", describe_json(input.dataset)},
                            {"fitness", fitness_json(input.dataset, opt)},
                            {"variance", variance_json(vres)},
                            {"predict", predict_json(eval, popt)},
                            {"structure", structure_json(input.dataset, opt)}};
            j["files"] = files;
            write_file(dir / "report.json", j.dump(2) + "\n", nullptr);
            std::cout << "wrote " << (dir / "report.json").string() << '\n';
        }
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}

int run(const std::vector<std::string>& args) {
    std::vector<std::string> storage;
    storage.reserve(args.size() + 1);
    storage.push_back("leaguestat");
    for (const auto& a : args) storage.push_back(a);
    std::vector<char*> argv;
    argv.reserve(storage.size());
    for (auto& s : storage) argv.push_back(s.data());
    return run(static_cast<int>(argv.size()), argv.data());
}

}  // namespace leaguestat::cli
