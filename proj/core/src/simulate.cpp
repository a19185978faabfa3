#include "leaguestat/simulate.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <numeric>

#include <nlohmann/json.hpp>

#include "leaguestat/errors.hpp"
#include "leaguestat/rng.hpp"

namespace leaguestat {

namespace {

// Disjoint stream namespaces under the master seed.
constexpr std::uint64_t kFitnessTag = 0xF17;
constexpr std::uint64_t kMatchTag = 0x3A7C4;

std::string club_name(int index) {
    std::string num = std::to_string(index + 1);
    if (num.size() < 2) num.insert(num.begin(), '0');
    return "club " + num;
}

void validate(const SimulationConfig& c) {
    if (c.n_teams < 2) throw ValidationError("simulate: need at least 2 teams");
    if (c.n_seasons < 1) throw ValidationError("simulate: need at least 1 season");
    if (c.attacks_per_team < 1) throw ValidationError("simulate: attacks_per_team >= 1");
    if (c.base_efficiency < 0.0 || c.base_efficiency > 1.0)
        throw ValidationError("simulate: base efficiency outside [0, 1]");
    if (c.fitness_sd < 0.0) throw ValidationError("simulate: negative fitness sd");
    if (c.fitness_redraw == FitnessRedraw::ar1 && (c.ar1_rho < 0.0 || c.ar1_rho > 1.0))
        throw ValidationError("simulate: AR(1) coefficient outside [0, 1]");
    if (c.team_fitness && static_cast<int>(c.team_fitness->size()) != c.n_teams)
        throw ValidationError("simulate: team_fitness size must equal n_teams");
    if (c.tier_offset != 0.0 &&
        (c.promoted_per_season < 1 || c.promoted_per_season >= c.n_teams))
        throw ValidationError("simulate: promoted_per_season must be in [1, n_teams)");
    long first = 0;
    auto [p, ec] = std::from_chars(c.first_season.data(),
                                   c.first_season.data() + c.first_season.size(), first);
    if (ec != std::errc() || p != c.first_season.data() + c.first_season.size())
        throw ValidationError("simulate: first_season must be an integer label");
}

struct Team {
    std::string name;
    double fitness = 0.0;
};

double tier_mean(const SimulationConfig& c, int tier) {
    return tier == 2 ? -c.tier_offset : 0.0;
}

void draw_fitness(std::vector<Team>& teams, const SimulationConfig& c, int tier,
                  int season, bool initial) {
    const double mu = tier_mean(c, tier);
    if (initial && tier == 1 && c.team_fitness) {
        for (int i = 0; i < c.n_teams; ++i) teams[i].fitness = (*c.team_fitness)[i];
        return;
    }
    rng::SplitMix64 gen(rng::match_stream(c.seed, kFitnessTag,
                                          static_cast<std::uint64_t>(tier),
                                          static_cast<std::uint64_t>(season), 0));
    switch (c.fitness_redraw) {
        case FitnessRedraw::per_season:
            for (auto& t : teams) t.fitness = mu + c.fitness_sd * gen.normal();
            break;
        case FitnessRedraw::persistent:
            if (initial)
                for (auto& t : teams) t.fitness = mu + c.fitness_sd * gen.normal();
            break;
        case FitnessRedraw::ar1:
            if (initial) {
                for (auto& t : teams) t.fitness = mu + c.fitness_sd * gen.normal();
            } else {
                const double rho = c.ar1_rho;
                const double innov = std::sqrt(std::max(0.0, 1.0 - rho * rho));
                for (auto& t : teams)
                    t.fitness = mu + rho * (t.fitness - mu) +
                                innov * c.fitness_sd * gen.normal();
            }
            break;
    }
}

}  // namespace

std::vector<std::vector<std::pair<int, int>>> schedule_round_robin(int n_teams) {
    if (n_teams < 2) throw ValidationError("round robin needs at least 2 teams");
    const bool bye = n_teams % 2 != 0;
    const int n = bye ? n_teams + 1 : n_teams;  // index n_teams is the bye slot

    std::vector<int> rot(n - 1);
    std::iota(rot.begin(), rot.end(), 0);
    std::vector<std::vector<std::pair<int, int>>> days;
    for (int r = 0; r < n - 1; ++r) {
        std::vector<std::pair<int, int>> day;
        const int fixed = n - 1;
        if (r % 2 == 0)
            day.emplace_back(rot[0], fixed);
        else
            day.emplace_back(fixed, rot[0]);
        for (int k = 1; k < n / 2; ++k) {
            const int x = rot[k];
            const int y = rot[n - 1 - k];
            if (k % 2 == 0)
                day.emplace_back(x, y);
            else
                day.emplace_back(y, x);
        }
        if (bye) {
            std::erase_if(day, [&](const auto& p) {
                return p.first == n_teams || p.second == n_teams;
            });
        }
        days.push_back(std::move(day));
        std::rotate(rot.rbegin(), rot.rbegin() + 1, rot.rend());
    }
    const int first_half = static_cast<int>(days.size());
    for (int r = 0; r < first_half; ++r) {
        std::vector<std::pair<int, int>> mirrored;
        for (const auto& [h, a] : days[r]) mirrored.emplace_back(a, h);
        days.push_back(std::move(mirrored));
    }
    return days;
}

SimulatedLeague simulate_league(const SimulationConfig& config) {
    validate(config);
    const bool tiered = config.tier_offset != 0.0;
    const auto schedule = schedule_round_robin(config.n_teams);
    const double na = config.attacks_per_team;

    std::vector<std::vector<Team>> tiers;  // [0] = tier 1, [1] = tier 2 when present
    {
        std::vector<Team> t1(config.n_teams);
        for (int i = 0; i < config.n_teams; ++i) t1[i].name = club_name(i);
        tiers.push_back(std::move(t1));
        if (tiered) {
            std::vector<Team> t2(config.n_teams);
            for (int i = 0; i < config.n_teams; ++i)
                t2[i].name = club_name(config.n_teams + i);
            tiers.push_back(std::move(t2));
        }
    }

    GroundTruth truth;
    truth.rng_algorithm = rng::kAlgorithm;
    truth.config = config;
    truth.implied_A = 2.0 * na * config.base_efficiency * (1.0 - config.base_efficiency);
    truth.implied_decomposition_slope =
        truth.implied_A + config.fitness_sd * config.fitness_sd;

    std::vector<MatchRecord> records;
    const long first_label = std::stol(config.first_season);

    for (int season = 0; season < config.n_seasons; ++season) {
        const std::string label = std::to_string(first_label + season);
        for (std::size_t ti = 0; ti < tiers.size(); ++ti)
            draw_fitness(tiers[ti], config, static_cast<int>(ti) + 1, season,
                         season == 0);

        // Efficiency range check over every scheduled pairing, before any
        // goal is drawn; the error lists what a fix must address.
        if (!config.allow_clamping) {
            std::string offending;
            int listed = 0;
            for (const auto& teams : tiers) {
                for (std::size_t i = 0; i < teams.size(); ++i) {
                    for (std::size_t j = 0; j < teams.size(); ++j) {
                        if (i == j) continue;
                        const double gap = teams[i].fitness - teams[j].fitness;
                        const double p_home = config.base_efficiency +
                                              (gap + config.home_advantage) / (2.0 * na);
                        const double p_away = config.base_efficiency +
                                              (gap - config.home_advantage) / (2.0 * na);
                        for (double p : {p_home, p_away}) {
                            if (p < 0.0 || p > 1.0) {
                                if (listed < 8) {
                                    offending += "\n  " + teams[i].name + " vs " +
                                                 teams[j].name + " (season " + label +
                                                 "): p = " + std::to_string(p);
                                } else if (listed == 8) {
                                    offending += "\n  ...";
                                }
                                ++listed;
                                break;
                            }
                        }
                    }
                }
            }
            if (!offending.empty())
                throw ValidationError(
                    "simulate: efficiency outside [0, 1] for pairings:" + offending);
        }

        for (std::size_t ti = 0; ti < tiers.size(); ++ti) {
            auto& teams = tiers[ti];
            const int tier = static_cast<int>(ti) + 1;
            auto& season_truth = truth.fitness[label];
            for (const auto& t : teams) season_truth[t.name] = t.fitness;

            for (std::size_t day = 0; day < schedule.size(); ++day) {
                for (std::size_t mi = 0; mi < schedule[day].size(); ++mi) {
                    const auto [hi, ai] = schedule[day][mi];
                    const Team& th = teams[hi];
                    const Team& ta = teams[ai];
                    double p_home = config.base_efficiency +
                                    (th.fitness - ta.fitness + config.home_advantage) /
                                        (2.0 * na);
                    double p_away = config.base_efficiency +
                                    (ta.fitness - th.fitness - config.home_advantage) /
                                        (2.0 * na);
                    for (double* p : {&p_home, &p_away}) {
                        if (*p < 0.0) {
                            *p = 0.0;
                            ++truth.clamp_events;
                        } else if (*p > 1.0) {
                            *p = 1.0;
                            ++truth.clamp_events;
                        }
                    }
                    rng::SplitMix64 gen(rng::match_stream(
                        config.seed ^ kMatchTag, static_cast<std::uint64_t>(season),
                        static_cast<std::uint64_t>(tier), day, mi));
                    MatchRecord m;
                    m.season = label;
                    m.match_day = static_cast<int>(day) + 1;
                    m.tier = tier;
                    m.home = TeamId(th.name);
                    m.away = TeamId(ta.name);
                    m.goals_home = gen.binomial(config.attacks_per_team, p_home);
                    m.goals_away = gen.binomial(config.attacks_per_team, p_away);
                    records.push_back(std::move(m));
                }
            }
        }

        // Promotion between consecutive seasons: the best second-tier teams
        // by goal difference swap with the worst first-tier teams.
        if (tiered && season + 1 < config.n_seasons) {
            std::map<std::string, long> diff;
            for (const auto& m : records) {
                if (m.season != label) continue;
                diff[m.home.name()] += m.goal_difference();
                diff[m.away.name()] -= m.goal_difference();
            }
            auto rank = [&](const Team& a, const Team& b) {
                const long da = diff.at(a.name);
                const long db = diff.at(b.name);
                return std::tie(da, a.name) < std::tie(db, b.name);
            };
            std::sort(tiers[0].begin(), tiers[0].end(), rank);  // worst first
            std::sort(tiers[1].begin(), tiers[1].end(), rank);
            for (int k = 0; k < config.promoted_per_season; ++k)
                std::swap(tiers[0][k], tiers[1][tiers[1].size() - 1 - k]);
        }
    }

    return SimulatedLeague{LeagueDataset::from_records(std::move(records)),
                           std::move(truth)};
}

std::string ground_truth_json(const GroundTruth& truth) {
    nlohmann::json j;
    j["schema"] = 1;
    j["rng_algorithm"] = truth.rng_algorithm;
    j["implied_A"] = truth.implied_A;
    j["implied_decomposition_slope"] = truth.implied_decomposition_slope;
    j["clamp_events"] = truth.clamp_events;
    const auto& c = truth.config;
    j["config"] = {
        {"n_teams", c.n_teams},
        {"n_seasons", c.n_seasons},
        {"attacks_per_team", c.attacks_per_team},
        {"base_efficiency", c.base_efficiency},
        {"fitness_sd", c.fitness_sd},
        {"fitness_redraw", c.fitness_redraw == FitnessRedraw::per_season ? "per-season"
                           : c.fitness_redraw == FitnessRedraw::persistent ? "persistent"
                                                                           : "ar1"},
        {"ar1_rho", c.ar1_rho},
        {"home_advantage", c.home_advantage},
        {"tier_offset", c.tier_offset},
        {"promoted_per_season", c.promoted_per_season},
        {"allow_clamping", c.allow_clamping},
        {"seed", c.seed},
        {"first_season", c.first_season},
    };
    if (c.team_fitness) j["config"]["team_fitness"] = *c.team_fitness;
    nlohmann::json fitness = nlohmann::json::object();
    for (const auto& [season, teams] : truth.fitness) {
        nlohmann::json per_team = nlohmann::json::object();
        for (const auto& [team, f] : teams) per_team[team] = f;
        fitness[season] = std::move(per_team);
    }
    j["fitness"] = std::move(fitness);
    return j.dump(2) + "\n";
}

}  // namespace leaguestat
