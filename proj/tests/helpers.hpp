#pragma once

#include <string>
#include <vector>

#include "leaguestat/dataset.hpp"

namespace test_helpers {

struct Row {
    std::string season;
    int day;
    std::string home;
    std::string away;
    int gh;
    int ga;
    int tier = 1;
};

inline leaguestat::LeagueDataset make_dataset(const std::vector<Row>& rows) {
    std::vector<leaguestat::MatchRecord> records;
    for (const auto& r : rows) {
        leaguestat::MatchRecord m;
        m.season = r.season;
        m.match_day = r.day;
        m.home = leaguestat::TeamId(r.home);
        m.away = leaguestat::TeamId(r.away);
        m.goals_home = r.gh;
        m.goals_away = r.ga;
        m.tier = r.tier;
        records.push_back(std::move(m));
    }
    return leaguestat::LeagueDataset::from_records(std::move(records));
}

/// Every fixture also present with sides (and scores) swapped on a later day.
inline leaguestat::LeagueDataset mirror_dataset(const std::vector<Row>& rows, int day_shift) {
    std::vector<Row> all = rows;
    for (const auto& r : rows)
        all.push_back({r.season, r.day + day_shift, r.away, r.home, r.ga, r.gh, r.tier});
    return make_dataset(all);
}

}  // namespace test_helpers
