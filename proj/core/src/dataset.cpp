#include "leaguestat/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>

#include "leaguestat/errors.hpp"

namespace leaguestat {

namespace {

bool is_space_byte(unsigned char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' || c == '\f';
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && is_space_byte(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && is_space_byte(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

// True when all season labels parse fully as integers.
bool all_numeric(const std::set<std::string>& labels) {
    for (const auto& s : labels) {
        if (s.empty()) return false;
        long v = 0;
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || p != s.data() + s.size()) return false;
    }
    return true;
}

}  // namespace

std::string normalize_team_name(std::string_view raw) {
    raw = trim(raw);
    std::string out;
    out.reserve(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        const auto c = static_cast<unsigned char>(raw[i]);
        if (c >= 'A' && c <= 'Z') {
            out.push_back(static_cast<char>(c - 'A' + 'a'));
        } else if (c == 0xC3 && i + 1 < raw.size()) {
            // UTF-8 Latin-1 supplement: fold U+00C0..U+00DE to lowercase
            // (except U+00D7, the multiplication sign).
            const auto d = static_cast<unsigned char>(raw[i + 1]);
            out.push_back(static_cast<char>(c));
            if (d >= 0x80 && d <= 0x9E && d != 0x97) {
                out.push_back(static_cast<char>(d + 0x20));
            } else {
                out.push_back(static_cast<char>(d));
            }
            ++i;
        } else {
            out.push_back(static_cast<char>(c));
        }
    }
    return out;
}

TeamId::TeamId(std::string_view raw) : name_(normalize_team_name(raw)) {
    if (name_.empty()) throw ValidationError("empty team name");
}

LeagueDataset LeagueDataset::from_records(std::vector<MatchRecord> records) {
    if (records.empty()) throw ValidationError("no matches");

    std::set<std::string> labels;
    for (const auto& m : records) {
        if (m.season.empty()) throw ValidationError("empty season label");
        if (m.match_day < 1)
            throw ValidationError("match day must be >= 1 (season " + m.season + ")");
        if (m.goals_home < 0 || m.goals_away < 0)
            throw ValidationError("negative goals (season " + m.season + ", day " +
                                  std::to_string(m.match_day) + ")");
        if (m.home == m.away)
            throw ValidationError("team '" + m.home.name() + "' plays itself (season " +
                                  m.season + ", day " + std::to_string(m.match_day) + ")");
        if (m.tier < 1) throw ValidationError("tier must be >= 1");
        labels.insert(m.season);
    }

    LeagueDataset ds;
    ds.season_order_.assign(labels.begin(), labels.end());
    if (all_numeric(labels)) {
        std::sort(ds.season_order_.begin(), ds.season_order_.end(),
                  [](const std::string& a, const std::string& b) {
                      return std::stol(a) < std::stol(b);
                  });
    }
    for (std::size_t i = 0; i < ds.season_order_.size(); ++i)
        ds.season_pos_[ds.season_order_[i]] = i;

    // Canonical order: (season, tier, match day, home name).
    std::sort(records.begin(), records.end(),
              [&](const MatchRecord& a, const MatchRecord& b) {
                  const auto sa = ds.season_pos_.at(a.season);
                  const auto sb = ds.season_pos_.at(b.season);
                  return std::tie(sa, a.tier, a.match_day, a.home) <
                         std::tie(sb, b.tier, b.match_day, b.home);
              });
    ds.matches_ = std::move(records);

    // Build division views and run the per-division structural checks.
    std::map<std::pair<std::size_t, int>, Division> divs;
    for (std::size_t i = 0; i < ds.matches_.size(); ++i) {
        const auto& m = ds.matches_[i];
        auto key = std::make_pair(ds.season_pos_.at(m.season), m.tier);
        auto& d = divs[key];
        d.season = m.season;
        d.tier = m.tier;
        d.n_match_days = std::max(d.n_match_days, m.match_day);
        d.matches.push_back(i);
    }
    for (auto& [key, d] : divs) {
        std::set<TeamId> teams;
        std::set<std::pair<TeamId, TeamId>> fixtures;
        std::set<std::pair<int, TeamId>> day_teams;
        for (std::size_t idx : d.matches) {
            const auto& m = ds.matches_[idx];
            teams.insert(m.home);
            teams.insert(m.away);
            if (!fixtures.emplace(m.home, m.away).second)
                throw ValidationError("duplicate fixture " + m.home.name() + " vs " +
                                      m.away.name() + " in season " + m.season);
            for (const auto& t : {m.home, m.away}) {
                if (!day_teams.emplace(m.match_day, t).second)
                    throw ValidationError("team '" + t.name() + "' plays twice on day " +
                                          std::to_string(m.match_day) + " of season " +
                                          m.season);
            }
        }
        d.teams.assign(teams.begin(), teams.end());
        ds.divisions_.push_back(std::move(d));
    }
    return ds;
}

bool LeagueDataset::has_season(const std::string& season) const {
    return season_pos_.contains(season);
}

std::size_t LeagueDataset::season_index(const std::string& season) const {
    auto it = season_pos_.find(season);
    if (it == season_pos_.end()) throw ValidationError("unknown season '" + season + "'");
    return it->second;
}

std::vector<int> LeagueDataset::tiers(const std::string& season) const {
    season_index(season);
    std::vector<int> out;
    for (const auto& d : divisions_)
        if (d.season == season) out.push_back(d.tier);
    return out;
}

std::vector<const LeagueDataset::Division*> LeagueDataset::divisions_of(
    const std::string& season) const {
    season_index(season);
    std::vector<const Division*> out;
    for (const auto& d : divisions_)
        if (d.season == season) out.push_back(&d);
    return out;
}

const LeagueDataset::Division* LeagueDataset::find_division(const std::string& season,
                                                            int tier) const {
    for (const auto& d : divisions_)
        if (d.season == season && d.tier == tier) return &d;
    return nullptr;
}

namespace {

int parse_int_field(std::string_view field, const char* what, int line) {
    field = trim(field);
    int v = 0;
    auto [p, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc() || p != field.data() + field.size())
        throw ParseError(std::string("invalid ") + what + " '" + std::string(field) + "'",
                         line);
    return v;
}

std::vector<std::string_view> split_csv(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == ',') {
            out.push_back(line.substr(start, i - start));
            start = i + 1;
        }
    }
    return out;
}

constexpr std::string_view kHeader[] = {"season", "match_day", "home",
                                        "away",   "goals_home", "goals_away"};

}  // namespace

LeagueDataset parse_dataset(std::istream& in) {
    std::vector<MatchRecord> records;
    std::string line;
    int lineno = 0;
    bool header_seen = false;
    bool header_has_tier = false;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view sv = trim(line);
        if (sv.empty() || sv.front() == '#') continue;
        auto fields = split_csv(sv);
        if (!header_seen) {
            if (fields.size() != 6 && fields.size() != 7)
                throw ParseError("expected header 'season,match_day,home,away,"
                                 "goals_home,goals_away[,tier]'",
                                 lineno);
            for (std::size_t i = 0; i < 6; ++i) {
                if (trim(fields[i]) != kHeader[i])
                    throw ParseError("unexpected header column '" +
                                         std::string(trim(fields[i])) + "' (want '" +
                                         std::string(kHeader[i]) + "')",
                                     lineno);
            }
            if (fields.size() == 7) {
                if (trim(fields[6]) != "tier")
                    throw ParseError("seventh header column must be 'tier'", lineno);
                header_has_tier = true;
            }
            header_seen = true;
            continue;
        }
        if (fields.size() != (header_has_tier ? 7u : 6u))
            throw ParseError("expected " + std::to_string(header_has_tier ? 7 : 6) +
                                 " fields, got " + std::to_string(fields.size()),
                             lineno);
        MatchRecord m;
        m.season = std::string(trim(fields[0]));
        if (m.season.empty()) throw ParseError("empty season", lineno);
        m.match_day = parse_int_field(fields[1], "match day", lineno);
        if (m.match_day < 1) throw ParseError("match day must be >= 1", lineno);
        try {
            m.home = TeamId(fields[2]);
            m.away = TeamId(fields[3]);
        } catch (const ValidationError& e) {
            throw ParseError(e.what(), lineno);
        }
        m.goals_home = parse_int_field(fields[4], "goals_home", lineno);
        m.goals_away = parse_int_field(fields[5], "goals_away", lineno);
        if (m.goals_home < 0 || m.goals_away < 0)
            throw ParseError("negative goals", lineno);
        m.tier = header_has_tier ? parse_int_field(fields[6], "tier", lineno) : 1;
        if (m.tier < 1) throw ParseError("tier must be >= 1", lineno);
        m.source_line = lineno;
        records.push_back(std::move(m));
    }
    if (records.empty()) throw ValidationError("no matches");
    return LeagueDataset::from_records(std::move(records));
}

LeagueDataset parse_dataset(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_dataset(in);
}

LeagueDataset parse_dataset_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open '" + path + "'");
    return parse_dataset(in);
}

std::string serialize_dataset(const LeagueDataset& dataset) {
    std::string out = "season,match_day,home,away,goals_home,goals_away,tier\n";
    // matches() is already canonical (season, tier, day, home); re-sort by
    // (season, day, home) so tiers interleave deterministically per day.
    std::vector<const MatchRecord*> rows;
    rows.reserve(dataset.size());
    for (const auto& m : dataset.matches()) rows.push_back(&m);
    std::stable_sort(rows.begin(), rows.end(), [&](const MatchRecord* a, const MatchRecord* b) {
        const auto sa = dataset.season_index(a->season);
        const auto sb = dataset.season_index(b->season);
        return std::tie(sa, a->match_day, a->home) < std::tie(sb, b->match_day, b->home);
    });
    for (const auto* m : rows) {
        for (const auto& t : {m->home, m->away}) {
            if (t.name().find_first_of(",\n") != std::string::npos)
                throw ValidationError("team name '" + t.name() +
                                      "' cannot be serialized as CSV");
        }
        if (m->season.find_first_of(",\n") != std::string::npos)
            throw ValidationError("season label '" + m->season +
                                  "' cannot be serialized as CSV");
        out += m->season;
        out += ',';
        out += std::to_string(m->match_day);
        out += ',';
        out += m->home.name();
        out += ',';
        out += m->away.name();
        out += ',';
        out += std::to_string(m->goals_home);
        out += ',';
        out += std::to_string(m->goals_away);
        out += ',';
        out += std::to_string(m->tier);
        out += '\n';
    }
    return out;
}

namespace {

SeasonProfile profile_from(const LeagueDataset& dataset,
                           const std::vector<std::size_t>& idxs) {
    std::set<TeamId> teams;
    int max_day = 0;
    for (auto i : idxs) {
        const auto& m = dataset.matches()[i];
        teams.insert(m.home);
        teams.insert(m.away);
        max_day = std::max(max_day, m.match_day);
    }
    SeasonProfile p;
    p.n_teams = static_cast<int>(teams.size());
    p.n_match_days = max_day;
    // Complete double round-robin: every ordered pair exactly once, each team
    // on every match day, T = 2 (n - 1).
    const int n = p.n_teams;
    p.complete = n >= 2 && p.n_match_days == 2 * (n - 1) &&
                 static_cast<long>(idxs.size()) == static_cast<long>(n) * (n - 1);
    if (p.complete) {
        std::set<std::pair<TeamId, TeamId>> pairs;
        for (auto i : idxs) {
            const auto& m = dataset.matches()[i];
            pairs.emplace(m.home, m.away);
        }
        p.complete = pairs.size() == idxs.size();
    }
    return p;
}

}  // namespace

SeasonProfile season_profile(const LeagueDataset& dataset, const std::string& season) {
    dataset.season_index(season);
    std::vector<std::size_t> idxs;
    for (const auto* d : dataset.divisions_of(season))
        idxs.insert(idxs.end(), d->matches.begin(), d->matches.end());
    return profile_from(dataset, idxs);
}

SeasonProfile season_profile(const LeagueDataset& dataset, const std::string& season,
                             int tier) {
    const auto* d = dataset.find_division(season, tier);
    if (!d)
        throw ValidationError("no tier " + std::to_string(tier) + " in season '" +
                              season + "'");
    return profile_from(dataset, d->matches);
}

namespace {

std::pair<MatchDayRange, MatchDayRange> split_days(int days, const std::string& season) {
    if (days % 2 != 0)
        throw ValidationError("season '" + season + "' has an odd number of match days (" +
                              std::to_string(days) +
                              "); an explicit split point is required");
    return {{1, days / 2}, {days / 2 + 1, days}};
}

}  // namespace

std::pair<MatchDayRange, MatchDayRange> half_season_split(const LeagueDataset& dataset,
                                                          const std::string& season) {
    return split_days(season_profile(dataset, season).n_match_days, season);
}

std::pair<MatchDayRange, MatchDayRange> half_season_split(const LeagueDataset& dataset,
                                                          const std::string& season,
                                                          int tier) {
    return split_days(season_profile(dataset, season, tier).n_match_days, season);
}

LeagueDataset filter_seasons(const LeagueDataset& dataset, const std::string& first,
                             const std::string& last) {
    const auto& order = dataset.seasons();
    std::size_t lo = 0, hi = order.size();
    if (!first.empty()) lo = dataset.season_index(first);
    if (!last.empty()) hi = dataset.season_index(last) + 1;
    if (lo >= hi) throw ValidationError("empty season range");
    std::set<std::string> keep(order.begin() + static_cast<long>(lo),
                               order.begin() + static_cast<long>(hi));
    std::vector<MatchRecord> records;
    for (const auto& m : dataset.matches())
        if (keep.contains(m.season)) records.push_back(m);
    if (records.empty()) throw ValidationError("no matches in season range");
    return LeagueDataset::from_records(std::move(records));
}

}  // namespace leaguestat
