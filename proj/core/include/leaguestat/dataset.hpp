#pragma once

#include <compare>
#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace leaguestat {

/// Normalized team identity: case-folded, whitespace-trimmed name.
/// Two TeamIds are equal iff their normalized names are equal.
class TeamId {
public:
    TeamId() = default;
    /// Throws ValidationError when the name is empty after normalization.
    explicit TeamId(std::string_view raw);

    const std::string& name() const noexcept { return name_; }

    bool operator==(const TeamId&) const = default;
    auto operator<=>(const TeamId&) const = default;

private:
    std::string name_;
};

/// Case-fold (ASCII + Latin-1 supplement) and trim; the normalization used
/// by TeamId, exposed for parsers.
std::string normalize_team_name(std::string_view raw);

/// One fixture.
struct MatchRecord {
    std::string season;
    int match_day = 0;
    TeamId home;
    TeamId away;
    int goals_home = 0;
    int goals_away = 0;
    int tier = 1;
    int source_line = 0;  // provenance; 0 when constructed in memory

    int total_goals() const noexcept { return goals_home + goals_away; }
    /// Goal difference from the home team's perspective.
    int goal_difference() const noexcept { return goals_home - goals_away; }

    friend bool operator==(const MatchRecord& a, const MatchRecord& b) {
        return a.season == b.season && a.match_day == b.match_day &&
               a.home == b.home && a.away == b.away &&
               a.goals_home == b.goals_home && a.goals_away == b.goals_away &&
               a.tier == b.tier;
    }
};

struct SeasonProfile {
    int n_teams = 0;
    int n_match_days = 0;
    bool complete = false;  // full double round-robin
};

using MatchDayRange = std::pair<int, int>;  // inclusive [first, last]

/// Validated, immutable collection of match records with season/tier views.
/// Safe to share across concurrent readers after construction.
class LeagueDataset {
public:
    /// One league-season: all matches of one tier within one season.
    struct Division {
        std::string season;
        int tier = 1;
        std::vector<TeamId> teams;          // sorted by name
        int n_match_days = 0;               // highest match day present
        std::vector<std::size_t> matches;   // indices into matches(), day-ordered
    };

    /// Validates and indexes the records. Throws ValidationError on duplicate
    /// fixtures, a team appearing twice on one match day, self-matches,
    /// negative goals or empty input.
    static LeagueDataset from_records(std::vector<MatchRecord> records);

    const std::vector<MatchRecord>& matches() const noexcept { return matches_; }
    std::size_t size() const noexcept { return matches_.size(); }

    /// Season labels in dataset order: numeric when every label parses as an
    /// integer, lexicographic otherwise.
    const std::vector<std::string>& seasons() const noexcept { return season_order_; }
    bool has_season(const std::string& season) const;
    /// Position of a season in seasons(); throws ValidationError if unknown.
    std::size_t season_index(const std::string& season) const;

    /// Tiers present within a season, ascending.
    std::vector<int> tiers(const std::string& season) const;

    /// All divisions in (season order, tier) order.
    const std::vector<Division>& divisions() const noexcept { return divisions_; }
    /// Divisions of one season.
    std::vector<const Division*> divisions_of(const std::string& season) const;
    const Division* find_division(const std::string& season, int tier) const;

private:
    LeagueDataset() = default;

    std::vector<MatchRecord> matches_;
    std::vector<std::string> season_order_;
    std::map<std::string, std::size_t> season_pos_;
    std::vector<Division> divisions_;
};

/// Parses the CSV interchange format:
///   season,match_day,home,away,goals_home,goals_away[,tier]
/// UTF-8; `#` starts a comment line; a header row is required.
/// Throws ParseError (with line numbers) or ValidationError.
LeagueDataset parse_dataset(std::istream& in);
LeagueDataset parse_dataset(std::string_view text);
LeagueDataset parse_dataset_file(const std::string& path);

/// Canonical CSV: header incl. tier, rows ordered by (season, match_day,
/// home name). parse(serialize(d)) == d for every valid dataset.
std::string serialize_dataset(const LeagueDataset& dataset);

/// Profile over all matches of the season (all tiers pooled).
SeasonProfile season_profile(const LeagueDataset& dataset, const std::string& season);
/// Profile of a single division.
SeasonProfile season_profile(const LeagueDataset& dataset, const std::string& season,
                             int tier);

/// Splits an even number of match days T into [1,T/2] and [T/2+1,T].
/// Throws ValidationError for odd T (an explicit split point is required).
std::pair<MatchDayRange, MatchDayRange> half_season_split(const LeagueDataset& dataset,
                                                          const std::string& season);
std::pair<MatchDayRange, MatchDayRange> half_season_split(const LeagueDataset& dataset,
                                                          const std::string& season,
                                                          int tier);

/// Subset of seasons in [first, last] (inclusive, by the dataset's season
/// order). Either bound may be empty to leave that side open.
LeagueDataset filter_seasons(const LeagueDataset& dataset, const std::string& first,
                             const std::string& last);

}  // namespace leaguestat
