#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "tweetswing/aggregation.hpp"

namespace tweetswing {

/// National 2010 vote share per group, percent. A group may be declared
/// without a figure (e.g. Northern Ireland parties); its change is then 0.
struct NationalBaseline {
    std::map<std::string, std::optional<double>> share_pct;

    /// `group,share_pct`; an empty share_pct cell declares the group as absent.
    static NationalBaseline read_csv(const std::filesystem::path& path);
};

struct PartyShare {
    std::string group;
    double share = 0.0;

    friend bool operator==(const PartyShare&, const PartyShare&) = default;
};

struct ConstituencyResult {
    std::string id;
    std::string name;
    std::vector<PartyShare> shares;  // parties that stood, file order

    std::optional<double> share_of(std::string_view group) const;
};

/// Throws DataError unless shares are in [0, 100], sum to at most 100.5,
/// at least one party is present and no group repeats.
void validate(const ConstituencyResult& c);

/// `constituency_id,name,group,share_pct`, one row per (constituency, party).
/// Constituencies keep first-appearance order. A group outside `known_groups`
/// is fatal and the error names the line.
std::vector<ConstituencyResult> read_constituencies_csv(const std::filesystem::path& path,
                                                        const std::set<std::string>& known_groups);

using NationalChanges = std::map<std::string, double>;

/// change = 100 x proportion - 2010 share, for groups with both figures; every
/// other group declared by either side gets 0.
NationalChanges national_changes(const ShareVector& twitter, const NationalBaseline& base);

/// Uniform swing on the parties that stood: max(0, share + change). No renormalization.
std::vector<PartyShare> project_constituency(const ConstituencyResult& c, const NationalChanges& changes);

struct Winner {
    std::string group;
    double margin = 0.0;  // lead over the runner-up; 0 when unopposed
};

/// Highest projected share; ties go to the higher 2010 share, then the smaller group id.
Winner constituency_winner(std::span<const PartyShare> projected, const ConstituencyResult& baseline);

struct ConstituencyForecast {
    std::string id;
    std::string name;
    std::vector<PartyShare> projected;
    Winner winner;
};

struct SeatForecast {
    std::vector<ConstituencyForecast> constituencies;
    std::map<std::string, std::size_t> seats;
    std::size_t total_seats = 0;
    std::size_t majority_threshold = 0;  // floor(total / 2) + 1
    std::optional<std::string> majority;  // nullopt means a hung parliament

    bool hung() const { return !majority.has_value(); }
};

SeatForecast tally(std::vector<ConstituencyForecast> forecasts);

/// Projects every constituency (in parallel when jobs > 1) and tallies.
SeatForecast forecast_seats(std::span<const ConstituencyResult> constituencies, const NationalChanges& changes,
                            unsigned jobs = 1);

/// `constituency_id,name,winner,margin,<group>...` with one projected-share
/// column per group that stood anywhere; blank where a party did not stand.
void write_seats_csv(std::ostream& out, const SeatForecast& forecast);

/// `group,share_2010,twitter_share,change,seats`, percentages to 3 decimals.
void write_national_csv(std::ostream& out, const SeatForecast& forecast, const ShareVector& twitter,
                        const NationalBaseline& base, const NationalChanges& changes);

/// Human-readable seat totals and majority verdict.
void write_summary(std::ostream& out, const SeatForecast& forecast);

}  // namespace tweetswing
