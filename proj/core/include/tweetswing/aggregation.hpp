#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tweetswing/entity_matcher.hpp"
#include "tweetswing/sentiment.hpp"

namespace tweetswing {

struct TweetCounts {
    std::uint64_t party_kept = 0;
    std::uint64_t leader_kept = 0;
    std::uint64_t excluded_multi = 0;
    std::uint64_t filtered_negative = 0;

    friend bool operator==(const TweetCounts&, const TweetCounts&) = default;
};

struct GroupAggregate {
    std::string group;
    double party_sum = 0.0;
    double leader_sum = 0.0;
    TweetCounts counts;
};

/// Stream-wide totals, one increment per tweet.
struct StreamCounts {
    std::uint64_t no_match = 0;
    std::uint64_t excluded = 0;
    std::uint64_t filtered_negative = 0;
    std::uint64_t kept = 0;

    std::uint64_t total() const { return no_match + excluded + filtered_negative + kept; }
    friend bool operator==(const StreamCounts&, const StreamCounts&) = default;
};

/// Mergeable partial sums over a fixed term/group universe.
///
/// Kept scores are tallied per term as exact integers; the weighted group sums
/// (weight x combined) are formed from those tallies on demand, in term-table
/// order. Any sharding of the stream followed by merge() therefore gives
/// bit-identical counts and sums.
class AggregateSet {
public:
    explicit AggregateSet(const Matcher& matcher);

    /// NoMatch: no effect on groups. Excluded: excluded_multi for every group involved.
    /// Assigned: filtered_negative if the score fails the filter, otherwise the
    /// score is added to the (term, kind) tally.
    void accumulate(const MatchOutcome& outcome, SentimentScore score, int threshold = kDefaultFilterThreshold);

    /// Same as accumulate() with the filter decision already taken.
    void add(const MatchOutcome& outcome, int combined, bool kept);

    /// Field-wise addition. Throws DataError when the universes differ.
    void merge(const AggregateSet& other);

    std::vector<GroupAggregate> groups() const;
    GroupAggregate group(std::size_t index) const;
    std::span<const std::string> group_ids() const { return group_ids_; }
    const StreamCounts& stream() const { return stream_; }

    /// Exact equality of tallies and counts (sums are derived, hence equal too).
    friend bool operator==(const AggregateSet&, const AggregateSet&);

private:
    struct TermSlot {
        std::size_t group = 0;
        EntityKind kind = EntityKind::party;
        double weight = 1.0;

        friend bool operator==(const TermSlot&, const TermSlot&) = default;
    };
    struct TermTally {
        std::int64_t combined_sum = 0;
        std::uint64_t kept = 0;

        friend bool operator==(const TermTally&, const TermTally&) = default;
    };

    std::vector<std::string> group_ids_;
    std::vector<TermSlot> terms_;
    std::vector<TermTally> tallies_;
    std::vector<TweetCounts> counts_;
    StreamCounts stream_;
};

inline AggregateSet merge(AggregateSet a, const AggregateSet& b) {
    a.merge(b);
    return a;
}

struct ShareEntry {
    std::string group;
    std::optional<double> party_sum;
    std::optional<double> leader_sum;
    double total_sum = 0.0;
    double proportion = 0.0;
};

/// Rows sorted by group id.
struct ShareVector {
    std::vector<ShareEntry> entries;

    const ShareEntry* find(std::string_view group) const;
};

/// Normalizes group totals: negative totals count as 0, each proportion is
/// total / sum of totals. Entries are sorted by group id; total_sum keeps the
/// unclamped value. Throws NoPositiveSignal when the clamped sum is not positive.
ShareVector normalize(std::vector<ShareEntry> entries);

/// Shares over `report_groups` (all groups when empty). Throws ConfigError for
/// a report group outside the aggregate's universe.
ShareVector shares(const AggregateSet& aggregates, std::span<const std::string> report_groups = {});

/// Default report set: the groups with published leader and party sums.
std::vector<std::string> default_report_groups();

/// `group,party_sum,leader_sum,total_sum,proportion`, 9 decimals.
void write_shares_csv(std::ostream& out, const ShareVector& shares);

/// Reads a share CSV; needs `group` and `proportion`, other columns optional.
ShareVector read_shares_csv(const std::filesystem::path& path);

/// Reads `group` plus `total_sum` (or `total`), optional party/leader sums, and
/// normalizes over the rows present.
ShareVector read_totals_csv(const std::filesystem::path& path);

}  // namespace tweetswing
