#pragma once

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "tweetswing/timestamp.hpp"

namespace tweetswing {

struct Tweet {
    std::string id;
    TimePoint created_at;
    std::string text;

    friend bool operator==(const Tweet&, const Tweet&) = default;
};

/// Half-open interval [start, end).
class DateWindow {
public:
    /// Throws ConfigError unless start < end.
    DateWindow(TimePoint start, TimePoint end);

    /// 2014-11-28 (inclusive) to 2015-03-09 (exclusive).
    static DateWindow collection_period();

    bool contains(TimePoint t) const { return start_ <= t && t < end_; }
    TimePoint start() const { return start_; }
    TimePoint end() const { return end_; }

private:
    TimePoint start_;
    TimePoint end_;
};

struct IngestStats {
    std::size_t read = 0;
    std::size_t accepted = 0;
    std::size_t duplicate_id = 0;
    std::size_t malformed = 0;

    friend bool operator==(const IngestStats&, const IngestStats&) = default;
};

/// True for lines that carry no record: blank lines and `#` comments.
bool is_skippable_line(std::string_view line);

/// Parses one corpus line: a flat JSON object with exactly `id`, `created_at`, `text`,
/// all strings, non-empty id and a parseable UTC timestamp. nullopt when malformed.
std::optional<Tweet> parse_record(std::string_view line);

/// Parsed output of one line block, before cross-block duplicate removal.
struct ParsedBlock {
    std::vector<Tweet> tweets;
    std::size_t read = 0;
    std::size_t malformed = 0;
};

ParsedBlock parse_block(std::span<const std::string> lines);

/// Keeps the first occurrence of each id. Must see blocks in file order.
class Deduplicator {
public:
    /// Moves admitted tweets of `block` to `out`, updating `stats`.
    void admit(ParsedBlock&& block, std::vector<Tweet>& out, IngestStats& stats);

private:
    std::unordered_set<std::string> seen_;
};

struct Corpus {
    std::vector<Tweet> tweets;
    IngestStats stats;
};

/// Streams a corpus file in line blocks. Each block is parsed by up to `jobs`
/// workers; ordering and duplicate handling are identical to a single pass.
class CorpusReader {
public:
    explicit CorpusReader(const std::filesystem::path& path, std::size_t block_lines = 65536,
                          unsigned jobs = 1);

    /// Next batch of accepted tweets in file order; empty once the file is exhausted.
    std::vector<Tweet> next_batch();
    const IngestStats& stats() const { return stats_; }

private:
    std::ifstream in_;
    std::size_t block_lines_;
    unsigned jobs_;
    Deduplicator dedup_;
    IngestStats stats_;
};

/// Whole-file convenience over CorpusReader. Throws DataError if unreadable.
Corpus load_corpus(const std::filesystem::path& path, unsigned jobs = 1);

/// Same contract as load_corpus for in-memory lines; `shards` splits them into
/// contiguous blocks processed independently and concatenated in order.
Corpus load_lines(std::span<const std::string> lines, std::size_t shards = 1);

std::vector<Tweet> filter_window(std::span<const Tweet> tweets, const DateWindow& window);

}  // namespace tweetswing
