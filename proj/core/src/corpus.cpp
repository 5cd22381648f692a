#include "tweetswing/corpus.hpp"

#include <nlohmann/json.hpp>

#include "parallel.hpp"
#include "tweetswing/errors.hpp"

namespace tweetswing {

DateWindow::DateWindow(TimePoint start, TimePoint end) : start_(start), end_(end) {
    if (!(start < end)) {
        throw ConfigError("date window start " + format_utc(start) + " is not before end " + format_utc(end));
    }
}

DateWindow DateWindow::collection_period() {
    using namespace std::chrono;
    return DateWindow{TimePoint{sys_days{2014y / November / 28}}, TimePoint{sys_days{2015y / March / 9}}};
}

bool is_skippable_line(std::string_view line) {
    auto first = line.find_first_not_of(" \t\r");
    return first == std::string_view::npos || line[first] == '#';
}

std::optional<Tweet> parse_record(std::string_view line) {
    auto doc = nlohmann::json::parse(line.begin(), line.end(), nullptr, false);
    if (doc.is_discarded() || !doc.is_object() || doc.size() != 3) return std::nullopt;

    auto id = doc.find("id");
    auto created = doc.find("created_at");
    auto text = doc.find("text");
    if (id == doc.end() || created == doc.end() || text == doc.end()) return std::nullopt;
    if (!id->is_string() || !created->is_string() || !text->is_string()) return std::nullopt;

    auto when = parse_utc(created->get_ref<const std::string&>());
    if (!when) return std::nullopt;

    Tweet tweet{id->get<std::string>(), *when, text->get<std::string>()};
    if (tweet.id.empty()) return std::nullopt;
    return tweet;
}

ParsedBlock parse_block(std::span<const std::string> lines) {
    ParsedBlock block;
    for (const auto& line : lines) {
        if (is_skippable_line(line)) continue;
        ++block.read;
        if (auto tweet = parse_record(line)) {
            block.tweets.push_back(std::move(*tweet));
        } else {
            ++block.malformed;
        }
    }
    return block;
}

void Deduplicator::admit(ParsedBlock&& block, std::vector<Tweet>& out, IngestStats& stats) {
    stats.read += block.read;
    stats.malformed += block.malformed;
    for (auto& tweet : block.tweets) {
        if (seen_.insert(tweet.id).second) {
            ++stats.accepted;
            out.push_back(std::move(tweet));
        } else {
            ++stats.duplicate_id;
        }
    }
}

namespace {

// Parses `lines` as `shards` contiguous blocks (in parallel when jobs > 1) and
// feeds them through the deduplicator in order.
void parse_sharded(std::span<const std::string> lines, std::size_t shards, unsigned jobs,
                   Deduplicator& dedup, std::vector<Tweet>& out, IngestStats& stats) {
    shards = std::max<std::size_t>(1, shards);
    std::vector<ParsedBlock> blocks(shards);
    detail::for_each_range(shards, jobs, [&](std::size_t begin, std::size_t end, unsigned) {
        for (std::size_t s = begin; s < end; ++s) {
            std::size_t lo = lines.size() * s / shards;
            std::size_t hi = lines.size() * (s + 1) / shards;
            blocks[s] = parse_block(lines.subspan(lo, hi - lo));
        }
    });
    for (auto& block : blocks) dedup.admit(std::move(block), out, stats);
}

}  // namespace

CorpusReader::CorpusReader(const std::filesystem::path& path, std::size_t block_lines, unsigned jobs)
    : in_(path, std::ios::binary), block_lines_(std::max<std::size_t>(1, block_lines)), jobs_(std::max(1u, jobs)) {
    if (!in_) throw DataError("cannot open corpus file " + path.string());
}

std::vector<Tweet> CorpusReader::next_batch() {
    std::vector<Tweet> out;
    while (out.empty() && in_) {
        std::vector<std::string> lines;
        lines.reserve(block_lines_);
        std::string line;
        while (lines.size() < block_lines_ && std::getline(in_, line)) lines.push_back(std::move(line));
        if (lines.empty()) break;
        parse_sharded(lines, jobs_, jobs_, dedup_, out, stats_);
    }
    return out;
}

Corpus load_corpus(const std::filesystem::path& path, unsigned jobs) {
    CorpusReader reader(path, 65536, jobs);
    Corpus corpus;
    for (auto batch = reader.next_batch(); !batch.empty(); batch = reader.next_batch()) {
        std::move(batch.begin(), batch.end(), std::back_inserter(corpus.tweets));
    }
    corpus.stats = reader.stats();
    return corpus;
}

Corpus load_lines(std::span<const std::string> lines, std::size_t shards) {
    Corpus corpus;
    Deduplicator dedup;
    parse_sharded(lines, shards, 1, dedup, corpus.tweets, corpus.stats);
    return corpus;
}

std::vector<Tweet> filter_window(std::span<const Tweet> tweets, const DateWindow& window) {
    std::vector<Tweet> out;
    for (const auto& t : tweets) {
        if (window.contains(t.created_at)) out.push_back(t);
    }
    return out;
}

}  // namespace tweetswing
