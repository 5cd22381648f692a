#include "tweetswing/pipeline.hpp"

#include <charconv>
#include <fstream>
#include <ostream>

#include "parallel.hpp"
#include "tweetswing/csv.hpp"
#include "tweetswing/errors.hpp"

namespace tweetswing {

Scorer::Scorer(const Matcher& matcher, const Lexicon& lexicon, ScoringOptions options)
    : matcher_(matcher), lexicon_(lexicon), options_(options) {
    if (options_.threshold < -4 || options_.threshold > 4) throw ConfigError("filter threshold must lie in [-4, 4]");
}

ScoredTweet Scorer::score(const Tweet& tweet) const {
    ScoredTweet out;
    out.id = tweet.id;
    out.outcome = classify_text(tweet.text, matcher_, options_.exclusion);
    out.score = score_text(tweet.text, lexicon_, options_.rules);
    out.kept = std::holds_alternative<Assigned>(out.outcome) && passes_filter(out.score, options_.threshold);
    return out;
}

std::vector<ScoredTweet> score_tweets(std::span<const Tweet> tweets, const Scorer& scorer, unsigned jobs) {
    std::vector<ScoredTweet> out(tweets.size());
    detail::for_each_range(tweets.size(), jobs, [&](std::size_t begin, std::size_t end, unsigned) {
        for (std::size_t i = begin; i < end; ++i) out[i] = scorer.score(tweets[i]);
    });
    return out;
}

void write_scored_header(std::ostream& out) {
    csv::write_row(out, {"id", "outcome", "term", "positive", "negative", "combined", "kept"});
}

void write_scored(std::ostream& out, const ScoredTweet& tweet, const Matcher& matcher) {
    std::string outcome;
    std::string term;
    if (const auto* ex = std::get_if<Excluded>(&tweet.outcome)) {
        outcome = "excluded:";
        for (std::size_t i = 0; i < ex->groups.size(); ++i) {
            if (i) outcome += '|';
            outcome += matcher.group_name(ex->groups[i]);
        }
    } else if (const auto* a = std::get_if<Assigned>(&tweet.outcome)) {
        outcome = matcher.group_name(a->group) + ":" + std::string(to_string(a->kind));
        term = matcher.entry(a->term).term;
    } else {
        outcome = "none";
    }
    csv::write_row(out, {tweet.id, outcome, term, std::to_string(tweet.score.positive),
                         std::to_string(tweet.score.negative), std::to_string(tweet.score.combined),
                         tweet.kept ? "1" : "0"});
}

namespace {

int parse_int(const std::string& s, const std::string& where) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
        throw DataError(where + ": '" + s + "' is not an integer");
    }
    return v;
}

MatchOutcome parse_outcome(const std::string& outcome, const std::string& term, const Matcher& matcher,
                           const std::string& where) {
    if (outcome == "none") return NoMatch{};
    if (outcome.starts_with("excluded:")) {
        Excluded ex;
        std::string_view rest(outcome);
        rest.remove_prefix(9);
        while (!rest.empty()) {
            auto bar = rest.find('|');
            auto id = rest.substr(0, bar);
            auto g = matcher.find_group(id);
            if (!g) throw DataError(where + ": unknown group '" + std::string(id) + "'");
            ex.groups.push_back(*g);
            rest = bar == std::string_view::npos ? std::string_view{} : rest.substr(bar + 1);
        }
        if (ex.groups.empty()) throw DataError(where + ": excluded outcome without groups");
        return ex;
    }
    auto colon = outcome.find(':');
    if (colon == std::string::npos) throw DataError(where + ": unrecognized outcome '" + outcome + "'");
    auto t = matcher.find_term(term);
    if (!t) throw DataError(where + ": term '" + term + "' is not in the term table");
    const auto& e = matcher.entry(*t);
    auto kind = parse_entity_kind(outcome.substr(colon + 1));
    if (outcome.substr(0, colon) != e.group || !kind || *kind != e.kind) {
        throw DataError(where + ": outcome '" + outcome + "' does not match term '" + term + "'");
    }
    return Assigned{*t, matcher.group_of(*t), e.kind, e.weight};
}

}  // namespace

AggregateSet aggregate_scored_file(const std::filesystem::path& path, const Matcher& matcher) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open scored file " + path.string());
    auto table = csv::Table::parse(in, path.string());
    const csv::Row expected{"id", "outcome", "term", "positive", "negative", "combined", "kept"};
    if (table.header() != expected) throw DataError(path.string() + ": unexpected scored-file header");

    AggregateSet agg(matcher);
    for (std::size_t i = 0; i < table.rows().size(); ++i) {
        const auto& row = table.rows()[i];
        auto where = table.source() + ":" + std::to_string(table.line_of(i));
        auto outcome = parse_outcome(row[1], row[2], matcher, where);
        int positive = parse_int(row[3], where);
        int negative = parse_int(row[4], where);
        int combined = parse_int(row[5], where);
        if (positive < 1 || positive > 5 || negative < -5 || negative > -1 || combined != positive + negative) {
            throw DataError(where + ": inconsistent sentiment score");
        }
        if (row[6] != "0" && row[6] != "1") throw DataError(where + ": kept must be 0 or 1");
        bool kept = row[6] == "1";
        if (kept && !std::holds_alternative<Assigned>(outcome)) {
            throw DataError(where + ": only assigned tweets can be kept");
        }
        agg.add(outcome, combined, kept);
    }
    return agg;
}

}  // namespace tweetswing
