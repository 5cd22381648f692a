#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "tweetswing/aggregation.hpp"
#include "tweetswing/corpus.hpp"
#include "tweetswing/entity_matcher.hpp"
#include "tweetswing/sentiment.hpp"

namespace tweetswing {

struct ScoredTweet {
    std::string id;
    MatchOutcome outcome;
    SentimentScore score;
    bool kept = false;  // assigned to a group and passed the filter

    friend bool operator==(const ScoredTweet&, const ScoredTweet&) = default;
};

struct ScoringOptions {
    ExclusionMode exclusion = ExclusionMode::literal;
    int threshold = kDefaultFilterThreshold;
    ScoringRules rules;
};

/// match -> classify -> score -> filter for single tweets. Holds references only.
class Scorer {
public:
    Scorer(const Matcher& matcher, const Lexicon& lexicon, ScoringOptions options = {});

    ScoredTweet score(const Tweet& tweet) const;
    const Matcher& matcher() const { return matcher_; }
    const ScoringOptions& options() const { return options_; }

private:
    const Matcher& matcher_;
    const Lexicon& lexicon_;
    ScoringOptions options_;
};

/// Scores in input order; `jobs` workers each take a contiguous slice.
std::vector<ScoredTweet> score_tweets(std::span<const Tweet> tweets, const Scorer& scorer, unsigned jobs = 1);

/// Scored-tweet file: `id,outcome,term,positive,negative,combined,kept`.
/// outcome is `none`, `excluded:<G1>|<G2>...`, or `<group>:<kind>`; term is the
/// matched table term for assigned tweets and empty otherwise.
void write_scored_header(std::ostream& out);
void write_scored(std::ostream& out, const ScoredTweet& tweet, const Matcher& matcher);

/// Rebuilds an aggregate from a scored file. Throws DataError (with line number)
/// on rows inconsistent with `matcher`.
AggregateSet aggregate_scored_file(const std::filesystem::path& path, const Matcher& matcher);

}  // namespace tweetswing
