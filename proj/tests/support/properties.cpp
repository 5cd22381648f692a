#include "properties.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "oracle.hpp"
#include "synthetic.hpp"
#include "tweetswing/aggregation.hpp"
#include "tweetswing/corpus.hpp"
#include "tweetswing/entity_matcher.hpp"
#include "tweetswing/pipeline.hpp"
#include "tweetswing/sentiment.hpp"
#include "tweetswing/swing.hpp"

namespace tweetswing::properties {
namespace {

std::string join(const std::vector<std::string>& tokens) {
    std::string out = "[";
    for (std::size_t i = 0; i < tokens.size(); ++i) out += (i ? " " : "") + tokens[i];
    return out + "]";
}

std::string describe(SentimentScore s) {
    std::ostringstream os;
    os << "(" << s.positive << ", " << s.negative << ", " << s.combined << ")";
    return os.str();
}

std::string upper(std::string s) {
    for (auto& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return s;
}

std::string lower(std::string s) {
    for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

}  // namespace

Result sentiment_bounds_and_monotonicity(std::uint64_t seed, int iterations) {
    std::mt19937_64 rng(seed);
    auto toy = synthetic::toy_lexicon();
    auto lex = synthetic::to_library(toy);
    std::vector<std::string> vocab = {"the", "vote", "love", "great", "good", "hate", "awful", "bad",
                                      "really", "very", "don't", "not"};
    for (int it = 0; it < iterations; ++it) {
        std::vector<std::string> tokens(rng() % 10);
        for (auto& t : tokens) t = vocab[rng() % vocab.size()];
        auto s = score_tokens(tokens, lex);
        if (s.positive < 1 || s.positive > 5 || s.negative < -5 || s.negative > -1 || s.combined < -4 ||
            s.combined > 4 || s.combined != s.positive + s.negative) {
            return "bounds violated for " + join(tokens) + ": " + describe(s);
        }
        for (const auto& word : {"love", "great", "good"}) {
            auto more = tokens;
            more.push_back(word);
            if (score_tokens(more, lex).positive < s.positive) return "appending '" + std::string(word) + "' lowered positive for " + join(tokens);
        }
        for (const auto& word : {"hate", "awful", "bad"}) {
            auto more = tokens;
            more.push_back(word);
            if (score_tokens(more, lex).negative > s.negative) return "appending '" + std::string(word) + "' raised negative for " + join(tokens);
        }
        if (score_tokens(tokens, lex) != s) return "scoring is not deterministic";
    }
    std::vector<std::string> neutral = {"the", "vote", "tonight"};
    if (score_tokens(neutral, lex) != SentimentScore::make(1, -1)) return "neutral text did not score (1, -1, 0)";
    return std::nullopt;
}

Result score_matches_exhaustive_oracle() {
    oracle::ToyLexicon toy;
    toy.sentiment = {{"good", 3}, {"hate", -4}, {"awful", -2}};
    toy.boosters = {{"really", 2}};
    toy.negators = {"not"};
    auto lex = synthetic::to_library(toy);
    const std::vector<std::string> alphabet = {"good", "hate", "awful", "really", "not", "the"};

    std::vector<std::string> tokens;
    std::function<Result(std::size_t)> walk = [&](std::size_t depth) -> Result {
        auto expect = oracle::score(tokens, toy);
        auto got = score_tokens(tokens, lex);
        if (got.positive != expect.positive || got.negative != expect.negative) {
            return "score mismatch for " + join(tokens) + ": got " + describe(got);
        }
        if (depth == 6) return std::nullopt;
        for (const auto& w : alphabet) {
            tokens.push_back(w);
            if (auto r = walk(depth + 1)) return r;
            tokens.pop_back();
        }
        return std::nullopt;
    };
    return walk(0);
}

Result matcher_case_invariance(std::uint64_t seed, int iterations) {
    std::mt19937_64 rng(seed);
    auto terms = synthetic::shipped_terms();
    auto matcher = Matcher::compile(terms);
    auto toy = synthetic::toy_lexicon();
    for (int it = 0; it < iterations; ++it) {
        auto text = synthetic::random_text(rng, terms, toy);
        for (auto mode : {ExclusionMode::literal, ExclusionMode::cross_group}) {
            auto base = classify_text(text, matcher, mode);
            if (classify_text(upper(text), matcher, mode) != base) return "upper-casing changed outcome: " + text;
            if (classify_text(lower(text), matcher, mode) != base) return "lower-casing changed outcome: " + text;
        }
    }
    return std::nullopt;
}

Result matcher_matches_substring_oracle(std::uint64_t seed, int iterations) {
    std::mt19937_64 rng(seed);
    auto terms = synthetic::shipped_terms();
    auto matcher = Matcher::compile(terms);
    auto toy = synthetic::toy_lexicon();
    for (int it = 0; it < iterations; ++it) {
        auto text = synthetic::random_text(rng, terms, toy);
        std::set<std::size_t> got;
        for (const auto& m : match_terms(text, matcher)) got.insert(m.term);
        if (got != oracle::matched_terms(text, terms)) return "matched term set differs from oracle: " + text;
        for (auto mode : {ExclusionMode::literal, ExclusionMode::cross_group}) {
            auto expect = oracle::classify(oracle::matched_terms(text, terms), terms, mode);
            if (oracle::from_library(classify_text(text, matcher, mode), matcher) != expect) {
                return "classification differs from oracle: " + text;
            }
        }
    }
    return std::nullopt;
}

Result longest_match_suppression() {
    auto matcher = Matcher::compile(synthetic::shipped_terms());
    for (const std::string text : {"Labour Party", "the labour party!", "#LabourParty", "LABOUR PARTY labour party"}) {
        auto matches = match_terms(text, matcher);
        if (text == "#LabourParty") {
            if (!matches.empty()) return "'#LabourParty' should not match any term";
            continue;
        }
        if (matches.size() != 1 || matcher.entry(matches[0].term).term != "Labour Party") {
            return "expected a single 'Labour Party' match in '" + text + "'";
        }
    }
    for (const std::string text : {"Scottish National Party", "UK independence party", "Democratic Unionist Party"}) {
        if (match_terms(text, matcher).size() != 1) return "nested terms not suppressed in '" + text + "'";
    }
    return std::nullopt;
}

namespace {

AggregateSet random_aggregate(std::mt19937_64& rng, const Matcher& matcher, int events) {
    AggregateSet agg(matcher);
    for (int i = 0; i < events; ++i) {
        auto roll = rng() % 4;
        int positive = 1 + static_cast<int>(rng() % 5);
        int negative = -1 - static_cast<int>(rng() % 5);
        auto score = SentimentScore::make(positive, negative);
        if (roll == 0) {
            agg.accumulate(NoMatch{}, score);
        } else if (roll == 1) {
            std::size_t a = rng() % matcher.groups().size();
            std::size_t b = rng() % matcher.groups().size();
            std::vector<std::size_t> groups{std::min(a, b), std::max(a, b)};
            groups.erase(std::unique(groups.begin(), groups.end()), groups.end());
            agg.accumulate(Excluded{groups, 2}, score);
        } else {
            std::size_t t = rng() % matcher.pattern_count();
            const auto& e = matcher.entry(t);
            agg.accumulate(Assigned{t, matcher.group_of(t), e.kind, e.weight}, score);
        }
    }
    return agg;
}

}  // namespace

Result merge_laws(std::uint64_t seed, int iterations) {
    std::mt19937_64 rng(seed);
    auto matcher = Matcher::compile(synthetic::shipped_terms());
    AggregateSet empty(matcher);
    for (int it = 0; it < iterations; ++it) {
        auto a = random_aggregate(rng, matcher, static_cast<int>(rng() % 200));
        auto b = random_aggregate(rng, matcher, static_cast<int>(rng() % 200));
        auto c = random_aggregate(rng, matcher, static_cast<int>(rng() % 200));
        if (!(merge(a, empty) == a) || !(merge(empty, a) == a)) return std::string("empty aggregate is not an identity");
        if (!(merge(a, b) == merge(b, a))) return std::string("merge is not commutative");
        if (!(merge(merge(a, b), c) == merge(a, merge(b, c)))) return std::string("merge is not associative");
        auto ab = merge(a, b).groups();
        auto ba = merge(b, a).groups();
        for (std::size_t g = 0; g < ab.size(); ++g) {
            if (ab[g].party_sum != ba[g].party_sum || ab[g].leader_sum != ba[g].leader_sum) {
                return "merged sums differ for " + ab[g].group;
            }
        }
    }
    return std::nullopt;
}

Result shard_count_invariance(std::uint64_t seed) {
    auto terms = synthetic::shipped_terms();
    auto matcher = Matcher::compile(terms);
    auto lex = synthetic::to_library(synthetic::toy_lexicon());
    Scorer scorer(matcher, lex);
    auto tweets = synthetic::random_tweets(seed, 1000);

    AggregateSet single(matcher);
    for (const auto& t : tweets) {
        auto s = scorer.score(t);
        single.accumulate(s.outcome, s.score);
    }
    for (std::size_t shards : {1u, 2u, 7u}) {
        AggregateSet merged(matcher);
        for (std::size_t k = 0; k < shards; ++k) {
            AggregateSet part(matcher);
            std::size_t lo = tweets.size() * k / shards;
            std::size_t hi = tweets.size() * (k + 1) / shards;
            for (std::size_t i = lo; i < hi; ++i) {
                auto s = scorer.score(tweets[i]);
                part.accumulate(s.outcome, s.score);
            }
            merged.merge(part);
        }
        if (!(merged == single)) return "aggregate differs with " + std::to_string(shards) + " shards";
        auto sg = single.groups();
        auto mg = merged.groups();
        for (std::size_t g = 0; g < sg.size(); ++g) {
            if (sg[g].party_sum != mg[g].party_sum || sg[g].leader_sum != mg[g].leader_sum) {
                return "sums differ with " + std::to_string(shards) + " shards";
            }
        }
        // Multi-threaded scoring must give the same per-tweet results.
        if (score_tweets(tweets, scorer, static_cast<unsigned>(shards)) != score_tweets(tweets, scorer, 1)) {
            return "parallel scoring differs with " + std::to_string(shards) + " jobs";
        }
    }
    return std::nullopt;
}

Result ingest_shard_invariance(std::uint64_t seed) {
    auto lines = synthetic::corpus_lines(seed, 1000);
    auto whole = load_lines(lines, 1);
    if (whole.stats.accepted + whole.stats.duplicate_id + whole.stats.malformed != whole.stats.read) {
        return std::string("ingest counts do not add up");
    }
    for (std::size_t shards : {2u, 3u, 7u, 64u}) {
        auto sharded = load_lines(lines, shards);
        if (sharded.tweets != whole.tweets || !(sharded.stats == whole.stats)) {
            return "sharded ingest differs with " + std::to_string(shards) + " shards";
        }
    }
    return std::nullopt;
}

Result window_idempotence(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto tweets = synthetic::random_tweets(seed, 500);
    for (int it = 0; it < 20; ++it) {
        auto period = DateWindow::collection_period();
        auto len = (period.end() - period.start()).count();
        auto a = period.start() + std::chrono::seconds(static_cast<long long>(rng() % static_cast<std::uint64_t>(len)));
        auto b = a + std::chrono::seconds(1 + static_cast<long long>(rng() % static_cast<std::uint64_t>(len)));
        DateWindow w{a, b};
        auto once = filter_window(tweets, w);
        if (filter_window(once, w) != once) return std::string("window filter is not idempotent");
    }
    return std::nullopt;
}

Result proportion_and_winner_scale_invariance(std::uint64_t seed, int iterations) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    NationalBaseline base;
    base.share_pct = {{"A", 35.0}, {"B", 30.0}, {"C", 20.0}, {"D", std::nullopt}};
    auto seats = synthetic::random_constituencies(seed, 80, {"A", "B", "C", "D"});

    for (int it = 0; it < iterations; ++it) {
        std::vector<ShareEntry> entries;
        for (const auto* g : {"A", "B", "C", "D"}) entries.push_back({g, {}, {}, unit(rng), 0.0});
        auto ref = normalize(entries);
        auto ref_forecast = forecast_seats(seats, national_changes(ref, base));

        for (double c : {0.5, 3.7, 1024.0, 1e-6}) {
            auto scaled = entries;
            for (auto& e : scaled) e.total_sum *= c;
            auto sv = normalize(scaled);
            for (std::size_t i = 0; i < sv.entries.size(); ++i) {
                if (std::abs(sv.entries[i].proportion - ref.entries[i].proportion) > 1e-12) {
                    return "proportion changed under scaling by " + std::to_string(c);
                }
            }
            auto fc = forecast_seats(seats, national_changes(sv, base));
            for (std::size_t i = 0; i < fc.constituencies.size(); ++i) {
                if (fc.constituencies[i].winner.group != ref_forecast.constituencies[i].winner.group) {
                    return "winner changed under scaling by " + std::to_string(c);
                }
            }
        }
    }
    return std::nullopt;
}

Result identity_swing_reproduces_baseline(std::uint64_t seed) {
    auto seats = synthetic::random_constituencies(seed, 650, {"CON", "LAB", "LD", "SNP", "GRN", "UKIP", "PC"});
    NationalChanges zero;
    auto fc = forecast_seats(seats, zero);
    for (std::size_t i = 0; i < seats.size(); ++i) {
        auto expect = constituency_winner(seats[i].shares, seats[i]);
        if (fc.constituencies[i].winner.group != expect.group) return "identity swing changed winner of " + seats[i].id;
        if (fc.constituencies[i].projected != seats[i].shares) return "identity swing changed shares of " + seats[i].id;
    }

    // Same through national_changes with Twitter shares equal to the 2010 shares.
    NationalBaseline base;
    base.share_pct = {{"CON", 40.0}, {"LAB", 30.0}, {"LD", 20.0}, {"SNP", 5.0}, {"GRN", 2.5}, {"UKIP", 2.0}, {"PC", 0.5}};
    ShareVector same;
    for (const auto& [g, s] : base.share_pct) same.entries.push_back({g, {}, {}, *s, *s / 100.0});
    auto changes = national_changes(same, base);
    for (const auto& [g, ch] : changes) {
        if (std::abs(ch) > 1e-12) return "identity shares gave nonzero change for " + g;
    }
    auto fc2 = forecast_seats(seats, changes);
    if (fc2.seats != fc.seats) return std::string("identity shares changed the seat map");
    return std::nullopt;
}

Result uniform_shift_keeps_winners(std::uint64_t seed, int iterations) {
    std::mt19937_64 rng(seed);
    auto seats = synthetic::random_constituencies(seed, 200, {"A", "B", "C", "D", "E"});
    for (int it = 0; it < iterations; ++it) {
        NationalChanges changes;
        for (const auto* g : {"A", "B", "C", "D", "E"}) changes[g] = static_cast<double>(static_cast<int>(rng() % 81) - 40) / 8.0;
        double shift = static_cast<double>(rng() % 41) / 8.0;  // nonnegative: never triggers a new clamp
        auto shifted = changes;
        for (auto& [_, v] : shifted) v += shift;
        auto a = forecast_seats(seats, changes);
        auto b = forecast_seats(seats, shifted);
        for (std::size_t i = 0; i < seats.size(); ++i) {
            bool clamped = false;
            for (const auto& p : seats[i].shares) clamped = clamped || p.share + changes.at(p.group) < 0.0;
            if (clamped) continue;
            if (a.constituencies[i].winner.group != b.constituencies[i].winner.group) {
                return "uniform shift changed winner of " + seats[i].id;
            }
            for (std::size_t k = 0; k < seats[i].shares.size(); ++k) {
                double expect = seats[i].shares[k].share + changes.at(seats[i].shares[k].group);
                if (a.constituencies[i].projected[k].share != expect) return "unclamped projection is not an exact sum";
            }
        }
        for (const auto& f : a.constituencies) {
            for (const auto& p : f.projected) {
                if (p.share < 0.0) return "negative projected share in " + f.id;
            }
        }
    }
    return std::nullopt;
}

}  // namespace tweetswing::properties
