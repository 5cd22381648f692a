#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace tweetswing {

/// Dual-polarity strength of one text: positive in [1, 5], negative in [-5, -1].
struct SentimentScore {
    int positive = 1;
    int negative = -1;
    int combined = 0;

    static constexpr SentimentScore make(int positive, int negative) {
        return SentimentScore{positive, negative, positive + negative};
    }

    friend bool operator==(const SentimentScore&, const SentimentScore&) = default;
};

enum class TokenRole { none, sentiment, booster, negator };

struct TokenInfo {
    TokenRole role = TokenRole::none;
    int value = 0;  // strength for sentiment words, boost for boosters
};

/// Word strengths, boosters and negators. Terms are stored case-folded, and a
/// term may belong to only one of the three collections.
class Lexicon {
public:
    /// Tab-separated file with `[sentiment]`, `[boosters]`, `[negators]` sections.
    /// Blank lines and lines starting with `#` are ignored. Throws ConfigError.
    static Lexicon read_file(const std::filesystem::path& path);

    void add_sentiment(std::string_view term, int strength);
    void add_booster(std::string_view term, int boost);
    void add_negator(std::string_view term);

    TokenInfo lookup(std::string_view token) const;
    std::size_t size() const { return words_.size(); }

private:
    void insert(std::string_view term, TokenInfo info);

    struct Hash {
        using is_transparent = void;
        std::size_t operator()(std::string_view s) const { return std::hash<std::string_view>{}(s); }
    };
    std::unordered_map<std::string, TokenInfo, Hash, std::equal_to<>> words_;
};

struct ScoringRules {
    /// A booster applies when it sits within this many tokens before the sentiment word.
    std::size_t booster_window = 1;
    /// A negator within this many preceding tokens neutralizes the sentiment word.
    std::size_t negator_window = 2;
};

/// Case-folded maximal runs of letters, digits and apostrophes. Bytes >= 0x80
/// count as letters so UTF-8 words stay whole; U+2019 is read as an apostrophe.
std::vector<std::string> tokenize(std::string_view text);

SentimentScore score_tokens(std::span<const std::string> tokens, const Lexicon& lexicon,
                            const ScoringRules& rules = {});

inline SentimentScore score_text(std::string_view text, const Lexicon& lexicon, const ScoringRules& rules = {}) {
    auto tokens = tokenize(text);
    return score_tokens(tokens, lexicon, rules);
}

inline constexpr int kDefaultFilterThreshold = -1;

/// Kept iff combined >= threshold.
constexpr bool passes_filter(SentimentScore s, int threshold = kDefaultFilterThreshold) {
    return s.combined >= threshold;
}

}  // namespace tweetswing
