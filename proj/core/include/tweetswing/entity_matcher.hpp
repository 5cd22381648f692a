#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace tweetswing {

enum class EntityKind { party, leader };

std::string_view to_string(EntityKind kind);
std::optional<EntityKind> parse_entity_kind(std::string_view text);

struct TermEntry {
    std::string term;
    EntityKind kind = EntityKind::party;
    std::string group;
    double weight = 1.0;
};

/// Reads `term,kind,group,weight` (weight column or cell optional, default 1.0).
std::vector<TermEntry> read_term_table(const std::filesystem::path& path);

/// ASCII case folding; other bytes pass through unchanged.
std::string fold_case(std::string_view text);

/// One retained occurrence of a term in a text; [begin, end) byte offsets.
struct TermMatch {
    std::size_t term = 0;
    std::size_t begin = 0;
    std::size_t end = 0;

    friend bool operator==(const TermMatch&, const TermMatch&) = default;
};

struct NoMatch {
    friend bool operator==(const NoMatch&, const NoMatch&) = default;
};

/// Two or more distinct terms matched. `groups` is sorted and unique; in literal
/// mode it can hold a single group when same-party terms co-occur.
struct Excluded {
    std::vector<std::size_t> groups;
    std::size_t distinct_terms = 0;

    friend bool operator==(const Excluded&, const Excluded&) = default;
};

struct Assigned {
    std::size_t term = 0;
    std::size_t group = 0;
    EntityKind kind = EntityKind::party;
    double weight = 1.0;

    friend bool operator==(const Assigned&, const Assigned&) = default;
};

using MatchOutcome = std::variant<NoMatch, Excluded, Assigned>;

enum class ExclusionMode {
    literal,      ///< any two distinct terms exclude the tweet
    cross_group,  ///< only terms from two or more groups exclude it
};

std::string_view to_string(ExclusionMode mode);
std::optional<ExclusionMode> parse_exclusion_mode(std::string_view text);

/// Case-insensitive multi-pattern matcher over a term table.
///
/// Terms are compiled into a dense Aho-Corasick automaton over case-folded bytes,
/// so one pass over a text finds every occurrence of every term. A hit only counts
/// when the bytes on either side are not ASCII letters (or are text edges).
/// Immutable once built; safe to share across threads.
class Matcher {
public:
    /// Throws ConfigError on an empty table, an empty or duplicate (case-folded)
    /// term, a malformed group id, or a weight outside (0, 1].
    static Matcher compile(std::vector<TermEntry> entries);

    std::size_t pattern_count() const { return entries_.size(); }
    const TermEntry& entry(std::size_t term) const { return entries_[term]; }
    std::span<const TermEntry> entries() const { return entries_; }

    /// Group ids, sorted; group indices used by outcomes refer to this list.
    std::span<const std::string> groups() const { return groups_; }
    const std::string& group_name(std::size_t group) const { return groups_[group]; }
    std::size_t group_of(std::size_t term) const { return term_group_[term]; }
    std::optional<std::size_t> find_group(std::string_view id) const;
    /// Case-insensitive lookup of a term's index.
    std::optional<std::size_t> find_term(std::string_view term) const;

    /// Every boundary-respecting occurrence, before overlap suppression, ordered by end offset.
    std::vector<TermMatch> raw_hits(std::string_view text) const;

private:
    struct State {
        std::int32_t output = -1;       // term ending exactly here, or -1
        std::int32_t output_link = -1;  // nearest proper suffix state with an output
        std::int32_t fail = 0;
        std::uint32_t depth = 0;
    };

    std::vector<TermEntry> entries_;
    std::vector<std::string> groups_;
    std::vector<std::size_t> term_group_;
    std::vector<State> states_;
    std::vector<std::int32_t> next_;  // states_.size() * 256 dense transitions
};

/// All occurrences with overlap suppression (longest term wins; earlier start
/// breaks ties), then reduced to one match per distinct term, in text order.
std::vector<TermMatch> match_terms(std::string_view text, const Matcher& matcher);

MatchOutcome classify(std::span<const TermMatch> matches, const Matcher& matcher,
                      ExclusionMode mode = ExclusionMode::literal);

inline MatchOutcome classify_text(std::string_view text, const Matcher& matcher,
                                  ExclusionMode mode = ExclusionMode::literal) {
    auto matches = match_terms(text, matcher);
    return classify(matches, matcher, mode);
}

}  // namespace tweetswing
