#include "tweetswing/entity_matcher.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <deque>
#include <unordered_set>

#include "tweetswing/csv.hpp"
#include "tweetswing/errors.hpp"

namespace tweetswing {
namespace {

constexpr std::size_t kAlphabet = 256;

constexpr unsigned char fold_byte(unsigned char c) {
    return (c >= 'A' && c <= 'Z') ? static_cast<unsigned char>(c - 'A' + 'a') : c;
}

constexpr bool is_letter(unsigned char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z'); }

bool valid_group_id(std::string_view id) {
    return !id.empty() && std::all_of(id.begin(), id.end(), [](unsigned char c) {
        return (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
    });
}

std::string trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t");
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(" \t");
    return std::string(s.substr(b, e - b + 1));
}

}  // namespace

std::string_view to_string(EntityKind kind) { return kind == EntityKind::party ? "party" : "leader"; }

std::optional<EntityKind> parse_entity_kind(std::string_view text) {
    if (text == "party") return EntityKind::party;
    if (text == "leader") return EntityKind::leader;
    return std::nullopt;
}

std::string_view to_string(ExclusionMode mode) {
    return mode == ExclusionMode::literal ? "literal" : "cross_group";
}

std::optional<ExclusionMode> parse_exclusion_mode(std::string_view text) {
    if (text == "literal") return ExclusionMode::literal;
    if (text == "cross_group") return ExclusionMode::cross_group;
    return std::nullopt;
}

std::string fold_case(std::string_view text) {
    std::string out(text);
    for (auto& c : out) c = static_cast<char>(fold_byte(static_cast<unsigned char>(c)));
    return out;
}

std::vector<TermEntry> read_term_table(const std::filesystem::path& path) {
    auto table = csv::Table::read_file(path.string());
    auto term_col = table.require_column("term");
    auto kind_col = table.require_column("kind");
    auto group_col = table.require_column("group");
    auto weight_col = table.column("weight");

    std::vector<TermEntry> entries;
    for (std::size_t i = 0; i < table.rows().size(); ++i) {
        const auto& row = table.rows()[i];
        auto where = table.source() + ":" + std::to_string(table.line_of(i));
        TermEntry entry;
        entry.term = trim(row[term_col]);
        auto kind = parse_entity_kind(trim(row[kind_col]));
        if (!kind) throw ConfigError(where + ": kind must be 'party' or 'leader'");
        entry.kind = *kind;
        entry.group = trim(row[group_col]);
        if (weight_col) {
            auto w = trim(row[*weight_col]);
            if (!w.empty()) {
                auto [ptr, ec] = std::from_chars(w.data(), w.data() + w.size(), entry.weight);
                if (ec != std::errc{} || ptr != w.data() + w.size()) {
                    throw ConfigError(where + ": weight '" + w + "' is not a number");
                }
            }
        }
        entries.push_back(std::move(entry));
    }
    return entries;
}

Matcher Matcher::compile(std::vector<TermEntry> entries) {
    if (entries.empty()) throw ConfigError("term table is empty");

    std::unordered_set<std::string> folded_terms;
    for (const auto& e : entries) {
        if (e.term.empty()) throw ConfigError("term table contains an empty term");
        if (!valid_group_id(e.group)) throw ConfigError("term '" + e.term + "': invalid group id '" + e.group + "'");
        if (!(e.weight > 0.0 && e.weight <= 1.0) || !std::isfinite(e.weight)) {
            throw ConfigError("term '" + e.term + "': weight must lie in (0, 1]");
        }
        if (!folded_terms.insert(fold_case(e.term)).second) {
            throw ConfigError("duplicate term (case-insensitive): '" + e.term + "'");
        }
    }

    Matcher m;
    m.entries_ = std::move(entries);
    for (const auto& e : m.entries_) m.groups_.push_back(e.group);
    std::sort(m.groups_.begin(), m.groups_.end());
    m.groups_.erase(std::unique(m.groups_.begin(), m.groups_.end()), m.groups_.end());
    for (const auto& e : m.entries_) m.term_group_.push_back(*m.find_group(e.group));

    // Trie.
    m.states_.emplace_back();
    m.next_.assign(kAlphabet, -1);
    for (std::size_t t = 0; t < m.entries_.size(); ++t) {
        std::int32_t s = 0;
        for (unsigned char c : m.entries_[t].term) {
            const std::size_t slot = static_cast<std::size_t>(s) * kAlphabet + fold_byte(c);
            if (m.next_[slot] < 0) {
                State st;
                st.depth = m.states_[static_cast<std::size_t>(s)].depth + 1;
                m.next_[slot] = static_cast<std::int32_t>(m.states_.size());
                m.states_.push_back(st);
                m.next_.resize(m.states_.size() * kAlphabet, -1);
            }
            s = m.next_[slot];
        }
        m.states_[static_cast<std::size_t>(s)].output = static_cast<std::int32_t>(t);
    }

    // Failure links by BFS; missing transitions are filled to give a full DFA.
    std::deque<std::int32_t> queue;
    for (std::size_t c = 0; c < kAlphabet; ++c) {
        auto& slot = m.next_[c];
        if (slot < 0) {
            slot = 0;
        } else {
            m.states_[static_cast<std::size_t>(slot)].fail = 0;
            queue.push_back(slot);
        }
    }
    while (!queue.empty()) {
        auto s = static_cast<std::size_t>(queue.front());
        queue.pop_front();
        for (std::size_t c = 0; c < kAlphabet; ++c) {
            auto child = m.next_[s * kAlphabet + c];
            auto via_fail = m.next_[static_cast<std::size_t>(m.states_[s].fail) * kAlphabet + c];
            if (child < 0) {
                m.next_[s * kAlphabet + c] = via_fail;
                continue;
            }
            auto& cs = m.states_[static_cast<std::size_t>(child)];
            cs.fail = via_fail;
            const auto& fs = m.states_[static_cast<std::size_t>(via_fail)];
            cs.output_link = fs.output >= 0 ? via_fail : fs.output_link;
            queue.push_back(child);
        }
    }
    return m;
}

std::optional<std::size_t> Matcher::find_group(std::string_view id) const {
    auto it = std::lower_bound(groups_.begin(), groups_.end(), id);
    if (it == groups_.end() || *it != id) return std::nullopt;
    return static_cast<std::size_t>(it - groups_.begin());
}

std::optional<std::size_t> Matcher::find_term(std::string_view term) const {
    auto folded = fold_case(term);
    for (std::size_t t = 0; t < entries_.size(); ++t) {
        if (fold_case(entries_[t].term) == folded) return t;
    }
    return std::nullopt;
}

std::vector<TermMatch> Matcher::raw_hits(std::string_view text) const {
    std::vector<TermMatch> hits;
    const auto* bytes = reinterpret_cast<const unsigned char*>(text.data());
    const std::size_t n = text.size();
    std::size_t s = 0;
    for (std::size_t i = 0; i < n; ++i) {
        s = static_cast<std::size_t>(next_[s * kAlphabet + fold_byte(bytes[i])]);
        std::int32_t out = states_[s].output >= 0 ? static_cast<std::int32_t>(s) : states_[s].output_link;
        while (out >= 0) {
            const auto& st = states_[static_cast<std::size_t>(out)];
            std::size_t end = i + 1;
            std::size_t begin = end - st.depth;
            bool left_ok = begin == 0 || !is_letter(bytes[begin - 1]);
            bool right_ok = end == n || !is_letter(bytes[end]);
            if (left_ok && right_ok) hits.push_back({static_cast<std::size_t>(st.output), begin, end});
            out = st.output_link;
        }
    }
    return hits;
}

std::vector<TermMatch> match_terms(std::string_view text, const Matcher& matcher) {
    auto hits = matcher.raw_hits(text);
    if (hits.size() > 1) {
        std::sort(hits.begin(), hits.end(), [](const TermMatch& a, const TermMatch& b) {
            auto la = a.end - a.begin;
            auto lb = b.end - b.begin;
            if (la != lb) return la > lb;
            return a.begin < b.begin;
        });
        std::vector<TermMatch> kept;
        for (const auto& h : hits) {
            bool overlaps = std::any_of(kept.begin(), kept.end(), [&](const TermMatch& k) {
                return h.begin < k.end && k.begin < h.end;
            });
            if (!overlaps) kept.push_back(h);
        }
        std::sort(kept.begin(), kept.end(), [](const TermMatch& a, const TermMatch& b) { return a.begin < b.begin; });
        hits = std::move(kept);
    }

    std::vector<TermMatch> distinct;
    for (const auto& h : hits) {
        bool seen = std::any_of(distinct.begin(), distinct.end(), [&](const TermMatch& d) { return d.term == h.term; });
        if (!seen) distinct.push_back(h);
    }
    return distinct;
}

MatchOutcome classify(std::span<const TermMatch> matches, const Matcher& matcher, ExclusionMode mode) {
    if (matches.empty()) return NoMatch{};

    std::vector<std::size_t> groups;
    for (const auto& m : matches) groups.push_back(matcher.group_of(m.term));
    std::sort(groups.begin(), groups.end());
    groups.erase(std::unique(groups.begin(), groups.end()), groups.end());

    bool exclude = mode == ExclusionMode::literal ? matches.size() >= 2 : groups.size() >= 2;
    if (exclude) return Excluded{std::move(groups), matches.size()};

    // One group. Under cross_group several same-group terms may remain; the most
    // precise one carries the tweet (party kind, then table order, break ties).
    std::size_t best = matches.front().term;
    for (const auto& m : matches.subspan(1)) {
        const auto& cand = matcher.entry(m.term);
        const auto& cur = matcher.entry(best);
        bool better = cand.weight > cur.weight ||
                      (cand.weight == cur.weight && cand.kind == EntityKind::party && cur.kind == EntityKind::leader) ||
                      (cand.weight == cur.weight && cand.kind == cur.kind && m.term < best);
        if (better) best = m.term;
    }
    const auto& e = matcher.entry(best);
    return Assigned{best, matcher.group_of(best), e.kind, e.weight};
}

}  // namespace tweetswing
