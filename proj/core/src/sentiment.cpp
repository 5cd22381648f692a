#include "tweetswing/sentiment.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>

#include "tweetswing/entity_matcher.hpp"
#include "tweetswing/errors.hpp"

namespace tweetswing {
namespace {

bool is_word_byte(unsigned char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '\'' || c >= 0x80;
}

std::string_view strip(std::string_view s) {
    while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    return s;
}

}  // namespace

void Lexicon::insert(std::string_view term, TokenInfo info) {
    auto key = fold_case(term);
    if (key.empty()) throw ConfigError("lexicon: empty term");
    if (!words_.emplace(key, info).second) {
        throw ConfigError("lexicon: term '" + key + "' appears more than once");
    }
}

void Lexicon::add_sentiment(std::string_view term, int strength) {
    if (strength == 0 || strength < -5 || strength > 5) {
        throw ConfigError("lexicon: strength for '" + std::string(term) + "' must be in -5..-1 or 1..5");
    }
    insert(term, {TokenRole::sentiment, strength});
}

void Lexicon::add_booster(std::string_view term, int boost) {
    if (boost < 1 || boost > 2) throw ConfigError("lexicon: booster '" + std::string(term) + "' must be 1 or 2");
    insert(term, {TokenRole::booster, boost});
}

void Lexicon::add_negator(std::string_view term) { insert(term, {TokenRole::negator, 0}); }

TokenInfo Lexicon::lookup(std::string_view token) const {
    auto it = words_.find(token);
    return it == words_.end() ? TokenInfo{} : it->second;
}

Lexicon Lexicon::read_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open lexicon file " + path.string());

    enum class Section { none, sentiment, boosters, negators } section = Section::none;
    Lexicon lex;
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        auto line = strip(raw);
        if (line.empty() || line.front() == '#') continue;
        auto where = path.string() + ":" + std::to_string(line_no);
        if (line == "[sentiment]") { section = Section::sentiment; continue; }
        if (line == "[boosters]") { section = Section::boosters; continue; }
        if (line == "[negators]") { section = Section::negators; continue; }

        auto tab = line.find('\t');
        auto term = strip(line.substr(0, tab));
        int value = 0;
        if (section == Section::sentiment || section == Section::boosters) {
            if (tab == std::string_view::npos) throw ConfigError(where + ": expected term<TAB>value");
            auto num = strip(line.substr(tab + 1));
            if (!num.empty() && num.front() == '+') num.remove_prefix(1);
            auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), value);
            if (ec != std::errc{} || ptr != num.data() + num.size()) {
                throw ConfigError(where + ": '" + std::string(num) + "' is not an integer");
            }
        }
        try {
            switch (section) {
                case Section::sentiment: lex.add_sentiment(term, value); break;
                case Section::boosters: lex.add_booster(term, value); break;
                case Section::negators: lex.add_negator(term); break;
                case Section::none: throw ConfigError("entry outside any section");
            }
        } catch (const ConfigError& e) {
            throw ConfigError(where + ": " + e.what());
        }
    }
    return lex;
}

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    std::string current;
    const auto* bytes = reinterpret_cast<const unsigned char*>(text.data());
    for (std::size_t i = 0; i < text.size(); ++i) {
        unsigned char c = bytes[i];
        // U+2019 RIGHT SINGLE QUOTATION MARK = E2 80 99
        if (c == 0xE2 && i + 2 < text.size() && bytes[i + 1] == 0x80 && bytes[i + 2] == 0x99) {
            current += '\'';
            i += 2;
            continue;
        }
        if (is_word_byte(c)) {
            current += (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : static_cast<char>(c);
        } else if (!current.empty()) {
            tokens.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

SentimentScore score_tokens(std::span<const std::string> tokens, const Lexicon& lexicon, const ScoringRules& rules) {
    std::vector<TokenInfo> info;
    info.reserve(tokens.size());
    for (const auto& t : tokens) info.push_back(lexicon.lookup(t));

    int positive = 1;
    int negative = -1;
    for (std::size_t i = 0; i < info.size(); ++i) {
        if (info[i].role != TokenRole::sentiment) continue;

        bool negated = false;
        for (std::size_t back = 1; back <= rules.negator_window && back <= i; ++back) {
            if (info[i - back].role == TokenRole::negator) negated = true;
        }
        if (negated) continue;

        int strength = info[i].value;
        for (std::size_t back = 1; back <= rules.booster_window && back <= i; ++back) {
            if (info[i - back].role == TokenRole::booster) {
                int boost = info[i - back].value;
                strength = strength > 0 ? std::min(5, strength + boost) : std::max(-5, strength - boost);
                break;
            }
        }
        positive = std::max(positive, strength);
        negative = std::min(negative, strength);
    }
    return SentimentScore::make(positive, negative);
}

}  // namespace tweetswing
