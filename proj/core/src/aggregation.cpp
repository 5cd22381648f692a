#include "tweetswing/aggregation.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>

#include "tweetswing/csv.hpp"
#include "tweetswing/errors.hpp"

namespace tweetswing {

AggregateSet::AggregateSet(const Matcher& matcher)
    : group_ids_(matcher.groups().begin(), matcher.groups().end()),
      tallies_(matcher.pattern_count()),
      counts_(group_ids_.size()) {
    for (std::size_t t = 0; t < matcher.pattern_count(); ++t) {
        const auto& e = matcher.entry(t);
        terms_.push_back({matcher.group_of(t), e.kind, e.weight});
    }
}

void AggregateSet::accumulate(const MatchOutcome& outcome, SentimentScore score, int threshold) {
    add(outcome, score.combined, passes_filter(score, threshold));
}

void AggregateSet::add(const MatchOutcome& outcome, int combined, bool kept) {
    if (std::holds_alternative<NoMatch>(outcome)) {
        ++stream_.no_match;
    } else if (const auto* ex = std::get_if<Excluded>(&outcome)) {
        ++stream_.excluded;
        for (auto g : ex->groups) ++counts_.at(g).excluded_multi;
    } else {
        const auto& a = std::get<Assigned>(outcome);
        auto& counts = counts_.at(a.group);
        if (!kept) {
            ++stream_.filtered_negative;
            ++counts.filtered_negative;
            return;
        }
        ++stream_.kept;
        auto& tally = tallies_.at(a.term);
        tally.combined_sum += combined;
        ++tally.kept;
        if (terms_[a.term].kind == EntityKind::party) {
            ++counts.party_kept;
        } else {
            ++counts.leader_kept;
        }
    }
}

void AggregateSet::merge(const AggregateSet& other) {
    if (group_ids_ != other.group_ids_ || terms_ != other.terms_) {
        throw DataError("cannot merge aggregates built from different term tables");
    }
    for (std::size_t t = 0; t < tallies_.size(); ++t) {
        tallies_[t].combined_sum += other.tallies_[t].combined_sum;
        tallies_[t].kept += other.tallies_[t].kept;
    }
    for (std::size_t g = 0; g < counts_.size(); ++g) {
        counts_[g].party_kept += other.counts_[g].party_kept;
        counts_[g].leader_kept += other.counts_[g].leader_kept;
        counts_[g].excluded_multi += other.counts_[g].excluded_multi;
        counts_[g].filtered_negative += other.counts_[g].filtered_negative;
    }
    stream_.no_match += other.stream_.no_match;
    stream_.excluded += other.stream_.excluded;
    stream_.filtered_negative += other.stream_.filtered_negative;
    stream_.kept += other.stream_.kept;
}

GroupAggregate AggregateSet::group(std::size_t index) const {
    GroupAggregate out;
    out.group = group_ids_.at(index);
    out.counts = counts_[index];
    for (std::size_t t = 0; t < terms_.size(); ++t) {
        if (terms_[t].group != index) continue;
        double contribution = terms_[t].weight * static_cast<double>(tallies_[t].combined_sum);
        (terms_[t].kind == EntityKind::party ? out.party_sum : out.leader_sum) += contribution;
    }
    return out;
}

std::vector<GroupAggregate> AggregateSet::groups() const {
    std::vector<GroupAggregate> out;
    for (std::size_t g = 0; g < group_ids_.size(); ++g) out.push_back(group(g));
    return out;
}

bool operator==(const AggregateSet& a, const AggregateSet& b) {
    return a.group_ids_ == b.group_ids_ && a.terms_ == b.terms_ && a.tallies_ == b.tallies_ &&
           a.counts_ == b.counts_ && a.stream_ == b.stream_;
}

const ShareEntry* ShareVector::find(std::string_view group) const {
    auto it = std::find_if(entries.begin(), entries.end(), [&](const ShareEntry& e) { return e.group == group; });
    return it == entries.end() ? nullptr : &*it;
}

ShareVector normalize(std::vector<ShareEntry> entries) {
    std::sort(entries.begin(), entries.end(), [](const ShareEntry& a, const ShareEntry& b) { return a.group < b.group; });
    for (std::size_t i = 1; i < entries.size(); ++i) {
        if (entries[i].group == entries[i - 1].group) throw DataError("duplicate group '" + entries[i].group + "'");
    }
    double total = 0.0;
    for (const auto& e : entries) {
        if (!std::isfinite(e.total_sum)) throw DataError("non-finite total for group '" + e.group + "'");
        total += std::max(0.0, e.total_sum);
    }
    if (!(total > 0.0)) throw NoPositiveSignal{};
    for (auto& e : entries) e.proportion = std::max(0.0, e.total_sum) / total;
    return ShareVector{std::move(entries)};
}

ShareVector shares(const AggregateSet& aggregates, std::span<const std::string> report_groups) {
    std::vector<std::string> wanted(report_groups.begin(), report_groups.end());
    if (wanted.empty()) wanted.assign(aggregates.group_ids().begin(), aggregates.group_ids().end());

    std::vector<ShareEntry> entries;
    for (const auto& id : wanted) {
        auto ids = aggregates.group_ids();
        auto it = std::find(ids.begin(), ids.end(), id);
        if (it == ids.end()) throw ConfigError("report group '" + id + "' does not appear in the term table");
        auto agg = aggregates.group(static_cast<std::size_t>(it - ids.begin()));
        entries.push_back({id, agg.party_sum, agg.leader_sum, agg.party_sum + agg.leader_sum, 0.0});
    }
    return normalize(std::move(entries));
}

std::vector<std::string> default_report_groups() {
    return {"CON", "DUP", "GRN", "LAB", "LD", "PC", "SF", "SNP", "UKIP"};
}

void write_shares_csv(std::ostream& out, const ShareVector& shares) {
    csv::write_row(out, {"group", "party_sum", "leader_sum", "total_sum", "proportion"});
    auto opt = [](const std::optional<double>& v) { return v ? csv::fixed(*v, 9) : std::string{}; };
    for (const auto& e : shares.entries) {
        csv::write_row(out, {e.group, opt(e.party_sum), opt(e.leader_sum), csv::fixed(e.total_sum, 9),
                             csv::fixed(e.proportion, 9)});
    }
}

namespace {

std::optional<double> parse_number(const std::string& text, const std::string& where) {
    if (text.empty()) return std::nullopt;
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(v)) {
        throw DataError(where + ": '" + text + "' is not a number");
    }
    return v;
}

}  // namespace

ShareVector read_shares_csv(const std::filesystem::path& path) {
    auto table = csv::Table::read_file(path.string());
    auto group_col = table.require_column("group");
    auto prop_col = table.require_column("proportion");
    auto party_col = table.column("party_sum");
    auto leader_col = table.column("leader_sum");
    auto total_col = table.column("total_sum");

    ShareVector out;
    for (std::size_t i = 0; i < table.rows().size(); ++i) {
        const auto& row = table.rows()[i];
        auto where = table.source() + ":" + std::to_string(table.line_of(i));
        ShareEntry e;
        e.group = row[group_col];
        auto p = parse_number(row[prop_col], where);
        if (!p || *p < 0.0 || *p > 1.0) throw DataError(where + ": proportion must lie in [0, 1]");
        e.proportion = *p;
        if (party_col) e.party_sum = parse_number(row[*party_col], where);
        if (leader_col) e.leader_sum = parse_number(row[*leader_col], where);
        std::optional<double> total = total_col ? parse_number(row[*total_col], where) : std::nullopt;
        e.total_sum = total.value_or(e.proportion);
        if (out.find(e.group)) throw DataError(where + ": duplicate group '" + e.group + "'");
        out.entries.push_back(std::move(e));
    }
    std::sort(out.entries.begin(), out.entries.end(),
              [](const ShareEntry& a, const ShareEntry& b) { return a.group < b.group; });
    return out;
}

ShareVector read_totals_csv(const std::filesystem::path& path) {
    auto table = csv::Table::read_file(path.string());
    auto group_col = table.require_column("group");
    auto total_col = table.column("total_sum");
    if (!total_col) total_col = table.column("total");
    if (!total_col) throw DataError(table.source() + ": missing column 'total_sum'");
    auto party_col = table.column("party_sum");
    auto leader_col = table.column("leader_sum");

    std::vector<ShareEntry> entries;
    for (std::size_t i = 0; i < table.rows().size(); ++i) {
        const auto& row = table.rows()[i];
        auto where = table.source() + ":" + std::to_string(table.line_of(i));
        ShareEntry e;
        e.group = row[group_col];
        auto total = parse_number(row[*total_col], where);
        if (!total) throw DataError(where + ": missing total");
        e.total_sum = *total;
        if (party_col) e.party_sum = parse_number(row[*party_col], where);
        if (leader_col) e.leader_sum = parse_number(row[*leader_col], where);
        entries.push_back(std::move(e));
    }
    return normalize(std::move(entries));
}

}  // namespace tweetswing
