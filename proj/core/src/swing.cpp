#include "tweetswing/swing.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>

#include "parallel.hpp"
#include "tweetswing/csv.hpp"
#include "tweetswing/errors.hpp"

namespace tweetswing {
namespace {

double parse_pct(const std::string& text, const std::string& where) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(v)) {
        throw DataError(where + ": '" + text + "' is not a number");
    }
    if (v < 0.0 || v > 100.0) throw DataError(where + ": share " + text + " outside [0, 100]");
    return v;
}

}  // namespace

NationalBaseline NationalBaseline::read_csv(const std::filesystem::path& path) {
    auto table = csv::Table::read_file(path.string());
    auto group_col = table.require_column("group");
    auto share_col = table.require_column("share_pct");
    NationalBaseline base;
    for (std::size_t i = 0; i < table.rows().size(); ++i) {
        const auto& row = table.rows()[i];
        auto where = table.source() + ":" + std::to_string(table.line_of(i));
        if (row[group_col].empty()) throw DataError(where + ": empty group");
        std::optional<double> share;
        if (!row[share_col].empty()) share = parse_pct(row[share_col], where);
        if (!base.share_pct.emplace(row[group_col], share).second) {
            throw DataError(where + ": duplicate group '" + row[group_col] + "'");
        }
    }
    return base;
}

std::optional<double> ConstituencyResult::share_of(std::string_view group) const {
    for (const auto& s : shares) {
        if (s.group == group) return s.share;
    }
    return std::nullopt;
}

void validate(const ConstituencyResult& c) {
    if (c.shares.empty()) throw DataError("constituency " + c.id + ": no parties");
    double sum = 0.0;
    std::set<std::string> seen;
    for (const auto& s : c.shares) {
        if (!(s.share >= 0.0 && s.share <= 100.0)) throw DataError("constituency " + c.id + ": share outside [0, 100]");
        if (!seen.insert(s.group).second) throw DataError("constituency " + c.id + ": group " + s.group + " repeated");
        sum += s.share;
    }
    if (sum > 100.5) throw DataError("constituency " + c.id + ": shares sum to " + csv::fixed(sum, 2));
}

std::vector<ConstituencyResult> read_constituencies_csv(const std::filesystem::path& path,
                                                        const std::set<std::string>& known_groups) {
    auto table = csv::Table::read_file(path.string());
    auto id_col = table.require_column("constituency_id");
    auto name_col = table.require_column("name");
    auto group_col = table.require_column("group");
    auto share_col = table.require_column("share_pct");

    std::vector<ConstituencyResult> out;
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < table.rows().size(); ++i) {
        const auto& row = table.rows()[i];
        auto where = table.source() + ":" + std::to_string(table.line_of(i));
        const auto& group = row[group_col];
        if (!known_groups.contains(group)) throw DataError(where + ": unknown group id '" + group + "'");
        if (row[id_col].empty()) throw DataError(where + ": empty constituency_id");
        auto [it, fresh] = index.emplace(row[id_col], out.size());
        if (fresh) out.push_back({row[id_col], row[name_col], {}});
        auto& c = out[it->second];
        if (c.share_of(group)) throw DataError(where + ": group '" + group + "' repeated for " + c.id);
        c.shares.push_back({group, parse_pct(row[share_col], where)});
    }
    for (const auto& c : out) validate(c);
    return out;
}

NationalChanges national_changes(const ShareVector& twitter, const NationalBaseline& base) {
    NationalChanges changes;
    for (const auto& e : twitter.entries) changes[e.group] = 0.0;
    for (const auto& [group, share] : base.share_pct) {
        const auto* tw = twitter.find(group);
        changes[group] = (share && tw) ? 100.0 * tw->proportion - *share : 0.0;
    }
    return changes;
}

std::vector<PartyShare> project_constituency(const ConstituencyResult& c, const NationalChanges& changes) {
    std::vector<PartyShare> projected;
    projected.reserve(c.shares.size());
    for (const auto& s : c.shares) {
        auto it = changes.find(s.group);
        double change = it == changes.end() ? 0.0 : it->second;
        projected.push_back({s.group, std::max(0.0, s.share + change)});
    }
    return projected;
}

Winner constituency_winner(std::span<const PartyShare> projected, const ConstituencyResult& baseline) {
    if (projected.empty()) throw DataError("constituency " + baseline.id + ": nothing to pick a winner from");

    auto ranks_above = [&](const PartyShare& a, const PartyShare& b) {
        if (a.share != b.share) return a.share > b.share;
        double base_a = baseline.share_of(a.group).value_or(0.0);
        double base_b = baseline.share_of(b.group).value_or(0.0);
        if (base_a != base_b) return base_a > base_b;
        return a.group < b.group;
    };
    std::vector<PartyShare> order(projected.begin(), projected.end());
    std::sort(order.begin(), order.end(), ranks_above);
    double margin = order.size() > 1 ? order[0].share - order[1].share : 0.0;
    return Winner{order[0].group, margin};
}

SeatForecast tally(std::vector<ConstituencyForecast> forecasts) {
    SeatForecast out;
    out.constituencies = std::move(forecasts);
    for (const auto& f : out.constituencies) ++out.seats[f.winner.group];
    out.total_seats = out.constituencies.size();
    out.majority_threshold = out.total_seats / 2 + 1;
    for (const auto& [group, seats] : out.seats) {
        if (seats >= out.majority_threshold) out.majority = group;
    }
    return out;
}

SeatForecast forecast_seats(std::span<const ConstituencyResult> constituencies, const NationalChanges& changes,
                            unsigned jobs) {
    std::vector<ConstituencyForecast> forecasts(constituencies.size());
    detail::for_each_range(constituencies.size(), jobs, [&](std::size_t begin, std::size_t end, unsigned) {
        for (std::size_t i = begin; i < end; ++i) {
            const auto& c = constituencies[i];
            auto projected = project_constituency(c, changes);
            auto winner = constituency_winner(projected, c);
            forecasts[i] = {c.id, c.name, std::move(projected), std::move(winner)};
        }
    });
    return tally(std::move(forecasts));
}

void write_seats_csv(std::ostream& out, const SeatForecast& forecast) {
    std::set<std::string> groups;
    for (const auto& f : forecast.constituencies) {
        for (const auto& p : f.projected) groups.insert(p.group);
    }
    csv::Row header{"constituency_id", "name", "winner", "margin"};
    header.insert(header.end(), groups.begin(), groups.end());
    csv::write_row(out, header);

    for (const auto& f : forecast.constituencies) {
        csv::Row row{f.id, f.name, f.winner.group, csv::fixed(f.winner.margin, 3)};
        for (const auto& g : groups) {
            auto it = std::find_if(f.projected.begin(), f.projected.end(), [&](const PartyShare& p) { return p.group == g; });
            row.push_back(it == f.projected.end() ? std::string{} : csv::fixed(it->share, 3));
        }
        csv::write_row(out, row);
    }
}

void write_national_csv(std::ostream& out, const SeatForecast& forecast, const ShareVector& twitter,
                        const NationalBaseline& base, const NationalChanges& changes) {
    std::set<std::string> groups;
    for (const auto& e : twitter.entries) groups.insert(e.group);
    for (const auto& [g, _] : base.share_pct) groups.insert(g);
    for (const auto& [g, _] : forecast.seats) groups.insert(g);

    csv::write_row(out, {"group", "share_2010", "twitter_share", "change", "seats"});
    for (const auto& g : groups) {
        auto b = base.share_pct.find(g);
        bool has_base = b != base.share_pct.end() && b->second.has_value();
        const auto* tw = twitter.find(g);
        auto ch = changes.find(g);
        auto seats = forecast.seats.find(g);
        csv::write_row(out, {g, has_base ? csv::fixed(*b->second, 3) : std::string{},
                             tw ? csv::fixed(100.0 * tw->proportion, 3) : std::string{},
                             (has_base && tw && ch != changes.end()) ? csv::fixed(ch->second, 3) : std::string{},
                             std::to_string(seats == forecast.seats.end() ? 0 : seats->second)});
    }
}

void write_summary(std::ostream& out, const SeatForecast& forecast) {
    std::vector<std::pair<std::string, std::size_t>> ranked(forecast.seats.begin(), forecast.seats.end());
    std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) { return a.second > b.second; });

    out << "constituencies: " << forecast.total_seats << "\n";
    out << "majority threshold: " << forecast.majority_threshold << "\n";
    for (const auto& [group, seats] : ranked) out << group << ": " << seats << "\n";
    if (forecast.majority) {
        out << "verdict: majority " << *forecast.majority << "\n";
    } else {
        out << "verdict: hung parliament";
        if (!ranked.empty()) out << " (largest party " << ranked.front().first << ")";
        out << "\n";
    }
}

}  // namespace tweetswing
