#include "app/commands.hpp"

#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include "app/manifest.hpp"
#include "tweetswing/aggregation.hpp"
#include "tweetswing/corpus.hpp"
#include "tweetswing/csv.hpp"
#include "tweetswing/entity_matcher.hpp"
#include "tweetswing/errors.hpp"
#include "tweetswing/pipeline.hpp"
#include "tweetswing/sentiment.hpp"
#include "tweetswing/swing.hpp"

namespace tweetswing::app {
namespace {

namespace fs = std::filesystem;

/// Collects every configuration problem so they can be reported together.
class Problems {
public:
    void require_file(const char* flag, const fs::path& path) {
        if (path.empty()) {
            add(std::string(flag) + " is required");
        } else if (!fs::is_regular_file(path)) {
            add(std::string(flag) + ": file not found: " + path.string());
        }
    }
    void add(std::string message) { messages_.push_back(std::move(message)); }

    /// Prints every problem; true when there were any.
    bool report(std::ostream& diag) const {
        for (const auto& m : messages_) diag << "error: " << m << "\n";
        return !messages_.empty();
    }

private:
    std::vector<std::string> messages_;
};

fs::path scored_path(const RunConfig& c) { return c.scored.value_or(c.out / files::scored); }
fs::path shares_path(const RunConfig& c) { return c.shares.value_or(c.out / files::shares); }

std::optional<DateWindow> check_window(const RunConfig& c, Problems& problems) {
    auto from = parse_utc(c.from);
    auto to = parse_utc(c.to);
    if (!from) problems.add("--from: cannot parse '" + c.from + "'");
    if (!to) problems.add("--to: cannot parse '" + c.to + "'");
    if (!from || !to) return std::nullopt;
    if (!(*from < *to)) {
        problems.add("--from must be before --to");
        return std::nullopt;
    }
    return DateWindow{*from, *to};
}

void ensure_out_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw DataError("cannot create output directory " + dir.string() + ": " + ec.message());
}

/// Writes via a string buffer so a failed stage never leaves a partial artifact.
void write_file(const fs::path& path, const std::string& content) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        out << content;
        if (!out.flush()) throw DataError("cannot write " + path.string());
    }
    fs::rename(tmp, path);
}

fs::path manifest_path(const RunConfig& c, const char* stage) {
    return c.out / (std::string(stage) + ".manifest.json");
}

std::string join(const std::vector<std::string>& items) {
    std::string out;
    for (const auto& s : items) out += (out.empty() ? "" : ",") + s;
    return out;
}

template <typename Fn>
int guarded(std::ostream& diag, Fn&& fn) {
    try {
        return fn();
    } catch (const NoPositiveSignal& e) {
        diag << "error: " << e.what() << "\n";
    } catch (const ConfigError& e) {
        diag << "config error: " << e.what() << "\n";
    } catch (const DataError& e) {
        diag << "data error: " << e.what() << "\n";
    } catch (const std::exception& e) {
        diag << "error: " << e.what() << "\n";
    }
    return 1;
}

}  // namespace

int cmd_score(const RunConfig& c, std::ostream& diag) {
    Problems problems;
    problems.require_file("--corpus", c.corpus);
    problems.require_file("--terms", c.terms);
    problems.require_file("--lexicon", c.lexicon);
    auto window = check_window(c, problems);
    auto exclusion = parse_exclusion_mode(c.exclusion);
    if (!exclusion) problems.add("--exclusion must be 'literal' or 'cross_group'");
    if (c.threshold < -4 || c.threshold > 4) problems.add("--threshold must lie in [-4, 4]");
    if (problems.report(diag)) return 2;

    return guarded(diag, [&] {
        auto matcher = Matcher::compile(read_term_table(c.terms));
        auto lexicon = Lexicon::read_file(c.lexicon);
        Scorer scorer(matcher, lexicon, {*exclusion, c.threshold, {}});
        AggregateSet counts(matcher);

        ensure_out_dir(c.out);
        auto target = scored_path(c);
        auto tmp = target;
        tmp += ".tmp";
        std::ofstream buffer(tmp, std::ios::binary);
        if (!buffer) throw DataError("cannot write " + tmp.string());
        write_scored_header(buffer);
        CorpusReader reader(c.corpus, 65536, c.jobs);
        std::uint64_t out_of_window = 0;
        for (auto batch = reader.next_batch(); !batch.empty(); batch = reader.next_batch()) {
            auto in_window = filter_window(batch, *window);
            out_of_window += batch.size() - in_window.size();
            for (const auto& s : score_tweets(in_window, scorer, c.jobs)) {
                write_scored(buffer, s, matcher);
                counts.add(s.outcome, s.score.combined, s.kept);
            }
        }

        if (!buffer.flush()) throw DataError("cannot write " + tmp.string());
        buffer.close();
        fs::rename(tmp, target);

        const auto& ingest = reader.stats();
        const auto& stream = counts.stream();
        Manifest manifest("score");
        manifest.input("corpus", c.corpus);
        manifest.input("terms", c.terms);
        manifest.input("lexicon", c.lexicon);
        manifest.output(target);
        manifest.config("from", c.from);
        manifest.config("to", c.to);
        manifest.config("exclusion", c.exclusion);
        manifest.config("threshold", std::to_string(c.threshold));
        std::vector<std::pair<const char*, std::uint64_t>> tallies{
            {"read", ingest.read},
            {"accepted", ingest.accepted},
            {"duplicate_id", ingest.duplicate_id},
            {"malformed", ingest.malformed},
            {"out_of_window", out_of_window},
            {"no_match", stream.no_match},
            {"excluded_multi", stream.excluded},
            {"filtered_negative", stream.filtered_negative},
            {"kept", stream.kept},
        };
        for (const auto& [k, v] : tallies) {
            manifest.count(k, v);
            diag << k << ": " << v << "\n";
        }
        manifest.write(manifest_path(c, "score"));
        return 0;
    });
}

int cmd_aggregate(const RunConfig& c, std::ostream& diag) {
    Problems problems;
    if (c.totals_override) {
        problems.require_file("--totals-override", *c.totals_override);
    } else {
        problems.require_file("--scored", scored_path(c));
        problems.require_file("--terms", c.terms);
    }
    if (problems.report(diag)) return 2;

    return guarded(diag, [&] {
        Manifest manifest("aggregate");
        ShareVector result;
        if (c.totals_override) {
            result = read_totals_csv(*c.totals_override);
            manifest.input("totals_override", *c.totals_override);
        } else {
            auto matcher = Matcher::compile(read_term_table(c.terms));
            auto agg = aggregate_scored_file(scored_path(c), matcher);
            auto groups = c.groups.empty() ? default_report_groups() : c.groups;
            manifest.input("scored", scored_path(c));
            manifest.input("terms", c.terms);
            manifest.config("groups", join(groups));
            for (const auto& g : agg.groups()) {
                diag << g.group << ": party_kept=" << g.counts.party_kept << " leader_kept=" << g.counts.leader_kept
                     << " excluded_multi=" << g.counts.excluded_multi
                     << " filtered_negative=" << g.counts.filtered_negative << "\n";
                manifest.count(g.group + ".party_kept", g.counts.party_kept);
                manifest.count(g.group + ".leader_kept", g.counts.leader_kept);
                manifest.count(g.group + ".excluded_multi", g.counts.excluded_multi);
                manifest.count(g.group + ".filtered_negative", g.counts.filtered_negative);
            }
            result = shares(agg, groups);
        }

        std::ostringstream buffer;
        write_shares_csv(buffer, result);
        ensure_out_dir(c.out);
        auto target = c.out / files::shares;
        write_file(target, buffer.str());
        manifest.output(target);
        manifest.write(manifest_path(c, "aggregate"));
        return 0;
    });
}

int cmd_forecast(const RunConfig& c, std::ostream& out, std::ostream& diag) {
    Problems problems;
    problems.require_file("--shares", shares_path(c));
    problems.require_file("--baseline", c.baseline);
    problems.require_file("--national", c.national);
    if (problems.report(diag)) return 2;

    return guarded(diag, [&] {
        auto twitter = read_shares_csv(shares_path(c));
        auto national = NationalBaseline::read_csv(c.national);
        std::set<std::string> known;
        for (const auto& e : twitter.entries) known.insert(e.group);
        for (const auto& [g, _] : national.share_pct) known.insert(g);
        auto constituencies = read_constituencies_csv(c.baseline, known);
        if (constituencies.empty()) throw DataError(c.baseline.string() + ": no constituencies");

        auto changes = national_changes(twitter, national);
        auto forecast = forecast_seats(constituencies, changes, c.jobs);

        std::ostringstream national_csv, seats_csv, summary;
        write_national_csv(national_csv, forecast, twitter, national, changes);
        write_seats_csv(seats_csv, forecast);
        write_summary(summary, forecast);

        ensure_out_dir(c.out);
        write_file(c.out / files::national, national_csv.str());
        write_file(c.out / files::seats, seats_csv.str());
        write_file(c.out / files::summary, summary.str());
        out << summary.str();

        Manifest manifest("forecast");
        manifest.input("shares", shares_path(c));
        manifest.input("baseline", c.baseline);
        manifest.input("national", c.national);
        manifest.output(c.out / files::national);
        manifest.output(c.out / files::seats);
        manifest.output(c.out / files::summary);
        manifest.count("constituencies", forecast.total_seats);
        for (const auto& [g, seats] : forecast.seats) manifest.count("seats." + g, seats);
        manifest.write(manifest_path(c, "forecast"));
        return 0;
    });
}

int cmd_run(const RunConfig& c, std::ostream& out, std::ostream& diag) {
    Problems problems;
    problems.require_file("--corpus", c.corpus);
    problems.require_file("--terms", c.terms);
    problems.require_file("--lexicon", c.lexicon);
    problems.require_file("--baseline", c.baseline);
    problems.require_file("--national", c.national);
    if (problems.report(diag)) return 2;

    // Later stages read the files earlier stages wrote, exactly as a staged run would.
    RunConfig staged = c;
    staged.scored.reset();
    staged.shares.reset();
    if (int rc = cmd_score(staged, diag)) return rc;
    if (int rc = cmd_aggregate(staged, diag)) return rc;
    return cmd_forecast(staged, out, diag);
}

}  // namespace tweetswing::app
