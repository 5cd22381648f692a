#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace tweetswing::app {

/// Flag values as given on the command line; validated per stage.
struct RunConfig {
    std::filesystem::path corpus;
    std::filesystem::path terms = std::filesystem::path(TWEETSWING_DATA_DIR) / "terms.csv";
    std::filesystem::path lexicon;
    std::filesystem::path baseline;
    std::filesystem::path national = std::filesystem::path(TWEETSWING_DATA_DIR) / "national_2010.csv";
    std::string from = "2014-11-28";
    std::string to = "2015-03-09";
    std::string exclusion = "literal";
    int threshold = -1;
    std::vector<std::string> groups;  // empty: default report set
    std::filesystem::path out = "out";
    std::optional<std::filesystem::path> totals_override;
    std::optional<std::filesystem::path> scored;  // default <out>/scored.csv
    std::optional<std::filesystem::path> shares;  // default <out>/shares.csv
    unsigned jobs = 1;
};

/// Output file names inside RunConfig::out.
namespace files {
inline constexpr const char* scored = "scored.csv";
inline constexpr const char* shares = "shares.csv";
inline constexpr const char* national = "national.csv";
inline constexpr const char* seats = "seats.csv";
inline constexpr const char* summary = "summary.txt";
}  // namespace files

/// Each command returns the process exit code: 0 iff every artifact was written.
/// Problems and counters go to `diag`; the forecast summary also goes to `out`.
int cmd_score(const RunConfig& config, std::ostream& diag);
int cmd_aggregate(const RunConfig& config, std::ostream& diag);
int cmd_forecast(const RunConfig& config, std::ostream& out, std::ostream& diag);
int cmd_run(const RunConfig& config, std::ostream& out, std::ostream& diag);

}  // namespace tweetswing::app
