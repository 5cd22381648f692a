#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace tweetswing::app {

/// Hex SHA-256 of a file's bytes. Throws DataError if unreadable.
std::string sha256_file(const std::filesystem::path& path);

/// Everything needed to reproduce one stage: inputs and outputs with content
/// digests, the effective configuration, and the stage's counters.
class Manifest {
public:
    explicit Manifest(std::string stage) : stage_(std::move(stage)) {}

    void input(const std::string& role, const std::filesystem::path& path);
    void output(const std::filesystem::path& path);
    void config(const std::string& key, std::string value);
    void count(const std::string& key, std::uint64_t value);

    /// Writes pretty JSON with sorted keys, so equal runs give equal bytes.
    void write(const std::filesystem::path& path) const;

private:
    std::string stage_;
    std::vector<std::pair<std::string, std::filesystem::path>> inputs_;
    std::vector<std::filesystem::path> outputs_;
    std::map<std::string, std::string> config_;
    std::map<std::string, std::uint64_t> counts_;
};

}  // namespace tweetswing::app
