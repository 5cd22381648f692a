#pragma once

#include <stdexcept>
#include <string>

namespace tweetswing {

/// Invalid or inconsistent configuration (term table, lexicon, thresholds).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Unreadable or structurally invalid input data.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when normalization has nothing positive to normalize by.
class NoPositiveSignal : public std::runtime_error {
public:
    NoPositiveSignal() : std::runtime_error("no positive signal: total sentiment over report groups is <= 0") {}
};

}  // namespace tweetswing
