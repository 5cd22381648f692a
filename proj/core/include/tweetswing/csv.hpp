#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tweetswing::csv {

using Row = std::vector<std::string>;

/// Minimal RFC 4180 reader: quoted fields, doubled quotes, CRLF tolerated.
/// Embedded newlines inside quotes are not supported (none of our formats need them).
Row split_line(std::string_view line);

/// Quotes a field only when it contains a comma, quote, or newline.
std::string escape(std::string_view field);

void write_row(std::ostream& out, const Row& fields);

/// Fixed-point rendering with `decimals` places; negative zero is printed as zero.
std::string fixed(double value, int decimals);

/// A header-addressed table loaded from a file. Blank lines are skipped.
class Table {
public:
    static Table read_file(const std::string& path);
    static Table parse(std::istream& in, const std::string& source_name);

    const Row& header() const { return header_; }
    const std::vector<Row>& rows() const { return rows_; }
    /// 1-based line number in the source file for row `i`.
    std::size_t line_of(std::size_t i) const { return lines_[i]; }

    std::optional<std::size_t> column(std::string_view name) const;
    /// Like column() but throws DataError naming the file.
    std::size_t require_column(std::string_view name) const;
    const std::string& source() const { return source_; }

private:
    std::string source_;
    Row header_;
    std::vector<Row> rows_;
    std::vector<std::size_t> lines_;
};

}  // namespace tweetswing::csv
