#include "tweetswing/csv.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>

#include "tweetswing/errors.hpp"

namespace tweetswing::csv {

Row split_line(std::string_view line) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    Row fields;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else {
            field += c;
        }
    }
    fields.push_back(std::move(field));
    return fields;
}

std::string escape(std::string_view field) {
    if (field.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

void write_row(std::ostream& out, const Row& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out << ',';
        out << escape(fields[i]);
    }
    out << '\n';
}

std::string fixed(double value, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
    std::string s = buf;
    // "-0.000" -> "0.000"
    if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
    return s;
}

Table Table::read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open " + path);
    return parse(in, path);
}

Table Table::parse(std::istream& in, const std::string& source_name) {
    Table table;
    table.source_ = source_name;
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
        if (line.empty() || line == "\r") continue;
        Row row = split_line(line);
        if (!have_header) {
            table.header_ = std::move(row);
            have_header = true;
            continue;
        }
        if (row.size() != table.header_.size()) {
            throw DataError(source_name + ":" + std::to_string(line_no) + ": expected " +
                            std::to_string(table.header_.size()) + " fields, found " +
                            std::to_string(row.size()));
        }
        table.rows_.push_back(std::move(row));
        table.lines_.push_back(line_no);
    }
    if (!have_header) throw DataError(source_name + ": missing CSV header");
    return table;
}

std::optional<std::size_t> Table::column(std::string_view name) const {
    for (std::size_t i = 0; i < header_.size(); ++i) {
        if (header_[i] == name) return i;
    }
    return std::nullopt;
}

std::size_t Table::require_column(std::string_view name) const {
    if (auto c = column(name)) return *c;
    throw DataError(source_ + ": missing column '" + std::string(name) + "'");
}

}  // namespace tweetswing::csv
