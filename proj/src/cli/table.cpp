#include <charconv>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "internal.hpp"

namespace entcost::cli {

void Table::add(std::vector<Cell> cells) {
    if (cells.size() != columns.size()) {
        throw std::logic_error("row width does not match the header");
    }
    rows.push_back({std::move(cells), false});
}

void Table::warn(std::string message) { rows.push_back({{std::move(message)}, true}); }

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

namespace {

std::string csv_field(const std::string &s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + "\"";
}

std::string json_string(const std::string &s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out + "\"";
}

struct CsvCell {
    std::string operator()(double v) const { return format_double(v); }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
    std::string operator()(const std::string &v) const { return csv_field(v); }
};

struct JsonCell {
    std::string operator()(double v) const { return std::isfinite(v) ? format_double(v) : "null"; }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
    std::string operator()(const std::string &v) const { return json_string(v); }
};

}  // namespace

void write_csv(const Table &t, std::ostream &os) {
    for (size_t i = 0; i < t.columns.size(); ++i) {
        os << (i ? "," : "") << t.columns[i];
    }
    os << '\n';
    for (const auto &row : t.rows) {
        if (row.warning) {
            os << "# warning: " << std::get<std::string>(row.cells.front()) << '\n';
            continue;
        }
        for (size_t i = 0; i < row.cells.size(); ++i) {
            os << (i ? "," : "") << std::visit(CsvCell{}, row.cells[i]);
        }
        os << '\n';
    }
}

void write_json(const Table &t, std::ostream &os) {
    os << "[";
    for (size_t r = 0; r < t.rows.size(); ++r) {
        const auto &row = t.rows[r];
        os << (r ? ",\n " : "\n ") << "{";
        if (row.warning) {
            os << "\"warning\": " << json_string(std::get<std::string>(row.cells.front()));
        } else {
            for (size_t i = 0; i < row.cells.size(); ++i) {
                os << (i ? ", " : "") << json_string(t.columns[i]) << ": " << std::visit(JsonCell{}, row.cells[i]);
            }
        }
        os << "}";
    }
    os << (t.rows.empty() ? "]\n" : "\n]\n");
}

}  // namespace entcost::cli
