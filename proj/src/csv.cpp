#include "rpmseg/csv.hpp"

#include "rpmseg/errors.hpp"

namespace rpmseg::csv {

std::vector<Row> parse(std::string_view text) {
    std::vector<Row> rows;
    Row current;
    std::string field;
    bool in_quotes = false;
    bool field_started = false; // current record has at least one character/field
    std::size_t i = 0;
    const std::size_t n = text.size();

    auto end_field = [&] {
        current.push_back(std::move(field));
        field.clear();
    };
    auto end_record = [&] {
        end_field();
        rows.push_back(std::move(current));
        current.clear();
        field_started = false;
    };

    while (i < n) {
        char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < n && text[i + 1] == '"') {
                    field += '"';
                    i += 2;
                } else {
                    in_quotes = false;
                    ++i;
                }
            } else {
                field += c;
                ++i;
            }
            continue;
        }
        switch (c) {
        case '"':
            in_quotes = true;
            field_started = true;
            ++i;
            break;
        case ',':
            end_field();
            field_started = true;
            ++i;
            break;
        case '\r':
            ++i;
            break;
        case '\n':
            end_record();
            ++i;
            break;
        default:
            field += c;
            field_started = true;
            ++i;
            break;
        }
    }
    if (in_quotes)
        throw ParseError("unterminated quoted field", rows.size() + 1);
    if (field_started || !field.empty() || !current.empty())
        end_record();
    return rows;
}

std::string escape(std::string_view field) {
    bool needs_quotes = field.find_first_of(",\"\r\n") != std::string_view::npos;
    if (!needs_quotes)
        return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"')
            out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string write_row(const Row& row) {
    std::string out;
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (i)
            out += ',';
        out += escape(row[i]);
    }
    out += '\n';
    return out;
}

} // namespace rpmseg::csv
