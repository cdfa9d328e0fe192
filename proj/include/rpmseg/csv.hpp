#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace rpmseg::csv {

using Row = std::vector<std::string>;

// RFC 4180 reader: quoted fields, embedded commas/newlines, "" escapes.
// Accepts LF and CRLF line endings. A trailing newline does not produce
// an empty record.
std::vector<Row> parse(std::string_view text);

// Quotes a field only when needed.
std::string escape(std::string_view field);

std::string write_row(const Row& row);

} // namespace rpmseg::csv
