#pragma once

#include <stdexcept>
#include <string>

namespace rpmseg {

// Input data could not be parsed (bad timestamp, missing column, ...).
// `row` is the 1-based data row when known, 0 otherwise.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string message, std::size_t row = 0)
        : std::runtime_error(row ? "row " + std::to_string(row) + ": " + message
                                 : std::move(message)),
          row_(row) {}

    std::size_t row() const { return row_; }

private:
    std::size_t row_;
};

// Configuration is inconsistent with the data or out of range.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace rpmseg
