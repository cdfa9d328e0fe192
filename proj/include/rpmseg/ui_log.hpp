#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace rpmseg {

// Ordered parameter map; keys unique per interaction.
using Params = std::vector<std::pair<std::string, std::string>>;

// One timestamped user interaction with a typed parameter map.
struct UserInteraction {
    std::int64_t timestamp = 0;  // seconds since epoch
    std::string timestamp_text;  // original cell, preserved for reports
    std::string ui_type;
    Params params;
};

// A single timestamp-ordered interaction sequence.
struct UILog {
    std::vector<UserInteraction> interactions;
};

// How to read a raw log CSV.
struct LogFormatSpec {
    std::string timestamp_column = "Timestamp";
    std::string type_column = "Type";
    std::string timestamp_format = "%Y-%m-%dT%H:%M:%S"; // strptime syntax
    // Cells equal to one of these are treated as absent, not as a value.
    std::vector<std::string> absent_markers = {"", "--"};
};

// Every remaining column becomes a parameter column. Rows are stably
// sorted by timestamp, so ties preserve file order.
UILog parse_log(std::string_view csv_text, const LogFormatSpec& format = {});

// Policy for ui_types missing from the schema.
enum class DefaultContext { Error, AllParams, NoParams };

// Which parameters of each ui_type identify *where* the action happened.
struct ContextSchema {
    std::map<std::string, std::vector<std::string>> context_params;
    DefaultContext fallback = DefaultContext::Error;

    static ContextSchema from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
};

struct NormalizedUI {
    std::string ui_type;
    Params context_values; // schema order
    std::int64_t timestamp = 0;
    std::string key; // canonical "type[p1=v1;p2=v2]", the symbol identity

    friend bool operator==(const NormalizedUI& a, const NormalizedUI& b) {
        return a.key == b.key;
    }
};

using NormalizedLog = std::vector<NormalizedUI>;

std::string make_key(const std::string& ui_type, const Params& context_values);

// Projects each interaction onto its context parameters. Same length and
// order as the input.
NormalizedLog normalize(const UILog& log, const ContextSchema& schema);

// Context projection of a single interaction (shared with preprocessing).
NormalizedUI normalize_one(const UserInteraction& ui, const ContextSchema& schema);

} // namespace rpmseg
