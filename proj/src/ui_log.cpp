#include "rpmseg/ui_log.hpp"

#include <algorithm>
#include <ctime>
#include <cstring>

#include <nlohmann/json.hpp>

#include "rpmseg/csv.hpp"
#include "rpmseg/errors.hpp"

namespace rpmseg {

namespace {

std::int64_t parse_timestamp(const std::string& text, const std::string& format,
                             std::size_t row) {
    std::tm tm{};
    const char* rest = ::strptime(text.c_str(), format.c_str(), &tm);
    if (rest == nullptr)
        throw ParseError("malformed timestamp '" + text + "'", row);
    // Allow trailing fractional seconds / timezone text after the matched part.
    return static_cast<std::int64_t>(::timegm(&tm));
}

bool is_absent(const std::string& cell, const std::vector<std::string>& markers) {
    return std::find(markers.begin(), markers.end(), cell) != markers.end();
}

} // namespace

UILog parse_log(std::string_view csv_text, const LogFormatSpec& format) {
    auto rows = csv::parse(csv_text);
    if (rows.empty())
        throw ParseError("missing header row");
    const auto& header = rows.front();

    auto find_col = [&](const std::string& name) -> std::size_t {
        auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end())
            throw ParseError("missing mandatory column '" + name + "'");
        return static_cast<std::size_t>(it - header.begin());
    };
    const std::size_t ts_col = find_col(format.timestamp_column);
    const std::size_t type_col = find_col(format.type_column);

    UILog log;
    log.interactions.reserve(rows.size() - 1);
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        UserInteraction ui;
        if (ts_col >= row.size() || type_col >= row.size())
            throw ParseError("too few fields", r);
        ui.timestamp_text = row[ts_col];
        ui.timestamp = parse_timestamp(ui.timestamp_text, format.timestamp_format, r);
        ui.ui_type = row[type_col];
        for (std::size_t c = 0; c < header.size() && c < row.size(); ++c) {
            if (c == ts_col || c == type_col)
                continue;
            if (is_absent(row[c], format.absent_markers))
                continue;
            ui.params.emplace_back(header[c], row[c]);
        }
        log.interactions.push_back(std::move(ui));
    }
    std::stable_sort(log.interactions.begin(), log.interactions.end(),
                     [](const UserInteraction& a, const UserInteraction& b) {
                         return a.timestamp < b.timestamp;
                     });
    return log;
}

ContextSchema ContextSchema::from_json(const nlohmann::json& j) {
    ContextSchema schema;
    for (auto& [type, params] : j.at("context_params").items())
        schema.context_params[type] = params.get<std::vector<std::string>>();
    if (j.contains("default_context")) {
        const std::string s = j["default_context"].get<std::string>();
        if (s == "error")
            schema.fallback = DefaultContext::Error;
        else if (s == "all")
            schema.fallback = DefaultContext::AllParams;
        else if (s == "none")
            schema.fallback = DefaultContext::NoParams;
        else
            throw ConfigError("unknown default_context '" + s + "'");
    }
    return schema;
}

nlohmann::json ContextSchema::to_json() const {
    nlohmann::json params = nlohmann::json::object();
    for (const auto& [type, list] : context_params)
        params[type] = list;
    const char* fb = fallback == DefaultContext::Error     ? "error"
                     : fallback == DefaultContext::AllParams ? "all"
                                                             : "none";
    return nlohmann::json{{"context_params", params}, {"default_context", fb}};
}

std::string make_key(const std::string& ui_type, const Params& context_values) {
    std::string key = ui_type;
    key += '[';
    for (std::size_t i = 0; i < context_values.size(); ++i) {
        if (i)
            key += ';';
        key += context_values[i].first;
        key += '=';
        key += context_values[i].second;
    }
    key += ']';
    return key;
}

NormalizedUI normalize_one(const UserInteraction& ui, const ContextSchema& schema) {
    NormalizedUI out;
    out.ui_type = ui.ui_type;
    out.timestamp = ui.timestamp;

    const std::vector<std::string>* ctx = nullptr;
    auto it = schema.context_params.find(ui.ui_type);
    if (it != schema.context_params.end()) {
        ctx = &it->second;
    } else {
        switch (schema.fallback) {
        case DefaultContext::Error:
            throw ConfigError("ui_type '" + ui.ui_type +
                              "' has no context schema entry");
        case DefaultContext::AllParams:
            for (const auto& p : ui.params)
                out.context_values.push_back(p);
            break;
        case DefaultContext::NoParams:
            break;
        }
    }
    if (ctx) {
        for (const auto& name : *ctx) {
            auto p = std::find_if(ui.params.begin(), ui.params.end(),
                                  [&](const auto& kv) { return kv.first == name; });
            if (p != ui.params.end())
                out.context_values.emplace_back(p->first, p->second);
        }
    }
    out.key = make_key(out.ui_type, out.context_values);
    return out;
}

NormalizedLog normalize(const UILog& log, const ContextSchema& schema) {
    NormalizedLog out;
    out.reserve(log.interactions.size());
    for (const auto& ui : log.interactions)
        out.push_back(normalize_one(ui, schema));
    return out;
}

} // namespace rpmseg
