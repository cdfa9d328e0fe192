#pragma once

#include <string>

#include "rpmseg/ui_log.hpp"

namespace fixtures {

// The worked example: a 10-row recording of two "new record" form fills.
inline const std::string kWorkedExampleCsv =
    "Timestamp,Type,Application,Element Label,Element Value\n"
    "2019-03-03T19:02:18,Click button,Web,New Record,--\n"
    "2019-03-03T19:02:23,Edit field,Web,Full Name,Albert Rauf\n"
    "2019-03-03T19:02:27,Edit field,Web,Date,11-04-1986\n"
    "2019-03-03T19:02:39,Edit field,Web,Phone,+ 61 043 512 4834\n"
    "2019-03-03T19:02:47,Click button,Web,Submit,--\n"
    "2019-03-03T19:02:58,Click button,Web,New Record,--\n"
    "2019-03-03T19:03:13,Edit field,Web,Date,20-06-1987\n"
    "2019-03-03T19:03:24,Edit field,Web,Phone,+61 519 790 1066\n"
    "2019-03-03T19:03:43,Edit field,Web,Full Name,Audrey Backer\n"
    "2019-03-03T19:04:10,Click button,Web,Submit,--\n";

inline rpmseg::ContextSchema worked_example_schema() {
    rpmseg::ContextSchema schema;
    schema.context_params["Click button"] = {"Application", "Element Label"};
    schema.context_params["Edit field"] = {"Application", "Element Label"};
    return schema;
}

inline std::string key_of(const std::string& type, const std::string& label) {
    return type + "[Application=Web;Element Label=" + label + "]";
}

// Shorthand keys for the five distinct normalized UIs.
inline const std::string kN = key_of("Click button", "New Record");
inline const std::string kF = key_of("Edit field", "Full Name");
inline const std::string kD = key_of("Edit field", "Date");
inline const std::string kP = key_of("Edit field", "Phone");
inline const std::string kS = key_of("Click button", "Submit");

// Builds a normalized log straight from single-letter symbols; timestamps
// follow position.
inline rpmseg::NormalizedLog nlog_from_symbols(const std::string& symbols) {
    rpmseg::NormalizedLog nlog;
    for (std::size_t i = 0; i < symbols.size(); ++i) {
        rpmseg::NormalizedUI ui;
        ui.ui_type = std::string(1, symbols[i]);
        ui.timestamp = static_cast<std::int64_t>(i);
        ui.key = rpmseg::make_key(ui.ui_type, {});
        nlog.push_back(std::move(ui));
    }
    return nlog;
}

} // namespace fixtures
