#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "rpmseg/ui_log.hpp"

namespace rpmseg {

// Type-category membership for the built-in redundancy rules. Labels vary
// across recorders, so the categories are configured, not hard-coded.
struct RuleConfig {
    std::vector<std::string> copy_types;
    std::vector<std::string> paste_types;
    std::vector<std::string> edit_types;
    // Subset of {"overwritten-copy", "edit-overwrite"}.
    std::vector<std::string> enabled = {"overwritten-copy", "edit-overwrite"};
};

struct RemovalReport {
    // rule name -> removed indices in the *original* log
    std::map<std::string, std::vector<std::size_t>> removed;

    bool empty() const { return removed.empty(); }
};

// Applies the enabled rules to a fixed point. Survivors keep their
// original relative order and timestamps. The schema is needed by
// edit-overwrite to compare normalized targets; its fallback policy
// applies to unknown edit types.
std::pair<UILog, RemovalReport> apply_rules(const UILog& log,
                                            const RuleConfig& rules,
                                            const ContextSchema& schema);

} // namespace rpmseg
