#include "rpmseg/preprocess.hpp"

#include <algorithm>

namespace rpmseg {

namespace {

bool in(const std::vector<std::string>& set, const std::string& s) {
    return std::find(set.begin(), set.end(), s) != set.end();
}

bool enabled(const RuleConfig& rules, const char* name) {
    return in(rules.enabled, name);
}

struct Entry {
    UserInteraction ui;
    std::size_t original_index;
};

// A copy immediately superseded by another copy with no intervening
// paste is overwritten and removed. Single pass; the caller iterates to
// a fixed point.
bool overwritten_copy_pass(std::vector<Entry>& entries, const RuleConfig& rules,
                           RemovalReport& report) {
    std::vector<bool> drop(entries.size(), false);
    bool changed = false;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (!in(rules.copy_types, entries[i].ui.ui_type))
            continue;
        for (std::size_t j = i + 1; j < entries.size(); ++j) {
            if (in(rules.paste_types, entries[j].ui.ui_type))
                break;
            if (in(rules.copy_types, entries[j].ui.ui_type)) {
                drop[i] = true;
                report.removed["overwritten-copy"].push_back(entries[i].original_index);
                changed = true;
                break;
            }
        }
    }
    if (!changed)
        return false;
    std::vector<Entry> kept;
    for (std::size_t i = 0; i < entries.size(); ++i)
        if (!drop[i])
            kept.push_back(std::move(entries[i]));
    entries = std::move(kept);
    return true;
}

// Consecutive edits of the same normalized target keep only the last.
bool edit_overwrite_pass(std::vector<Entry>& entries, const RuleConfig& rules,
                         const ContextSchema& schema, RemovalReport& report) {
    std::vector<bool> drop(entries.size(), false);
    bool changed = false;
    for (std::size_t i = 0; i + 1 < entries.size(); ++i) {
        if (!in(rules.edit_types, entries[i].ui.ui_type) ||
            !in(rules.edit_types, entries[i + 1].ui.ui_type))
            continue;
        if (entries[i].ui.ui_type != entries[i + 1].ui.ui_type)
            continue;
        if (normalize_one(entries[i].ui, schema).key ==
            normalize_one(entries[i + 1].ui, schema).key) {
            drop[i] = true;
            report.removed["edit-overwrite"].push_back(entries[i].original_index);
            changed = true;
        }
    }
    if (!changed)
        return false;
    std::vector<Entry> kept;
    for (std::size_t i = 0; i < entries.size(); ++i)
        if (!drop[i])
            kept.push_back(std::move(entries[i]));
    entries = std::move(kept);
    return true;
}

} // namespace

std::pair<UILog, RemovalReport> apply_rules(const UILog& log,
                                            const RuleConfig& rules,
                                            const ContextSchema& schema) {
    std::vector<Entry> entries;
    entries.reserve(log.interactions.size());
    for (std::size_t i = 0; i < log.interactions.size(); ++i)
        entries.push_back({log.interactions[i], i});

    RemovalReport report;
    bool changed = true;
    while (changed) {
        changed = false;
        if (enabled(rules, "overwritten-copy"))
            changed |= overwritten_copy_pass(entries, rules, report);
        if (enabled(rules, "edit-overwrite"))
            changed |= edit_overwrite_pass(entries, rules, schema, report);
    }
    for (auto& [name, indices] : report.removed)
        std::sort(indices.begin(), indices.end());

    UILog out;
    out.interactions.reserve(entries.size());
    for (auto& e : entries)
        out.interactions.push_back(std::move(e.ui));
    return {std::move(out), std::move(report)};
}

} // namespace rpmseg
