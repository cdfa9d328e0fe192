#include "rpmseg/segmenter.hpp"

#include <set>

namespace rpmseg {

SegmentationReport identify_segments(const NormalizedLog& nlog,
                                     const BackEdgeSet& b,
                                     const SegmenterOptions& opts) {
    std::set<std::string> starts, ends;
    std::set<std::pair<std::string, std::string>> back_pairs;
    for (const auto& e : b.edges) {
        if (opts.headers_only && e.origin != BackEdgeOrigin::Header)
            continue;
        starts.insert(e.to_key);
        ends.insert(e.from_key);
        back_pairs.insert({e.from_key, e.to_key});
    }

    SegmentationReport report;
    bool within = false;
    std::size_t seg_start = 0;
    std::vector<NormalizedUI> current;

    auto close_at = [&](std::size_t i) {
        report.segments.push_back({seg_start, i, std::move(current)});
        current.clear();
        within = false;
    };

    for (std::size_t i = 0; i < nlog.size(); ++i) {
        const auto& ui = nlog[i];
        if (starts.count(ui.key)) {
            if (!within) {
                within = true;
                seg_start = i;
                current.clear();
                current.push_back(ui);
                // Self-loop back-edge: the opening UI is its own end.
                if (back_pairs.count({ui.key, ui.key}))
                    close_at(i);
            } else {
                current.push_back(ui);
            }
        } else if (within) {
            current.push_back(ui);
            if (ends.count(ui.key) &&
                back_pairs.count({ui.key, nlog[seg_start].key}))
                close_at(i);
        } else {
            report.discarded_indices.push_back(i);
        }
    }
    if (within) {
        if (opts.keep_open_tail) {
            report.segments.push_back({seg_start, nlog.size() - 1, std::move(current)});
        } else {
            for (std::size_t i = seg_start; i < nlog.size(); ++i)
                report.open_tail.push_back(i);
        }
    }
    return report;
}

} // namespace rpmseg
