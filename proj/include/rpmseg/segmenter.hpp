#pragma once

#include <cstddef>
#include <vector>

#include "rpmseg/cfg.hpp"
#include "rpmseg/ui_log.hpp"

namespace rpmseg {

// Contiguous slice of the normalized log representing one task execution.
struct Segment {
    std::size_t start_index = 0;
    std::size_t end_index = 0; // inclusive
    std::vector<NormalizedUI> uis;
};

// Segments, the positions dropped between them, and a final unterminated
// segment if the log ends mid-task. The three parts partition the log.
struct SegmentationReport {
    std::vector<Segment> segments;
    std::vector<std::size_t> discarded_indices;
    std::vector<std::size_t> open_tail;
};

struct SegmenterOptions {
    bool keep_open_tail = false; // promote the open tail to a segment
    bool headers_only = false;   // ignore irreducible-origin back-edges
};

// Single left-to-right scan: back-edge targets open segments, the source
// whose back-edge points at the opening UI closes them. A back-edge
// (v, v) makes its target a one-element segment.
SegmentationReport identify_segments(const NormalizedLog& nlog,
                                     const BackEdgeSet& b,
                                     const SegmenterOptions& opts = {});

} // namespace rpmseg
