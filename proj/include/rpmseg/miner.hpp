#pragma once

#include <cstddef>
#include <string>
#include <unordered_map>
#include <vector>

#include "rpmseg/segmenter.hpp"

namespace rpmseg {

// Interns normalized-UI keys for mining. Ids follow first-intern order,
// so lexicographic tie-breaks on id sequences are deterministic.
struct SymbolTable {
    std::vector<std::string> names;
    std::unordered_map<std::string, int> ids;

    int intern(const std::string& name);
    const std::string& name_of(int id) const { return names[static_cast<std::size_t>(id)]; }
};

// One symbol of a segment, remembering where it came from in the log.
struct Element {
    int symbol = 0;
    std::size_t log_pos = 0;
};

using Sequence = std::vector<Element>;

// Builds the mining database from a segmentation, recording original log
// positions per element.
std::vector<Sequence> sequences_from_segments(const std::vector<Segment>& segments,
                                              SymbolTable& table);

struct SequentialPattern {
    std::vector<int> symbols;
    int support_count = 0;
    double support = 0.0; // support_count / |segments|
    // Per supporting segment: (segment index, positions of the leftmost
    // minimal-window embedding within that segment).
    std::vector<std::pair<std::size_t, std::vector<std::size_t>>> occurrences;
};

// Leftmost minimal-window embedding of `pattern` in `seq`: among the
// embeddings with the smallest window span, the one starting earliest.
// Empty result when the pattern does not embed.
std::vector<std::size_t> leftmost_minimal_embedding(const Sequence& seq,
                                                    const std::vector<int>& pattern);

// All closed gapped patterns with support_count >= ceil(min_support * n)
// and length >= min_length. min_support must lie in (0, 1].
std::vector<SequentialPattern> mine_closed_patterns(const std::vector<Sequence>& segments,
                                                    double min_support,
                                                    std::size_t min_length = 1);

enum class Criterion { Frequency, Length, Coverage, Cohesion };

Criterion criterion_from_string(const std::string& name);
std::string to_string(Criterion c);

// frequency: support count.  length: |symbols|.
// coverage: symbols consumed by the stored occurrences / total_log_size.
// cohesion: length minus the lower median of per-segment window gaps.
double score_pattern(const SequentialPattern& p, std::size_t total_log_size,
                     Criterion criterion);

// Deletes the leftmost minimal-window embedding from every segment,
// repeatedly, until the pattern no longer embeds anywhere.
std::vector<Sequence> remove_occurrences(const std::vector<Sequence>& segments,
                                         const SequentialPattern& p);

struct RoutineCandidate {
    SequentialPattern pattern;
    Criterion criterion = Criterion::Cohesion;
    double score = 0.0;
    int rank = 0;
    // Log positions consumed by removal (all rounds), ascending.
    std::vector<std::size_t> consumed_positions;
};

struct MinerOptions {
    double min_support = 0.1;
    std::size_t min_length = 1;
    Criterion criterion = Criterion::Cohesion;
    // Denominator for the coverage criterion (full log or segmented part).
    std::size_t total_log_size = 0;
};

// Greedy non-overlapping extraction: mine, score, take the best, remove
// its occurrences, repeat until no frequent pattern remains.
std::vector<RoutineCandidate> extract_routines(std::vector<Sequence> segments,
                                               const MinerOptions& opts);

} // namespace rpmseg
