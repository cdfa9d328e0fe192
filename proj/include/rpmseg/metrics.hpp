#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace rpmseg {

using SymbolSeq = std::vector<std::string>;

// One ground-truth or discovered segment: its symbols plus the log rows
// they came from (not necessarily contiguous once noise is excluded).
struct EvalSegment {
    SymbolSeq symbols;
    std::vector<std::size_t> positions;
};

struct GroundTruth {
    std::vector<EvalSegment> segments;
    std::vector<SymbolSeq> routines;
};

struct EvaluationReport {
    double avg_led = 0.0;
    std::vector<double> per_segment_led;
    double avg_jc = 0.0; // NaN when no routines were discovered
    std::vector<double> per_routine_jc;
    double total_coverage = 0.0;
    double avg_routine_length = 0.0;
    std::size_t discovered_segments = 0;
    std::size_t truth_segments = 0;
    std::size_t discovered_routines = 0;
    std::size_t truth_routines = 0;
};

// Classic edit distance divided by max(|a|, |b|); 0 for two empty
// sequences.
double normalized_led(const SymbolSeq& a, const SymbolSeq& b);

// Multiset Jaccard; 1.0 when both are empty.
double jaccard(const SymbolSeq& a, const SymbolSeq& b);

// The literal n / (|a| + |b|) ratio (tops out at 0.5 for identical
// sequences); kept for comparison.
double jaccard_literal(const SymbolSeq& a, const SymbolSeq& b);

// Per discovered segment, the minimum LED over truth segments sharing at
// least one log position (1.0 when none overlaps); first = average.
std::pair<double, std::vector<double>>
segmentation_quality(const std::vector<EvalSegment>& discovered,
                     const GroundTruth& truth);

// Per discovered routine, the maximum JC over all truth routines;
// first = average (NaN when nothing was discovered).
std::pair<double, std::vector<double>>
routine_quality(const std::vector<SymbolSeq>& discovered, const GroundTruth& truth,
                bool literal = false);

// Distinct log positions consumed by any candidate, over log_size.
double total_coverage(const std::vector<std::vector<std::size_t>>& consumed,
                      std::size_t log_size);

EvaluationReport evaluate(const std::vector<EvalSegment>& discovered_segments,
                          const std::vector<SymbolSeq>& discovered_routines,
                          const std::vector<std::vector<std::size_t>>& consumed,
                          std::size_t log_size, const GroundTruth& truth,
                          bool literal_jc = false);

} // namespace rpmseg
