#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rpmseg/cfg.hpp"
#include "rpmseg/metrics.hpp"
#include "rpmseg/miner.hpp"
#include "rpmseg/preprocess.hpp"
#include "rpmseg/segmenter.hpp"
#include "rpmseg/ui_log.hpp"

#include <nlohmann/json_fwd.hpp>

namespace rpmseg {

enum class CoverageBase { Full, Segments };

struct PipelineConfig {
    LogFormatSpec format;
    ContextSchema schema;
    RuleConfig rules;
    bool preprocess = true;
    SegmenterOptions segmenter;
    double min_support = 0.1;
    std::size_t min_length = 1;
    Criterion criterion = Criterion::Cohesion;
    CoverageBase coverage_base = CoverageBase::Full;
    std::optional<std::string> dump_cfg_path;

    // Overlays the fields present in `j` onto this config.
    void apply_json(const nlohmann::json& j);
};

PipelineConfig load_config(const std::string& path);

struct StageTiming {
    std::string stage;
    double seconds = 0.0;
};

struct PipelineResult {
    NormalizedLog nlog;        // post-preprocess
    RemovalReport removals;
    BackEdgeSet back_edges;
    SegmentationReport segmentation;
    SymbolTable symbols;
    std::vector<RoutineCandidate> routines;
    std::vector<StageTiming> timings;
};

// parse -> preprocess -> normalize -> CFG -> back-edges -> segment -> mine.
PipelineResult run_pipeline(const PipelineConfig& config, const std::string& csv_text);

// ---- report files -------------------------------------------------------

// All normalized rows with a segment_id column: integers for segments,
// empty for discarded rows, "open" for an unterminated tail.
std::string segments_to_csv(const PipelineResult& result);
std::string segments_report_text(const PipelineResult& result);

std::string routines_to_csv(const std::vector<RoutineCandidate>& routines,
                            const SymbolTable& symbols);
std::string routines_report_text(const std::vector<RoutineCandidate>& routines,
                                 const SymbolTable& symbols);

std::string timings_text(const std::vector<StageTiming>& timings);

// ---- evaluate-side loaders ----------------------------------------------

// Reads a segments CSV back into per-segment symbol/position lists
// (discovered side of the evaluation); also reports the total row count.
std::pair<std::vector<EvalSegment>, std::size_t>
load_discovered_segments(const std::string& csv_text);

struct LoadedRoutines {
    std::vector<SymbolSeq> routines;
    std::vector<std::vector<std::size_t>> consumed;
};

LoadedRoutines load_routines_csv(const std::string& csv_text);

std::string evaluation_report_text(const EvaluationReport& report);
std::string evaluation_report_csv(const EvaluationReport& report);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

} // namespace rpmseg
