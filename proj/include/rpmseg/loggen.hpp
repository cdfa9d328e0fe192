#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rpmseg/metrics.hpp"
#include "rpmseg/ui_log.hpp"

namespace rpmseg {

// One task with its routine variants. Within a task every variant must
// share its first symbol, which is what makes the generated log
// rediscoverable by back-edge segmentation.
struct TaskSpec {
    std::string name;
    std::vector<std::vector<std::string>> variants; // sequences of symbol names
};

enum class Composition { Single, Concatenated, Interleaved };

struct GeneratorSpec {
    std::vector<TaskSpec> tasks;
    int instances_per_variant = 1;
    Composition composition = Composition::Single;
    // Probability of inserting a noise row before any routine row or
    // between segments. Noise symbols come from a reserved alphabet.
    double noise_rate = 0.0;
    std::uint64_t rng_seed = 0; // std::mt19937_64
};

struct GeneratedLog {
    std::string log_csv;   // Timestamp,Type,Target,Value
    std::string truth_csv; // row,timestamp,type,target,symbol,segment_id,routine_id
    GroundTruth truth;
    ContextSchema schema; // context parameter = Target, for every emitted type
    std::size_t total_rows = 0;
};

// Deterministic for a fixed seed; regenerating yields byte-identical CSV.
GeneratedLog generate(const GeneratorSpec& spec);

// Convenience builder: `variants` synthetic variants of length `length`
// sharing one start symbol, symbols otherwise unique per variant.
TaskSpec make_task(const std::string& name, int variants, int length);

GroundTruth parse_truth_csv(const std::string& csv_text);

} // namespace rpmseg
