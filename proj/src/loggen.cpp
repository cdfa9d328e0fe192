#include "rpmseg/loggen.hpp"

#include <algorithm>
#include <ctime>
#include <map>
#include <random>

#include "rpmseg/csv.hpp"
#include "rpmseg/errors.hpp"

namespace rpmseg {

namespace {

constexpr std::int64_t kBaseTimestamp = 1577836800; // 2020-01-01T00:00:00Z

std::string iso_timestamp(std::int64_t t) {
    std::time_t tt = static_cast<std::time_t>(t);
    std::tm tm{};
    gmtime_r(&tt, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%S", &tm);
    return buf;
}

struct Instance {
    const std::vector<std::string>* symbols;
    std::string routine_id;
};

std::vector<Instance> task_instances(const TaskSpec& task, int per_variant) {
    std::vector<Instance> out;
    for (int i = 0; i < per_variant; ++i)
        for (std::size_t v = 0; v < task.variants.size(); ++v)
            out.push_back({&task.variants[v],
                           task.name + ":" + std::to_string(v)});
    return out;
}

void validate(const GeneratorSpec& spec) {
    if (spec.noise_rate < 0.0 || spec.noise_rate >= 1.0)
        throw ConfigError("noise_rate must lie in [0, 1)");
    if (spec.instances_per_variant < 0)
        throw ConfigError("instances_per_variant must be >= 0");
    std::size_t want = spec.composition == Composition::Single ? 1 : 2;
    if (spec.tasks.size() != want)
        throw ConfigError("composition requires exactly " + std::to_string(want) +
                          " task(s), got " + std::to_string(spec.tasks.size()));
    for (const auto& task : spec.tasks) {
        for (const auto& variant : task.variants) {
            if (variant.empty())
                throw ConfigError("task '" + task.name + "' has an empty variant");
            if (variant.front() != task.variants.front().front())
                throw ConfigError("task '" + task.name +
                                  "': all variants must share their first symbol");
        }
    }
}

} // namespace

GeneratedLog generate(const GeneratorSpec& spec) {
    validate(spec);
    std::mt19937_64 rng(spec.rng_seed);
    std::bernoulli_distribution add_noise(spec.noise_rate > 0.0 ? spec.noise_rate : 0.0);
    std::uniform_int_distribution<int> noise_symbol(0, 4);
    std::uniform_int_distribution<int> payload(0, 999999);

    std::vector<Instance> order;
    if (spec.composition == Composition::Single) {
        order = task_instances(spec.tasks[0], spec.instances_per_variant);
    } else {
        auto a = task_instances(spec.tasks[0], spec.instances_per_variant);
        auto b = task_instances(spec.tasks[1], spec.instances_per_variant);
        if (spec.composition == Composition::Concatenated) {
            order = a;
            order.insert(order.end(), b.begin(), b.end());
        } else {
            for (std::size_t i = 0; i < std::max(a.size(), b.size()); ++i) {
                if (i < a.size())
                    order.push_back(a[i]);
                if (i < b.size())
                    order.push_back(b[i]);
            }
        }
    }

    GeneratedLog out;
    out.schema.context_params["Action"] = {"Target"};
    out.schema.context_params["Noise"] = {"Target"};

    std::string log_csv = "Timestamp,Type,Target,Value\n";
    std::string truth_csv = "row,timestamp,type,target,symbol,segment_id,routine_id\n";
    std::size_t row = 0;

    auto emit = [&](const std::string& type, const std::string& target,
                    const std::string& segment_id, const std::string& routine_id) {
        std::string ts = iso_timestamp(kBaseTimestamp + static_cast<std::int64_t>(row));
        std::string value = "v" + std::to_string(payload(rng));
        std::string key = make_key(type, {{"Target", target}});
        log_csv += csv::write_row({ts, type, target, value});
        truth_csv += csv::write_row({std::to_string(row), ts, type, target, key,
                                     segment_id, routine_id});
        return row++;
    };
    auto maybe_noise = [&] {
        if (spec.noise_rate > 0.0 && add_noise(rng))
            emit("Noise", "N" + std::to_string(noise_symbol(rng)), "", "");
    };

    std::map<std::string, SymbolSeq> routines; // routine_id -> key sequence
    int segment_id = 0;
    for (const auto& instance : order) {
        EvalSegment truth_segment;
        for (const auto& symbol : *instance.symbols) {
            maybe_noise();
            std::size_t r = emit("Action", symbol, std::to_string(segment_id),
                                 instance.routine_id);
            truth_segment.positions.push_back(r);
            truth_segment.symbols.push_back(make_key("Action", {{"Target", symbol}}));
        }
        maybe_noise();
        routines.try_emplace(instance.routine_id, truth_segment.symbols);
        out.truth.segments.push_back(std::move(truth_segment));
        ++segment_id;
    }
    for (auto& [id, symbols] : routines)
        out.truth.routines.push_back(symbols);

    out.log_csv = std::move(log_csv);
    out.truth_csv = std::move(truth_csv);
    out.total_rows = row;
    return out;
}

TaskSpec make_task(const std::string& name, int variants, int length) {
    if (variants < 1 || length < 1)
        throw ConfigError("make_task: variants and length must be >= 1");
    TaskSpec task;
    task.name = name;
    for (int v = 0; v < variants; ++v) {
        std::vector<std::string> symbols;
        symbols.push_back(name + "-start");
        for (int i = 1; i < length; ++i)
            symbols.push_back(name + "-v" + std::to_string(v) + "-s" +
                              std::to_string(i));
        task.variants.push_back(std::move(symbols));
    }
    return task;
}

GroundTruth parse_truth_csv(const std::string& csv_text) {
    auto rows = csv::parse(csv_text);
    if (rows.empty())
        throw ParseError("ground truth: missing header");
    const auto& header = rows.front();
    auto col = [&](const std::string& name) {
        auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end())
            throw ParseError("ground truth: missing column '" + name + "'");
        return static_cast<std::size_t>(it - header.begin());
    };
    std::size_t row_col = col("row"), sym_col = col("symbol"),
                seg_col = col("segment_id"), rt_col = col("routine_id");

    GroundTruth truth;
    std::map<std::string, std::size_t> segment_index;
    std::map<std::string, SymbolSeq> routines;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (row[seg_col].empty())
            continue; // noise row
        auto [it, fresh] =
            segment_index.try_emplace(row[seg_col], truth.segments.size());
        if (fresh)
            truth.segments.emplace_back();
        auto& seg = truth.segments[it->second];
        seg.positions.push_back(std::stoull(row[row_col]));
        seg.symbols.push_back(row[sym_col]);
    }
    // A truth routine is the noise-free symbol sequence of its variant;
    // take it from the first segment carrying each routine_id.
    std::map<std::string, std::size_t> first_segment_of;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (row[seg_col].empty())
            continue;
        first_segment_of.try_emplace(row[rt_col], segment_index.at(row[seg_col]));
    }
    for (const auto& [id, idx] : first_segment_of)
        truth.routines.push_back(truth.segments[idx].symbols);
    return truth;
}

} // namespace rpmseg
