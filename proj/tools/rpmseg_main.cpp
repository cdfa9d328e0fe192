#include <filesystem>
#include <iostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "rpmseg/errors.hpp"
#include "rpmseg/loggen.hpp"
#include "rpmseg/pipeline.hpp"

namespace fs = std::filesystem;
using namespace rpmseg;

namespace {

struct CommonOptions {
    std::string config_path;
    std::string schema_path;
    std::string default_context;
    std::string timestamp_format;
    std::string criterion;
    std::string coverage_base;
    std::string dump_cfg;
    std::string out_dir = ".";
    double min_support = 0.1;
    std::size_t min_length = 1;
    bool no_preprocess = false;
    bool keep_open_tail = false;
    bool headers_only = false;
};

void add_common_flags(CLI::App* cmd, CommonOptions& opts, bool mining) {
    cmd->add_option("--config", opts.config_path, "pipeline config (JSON)");
    cmd->add_option("--schema", opts.schema_path, "context schema (JSON)");
    cmd->add_option("--default-context", opts.default_context,
                    "schema fallback for unknown types: error|all|none");
    cmd->add_option("--timestamp-format", opts.timestamp_format,
                    "strptime format override");
    cmd->add_flag("--no-preprocess", opts.no_preprocess,
                  "skip redundancy removal");
    cmd->add_flag("--keep-open-tail", opts.keep_open_tail,
                  "promote an unterminated tail to a segment");
    cmd->add_flag("--headers-only", opts.headers_only,
                  "ignore irreducible-origin back-edges");
    cmd->add_option("--dump-cfg", opts.dump_cfg,
                    "write the CFG and dominator tree as DOT");
    cmd->add_option("-o,--out", opts.out_dir, "output directory");
    if (mining) {
        cmd->add_option("--min-support", opts.min_support,
                        "minimum pattern support in (0,1]");
        cmd->add_option("--min-length", opts.min_length, "minimum pattern length");
        cmd->add_option("--criterion", opts.criterion,
                        "frequency|length|coverage|cohesion");
        cmd->add_option("--coverage-base", opts.coverage_base,
                        "coverage denominator: full|segments");
    }
}

// `cmd` is the parsed subcommand; flag counts distinguish "explicitly
// given" from "left at default" so config-file values survive.
PipelineConfig build_config(const CommonOptions& opts, const CLI::App* cmd) {
    PipelineConfig config;
    if (!opts.config_path.empty())
        config = load_config(opts.config_path);
    if (!opts.schema_path.empty())
        config.schema =
            ContextSchema::from_json(nlohmann::json::parse(read_file(opts.schema_path)));
    if (!opts.default_context.empty()) {
        if (opts.default_context == "error")
            config.schema.fallback = DefaultContext::Error;
        else if (opts.default_context == "all")
            config.schema.fallback = DefaultContext::AllParams;
        else if (opts.default_context == "none")
            config.schema.fallback = DefaultContext::NoParams;
        else
            throw ConfigError("unknown --default-context value");
    }
    if (!opts.timestamp_format.empty())
        config.format.timestamp_format = opts.timestamp_format;
    if (opts.no_preprocess)
        config.preprocess = false;
    if (opts.keep_open_tail)
        config.segmenter.keep_open_tail = true;
    if (opts.headers_only)
        config.segmenter.headers_only = true;
    auto given = [&](const std::string& flag) {
        const auto* option = cmd->get_option_no_throw(flag);
        return option != nullptr && option->count() > 0;
    };
    if (given("--min-support"))
        config.min_support = opts.min_support;
    if (given("--min-length"))
        config.min_length = opts.min_length;
    if (!opts.criterion.empty())
        config.criterion = criterion_from_string(opts.criterion);
    if (!opts.coverage_base.empty()) {
        if (opts.coverage_base == "full")
            config.coverage_base = CoverageBase::Full;
        else if (opts.coverage_base == "segments")
            config.coverage_base = CoverageBase::Segments;
        else
            throw ConfigError("unknown --coverage-base value");
    }
    if (!opts.dump_cfg.empty())
        config.dump_cfg_path = opts.dump_cfg;
    return config;
}

void write_segment_outputs(const PipelineResult& result, const fs::path& out_dir) {
    fs::create_directories(out_dir);
    write_file((out_dir / "segments.csv").string(), segments_to_csv(result));
    write_file((out_dir / "segments_report.txt").string(),
               segments_report_text(result));
}

void write_mining_outputs(const PipelineResult& result, const fs::path& out_dir) {
    write_file((out_dir / "routines.csv").string(),
               routines_to_csv(result.routines, result.symbols));
    write_file((out_dir / "routines_report.txt").string(),
               routines_report_text(result.routines, result.symbols));
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"UI log segmentation and routine discovery"};
    app.require_subcommand(1);

    CommonOptions opts;
    std::string log_path, segments_path, routines_path, truth_path;
    bool jc_literal = false;

    auto* segment_cmd =
        app.add_subcommand("segment", "segment a UI log by back-edge analysis");
    segment_cmd->add_option("log", log_path, "input UI log CSV")->required();
    add_common_flags(segment_cmd, opts, false);

    auto* mine_cmd =
        app.add_subcommand("mine", "mine routine candidates from a segments CSV");
    mine_cmd->add_option("segments", segments_path, "segments CSV")->required();
    add_common_flags(mine_cmd, opts, true);

    auto* run_cmd = app.add_subcommand("run", "full pipeline: segment + mine");
    run_cmd->add_option("log", log_path, "input UI log CSV")->required();
    run_cmd->add_option("--truth", truth_path, "ground-truth CSV for evaluation");
    run_cmd->add_flag("--jc-literal", jc_literal, "use the literal JC ratio");
    add_common_flags(run_cmd, opts, true);

    auto* eval_cmd =
        app.add_subcommand("evaluate", "score discovered output against ground truth");
    eval_cmd->add_option("--segments", segments_path, "discovered segments CSV")
        ->required();
    eval_cmd->add_option("--routines", routines_path, "discovered routines CSV");
    eval_cmd->add_option("--truth", truth_path, "ground-truth CSV")->required();
    eval_cmd->add_flag("--jc-literal", jc_literal, "use the literal JC ratio");
    eval_cmd->add_option("-o,--out", opts.out_dir, "output directory");

    auto* gen_cmd = app.add_subcommand("generate", "generate a synthetic UI log");
    int gen_variants = 1, gen_length = 14, gen_instances = 100;
    int gen_variants2 = 1, gen_length2 = 14;
    double gen_noise = 0.0;
    std::uint64_t gen_seed = 0;
    std::string gen_composition = "single", gen_spec_path;
    gen_cmd->add_option("--spec", gen_spec_path, "generator spec (JSON)");
    gen_cmd->add_option("--num-variants", gen_variants, "variants of task 1");
    gen_cmd->add_option("--variant-length", gen_length, "symbols per variant, task 1");
    gen_cmd->add_option("--num-variants2", gen_variants2, "variants of task 2");
    gen_cmd->add_option("--variant-length2", gen_length2,
                        "symbols per variant, task 2");
    gen_cmd->add_option("--instances", gen_instances, "instances per variant");
    gen_cmd->add_option("--composition", gen_composition,
                        "single|concatenated|interleaved");
    gen_cmd->add_option("--noise", gen_noise, "noise insertion probability [0,1)");
    gen_cmd->add_option("--seed", gen_seed, "RNG seed");
    gen_cmd->add_option("-o,--out", opts.out_dir, "output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        const fs::path out_dir(opts.out_dir);
        if (*segment_cmd || *run_cmd) {
            PipelineConfig config =
                build_config(opts, *segment_cmd ? segment_cmd : run_cmd);
            PipelineResult result = run_pipeline(config, read_file(log_path));
            fs::create_directories(out_dir);
            write_segment_outputs(result, out_dir);
            if (*run_cmd)
                write_mining_outputs(result, out_dir);
            write_file((out_dir / "timings.txt").string(),
                       timings_text(result.timings));
            std::cout << segments_report_text(result);
            if (*run_cmd) {
                std::cout << routines_report_text(result.routines, result.symbols);
                if (!truth_path.empty()) {
                    GroundTruth truth = parse_truth_csv(read_file(truth_path));
                    std::vector<EvalSegment> discovered;
                    for (const auto& seg : result.segmentation.segments) {
                        EvalSegment d;
                        for (std::size_t i = seg.start_index; i <= seg.end_index; ++i) {
                            d.positions.push_back(i);
                            d.symbols.push_back(result.nlog[i].key);
                        }
                        discovered.push_back(std::move(d));
                    }
                    std::vector<SymbolSeq> routines;
                    std::vector<std::vector<std::size_t>> consumed;
                    for (const auto& r : result.routines) {
                        SymbolSeq seq;
                        for (int s : r.pattern.symbols)
                            seq.push_back(result.symbols.name_of(s));
                        routines.push_back(std::move(seq));
                        consumed.push_back(r.consumed_positions);
                    }
                    auto report = evaluate(discovered, routines, consumed,
                                           result.nlog.size(), truth, jc_literal);
                    write_file((out_dir / "evaluation.csv").string(),
                               evaluation_report_csv(report));
                    std::cout << evaluation_report_text(report);
                }
            }
            std::cout << timings_text(result.timings);
        } else if (*mine_cmd) {
            auto [segments, total_rows] =
                load_discovered_segments(read_file(segments_path));
            SymbolTable table;
            std::vector<Sequence> sequences;
            for (const auto& seg : segments) {
                Sequence seq;
                for (std::size_t i = 0; i < seg.symbols.size(); ++i)
                    seq.push_back({table.intern(seg.symbols[i]), seg.positions[i]});
                sequences.push_back(std::move(seq));
            }
            MinerOptions mopts;
            mopts.min_support = opts.min_support;
            mopts.min_length = opts.min_length;
            if (!opts.criterion.empty())
                mopts.criterion = criterion_from_string(opts.criterion);
            mopts.total_log_size =
                opts.coverage_base == "segments" ? 0 : total_rows;
            auto routines = sequences.empty()
                                ? std::vector<RoutineCandidate>{}
                                : extract_routines(std::move(sequences), mopts);
            fs::create_directories(out_dir);
            write_file((out_dir / "routines.csv").string(),
                       routines_to_csv(routines, table));
            write_file((out_dir / "routines_report.txt").string(),
                       routines_report_text(routines, table));
            std::cout << routines_report_text(routines, table);
        } else if (*eval_cmd) {
            GroundTruth truth = parse_truth_csv(read_file(truth_path));
            auto [discovered, total_rows] =
                load_discovered_segments(read_file(segments_path));
            LoadedRoutines loaded;
            if (!routines_path.empty())
                loaded = load_routines_csv(read_file(routines_path));
            auto report = evaluate(discovered, loaded.routines, loaded.consumed,
                                   total_rows, truth, jc_literal);
            fs::create_directories(out_dir);
            write_file((out_dir / "evaluation.csv").string(),
                       evaluation_report_csv(report));
            std::cout << evaluation_report_text(report);
        } else if (*gen_cmd) {
            GeneratorSpec spec;
            if (!gen_spec_path.empty()) {
                auto j = nlohmann::json::parse(read_file(gen_spec_path));
                for (const auto& t : j.at("tasks")) {
                    TaskSpec task;
                    task.name = t.at("name");
                    for (const auto& v : t.at("variants"))
                        task.variants.push_back(v.get<std::vector<std::string>>());
                    spec.tasks.push_back(std::move(task));
                }
                spec.instances_per_variant = j.value("instances_per_variant", 1);
                gen_composition = j.value("composition", gen_composition);
                spec.noise_rate = j.value("noise_rate", 0.0);
                spec.rng_seed = j.value("rng_seed", std::uint64_t{0});
            } else {
                spec.tasks.push_back(make_task("T1", gen_variants, gen_length));
                if (gen_composition != "single")
                    spec.tasks.push_back(make_task("T2", gen_variants2, gen_length2));
                spec.instances_per_variant = gen_instances;
                spec.noise_rate = gen_noise;
                spec.rng_seed = gen_seed;
            }
            if (gen_composition == "single")
                spec.composition = Composition::Single;
            else if (gen_composition == "concatenated")
                spec.composition = Composition::Concatenated;
            else if (gen_composition == "interleaved")
                spec.composition = Composition::Interleaved;
            else
                throw ConfigError("unknown composition '" + gen_composition + "'");

            GeneratedLog generated = generate(spec);
            fs::create_directories(out_dir);
            write_file((out_dir / "log.csv").string(), generated.log_csv);
            write_file((out_dir / "truth.csv").string(), generated.truth_csv);
            write_file((out_dir / "schema.json").string(),
                       generated.schema.to_json().dump(2) + "\n");
            std::cout << "generated " << generated.total_rows << " rows, "
                      << generated.truth.segments.size() << " truth segments, "
                      << generated.truth.routines.size() << " truth routines\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
