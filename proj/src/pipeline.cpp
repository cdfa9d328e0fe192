#include "rpmseg/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "rpmseg/csv.hpp"
#include "rpmseg/errors.hpp"

namespace rpmseg {

void PipelineConfig::apply_json(const nlohmann::json& j) {
    if (j.contains("format")) {
        const auto& f = j["format"];
        if (f.contains("timestamp_column"))
            format.timestamp_column = f["timestamp_column"];
        if (f.contains("type_column"))
            format.type_column = f["type_column"];
        if (f.contains("timestamp_format"))
            format.timestamp_format = f["timestamp_format"];
        if (f.contains("absent_markers"))
            format.absent_markers = f["absent_markers"].get<std::vector<std::string>>();
    }
    if (j.contains("schema"))
        schema = ContextSchema::from_json(j["schema"]);
    if (j.contains("preprocess")) {
        const auto& p = j["preprocess"];
        if (p.contains("enabled"))
            preprocess = p["enabled"];
        if (p.contains("copy_types"))
            rules.copy_types = p["copy_types"].get<std::vector<std::string>>();
        if (p.contains("paste_types"))
            rules.paste_types = p["paste_types"].get<std::vector<std::string>>();
        if (p.contains("edit_types"))
            rules.edit_types = p["edit_types"].get<std::vector<std::string>>();
        if (p.contains("rules"))
            rules.enabled = p["rules"].get<std::vector<std::string>>();
    }
    if (j.contains("segmenter")) {
        const auto& s = j["segmenter"];
        if (s.contains("keep_open_tail"))
            segmenter.keep_open_tail = s["keep_open_tail"];
        if (s.contains("headers_only"))
            segmenter.headers_only = s["headers_only"];
    }
    if (j.contains("mining")) {
        const auto& m = j["mining"];
        if (m.contains("min_support"))
            min_support = m["min_support"];
        if (m.contains("min_length"))
            min_length = m["min_length"];
        if (m.contains("criterion"))
            criterion = criterion_from_string(m["criterion"]);
        if (m.contains("coverage_base")) {
            std::string base = m["coverage_base"];
            if (base == "full")
                coverage_base = CoverageBase::Full;
            else if (base == "segments")
                coverage_base = CoverageBase::Segments;
            else
                throw ConfigError("unknown coverage_base '" + base + "'");
        }
    }
}

PipelineConfig load_config(const std::string& path) {
    PipelineConfig config;
    auto j = nlohmann::json::parse(read_file(path));
    config.apply_json(j);
    return config;
}

PipelineResult run_pipeline(const PipelineConfig& config, const std::string& csv_text) {
    PipelineResult result;
    using Clock = std::chrono::steady_clock;
    auto timed = [&](const char* stage, auto&& fn) {
        auto start = Clock::now();
        fn();
        std::chrono::duration<double> elapsed = Clock::now() - start;
        result.timings.push_back({stage, elapsed.count()});
    };

    UILog log;
    timed("parse", [&] { log = parse_log(csv_text, config.format); });
    if (config.preprocess)
        timed("preprocess", [&] {
            auto [cleaned, report] = apply_rules(log, config.rules, config.schema);
            log = std::move(cleaned);
            result.removals = std::move(report);
        });
    timed("normalize", [&] { result.nlog = normalize(log, config.schema); });

    Cfg g;
    timed("back-edges", [&] {
        g = build_cfg(result.nlog);
        result.back_edges = detect_back_edges(g);
    });
    if (config.dump_cfg_path) {
        DominatorTree dt = compute_dominator_tree(g);
        write_file(*config.dump_cfg_path, to_dot(g, dt, result.back_edges));
    }

    timed("segment", [&] {
        result.segmentation =
            identify_segments(result.nlog, result.back_edges, config.segmenter);
    });

    timed("mine", [&] {
        auto sequences =
            sequences_from_segments(result.segmentation.segments, result.symbols);
        MinerOptions opts;
        opts.min_support = config.min_support;
        opts.min_length = config.min_length;
        opts.criterion = config.criterion;
        if (config.coverage_base == CoverageBase::Full) {
            opts.total_log_size = result.nlog.size();
        } else {
            opts.total_log_size = 0; // derived from segment sizes
        }
        if (!sequences.empty())
            result.routines = extract_routines(std::move(sequences), opts);
    });
    return result;
}

std::string segments_to_csv(const PipelineResult& result) {
    std::string out = "row,timestamp,type,symbol,segment_id\n";
    std::vector<std::string> ids(result.nlog.size(), "");
    for (std::size_t s = 0; s < result.segmentation.segments.size(); ++s) {
        const auto& seg = result.segmentation.segments[s];
        for (std::size_t i = seg.start_index; i <= seg.end_index; ++i)
            ids[i] = std::to_string(s);
    }
    for (std::size_t i : result.segmentation.open_tail)
        ids[i] = "open";
    for (std::size_t i = 0; i < result.nlog.size(); ++i) {
        const auto& ui = result.nlog[i];
        out += csv::write_row({std::to_string(i), std::to_string(ui.timestamp),
                               ui.ui_type, ui.key, ids[i]});
    }
    return out;
}

std::string segments_report_text(const PipelineResult& result) {
    std::ostringstream out;
    out << "back-edges: " << result.back_edges.edges.size() << "\n";
    for (const auto& e : result.back_edges.edges)
        out << "  " << e.from_key << " -> " << e.to_key << "  ["
            << (e.origin == BackEdgeOrigin::Header ? "header" : "irreducible")
            << "]\n";
    if (!result.removals.empty()) {
        out << "preprocessing removals:\n";
        for (const auto& [rule, rows] : result.removals.removed)
            out << "  " << rule << ": " << rows.size() << " row(s)\n";
    }
    out << "segments: " << result.segmentation.segments.size() << "\n";
    for (std::size_t s = 0; s < result.segmentation.segments.size(); ++s) {
        const auto& seg = result.segmentation.segments[s];
        out << "  #" << s << "  rows " << seg.start_index << ".." << seg.end_index
            << "  (" << seg.uis.size() << " UIs)\n";
    }
    out << "discarded: " << result.segmentation.discarded_indices.size() << "\n";
    out << "open tail: " << result.segmentation.open_tail.size() << "\n";
    return out.str();
}

std::string routines_to_csv(const std::vector<RoutineCandidate>& routines,
                            const SymbolTable& symbols) {
    std::string out =
        "rank,criterion,score,support_count,support,length,symbols,"
        "consumed_positions,occurrences\n";
    for (const auto& r : routines) {
        std::string syms;
        for (std::size_t i = 0; i < r.pattern.symbols.size(); ++i) {
            if (i)
                syms += '|';
            syms += symbols.name_of(r.pattern.symbols[i]);
        }
        std::string consumed;
        for (std::size_t i = 0; i < r.consumed_positions.size(); ++i) {
            if (i)
                consumed += ' ';
            consumed += std::to_string(r.consumed_positions[i]);
        }
        std::string occurrences;
        for (std::size_t i = 0; i < r.pattern.occurrences.size(); ++i) {
            const auto& [seg, positions] = r.pattern.occurrences[i];
            if (i)
                occurrences += ';';
            occurrences += std::to_string(seg) + ":";
            for (std::size_t k = 0; k < positions.size(); ++k) {
                if (k)
                    occurrences += ' ';
                occurrences += std::to_string(positions[k]);
            }
        }
        std::ostringstream score;
        score << r.score;
        std::ostringstream support;
        support << r.pattern.support;
        out += csv::write_row({std::to_string(r.rank), to_string(r.criterion),
                               score.str(), std::to_string(r.pattern.support_count),
                               support.str(),
                               std::to_string(r.pattern.symbols.size()), syms,
                               consumed, occurrences});
    }
    return out;
}

std::string routines_report_text(const std::vector<RoutineCandidate>& routines,
                                 const SymbolTable& symbols) {
    std::ostringstream out;
    out << "routine candidates: " << routines.size() << "\n";
    for (const auto& r : routines) {
        out << "#" << r.rank << "  " << to_string(r.criterion) << "=" << r.score
            << "  support=" << r.pattern.support_count << " ("
            << r.pattern.support << ")  length=" << r.pattern.symbols.size()
            << "\n   ";
        for (int s : r.pattern.symbols)
            out << " " << symbols.name_of(s);
        out << "\n";
    }
    return out.str();
}

std::string timings_text(const std::vector<StageTiming>& timings) {
    std::ostringstream out;
    double total = 0.0;
    for (const auto& t : timings) {
        out << t.stage << ": " << t.seconds << " s\n";
        total += t.seconds;
    }
    out << "total: " << total << " s\n";
    return out.str();
}

std::pair<std::vector<EvalSegment>, std::size_t>
load_discovered_segments(const std::string& csv_text) {
    auto rows = csv::parse(csv_text);
    if (rows.empty())
        throw ParseError("segments csv: missing header");
    const auto& header = rows.front();
    auto col = [&](const std::string& name) {
        auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end())
            throw ParseError("segments csv: missing column '" + name + "'");
        return static_cast<std::size_t>(it - header.begin());
    };
    std::size_t row_col = col("row"), sym_col = col("symbol"), id_col = col("segment_id");

    std::vector<EvalSegment> segments;
    std::map<std::string, std::size_t> index;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        const std::string& id = row[id_col];
        if (id.empty() || id == "open")
            continue;
        auto [it, fresh] = index.try_emplace(id, segments.size());
        if (fresh)
            segments.emplace_back();
        segments[it->second].positions.push_back(std::stoull(row[row_col]));
        segments[it->second].symbols.push_back(row[sym_col]);
    }
    return {segments, rows.size() - 1};
}

LoadedRoutines load_routines_csv(const std::string& csv_text) {
    auto rows = csv::parse(csv_text);
    if (rows.empty())
        throw ParseError("routines csv: missing header");
    const auto& header = rows.front();
    auto col = [&](const std::string& name) {
        auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end())
            throw ParseError("routines csv: missing column '" + name + "'");
        return static_cast<std::size_t>(it - header.begin());
    };
    std::size_t sym_col = col("symbols"), consumed_col = col("consumed_positions");

    LoadedRoutines out;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        SymbolSeq symbols;
        std::stringstream ss(rows[r][sym_col]);
        std::string part;
        while (std::getline(ss, part, '|'))
            symbols.push_back(part);
        std::vector<std::size_t> consumed;
        std::stringstream cs(rows[r][consumed_col]);
        std::size_t pos;
        while (cs >> pos)
            consumed.push_back(pos);
        out.routines.push_back(std::move(symbols));
        out.consumed.push_back(std::move(consumed));
    }
    return out;
}

std::string evaluation_report_text(const EvaluationReport& report) {
    std::ostringstream out;
    out << "segments: discovered " << report.discovered_segments << ", truth "
        << report.truth_segments << "\n";
    out << "LED (avg): " << report.avg_led << "\n";
    out << "routines: discovered " << report.discovered_routines << ", truth "
        << report.truth_routines << "\n";
    out << "JC (avg): " << report.avg_jc << "\n";
    out << "total coverage: " << report.total_coverage << "\n";
    out << "routine length (avg): " << report.avg_routine_length << "\n";
    return out.str();
}

std::string evaluation_report_csv(const EvaluationReport& report) {
    std::ostringstream row;
    row << "discovered_segments,truth_segments,avg_led,discovered_routines,"
           "truth_routines,avg_jc,total_coverage,avg_routine_length\n"
        << report.discovered_segments << ',' << report.truth_segments << ','
        << report.avg_led << ',' << report.discovered_routines << ','
        << report.truth_routines << ',' << report.avg_jc << ','
        << report.total_coverage << ',' << report.avg_routine_length << "\n";
    return row.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ConfigError("cannot write '" + path + "'");
    out << content;
}

} // namespace rpmseg
