// Acceptance suite: one line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "rpmseg/cfg.hpp"
#include "rpmseg/loggen.hpp"
#include "rpmseg/metrics.hpp"
#include "rpmseg/miner.hpp"
#include "rpmseg/pipeline.hpp"
#include "rpmseg/segmenter.hpp"

using namespace rpmseg;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
};

// Tolerance for values the tables print as exact (0.000 / 1.000 / 1.00).
constexpr double kExact = 1e-9;

Cfg random_digraph(std::mt19937_64& rng) {
    int n = std::uniform_int_distribution<int>(1, 12)(rng);
    double density = std::uniform_real_distribution<double>(0.15, 0.5)(rng);
    std::bernoulli_distribution edge(density);
    EdgeSet edges;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (edge(rng))
                edges.insert({a, b});
    // Restrict to the part reachable from vertex 0 so the dominator
    // computation's single-entry precondition holds.
    std::set<int> reach{0};
    std::vector<int> stack{0};
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (const auto& [a, b] : edges)
            if (a == v && reach.insert(b).second)
                stack.push_back(b);
    }
    std::map<int, int> relabel;
    for (int v : reach)
        relabel.emplace(v, static_cast<int>(relabel.size()));
    Cfg g;
    for (std::size_t i = 0; i < relabel.size(); ++i) {
        g.vertex_keys.push_back("v" + std::to_string(i));
        g.vertex_of["v" + std::to_string(i)] = static_cast<int>(i);
    }
    g.entry_target = relabel.at(0);
    for (const auto& [a, b] : edges)
        if (relabel.count(a) && relabel.count(b))
            g.edges.insert({relabel.at(a), relabel.at(b)});
    return g;
}

// ---- criteria -----------------------------------------------------------

Outcome worked_example_golden() {
    Outcome out;
    PipelineConfig config;
    config.schema = fixtures::worked_example_schema();
    auto result = run_pipeline(config, fixtures::kWorkedExampleCsv);

    Cfg g = build_cfg(result.nlog);
    const int N = 0, F = 1, D = 2, P = 3, S = 4;
    EdgeSet expected{{N, F}, {F, D}, {D, P}, {P, S}, {S, N}, {N, D}, {P, F}, {F, S}};
    out.require(g.edges == expected, "CFG edge set mismatch");

    DominatorTree dt = compute_dominator_tree(g);
    out.require(dt.idom[N] == Cfg::kEntry && dt.idom[F] == N && dt.idom[D] == N &&
                    dt.idom[S] == N && dt.idom[P] == D,
                "dominator tree mismatch");

    const auto& b = result.back_edges.edges;
    out.require(b.size() == 2, "expected 2 back-edges, got " + std::to_string(b.size()));
    if (b.size() == 2) {
        out.require(b[0].from == S && b[0].to == N &&
                        b[0].origin == BackEdgeOrigin::Header,
                    "(S,N) header back-edge missing");
        out.require(b[1].from == P && b[1].to == F &&
                        b[1].origin == BackEdgeOrigin::Irreducible,
                    "(P,F) irreducible back-edge missing");
    }

    const auto& segs = result.segmentation.segments;
    out.require(segs.size() == 2, "expected 2 segments");
    if (segs.size() == 2) {
        out.require(segs[0].start_index == 0 && segs[0].end_index == 4,
                    "segment 1 is not rows 1-5");
        out.require(segs[1].start_index == 5 && segs[1].end_index == 9,
                    "segment 2 is not rows 6-10");
    }
    out.require(result.segmentation.discarded_indices.empty(), "discarded UIs present");
    return out;
}

Outcome cpn1_rediscovery() {
    Outcome out;
    GeneratorSpec spec;
    spec.tasks = {make_task("T", 1, 14)};
    spec.instances_per_variant = 100;
    spec.composition = Composition::Single;
    spec.rng_seed = 42;
    auto gen = generate(spec);
    out.require(gen.total_rows == 1400, "generator did not emit 1400 rows");

    for (Criterion criterion : {Criterion::Frequency, Criterion::Length,
                                Criterion::Coverage, Criterion::Cohesion}) {
        PipelineConfig config;
        config.schema = gen.schema;
        config.criterion = criterion;
        auto result = run_pipeline(config, gen.log_csv);
        std::string tag = " [" + to_string(criterion) + "]";

        out.require(result.segmentation.segments.size() == 100,
                    "expected 100 segments" + tag);
        out.require(result.routines.size() == 1, "expected exactly 1 routine" + tag);
        if (result.routines.size() != 1)
            continue;
        out.require(result.routines[0].pattern.symbols.size() == 14,
                    "routine length is not 14" + tag);

        std::vector<EvalSegment> discovered;
        for (const auto& seg : result.segmentation.segments) {
            EvalSegment d;
            for (std::size_t i = seg.start_index; i <= seg.end_index; ++i) {
                d.symbols.push_back(result.nlog[i].key);
                d.positions.push_back(i);
            }
            discovered.push_back(std::move(d));
        }
        std::vector<SymbolSeq> routines;
        std::vector<std::vector<std::size_t>> consumed;
        for (const auto& r : result.routines) {
            SymbolSeq symbols;
            for (int s : r.pattern.symbols)
                symbols.push_back(result.symbols.name_of(s));
            routines.push_back(std::move(symbols));
            consumed.push_back(r.consumed_positions);
        }
        auto report =
            evaluate(discovered, routines, consumed, result.nlog.size(), gen.truth);
        out.require(std::abs(report.avg_led) < kExact, "avg LED is not 0.000" + tag);
        out.require(std::abs(report.avg_jc - 1.0) < kExact, "JC is not 1.000" + tag);
        out.require(std::abs(report.total_coverage - 1.0) < kExact,
                    "total coverage is not 1.00" + tag);
    }
    return out;
}

Outcome interleaving_limitation() {
    Outcome out;
    GeneratorSpec spec;
    spec.tasks = {make_task("A", 1, 6), make_task("B", 1, 5)};
    spec.instances_per_variant = 50;
    spec.composition = Composition::Interleaved;
    spec.rng_seed = 42;
    auto gen = generate(spec);
    out.require(gen.truth.segments.size() == 100, "generator did not emit 100 segments");

    PipelineConfig config;
    config.schema = gen.schema;
    auto result = run_pipeline(config, gen.log_csv);
    out.require(result.segmentation.segments.size() == 50,
                "expected exactly 50 merged segments, got " +
                    std::to_string(result.segmentation.segments.size()));
    return out;
}

Outcome dominator_oracle() {
    Outcome out;
    std::mt19937_64 rng(1234);
    for (int trial = 0; trial < 500; ++trial) {
        Cfg g = random_digraph(rng);
        DominatorTree dt = compute_dominator_tree(g);
        for (int v = 0; v < g.vertex_count(); ++v)
            for (int w = 0; w < g.vertex_count(); ++w)
                out.require(dt.dominates(v, w) == oracles::brute_dominates(g, v, w),
                            "dominance mismatch at trial " + std::to_string(trial));
        if (!out.ok)
            return out;
    }
    return out;
}

Outcome closed_pattern_oracle() {
    Outcome out;
    std::mt19937_64 rng(5678);
    for (int trial = 0; trial < 200; ++trial) {
        std::uniform_int_distribution<int> n_segs(1, 6), alphabet(1, 5), len(1, 6);
        int a = alphabet(rng);
        int count = n_segs(rng);
        std::vector<std::vector<int>> raw;
        std::vector<Sequence> db;
        for (int s = 0; s < count; ++s) {
            std::vector<int> symbols;
            int l = len(rng);
            std::uniform_int_distribution<int> pick(0, a - 1);
            for (int i = 0; i < l; ++i)
                symbols.push_back(pick(rng));
            Sequence seq;
            for (std::size_t i = 0; i < symbols.size(); ++i)
                seq.push_back({symbols[i], i});
            raw.push_back(std::move(symbols));
            db.push_back(std::move(seq));
        }
        for (double ms : {0.3, 0.5, 1.0}) {
            std::size_t floor_count = std::max<std::size_t>(
                1, static_cast<std::size_t>(std::ceil(ms * count)));
            auto expected = oracles::brute_closed_patterns(raw, floor_count, 1);
            std::map<std::vector<int>, std::size_t> actual;
            for (const auto& p : mine_closed_patterns(db, ms))
                actual[p.symbols] = static_cast<std::size_t>(p.support_count);
            out.require(expected == actual,
                        "closed-pattern mismatch at trial " + std::to_string(trial));
            if (!out.ok)
                return out;
        }
    }
    return out;
}

Outcome residual_acyclicity() {
    Outcome out;
    std::mt19937_64 rng(91011);
    for (int trial = 0; trial < 200; ++trial) {
        int alphabet = std::uniform_int_distribution<int>(1, 15)(rng);
        int length = std::uniform_int_distribution<int>(1, 500)(rng);
        std::string symbols;
        std::uniform_int_distribution<int> pick(0, alphabet - 1);
        for (int i = 0; i < length; ++i)
            symbols += static_cast<char>('a' + pick(rng));
        Cfg g = build_cfg(fixtures::nlog_from_symbols(symbols));
        BackEdgeSet b = detect_back_edges(g);
        EdgeSet residual = g.edges;
        for (const auto& e : b.edges)
            residual.erase({e.from, e.to});
        out.require(oracles::is_acyclic(g.vertex_count(), residual),
                    "residual cycle at trial " + std::to_string(trial));
        if (!out.ok)
            return out;
    }
    return out;
}

Outcome scale_check() {
    Outcome out;
    GeneratorSpec spec;
    spec.tasks = {make_task("T", 38, 14)};
    spec.instances_per_variant = 53; // 38 x 53 = 2014 segments, 28196 rows
    spec.composition = Composition::Single;
    spec.rng_seed = 42;
    auto gen = generate(spec);
    out.require(gen.total_rows > 28000, "generated log is smaller than ~28k rows");

    PipelineConfig config;
    config.schema = gen.schema;
    auto result = run_pipeline(config, gen.log_csv);
    out.require(result.segmentation.segments.size() == 2014,
                "expected 2014 segments, got " +
                    std::to_string(result.segmentation.segments.size()));

    double segment_seconds = 0.0;
    for (const auto& t : result.timings)
        if (t.stage == "segment" || t.stage == "back-edges")
            segment_seconds += t.seconds;
    out.require(segment_seconds < 10.0, "segmentation exceeded 10 s");
    std::ostringstream note;
    note << "segmentation " << segment_seconds << " s";
    if (out.ok)
        out.detail = note.str();
    return out;
}

Outcome metric_suite() {
    Outcome out;
    auto seq = [](const std::string& letters) {
        SymbolSeq s;
        for (char c : letters)
            s.emplace_back(1, c);
        return s;
    };
    out.require(std::abs(normalized_led(seq("NFDPS"), seq("NFDPS"))) < kExact,
                "LED of identical sequences is not 0");
    out.require(std::abs(normalized_led(seq("NFDPS"), seq("NDPS")) - 0.2) < kExact,
                "LED single deletion is not 0.2");
    out.require(std::abs(normalized_led(seq("abc"), seq("xyz")) - 1.0) < kExact,
                "LED of disjoint sequences is not 1.0");
    out.require(std::abs(jaccard(seq("NFDPS"), seq("NDPFS")) - 1.0) < kExact,
                "JC of a permutation is not 1.0");
    out.require(std::abs(jaccard(seq("ab"), seq("ac")) - 1.0 / 3.0) < kExact,
                "JC of ab/ac is not 1/3");
    out.require(std::abs(jaccard(seq("ab"), seq("cd"))) < kExact,
                "JC of disjoint sequences is not 0");

    std::mt19937_64 rng(1213);
    std::uniform_int_distribution<int> len(0, 8), sym(0, 3);
    auto random_seq = [&]() {
        SymbolSeq s;
        int l = len(rng);
        for (int i = 0; i < l; ++i)
            s.emplace_back(1, static_cast<char>('a' + sym(rng)));
        return s;
    };
    for (int trial = 0; trial < 1000 && out.ok; ++trial) {
        SymbolSeq a = random_seq(), b = random_seq();
        double led = normalized_led(a, b);
        out.require(std::abs(led - normalized_led(b, a)) < kExact, "LED asymmetric");
        out.require(led >= 0.0 && led <= 1.0, "LED out of bounds");
        if (a == b)
            out.require(led < kExact, "LED of equal sequences not 0");
        double jc = jaccard(a, b);
        out.require(std::abs(jc - jaccard(b, a)) < kExact, "JC asymmetric");
        out.require(jc >= 0.0 && jc <= 1.0, "JC out of bounds");
        std::multiset<std::string> ma(a.begin(), a.end()), mb(b.begin(), b.end());
        if (ma == mb)
            out.require(std::abs(jc - 1.0) < kExact, "JC of equal multisets not 1");
    }
    return out;
}

} // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        double budget_seconds;
        std::function<Outcome()> run;
    };
    const Criterion criteria[] = {
        {1, "worked-example golden test", 1.0, worked_example_golden},
        {2, "CPN1-analog rediscovery", 5.0, cpn1_rediscovery},
        {3, "interleaving limitation (50 of 100)", 30.0, interleaving_limitation},
        {4, "dominator oracle, 500 random digraphs", 30.0, dominator_oracle},
        {5, "closed-pattern oracle, 200 random databases", 60.0, closed_pattern_oracle},
        {6, "residual acyclicity, 200 random logs", 60.0, residual_acyclicity},
        {7, "scale check, ~28k-row log", 120.0, scale_check},
        {8, "metric unit suite", 30.0, metric_suite},
    };

    bool all_ok = true;
    for (const auto& c : criteria) {
        auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& e) {
            out.ok = false;
            out.detail = std::string("exception: ") + e.what();
        }
        std::chrono::duration<double> elapsed =
            std::chrono::steady_clock::now() - start;
        if (elapsed.count() >= c.budget_seconds) {
            out.ok = false;
            out.detail = "exceeded time budget of " +
                         std::to_string(c.budget_seconds) + " s";
        }
        std::printf("criterion %d: %s  %s (%.3f s)%s%s\n", c.id,
                    out.ok ? "PASS" : "FAIL", c.name, elapsed.count(),
                    out.detail.empty() ? "" : " -- ", out.detail.c_str());
        all_ok = all_ok && out.ok;
    }
    return all_ok ? 0 : 1;
}
