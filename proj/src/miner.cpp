#include "rpmseg/miner.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

#include "rpmseg/errors.hpp"

namespace rpmseg {

int SymbolTable::intern(const std::string& name) {
    auto it = ids.find(name);
    if (it != ids.end())
        return it->second;
    int id = static_cast<int>(names.size());
    ids.emplace(name, id);
    names.push_back(name);
    return id;
}

std::vector<Sequence> sequences_from_segments(const std::vector<Segment>& segments,
                                              SymbolTable& table) {
    std::vector<Sequence> out;
    out.reserve(segments.size());
    for (const auto& seg : segments) {
        Sequence seq;
        seq.reserve(seg.uis.size());
        for (std::size_t i = 0; i < seg.uis.size(); ++i)
            seq.push_back({table.intern(seg.uis[i].key), seg.start_index + i});
        out.push_back(std::move(seq));
    }
    return out;
}

std::vector<std::size_t> leftmost_minimal_embedding(const Sequence& seq,
                                                    const std::vector<int>& pattern) {
    if (pattern.empty())
        return {};
    std::vector<std::size_t> best;
    std::size_t best_window = 0;
    for (std::size_t start = 0; start < seq.size(); ++start) {
        if (seq[start].symbol != pattern[0])
            continue;
        // Greedy forward match gives the earliest completion for this start.
        std::vector<std::size_t> positions{start};
        std::size_t next = 1;
        for (std::size_t i = start + 1; i < seq.size() && next < pattern.size(); ++i) {
            if (seq[i].symbol == pattern[next]) {
                positions.push_back(i);
                ++next;
            }
        }
        if (next < pattern.size())
            break; // no completion from this start or any later one
        std::size_t window = positions.back() - positions.front() + 1;
        if (best.empty() || window < best_window) {
            best = std::move(positions);
            best_window = window;
        }
    }
    return best;
}

namespace {

bool is_subsequence(const std::vector<int>& small, const std::vector<int>& big) {
    std::size_t i = 0;
    for (std::size_t j = 0; j < big.size() && i < small.size(); ++j)
        if (big[j] == small[i])
            ++i;
    return i == small.size();
}

struct MinedNode {
    std::vector<int> symbols;
    std::vector<std::size_t> support_set; // ascending segment indices
};

} // namespace

std::vector<SequentialPattern> mine_closed_patterns(const std::vector<Sequence>& segments,
                                                    double min_support,
                                                    std::size_t min_length) {
    if (!(min_support > 0.0) || min_support > 1.0)
        throw ConfigError("min_support must lie in (0, 1]");
    if (min_length < 1)
        throw ConfigError("min_length must be >= 1");
    if (segments.empty())
        return {};
    const std::size_t n = segments.size();
    const std::size_t floor_count = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::ceil(min_support * static_cast<double>(n))));

    int alphabet = 0;
    for (const auto& seq : segments)
        for (const auto& e : seq)
            alphabet = std::max(alphabet, e.symbol + 1);

    std::vector<MinedNode> all;
    std::vector<int> prefix;

    // Prefix projection: (segment index, scan start). An item's support at
    // a node is the number of projected segments containing it.
    using Projection = std::vector<std::pair<std::size_t, std::size_t>>;
    std::function<void(const Projection&)> grow = [&](const Projection& proj) {
        std::vector<Projection> extensions(static_cast<std::size_t>(alphabet));
        std::vector<char> seen(static_cast<std::size_t>(alphabet), 0);
        for (const auto& [seg_idx, start] : proj) {
            const Sequence& seq = segments[seg_idx];
            std::fill(seen.begin(), seen.end(), 0);
            for (std::size_t i = start; i < seq.size(); ++i) {
                auto sym = static_cast<std::size_t>(seq[i].symbol);
                if (!seen[sym]) {
                    seen[sym] = 1;
                    extensions[sym].push_back({seg_idx, i + 1});
                }
            }
        }
        for (int item = 0; item < alphabet; ++item) {
            auto& next_proj = extensions[static_cast<std::size_t>(item)];
            if (next_proj.size() < floor_count)
                continue;
            prefix.push_back(item);
            MinedNode node;
            node.symbols = prefix;
            for (const auto& [seg_idx, pos] : next_proj)
                node.support_set.push_back(seg_idx);
            all.push_back(std::move(node));
            grow(next_proj);
            prefix.pop_back();
        }
    };
    Projection root;
    for (std::size_t i = 0; i < n; ++i)
        root.push_back({i, 0});
    grow(root);

    // Closedness: a supersequence with equal support count over the same
    // database necessarily has the same support set, so only patterns
    // sharing a support set need comparing.
    std::map<std::vector<std::size_t>, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < all.size(); ++i)
        groups[all[i].support_set].push_back(i);

    std::vector<char> closed(all.size(), 1);
    for (auto& [set, members] : groups) {
        std::vector<std::size_t> by_length = members;
        std::stable_sort(by_length.begin(), by_length.end(),
                         [&](std::size_t a, std::size_t b) {
                             return all[a].symbols.size() > all[b].symbols.size();
                         });
        for (std::size_t i : members) {
            for (std::size_t j : by_length) {
                if (all[j].symbols.size() <= all[i].symbols.size())
                    break;
                if (is_subsequence(all[i].symbols, all[j].symbols)) {
                    closed[i] = 0;
                    break;
                }
            }
        }
    }

    std::vector<SequentialPattern> result;
    for (std::size_t i = 0; i < all.size(); ++i) {
        if (!closed[i] || all[i].symbols.size() < min_length)
            continue;
        SequentialPattern p;
        p.symbols = all[i].symbols;
        p.support_count = static_cast<int>(all[i].support_set.size());
        p.support = static_cast<double>(p.support_count) / static_cast<double>(n);
        for (std::size_t seg_idx : all[i].support_set)
            p.occurrences.push_back(
                {seg_idx, leftmost_minimal_embedding(segments[seg_idx], p.symbols)});
        result.push_back(std::move(p));
    }
    return result;
}

Criterion criterion_from_string(const std::string& name) {
    if (name == "frequency")
        return Criterion::Frequency;
    if (name == "length")
        return Criterion::Length;
    if (name == "coverage")
        return Criterion::Coverage;
    if (name == "cohesion")
        return Criterion::Cohesion;
    throw ConfigError("unknown criterion '" + name + "'");
}

std::string to_string(Criterion c) {
    switch (c) {
    case Criterion::Frequency: return "frequency";
    case Criterion::Length: return "length";
    case Criterion::Coverage: return "coverage";
    case Criterion::Cohesion: return "cohesion";
    }
    return "?";
}

double score_pattern(const SequentialPattern& p, std::size_t total_log_size,
                     Criterion criterion) {
    const double len = static_cast<double>(p.symbols.size());
    switch (criterion) {
    case Criterion::Frequency:
        return static_cast<double>(p.support_count);
    case Criterion::Length:
        return len;
    case Criterion::Coverage: {
        if (total_log_size == 0)
            throw ConfigError("coverage criterion needs a nonzero log size");
        double consumed = static_cast<double>(p.occurrences.size()) * len;
        return consumed / static_cast<double>(total_log_size);
    }
    case Criterion::Cohesion: {
        std::vector<std::size_t> gaps;
        for (const auto& [seg, positions] : p.occurrences) {
            std::size_t window = positions.back() - positions.front() + 1;
            gaps.push_back(window - p.symbols.size());
        }
        std::sort(gaps.begin(), gaps.end());
        std::size_t median = gaps[(gaps.size() - 1) / 2]; // lower median
        return len - static_cast<double>(median);
    }
    }
    throw ConfigError("unknown criterion");
}

namespace {

Sequence erase_positions(const Sequence& seq, const std::vector<std::size_t>& positions) {
    Sequence out;
    out.reserve(seq.size() - positions.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < seq.size(); ++i) {
        if (k < positions.size() && positions[k] == i) {
            ++k;
            continue;
        }
        out.push_back(seq[i]);
    }
    return out;
}

std::vector<Sequence> remove_all(const std::vector<Sequence>& segments,
                                 const std::vector<int>& symbols,
                                 std::vector<std::size_t>* consumed) {
    std::vector<Sequence> out;
    out.reserve(segments.size());
    for (const auto& seg : segments) {
        Sequence current = seg;
        for (;;) {
            auto emb = leftmost_minimal_embedding(current, symbols);
            if (emb.empty())
                break;
            if (consumed)
                for (std::size_t pos : emb)
                    consumed->push_back(current[pos].log_pos);
            current = erase_positions(current, emb);
        }
        out.push_back(std::move(current));
    }
    return out;
}

} // namespace

std::vector<Sequence> remove_occurrences(const std::vector<Sequence>& segments,
                                         const SequentialPattern& p) {
    return remove_all(segments, p.symbols, nullptr);
}

std::vector<RoutineCandidate> extract_routines(std::vector<Sequence> segments,
                                               const MinerOptions& opts) {
    std::size_t log_size = opts.total_log_size;
    if (log_size == 0)
        for (const auto& s : segments)
            log_size += s.size();

    std::vector<RoutineCandidate> result;
    int rank = 1;
    for (;;) {
        auto patterns = mine_closed_patterns(segments, opts.min_support, opts.min_length);
        if (patterns.empty())
            break;

        std::size_t best = 0;
        double best_score = score_pattern(patterns[0], log_size, opts.criterion);
        for (std::size_t i = 1; i < patterns.size(); ++i) {
            double score = score_pattern(patterns[i], log_size, opts.criterion);
            const auto& a = patterns[i];
            const auto& b = patterns[best];
            bool better =
                score > best_score ||
                (score == best_score &&
                 (a.support_count > b.support_count ||
                  (a.support_count == b.support_count &&
                   (a.symbols.size() > b.symbols.size() ||
                    (a.symbols.size() == b.symbols.size() && a.symbols < b.symbols)))));
            if (better) {
                best = i;
                best_score = score;
            }
        }

        RoutineCandidate candidate;
        candidate.pattern = patterns[best];
        candidate.criterion = opts.criterion;
        candidate.score = best_score;
        candidate.rank = rank++;
        segments = remove_all(segments, patterns[best].symbols,
                              &candidate.consumed_positions);
        std::sort(candidate.consumed_positions.begin(),
                  candidate.consumed_positions.end());
        if (candidate.consumed_positions.empty())
            break; // frequent pattern with no embedding: cannot happen
        result.push_back(std::move(candidate));
    }
    return result;
}

} // namespace rpmseg
