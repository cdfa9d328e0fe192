#include "rpmseg/metrics.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>

namespace rpmseg {

double normalized_led(const SymbolSeq& a, const SymbolSeq& b) {
    const std::size_t n = a.size(), m = b.size();
    if (n == 0 && m == 0)
        return 0.0;
    std::vector<std::size_t> prev(m + 1), curr(m + 1);
    for (std::size_t j = 0; j <= m; ++j)
        prev[j] = j;
    for (std::size_t i = 1; i <= n; ++i) {
        curr[0] = i;
        for (std::size_t j = 1; j <= m; ++j) {
            std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            curr[j] = std::min({prev[j] + 1, curr[j - 1] + 1, sub});
        }
        std::swap(prev, curr);
    }
    return static_cast<double>(prev[m]) / static_cast<double>(std::max(n, m));
}

namespace {

std::size_t multiset_intersection(const SymbolSeq& a, const SymbolSeq& b) {
    std::map<std::string, std::size_t> counts;
    for (const auto& s : a)
        ++counts[s];
    std::size_t n = 0;
    for (const auto& s : b) {
        auto it = counts.find(s);
        if (it != counts.end() && it->second > 0) {
            --it->second;
            ++n;
        }
    }
    return n;
}

} // namespace

double jaccard(const SymbolSeq& a, const SymbolSeq& b) {
    if (a.empty() && b.empty())
        return 1.0;
    std::size_t inter = multiset_intersection(a, b);
    std::size_t uni = a.size() + b.size() - inter;
    return static_cast<double>(inter) / static_cast<double>(uni);
}

double jaccard_literal(const SymbolSeq& a, const SymbolSeq& b) {
    if (a.empty() && b.empty())
        return 1.0;
    std::size_t inter = multiset_intersection(a, b);
    return static_cast<double>(inter) / static_cast<double>(a.size() + b.size());
}

std::pair<double, std::vector<double>>
segmentation_quality(const std::vector<EvalSegment>& discovered,
                     const GroundTruth& truth) {
    std::vector<double> per;
    per.reserve(discovered.size());
    for (const auto& d : discovered) {
        std::set<std::size_t> d_pos(d.positions.begin(), d.positions.end());
        double best = 1.0;
        bool found = false;
        for (const auto& t : truth.segments) {
            bool overlaps = std::any_of(t.positions.begin(), t.positions.end(),
                                        [&](std::size_t p) { return d_pos.count(p); });
            if (!overlaps)
                continue;
            double led = normalized_led(d.symbols, t.symbols);
            if (!found || led < best) {
                best = led;
                found = true;
            }
        }
        per.push_back(best);
    }
    double avg = 0.0;
    for (double v : per)
        avg += v;
    if (!per.empty())
        avg /= static_cast<double>(per.size());
    return {avg, per};
}

std::pair<double, std::vector<double>>
routine_quality(const std::vector<SymbolSeq>& discovered, const GroundTruth& truth,
                bool literal) {
    std::vector<double> per;
    per.reserve(discovered.size());
    for (const auto& d : discovered) {
        double best = 0.0;
        for (const auto& t : truth.routines) {
            double jc = literal ? jaccard_literal(d, t) : jaccard(d, t);
            best = std::max(best, jc);
        }
        per.push_back(best);
    }
    if (per.empty())
        return {std::numeric_limits<double>::quiet_NaN(), per};
    double avg = 0.0;
    for (double v : per)
        avg += v;
    avg /= static_cast<double>(per.size());
    return {avg, per};
}

double total_coverage(const std::vector<std::vector<std::size_t>>& consumed,
                      std::size_t log_size) {
    if (log_size == 0)
        return 0.0;
    std::set<std::size_t> positions;
    for (const auto& c : consumed)
        positions.insert(c.begin(), c.end());
    return static_cast<double>(positions.size()) / static_cast<double>(log_size);
}

EvaluationReport evaluate(const std::vector<EvalSegment>& discovered_segments,
                          const std::vector<SymbolSeq>& discovered_routines,
                          const std::vector<std::vector<std::size_t>>& consumed,
                          std::size_t log_size, const GroundTruth& truth,
                          bool literal_jc) {
    EvaluationReport report;
    std::tie(report.avg_led, report.per_segment_led) =
        segmentation_quality(discovered_segments, truth);
    std::tie(report.avg_jc, report.per_routine_jc) =
        routine_quality(discovered_routines, truth, literal_jc);
    report.total_coverage = total_coverage(consumed, log_size);
    double total_len = 0.0;
    for (const auto& r : discovered_routines)
        total_len += static_cast<double>(r.size());
    report.avg_routine_length =
        discovered_routines.empty()
            ? 0.0
            : total_len / static_cast<double>(discovered_routines.size());
    report.discovered_segments = discovered_segments.size();
    report.truth_segments = truth.segments.size();
    report.discovered_routines = discovered_routines.size();
    report.truth_routines = truth.routines.size();
    return report;
}

} // namespace rpmseg
