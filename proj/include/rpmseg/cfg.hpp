#pragma once

#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "rpmseg/ui_log.hpp"

namespace rpmseg {

using Edge = std::pair<int, int>;
using EdgeSet = std::set<Edge>;

// Directly-follows graph of a normalized log. Vertex ids are assigned in
// first-occurrence-in-log order; that order drives every tie-break
// downstream. The artificial entry vertex is kEntry, kept out of
// `vertices`/`edges`.
struct Cfg {
    static constexpr int kEntry = -1;

    std::vector<std::string> vertex_keys; // id -> canonical key
    std::unordered_map<std::string, int> vertex_of;
    EdgeSet edges;     // deduplicated directly-follows pairs
    int entry_target = 0; // vertex of the first log element

    int vertex_count() const { return static_cast<int>(vertex_keys.size()); }
};

Cfg build_cfg(const NormalizedLog& nlog);

// Immediate-dominator map over vertices reachable from the entry.
struct DominatorTree {
    // idom[v] for every CFG vertex; Cfg::kEntry for the entry's child.
    std::vector<int> idom;

    // Does a dominate b? The artificial entry dominates everything.
    bool dominates(int a, int b) const;
};

DominatorTree compute_dominator_tree(const Cfg& g);

struct Scc {
    std::vector<int> vertices; // ascending id order
    EdgeSet edges;             // induced edges currently retained
    // Targets of edges entering the SCC from outside, in ascending id
    // order; empty when the searched edge set had none.
    std::vector<int> entries;

    bool contains(int v) const;
};

// Maximal strongly connected components over exactly the given edge set,
// keeping those with >1 vertex or a retained self-loop. `external_entry`
// (the artificial entry edge's target, if any) counts as an entry.
std::vector<Scc> find_sccs(const std::vector<int>& vertices, const EdgeSet& edges,
                           std::optional<int> external_entry = std::nullopt);

// The unique SCC vertex dominating all other SCC vertices, if any.
// Absent for irreducible SCCs.
std::optional<int> find_header(const Scc& scc, const DominatorTree& dt);

// Retreating edges of a depth-first traversal of the SCC: (x, y) with y
// discovered before x. Traversal starts from the SCC entries in
// ascending id order (all vertices in id order if entries are unknown).
EdgeSet find_loop_edges(const Scc& scc);

// The candidate whose target-to-source longest simple path inside the
// SCC is maximal. Exact backtracking up to `vertex_budget` vertices and
// an internal expansion cap; DFS-depth approximation (with a stderr
// warning) beyond either. Ties: lower source id, then lower target id.
Edge deepest_loop_edge(const Scc& scc, const EdgeSet& candidates,
                       std::size_t vertex_budget = 20);

enum class BackEdgeOrigin { Header, Irreducible };

struct BackEdge {
    int from = 0;
    int to = 0;
    BackEdgeOrigin origin = BackEdgeOrigin::Header;
    std::string from_key;
    std::string to_key;
};

struct BackEdgeSet {
    std::vector<BackEdge> edges;

    bool contains(const std::string& from_key, const std::string& to_key) const;
};

// Dominator tree is computed once; each non-trivial SCC either yields
// header back-edges or one irreducible loop-edge, removed before
// recursing into nested SCCs of the retained edges.
BackEdgeSet detect_back_edges(const Cfg& g, std::size_t simple_path_budget = 20);

// DOT rendering of the CFG with dominator-tree edges dashed and
// back-edges annotated by origin.
std::string to_dot(const Cfg& g, const DominatorTree& dt, const BackEdgeSet& b);

} // namespace rpmseg
