#include "rpmseg/cfg.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <map>
#include <stdexcept>

#include "rpmseg/errors.hpp"

namespace rpmseg {

Cfg build_cfg(const NormalizedLog& nlog) {
    if (nlog.empty())
        throw ConfigError("cannot build a CFG from an empty log");
    Cfg g;
    auto intern = [&](const NormalizedUI& ui) {
        auto it = g.vertex_of.find(ui.key);
        if (it != g.vertex_of.end())
            return it->second;
        int id = g.vertex_count();
        g.vertex_of.emplace(ui.key, id);
        g.vertex_keys.push_back(ui.key);
        return id;
    };
    int prev = intern(nlog.front());
    g.entry_target = prev;
    for (std::size_t i = 1; i < nlog.size(); ++i) {
        int v = intern(nlog[i]);
        g.edges.insert({prev, v});
        prev = v;
    }
    return g;
}

bool DominatorTree::dominates(int a, int b) const {
    if (a == Cfg::kEntry)
        return true;
    while (b != Cfg::kEntry) {
        if (b == a)
            return true;
        b = idom[static_cast<std::size_t>(b)];
    }
    return false;
}

// Iterative dataflow over reverse postorder (Cooper-Harvey-Kennedy).
DominatorTree compute_dominator_tree(const Cfg& g) {
    const int n = g.vertex_count();
    // Internal numbering: 0 = entry, v+1 = CFG vertex v.
    std::vector<std::vector<int>> succ(n + 1), pred(n + 1);
    succ[0].push_back(g.entry_target + 1);
    pred[g.entry_target + 1].push_back(0);
    for (const auto& [a, b] : g.edges) {
        succ[a + 1].push_back(b + 1);
        pred[b + 1].push_back(a + 1);
    }

    std::vector<int> postorder;
    std::vector<char> seen(n + 1, 0);
    // Iterative DFS with an explicit child cursor.
    std::vector<std::pair<int, std::size_t>> stack{{0, 0}};
    seen[0] = 1;
    while (!stack.empty()) {
        auto& [node, cursor] = stack.back();
        if (cursor < succ[node].size()) {
            int next = succ[node][cursor++];
            if (!seen[next]) {
                seen[next] = 1;
                stack.push_back({next, 0});
            }
        } else {
            postorder.push_back(node);
            stack.pop_back();
        }
    }
    for (int v = 1; v <= n; ++v)
        if (!seen[v])
            throw std::logic_error("CFG vertex unreachable from entry");

    std::vector<int> po_index(n + 1, -1);
    for (std::size_t i = 0; i < postorder.size(); ++i)
        po_index[postorder[i]] = static_cast<int>(i);

    std::vector<int> idom(n + 1, -1);
    idom[0] = 0;
    auto intersect = [&](int a, int b) {
        while (a != b) {
            while (po_index[a] < po_index[b])
                a = idom[a];
            while (po_index[b] < po_index[a])
                b = idom[b];
        }
        return a;
    };

    bool changed = true;
    while (changed) {
        changed = false;
        for (auto it = postorder.rbegin(); it != postorder.rend(); ++it) {
            int v = *it;
            if (v == 0)
                continue;
            int new_idom = -1;
            for (int p : pred[v]) {
                if (idom[p] == -1)
                    continue;
                new_idom = new_idom == -1 ? p : intersect(new_idom, p);
            }
            if (new_idom != idom[v]) {
                idom[v] = new_idom;
                changed = true;
            }
        }
    }

    DominatorTree dt;
    dt.idom.resize(n);
    for (int v = 1; v <= n; ++v)
        dt.idom[v - 1] = idom[v] - 1; // entry maps back to kEntry
    return dt;
}

bool Scc::contains(int v) const {
    return std::binary_search(vertices.begin(), vertices.end(), v);
}

std::vector<Scc> find_sccs(const std::vector<int>& vertices, const EdgeSet& edges,
                           std::optional<int> external_entry) {
    std::map<int, std::vector<int>> fwd, rev;
    for (int v : vertices) {
        fwd[v];
        rev[v];
    }
    for (const auto& [a, b] : edges) {
        fwd[a].push_back(b);
        rev[b].push_back(a);
    }

    // Kosaraju: finish order on the forward graph, then sweep the
    // transpose. Iterative to tolerate long logs.
    std::vector<int> order;
    std::map<int, char> state; // 0 unseen, 1 done
    for (int root : vertices) {
        if (state[root])
            continue;
        std::vector<std::pair<int, std::size_t>> stack{{root, 0}};
        state[root] = 1;
        while (!stack.empty()) {
            auto& [node, cursor] = stack.back();
            auto& adj = fwd[node];
            if (cursor < adj.size()) {
                int next = adj[cursor++];
                if (!state[next]) {
                    state[next] = 1;
                    stack.push_back({next, 0});
                }
            } else {
                order.push_back(node);
                stack.pop_back();
            }
        }
    }

    std::map<int, int> component;
    int n_components = 0;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        if (component.count(*it))
            continue;
        int c = n_components++;
        std::vector<int> stack{*it};
        component[*it] = c;
        while (!stack.empty()) {
            int node = stack.back();
            stack.pop_back();
            for (int p : rev[node]) {
                if (!component.count(p)) {
                    component[p] = c;
                    stack.push_back(p);
                }
            }
        }
    }

    std::vector<std::vector<int>> members(n_components);
    for (int v : vertices)
        members[component[v]].push_back(v);

    std::vector<Scc> result;
    for (auto& group : members) {
        std::sort(group.begin(), group.end());
        bool nontrivial = group.size() > 1 ||
                          (group.size() == 1 && edges.count({group[0], group[0]}));
        if (!nontrivial)
            continue;
        Scc scc;
        scc.vertices = group;
        for (const auto& e : edges)
            if (scc.contains(e.first) && scc.contains(e.second))
                scc.edges.insert(e);
        std::set<int> entries;
        for (const auto& [a, b] : edges)
            if (!scc.contains(a) && scc.contains(b))
                entries.insert(b);
        if (external_entry && scc.contains(*external_entry))
            entries.insert(*external_entry);
        scc.entries.assign(entries.begin(), entries.end());
        result.push_back(std::move(scc));
    }
    // Deterministic order: by smallest vertex id.
    std::sort(result.begin(), result.end(),
              [](const Scc& a, const Scc& b) { return a.vertices[0] < b.vertices[0]; });
    return result;
}

std::optional<int> find_header(const Scc& scc, const DominatorTree& dt) {
    for (int h : scc.vertices) {
        bool all = true;
        for (int v : scc.vertices) {
            if (v != h && !dt.dominates(h, v)) {
                all = false;
                break;
            }
        }
        if (all)
            return h;
    }
    return std::nullopt;
}

EdgeSet find_loop_edges(const Scc& scc) {
    std::map<int, std::vector<int>> adj;
    for (int v : scc.vertices)
        adj[v];
    for (const auto& [a, b] : scc.edges)
        adj[a].push_back(b);
    for (auto& [v, nbrs] : adj)
        std::sort(nbrs.begin(), nbrs.end());

    std::map<int, int> discovery;
    int clock = 0;
    const std::vector<int>& starts =
        scc.entries.empty() ? scc.vertices : scc.entries;
    auto dfs_from = [&](int root) {
        if (discovery.count(root))
            return;
        std::vector<std::pair<int, std::size_t>> stack{{root, 0}};
        discovery[root] = clock++;
        while (!stack.empty()) {
            auto& [node, cursor] = stack.back();
            auto& nbrs = adj[node];
            if (cursor < nbrs.size()) {
                int next = nbrs[cursor++];
                if (!discovery.count(next)) {
                    discovery[next] = clock++;
                    stack.push_back({next, 0});
                }
            } else {
                stack.pop_back();
            }
        }
    };
    for (int s : starts)
        dfs_from(s);
    for (int v : scc.vertices)
        dfs_from(v);

    EdgeSet loops;
    for (const auto& [a, b] : scc.edges)
        if (discovery[b] < discovery[a])
            loops.insert({a, b});
    return loops;
}

namespace {

// Exact longest simple path length (in edges) from `from` to `to`,
// restricted to the SCC. Exponential backtracking; callers gate it by a
// vertex budget, and `steps` caps the total node expansions so dense
// components cannot blow up. Returns nullopt when the cap runs out.
std::optional<int> longest_simple_path(const Scc& scc, int from, int to,
                                       std::size_t& steps) {
    std::map<int, std::vector<int>> adj;
    for (const auto& [a, b] : scc.edges)
        adj[a].push_back(b);
    std::set<int> visited;
    int best = -1;
    bool aborted = false;
    std::function<void(int, int)> go = [&](int node, int length) {
        if (steps == 0) {
            aborted = true;
            return;
        }
        --steps;
        if (node == to) {
            best = std::max(best, length);
            return;
        }
        for (int next : adj[node]) {
            if (aborted)
                return;
            if (visited.insert(next).second) {
                go(next, length + 1);
                visited.erase(next);
            }
        }
    };
    visited.insert(from);
    go(from, 0);
    if (aborted)
        return std::nullopt;
    return best;
}

int dfs_depth_of(const Scc& scc, int from, int to) {
    std::map<int, std::vector<int>> adj;
    for (const auto& [a, b] : scc.edges)
        adj[a].push_back(b);
    for (auto& [v, nbrs] : adj)
        std::sort(nbrs.begin(), nbrs.end());
    std::map<int, int> depth;
    std::vector<std::pair<int, std::size_t>> stack{{from, 0}};
    depth[from] = 0;
    while (!stack.empty()) {
        auto& [node, cursor] = stack.back();
        auto& nbrs = adj[node];
        if (cursor < nbrs.size()) {
            int next = nbrs[cursor++];
            if (!depth.count(next)) {
                depth[next] = static_cast<int>(stack.size());
                stack.push_back({next, 0});
            }
        } else {
            stack.pop_back();
        }
    }
    auto it = depth.find(to);
    return it == depth.end() ? -1 : it->second;
}

} // namespace

Edge deepest_loop_edge(const Scc& scc, const EdgeSet& candidates,
                       std::size_t vertex_budget) {
    if (candidates.empty())
        throw std::logic_error("deepest_loop_edge: no candidates");
    bool exact = scc.vertices.size() <= vertex_budget;
    // Shared expansion cap across all candidates; dense components abort
    // the exact search and fall through to the approximation below.
    std::size_t steps = 100'000;
    std::vector<int> exact_lengths;
    if (exact) {
        for (const auto& [src, tgt] : candidates) {
            auto len = longest_simple_path(scc, tgt, src, steps);
            if (!len) {
                exact = false;
                break;
            }
            exact_lengths.push_back(*len);
        }
    }
    if (!exact)
        std::fprintf(stderr,
                     "warning: SCC with %zu vertices is too large or dense for "
                     "the exact simple-path search (vertex budget %zu); using "
                     "DFS depth approximation\n",
                     scc.vertices.size(), vertex_budget);
    Edge best{};
    int best_len = -2;
    bool first = true;
    std::size_t index = 0;
    for (const auto& [src, tgt] : candidates) {
        int len = exact ? exact_lengths[index++] : dfs_depth_of(scc, tgt, src);
        // Candidate edges are std::set-ordered by (source, target), so
        // the first strict maximum realizes the tie-break.
        if (first || len > best_len) {
            best = {src, tgt};
            best_len = len;
            first = false;
        }
    }
    return best;
}

bool BackEdgeSet::contains(const std::string& from_key,
                           const std::string& to_key) const {
    return std::any_of(edges.begin(), edges.end(), [&](const BackEdge& e) {
        return e.from_key == from_key && e.to_key == to_key;
    });
}

namespace {

void analyse_scc(Scc scc, const DominatorTree& dt, const Cfg& g, BackEdgeSet& b,
                 std::size_t budget) {
    auto header = find_header(scc, dt);
    if (header) {
        EdgeSet incoming;
        for (const auto& e : scc.edges)
            if (e.second == *header)
                incoming.insert(e);
        for (const auto& [from, to] : incoming) {
            b.edges.push_back({from, to, BackEdgeOrigin::Header,
                               g.vertex_keys[from], g.vertex_keys[to]});
            scc.edges.erase({from, to});
        }
    } else {
        EdgeSet loops = find_loop_edges(scc);
        Edge e = deepest_loop_edge(scc, loops, budget);
        b.edges.push_back({e.first, e.second, BackEdgeOrigin::Irreducible,
                           g.vertex_keys[e.first], g.vertex_keys[e.second]});
        scc.edges.erase(e);
    }
    for (auto& nested : find_sccs(scc.vertices, scc.edges))
        analyse_scc(std::move(nested), dt, g, b, budget);
}

} // namespace

BackEdgeSet detect_back_edges(const Cfg& g, std::size_t simple_path_budget) {
    DominatorTree dt = compute_dominator_tree(g);
    std::vector<int> all(g.vertex_keys.size());
    for (int v = 0; v < g.vertex_count(); ++v)
        all[v] = v;
    BackEdgeSet b;
    for (auto& scc : find_sccs(all, g.edges, g.entry_target))
        analyse_scc(std::move(scc), dt, g, b, simple_path_budget);
    return b;
}

std::string to_dot(const Cfg& g, const DominatorTree& dt, const BackEdgeSet& b) {
    auto quoted = [](const std::string& s) {
        std::string out = "\"";
        for (char c : s) {
            if (c == '"' || c == '\\')
                out += '\\';
            out += c;
        }
        out += '"';
        return out;
    };
    std::string dot = "digraph cfg {\n  __entry [shape=point];\n";
    dot += "  __entry -> " + quoted(g.vertex_keys[g.entry_target]) + ";\n";
    for (const auto& [a, v] : g.edges) {
        dot += "  " + quoted(g.vertex_keys[a]) + " -> " + quoted(g.vertex_keys[v]);
        for (const auto& be : b.edges) {
            if (be.from == a && be.to == v) {
                dot += be.origin == BackEdgeOrigin::Header
                           ? " [color=red, label=\"back (header)\"]"
                           : " [color=orange, label=\"back (irreducible)\"]";
                break;
            }
        }
        dot += ";\n";
    }
    for (int v = 0; v < g.vertex_count(); ++v) {
        int d = dt.idom[v];
        std::string parent =
            d == Cfg::kEntry ? std::string("__entry") : quoted(g.vertex_keys[d]);
        dot += "  " + parent + " -> " + quoted(g.vertex_keys[v]) +
               " [style=dashed, color=gray, constraint=false];\n";
    }
    dot += "}\n";
    return dot;
}

} // namespace rpmseg
