#include "quala/graph.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <tuple>

#include "quala/errors.hpp"

namespace quala {

int Graph::add_node(std::string name) {
    node_names.push_back(std::move(name));
    out.emplace_back();
    return static_cast<int>(node_names.size()) - 1;
}

int Graph::add_edge(int from, int to, Rational weight, std::string label, int tag) {
    edges.push_back({from, to, std::move(weight), std::move(label), tag});
    int id = static_cast<int>(edges.size()) - 1;
    out[from].push_back(id);
    return id;
}

std::vector<bool> reachable_from(const Graph& g, int root) {
    std::vector<bool> seen(g.node_count(), false);
    std::deque<int> queue{root};
    seen[root] = true;
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        for (int e : g.out[u]) {
            int v = g.edges[e].to;
            if (!seen[v]) {
                seen[v] = true;
                queue.push_back(v);
            }
        }
    }
    return seen;
}

SccDecomposition strongly_connected_components(const Graph& g) {
    // Iterative Tarjan.
    size_t n = g.node_count();
    SccDecomposition scc;
    scc.component.assign(n, -1);
    std::vector<int> index(n, -1), lowlink(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<int> stack;
    int next_index = 0;

    struct Frame {
        int node;
        size_t edge_pos;
    };
    for (size_t start = 0; start < n; ++start) {
        if (index[start] != -1) continue;
        std::vector<Frame> frames{{static_cast<int>(start), 0}};
        index[start] = lowlink[start] = next_index++;
        stack.push_back(static_cast<int>(start));
        on_stack[start] = true;
        while (!frames.empty()) {
            Frame& f = frames.back();
            int u = f.node;
            if (f.edge_pos < g.out[u].size()) {
                int e = g.out[u][f.edge_pos++];
                int v = g.edges[e].to;
                if (index[v] == -1) {
                    index[v] = lowlink[v] = next_index++;
                    stack.push_back(v);
                    on_stack[v] = true;
                    frames.push_back({v, 0});
                } else if (on_stack[v]) {
                    lowlink[u] = std::min(lowlink[u], index[v]);
                }
            } else {
                if (lowlink[u] == index[u]) {
                    int comp = static_cast<int>(scc.members.size());
                    scc.members.emplace_back();
                    int w;
                    do {
                        w = stack.back();
                        stack.pop_back();
                        on_stack[w] = false;
                        scc.component[w] = comp;
                        scc.members[comp].push_back(w);
                    } while (w != u);
                }
                frames.pop_back();
                if (!frames.empty()) {
                    int parent = frames.back().node;
                    lowlink[parent] = std::min(lowlink[parent], lowlink[u]);
                }
            }
        }
    }
    return scc;
}

bool scc_internal(const SccDecomposition& scc, const GraphEdge& e) {
    return scc.component[e.from] == scc.component[e.to];
}

namespace {

// Karp's recurrence on one strongly connected component; returns the
// exact maximum cycle mean, or nullopt when the component has no
// internal edge.
std::optional<Rational> karp_max_mean(const Graph& g,
                                      const std::vector<int>& members,
                                      const std::vector<int>& comp,
                                      int comp_id) {
    size_t n = members.size();
    std::vector<int> local(g.node_count(), -1);
    for (size_t i = 0; i < n; ++i) local[members[i]] = static_cast<int>(i);

    bool any_edge = false;
    for (int u : members)
        for (int e : g.out[u])
            if (comp[g.edges[e].to] == comp_id) any_edge = true;
    if (!any_edge) return std::nullopt;

    // d[k][v] = max weight of a k-edge walk source -> v inside the
    // component; absent entries mean no such walk.
    std::vector<std::vector<std::optional<Rational>>> d(
        n + 1, std::vector<std::optional<Rational>>(n));
    d[0][0] = Rational(0);
    for (size_t k = 1; k <= n; ++k) {
        for (size_t i = 0; i < n; ++i) {
            if (!d[k - 1][i]) continue;
            int u = members[i];
            for (int e : g.out[u]) {
                const GraphEdge& edge = g.edges[e];
                if (comp[edge.to] != comp_id) continue;
                int j = local[edge.to];
                Rational cand = *d[k - 1][i] + edge.weight;
                if (!d[k][j] || cand > *d[k][j]) d[k][j] = cand;
            }
        }
    }

    std::optional<Rational> best;
    for (size_t v = 0; v < n; ++v) {
        if (!d[n][v]) continue;
        std::optional<Rational> inner;
        for (size_t k = 0; k < n; ++k) {
            if (!d[k][v]) continue;
            Rational mean = (*d[n][v] - *d[k][v]) /
                            Rational(BigInt(n - k), BigInt(1));
            if (!inner || mean < *inner) inner = mean;
        }
        if (inner && (!best || *inner > *best)) best = inner;
    }
    return best;
}

// Witness extraction: with w' = w - mu all cycle means are <= 0 and
// some cycle has mean exactly 0.  Longest-path potentials from the
// source stabilize; every edge of a 0-mean cycle is tight, so any cycle
// in the tight subgraph is a witness.
std::vector<int> witness_cycle(const Graph& g, const std::vector<int>& members,
                               const std::vector<int>& comp, int comp_id,
                               const Rational& mu) {
    size_t n = members.size();
    std::vector<int> local(g.node_count(), -1);
    for (size_t i = 0; i < n; ++i) local[members[i]] = static_cast<int>(i);

    std::vector<std::optional<Rational>> pot(n);
    pot[0] = Rational(0);
    for (size_t round = 0; round < n; ++round) {
        bool changed = false;
        for (size_t i = 0; i < n; ++i) {
            if (!pot[i]) continue;
            int u = members[i];
            for (int e : g.out[u]) {
                const GraphEdge& edge = g.edges[e];
                if (comp[edge.to] != comp_id) continue;
                int j = local[edge.to];
                Rational cand = *pot[i] + edge.weight - mu;
                if (!pot[j] || cand > *pot[j]) {
                    pot[j] = cand;
                    changed = true;
                }
            }
        }
        if (!changed) break;
    }

    std::vector<bool> node_ok(g.node_count(), false), edge_ok(g.edges.size(), false);
    for (int u : members) node_ok[u] = true;
    for (int u : members) {
        int i = local[u];
        if (!pot[i]) continue;
        for (int e : g.out[u]) {
            const GraphEdge& edge = g.edges[e];
            if (comp[edge.to] != comp_id) continue;
            int j = local[edge.to];
            if (pot[j] && *pot[j] == *pot[i] + edge.weight - mu) edge_ok[e] = true;
        }
    }
    auto cycle = find_cycle(g, node_ok, edge_ok);
    assert(cycle.has_value());
    return *cycle;
}

[[maybe_unused]] Rational cycle_mean(const Graph& g, const std::vector<int>& cycle) {
    Rational sum(0);
    for (int e : cycle) sum += g.edges[e].weight;
    return sum / Rational(BigInt(cycle.size()), BigInt(1));
}

}  // namespace

std::optional<std::pair<Rational, std::vector<int>>> component_max_mean(
    const Graph& g, const std::vector<int>& members) {
    // Rebuild component ids relative to the ambient graph.
    SccDecomposition scc = strongly_connected_components(g);
    if (members.empty()) return std::nullopt;
    int comp_id = scc.component[members[0]];
    auto mu = karp_max_mean(g, members, scc.component, comp_id);
    if (!mu) return std::nullopt;
    auto cycle = witness_cycle(g, members, scc.component, comp_id, *mu);
    return std::make_pair(*mu, cycle);
}

CycleStats max_mean_cycle(const Graph& g, int root) {
    std::vector<bool> reach = reachable_from(g, root);
    SccDecomposition scc = strongly_connected_components(g);

    std::optional<Rational> best_max;
    std::vector<int> best_max_members;
    for (const auto& members : scc.members) {
        if (!reach[members[0]]) continue;
        auto mu = karp_max_mean(g, members, scc.component, scc.component[members[0]]);
        if (mu && (!best_max || *mu > *best_max)) {
            best_max = mu;
            best_max_members = members;
        }
    }
    if (!best_max) throw Acyclic("graph has no cycle reachable from the root");

    // Min cycle mean via negation on a weight-flipped copy.
    Graph neg = g;
    for (auto& e : neg.edges) e.weight = -e.weight;
    std::optional<Rational> best_negmax;
    std::vector<int> best_min_members;
    for (const auto& members : scc.members) {
        if (!reach[members[0]]) continue;
        auto mu = karp_max_mean(neg, members, scc.component, scc.component[members[0]]);
        if (mu && (!best_negmax || *mu > *best_negmax)) {
            best_negmax = mu;
            best_min_members = members;
        }
    }

    CycleStats stats;
    stats.max_mean = *best_max;
    stats.max_witness = witness_cycle(g, best_max_members, scc.component,
                                      scc.component[best_max_members[0]], *best_max);
    stats.min_mean = -*best_negmax;
    stats.min_witness = witness_cycle(neg, best_min_members, scc.component,
                                      scc.component[best_min_members[0]], *best_negmax);
    assert(cycle_mean(g, stats.max_witness) == stats.max_mean);
    assert(cycle_mean(g, stats.min_witness) == stats.min_mean);
    return stats;
}

DiscountedOptimum discounted_optimum(const Graph& g, const Rational& lambda) {
    size_t n = g.node_count();
    for (size_t u = 0; u < n; ++u)
        if (g.out[u].empty())
            throw DeadEnd("node '" + g.node_names[u] + "' has no outgoing edge");

    auto edge_key = [&](int e) {
        const GraphEdge& edge = g.edges[e];
        return std::make_tuple(g.node_names[edge.to], edge.weight, edge.label, e);
    };
    auto pick_least = [&](const std::vector<int>& candidates) {
        int best = candidates[0];
        for (int e : candidates)
            if (edge_key(e) < edge_key(best)) best = e;
        return best;
    };

    DiscountedOptimum result;
    result.policy.assign(n, -1);
    for (size_t u = 0; u < n; ++u) result.policy[u] = pick_least(g.out[u]);
    result.value.assign(n, Rational(0));

    // Policy evaluation: under a fixed policy every node runs into a
    // cycle; solve the cycle in closed form, then unwind.
    auto evaluate = [&]() {
        std::vector<int> status(n, 0);  // 0 new, 1 on walk, 2 done
        for (size_t s = 0; s < n; ++s) {
            if (status[s] == 2) continue;
            std::vector<int> walk;
            int u = static_cast<int>(s);
            while (status[u] == 0) {
                status[u] = 1;
                walk.push_back(u);
                u = g.edges[result.policy[u]].to;
            }
            if (status[u] == 1) {
                // Found a fresh cycle starting at u.
                size_t cycle_start = 0;
                while (walk[cycle_start] != u) ++cycle_start;
                Rational sum(0), pow(1);
                size_t len = walk.size() - cycle_start;
                for (size_t i = cycle_start; i < walk.size(); ++i) {
                    sum += pow * g.edges[result.policy[walk[i]]].weight;
                    pow *= lambda;
                }
                // pow == lambda^len
                Rational val = sum / (Rational(1) - pow);
                (void)len;
                result.value[u] = val;
                status[u] = 2;
                // Values around the cycle, then back along the tail.
                for (size_t i = walk.size(); i-- > 0;) {
                    int v = walk[i];
                    if (status[v] == 2) continue;
                    const GraphEdge& e = g.edges[result.policy[v]];
                    result.value[v] = e.weight + lambda * result.value[e.to];
                    status[v] = 2;
                }
            } else {
                for (size_t i = walk.size(); i-- > 0;) {
                    int v = walk[i];
                    const GraphEdge& e = g.edges[result.policy[v]];
                    result.value[v] = e.weight + lambda * result.value[e.to];
                    status[v] = 2;
                }
            }
        }
    };

    for (;;) {
        evaluate();
        bool improved = false;
        for (size_t u = 0; u < n; ++u) {
            Rational best = result.value[u];
            std::vector<int> argmax;
            for (int e : g.out[u]) {
                Rational q = g.edges[e].weight + lambda * result.value[g.edges[e].to];
                if (q > best) {
                    best = q;
                    argmax.assign(1, e);
                } else if (q == best && !argmax.empty()) {
                    argmax.push_back(e);
                }
            }
            if (!argmax.empty()) {
                result.policy[u] = pick_least(argmax);
                improved = true;
            }
        }
        if (!improved) break;
    }
    return result;
}

std::optional<std::vector<int>> shortest_edge_path(const Graph& g, int from, int to) {
    std::vector<bool> all(g.edges.size(), true);
    return shortest_edge_path_filtered(g, from, to, all);
}

std::optional<std::vector<int>> shortest_edge_path_filtered(
    const Graph& g, int from, int to, const std::vector<bool>& edge_ok) {
    std::vector<int> via(g.node_count(), -1);
    std::vector<bool> seen(g.node_count(), false);
    std::deque<int> queue{from};
    seen[from] = true;
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        if (u == to) break;
        for (int e : g.out[u]) {
            if (!edge_ok[e]) continue;
            int v = g.edges[e].to;
            if (!seen[v]) {
                seen[v] = true;
                via[v] = e;
                queue.push_back(v);
            }
        }
    }
    if (!seen[to]) return std::nullopt;
    std::vector<int> path;
    for (int v = to; v != from || !path.empty();) {
        if (v == from) break;
        int e = via[v];
        path.push_back(e);
        v = g.edges[e].from;
    }
    std::reverse(path.begin(), path.end());
    return path;
}

std::optional<std::vector<int>> find_cycle(const Graph& g,
                                           const std::vector<bool>& node_ok,
                                           const std::vector<bool>& edge_ok) {
    size_t n = g.node_count();
    std::vector<int> status(n, 0);  // 0 new, 1 on stack, 2 done
    std::vector<int> via_edge(n, -1);

    for (size_t start = 0; start < n; ++start) {
        if (!node_ok[start] || status[start] != 0) continue;
        struct Frame {
            int node;
            size_t pos;
        };
        std::vector<Frame> frames{{static_cast<int>(start), 0}};
        status[start] = 1;
        while (!frames.empty()) {
            Frame& f = frames.back();
            int u = f.node;
            if (f.pos < g.out[u].size()) {
                int e = g.out[u][f.pos++];
                if (!edge_ok[e]) continue;
                int v = g.edges[e].to;
                if (!node_ok[v]) continue;
                if (status[v] == 1) {
                    // Cycle: unwind the stack from v to u, then edge e.
                    std::vector<int> cycle;
                    size_t i = frames.size();
                    while (frames[i - 1].node != v) --i;
                    for (size_t j = i; j < frames.size(); ++j)
                        cycle.push_back(via_edge[frames[j].node]);
                    cycle.push_back(e);
                    return cycle;
                }
                if (status[v] == 0) {
                    status[v] = 1;
                    via_edge[v] = e;
                    frames.push_back({v, 0});
                }
            } else {
                status[u] = 2;
                frames.pop_back();
            }
        }
    }
    return std::nullopt;
}

}  // namespace quala
