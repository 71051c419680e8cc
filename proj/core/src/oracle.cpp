#include "quala/oracle.hpp"

#include <algorithm>

#include "quala/errors.hpp"

namespace quala::oracle {

namespace {
constexpr size_t kRunCap = 1'000'000;
constexpr size_t kProductNodeCap = 200;
constexpr size_t kShapeCap = 2'000'000;
}  // namespace

std::vector<Run> enumerate_runs(const WeightedAutomaton& a, const FiniteWord& w) {
    for (const auto& s : w.symbols)
        if (!a.has_symbol(s))
            throw AlphabetMismatch("word symbol '" + s + "' not in the alphabet");
    std::vector<Run> done;
    std::vector<Run> frontier{Run{{a.initial()}, {}}};
    for (const auto& sym : w.symbols) {
        std::vector<Run> next;
        for (const auto& run : frontier) {
            for (size_t t : a.transitions_from(run.states.back(), sym)) {
                const Transition& tr = a.transitions()[t];
                Run extended = run;
                extended.states.push_back(tr.to);
                extended.weights.push_back(tr.weight);
                next.push_back(std::move(extended));
                if (next.size() > kRunCap)
                    throw TooLarge("too many runs to enumerate");
            }
        }
        frontier.swap(next);
    }
    return frontier;
}

Rational brute_value_finite(const WeightedAutomaton& a, const FiniteWord& w) {
    if (!a.tag().finite_words())
        throw WrongArity("brute_value_finite needs a finite-word automaton");
    auto runs = enumerate_runs(a, w);
    if (runs.empty()) throw Error("no run over the word (automaton not total?)");
    std::optional<Rational> best;
    for (const auto& run : runs) {
        Rational v = value_finite(a.tag(), run.weights);
        if (!best || v > *best) best = v;
    }
    return *best;
}

namespace {

// Depth-first enumeration of all simple paths from `start`; at every
// path end x, all simple cycles rooted at x are enumerated and combined
// with the path into one product lasso.
struct LassoSearch {
    const Graph& g;
    ValueFunction kind;
    std::optional<Rational> lambda;
    size_t shapes = 0;
    std::optional<Rational> best;

    std::vector<bool> on_path;
    std::vector<Rational> path_weights;

    std::vector<bool> on_cycle;
    std::vector<Rational> cycle_weights;

    explicit LassoSearch(const Graph& graph, ValueFunction k,
                         std::optional<Rational> l)
        : g(graph), kind(k), lambda(std::move(l)),
          on_path(graph.node_count(), false),
          on_cycle(graph.node_count(), false) {}

    void bump() {
        if (++shapes > kShapeCap) throw TooLarge("too many product lassos");
    }

    void cycles_from(int anchor, int u) {
        for (int e : g.out[u]) {
            int v = g.edges[e].to;
            cycle_weights.push_back(g.edges[e].weight);
            if (v == anchor) {
                bump();
                Rational val = value_lasso(kind, path_weights, cycle_weights, lambda);
                if (!best || val > *best) best = val;
            } else if (!on_cycle[v]) {
                on_cycle[v] = true;
                cycles_from(anchor, v);
                on_cycle[v] = false;
            }
            cycle_weights.pop_back();
        }
    }

    void paths_from(int u) {
        // Treat u as the junction: enumerate simple cycles anchored here.
        std::fill(on_cycle.begin(), on_cycle.end(), false);
        on_cycle[u] = true;
        cycles_from(u, u);

        for (int e : g.out[u]) {
            int v = g.edges[e].to;
            if (on_path[v]) continue;
            on_path[v] = true;
            path_weights.push_back(g.edges[e].weight);
            paths_from(v);
            path_weights.pop_back();
            on_path[v] = false;
        }
    }
};

}  // namespace

Rational brute_value_lasso(const WeightedAutomaton& a, const LassoWord& w) {
    if (!a.tag().infinite_words())
        throw WrongArity("brute_value_lasso needs an infinite-word automaton");
    Graph g = product_graph(a, normalize_lasso(w));
    if (g.node_count() > kProductNodeCap)
        throw TooLarge("product graph exceeds the oracle node cap");
    LassoSearch search(g, a.tag().kind(), a.tag().lambda());
    search.on_path[0] = true;
    search.paths_from(0);
    if (!search.best) throw Error("no product lasso (automaton not total?)");
    return *search.best;
}

std::vector<SimpleCycle> enumerate_simple_cycles(const Graph& g) {
    if (g.node_count() > 12) throw TooLarge("cycle enumeration capped at 12 nodes");
    std::vector<SimpleCycle> out;
    std::vector<bool> used(g.node_count(), false);
    std::vector<int> edge_stack;

    // Cycles are rooted at their smallest node id; the search never
    // visits nodes below the root, so each cycle is produced once.
    struct Search {
        const Graph& g;
        std::vector<SimpleCycle>& out;
        std::vector<bool>& used;
        std::vector<int>& edge_stack;
        int root;

        void go(int u) {
            for (int e : g.out[u]) {
                int v = g.edges[e].to;
                if (v < root) continue;
                if (v == root) {
                    edge_stack.push_back(e);
                    Rational sum(0);
                    for (int id : edge_stack) sum += g.edges[id].weight;
                    out.push_back(
                        {edge_stack,
                         sum / Rational(BigInt(edge_stack.size()), BigInt(1))});
                    edge_stack.pop_back();
                } else if (!used[v]) {
                    used[v] = true;
                    edge_stack.push_back(e);
                    go(v);
                    edge_stack.pop_back();
                    used[v] = false;
                }
            }
        }
    };

    for (size_t root = 0; root < g.node_count(); ++root) {
        std::fill(used.begin(), used.end(), false);
        used[root] = true;
        Search{g, out, used, edge_stack, static_cast<int>(root)}.go(
            static_cast<int>(root));
    }
    return out;
}

}  // namespace quala::oracle
