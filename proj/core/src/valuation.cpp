#include "quala/valuation.hpp"

#include <algorithm>
#include <map>

#include "quala/errors.hpp"

namespace quala {

Rational value_finite(const ValueFunctionTag& tag,
                      const std::vector<Rational>& weights) {
    if (!tag.finite_words())
        throw WrongArity("value_finite needs a finite-word value function, got " +
                         tag.name());
    if (weights.empty()) throw WrongArity("empty weight sequence");
    switch (tag.kind()) {
        case ValueFunction::Max:
            return *std::max_element(weights.begin(), weights.end());
        case ValueFunction::Last:
            return weights.back();
        case ValueFunction::Sum: {
            Rational sum(0);
            for (const auto& w : weights) sum += w;
            return sum;
        }
        default:
            throw WrongArity("unreachable");
    }
}

Rational value_lasso(ValueFunction kind, const std::vector<Rational>& prefix,
                     const std::vector<Rational>& period,
                     const std::optional<Rational>& lambda) {
    if (kind == ValueFunction::Max || kind == ValueFunction::Last ||
        kind == ValueFunction::Sum)
        throw WrongArity("value_lasso needs an infinite-word value function");
    if (period.empty()) throw WrongArity("empty period");
    switch (kind) {
        case ValueFunction::Sup: {
            Rational best = period.front();
            for (const auto& w : period) best = std::max(best, w);
            for (const auto& w : prefix) best = std::max(best, w);
            return best;
        }
        case ValueFunction::LimSup:
            return *std::max_element(period.begin(), period.end());
        case ValueFunction::LimInf:
            return *std::min_element(period.begin(), period.end());
        case ValueFunction::LimAvg: {
            Rational sum(0);
            for (const auto& w : period) sum += w;
            return sum / Rational(BigInt(period.size()), BigInt(1));
        }
        case ValueFunction::Disc: {
            if (!lambda) throw MissingLambda("Disc needs a discount factor");
            const Rational& l = *lambda;
            Rational value(0), pow(1);
            for (const auto& w : prefix) {
                value += pow * w;
                pow *= l;
            }
            // pow == l^{|prefix|}
            Rational cycle(0), cpow(1);
            for (const auto& w : period) {
                cycle += cpow * w;
                cpow *= l;
            }
            return value + pow * cycle / (Rational(1) - cpow);
        }
        default:
            throw WrongArity("unreachable");
    }
}

Rational value_lasso(const ValueFunctionTag& tag,
                     const std::vector<Rational>& prefix,
                     const std::vector<Rational>& period) {
    return value_lasso(tag.kind(), prefix, period, tag.lambda());
}

Graph automaton_graph(const WeightedAutomaton& a) {
    Graph g;
    for (const auto& q : a.states()) g.add_node(q);
    for (size_t t = 0; t < a.transitions().size(); ++t) {
        const Transition& tr = a.transitions()[t];
        g.add_edge(static_cast<int>(a.state_index(tr.from)),
                   static_cast<int>(a.state_index(tr.to)), tr.weight, tr.symbol,
                   static_cast<int>(t));
    }
    return g;
}

Graph product_graph(const WeightedAutomaton& a, const LassoWord& w) {
    for (const auto& s : w.prefix)
        if (!a.has_symbol(s))
            throw AlphabetMismatch("word symbol '" + s + "' not in the alphabet");
    for (const auto& s : w.period)
        if (!a.has_symbol(s))
            throw AlphabetMismatch("word symbol '" + s + "' not in the alphabet");

    size_t positions = w.prefix.size() + w.period.size();
    auto symbol_at = [&](size_t pos) -> const Symbol& {
        return pos < w.prefix.size() ? w.prefix[pos]
                                     : w.period[pos - w.prefix.size()];
    };
    auto next_pos = [&](size_t pos) {
        return pos + 1 < positions ? pos + 1 : w.prefix.size();
    };

    Graph g;
    std::map<std::pair<size_t, size_t>, int> ids;  // (state, pos) -> node
    auto node_of = [&](size_t q, size_t pos) {
        auto it = ids.find({q, pos});
        if (it != ids.end()) return it->second;
        int id = g.add_node("(" + a.states()[q] + "@" + std::to_string(pos) + ")");
        ids.emplace(std::make_pair(q, pos), id);
        return id;
    };

    std::vector<std::pair<size_t, size_t>> queue;
    node_of(a.state_index(a.initial()), 0);
    queue.emplace_back(a.state_index(a.initial()), 0);
    for (size_t head = 0; head < queue.size(); ++head) {
        auto [q, pos] = queue[head];
        int from = ids.at({q, pos});
        const Symbol& sym = symbol_at(pos);
        size_t npos = next_pos(pos);
        for (size_t t : a.transitions_from(a.states()[q], sym)) {
            const Transition& tr = a.transitions()[t];
            size_t q2 = a.state_index(tr.to);
            bool fresh = !ids.count({q2, npos});
            int to = node_of(q2, npos);
            g.add_edge(from, to, tr.weight, sym, static_cast<int>(t));
            if (fresh) queue.emplace_back(q2, npos);
        }
    }
    return g;
}

Rational evaluate_finite(const WeightedAutomaton& a, const FiniteWord& w) {
    if (!a.tag().finite_words())
        throw WrongArity("evaluate_finite needs a finite-word automaton");
    if (w.symbols.empty()) throw WrongArity("finite words are nonempty");
    for (const auto& s : w.symbols)
        if (!a.has_symbol(s))
            throw AlphabetMismatch("word symbol '" + s + "' not in the alphabet");
    require_total(a);

    size_t n = a.states().size();
    ValueFunction kind = a.tag().kind();

    // Forward DP: best partial value per state.  For Max the running
    // maximum is monotone in itself, for Sum the partial sum is; Last
    // only needs reachability plus the best final edge weight.
    if (kind == ValueFunction::Last) {
        std::vector<bool> reach(n, false);
        reach[a.state_index(a.initial())] = true;
        for (size_t i = 0; i + 1 < w.symbols.size(); ++i) {
            std::vector<bool> next(n, false);
            for (size_t q = 0; q < n; ++q) {
                if (!reach[q]) continue;
                for (size_t t : a.transitions_from(a.states()[q], w.symbols[i]))
                    next[a.state_index(a.transitions()[t].to)] = true;
            }
            reach.swap(next);
        }
        std::optional<Rational> best;
        for (size_t q = 0; q < n; ++q) {
            if (!reach[q]) continue;
            for (size_t t : a.transitions_from(a.states()[q], w.symbols.back())) {
                const Rational& wt = a.transitions()[t].weight;
                if (!best || wt > *best) best = wt;
            }
        }
        return *best;  // totality guarantees a run exists
    }

    std::vector<std::optional<Rational>> cur(n), nxt(n);
    cur[a.state_index(a.initial())] = Rational(0);
    bool first = true;
    for (const auto& sym : w.symbols) {
        std::fill(nxt.begin(), nxt.end(), std::nullopt);
        for (size_t q = 0; q < n; ++q) {
            if (!cur[q]) continue;
            for (size_t t : a.transitions_from(a.states()[q], sym)) {
                const Transition& tr = a.transitions()[t];
                size_t q2 = a.state_index(tr.to);
                Rational cand = kind == ValueFunction::Sum
                                    ? *cur[q] + tr.weight
                                    : (first ? tr.weight : std::max(*cur[q], tr.weight));
                if (!nxt[q2] || cand > *nxt[q2]) nxt[q2] = cand;
            }
        }
        cur.swap(nxt);
        first = false;
    }
    std::optional<Rational> best;
    for (const auto& v : cur)
        if (v && (!best || *v > *best)) best = v;
    return *best;
}

namespace {

Rational eval_product(const WeightedAutomaton& a, const Graph& g) {
    switch (a.tag().kind()) {
        case ValueFunction::Sup: {
            // Every reachable edge lies on some run (totality).
            std::optional<Rational> best;
            for (const auto& e : g.edges)
                if (!best || e.weight > *best) best = e.weight;
            return *best;
        }
        case ValueFunction::LimSup: {
            SccDecomposition scc = strongly_connected_components(g);
            std::optional<Rational> best;
            for (const auto& e : g.edges)
                if (scc_internal(scc, e) && (!best || e.weight > *best))
                    best = e.weight;
            return *best;
        }
        case ValueFunction::LimInf: {
            // Max v such that the subgraph of edges >= v has a cycle; the
            // prefix of a run is unconstrained, so plain reachability of
            // the whole product suffices.
            std::vector<Rational> candidates;
            for (const auto& e : g.edges) candidates.push_back(e.weight);
            std::sort(candidates.begin(), candidates.end());
            candidates.erase(std::unique(candidates.begin(), candidates.end()),
                             candidates.end());
            std::vector<bool> node_ok(g.node_count(), true);
            for (auto it = candidates.rbegin(); it != candidates.rend(); ++it) {
                std::vector<bool> edge_ok(g.edges.size());
                for (size_t e = 0; e < g.edges.size(); ++e)
                    edge_ok[e] = g.edges[e].weight >= *it;
                if (find_cycle(g, node_ok, edge_ok)) return *it;
            }
            throw Acyclic("product graph has no cycle");  // impossible if total
        }
        case ValueFunction::LimAvg:
            return max_mean_cycle(g, 0).max_mean;
        case ValueFunction::Disc:
            return discounted_optimum(g, *a.tag().lambda()).value[0];
        default:
            throw WrongArity("unreachable");
    }
}

}  // namespace

Rational evaluate_lasso(const WeightedAutomaton& a, const LassoWord& w) {
    if (!a.tag().infinite_words())
        throw WrongArity("evaluate_lasso needs an infinite-word automaton");
    require_total(a);
    LassoWord norm = normalize_lasso(w);
    Graph g = product_graph(a, norm);
    return eval_product(a, g);
}

namespace {

// Symbols along a sequence of edge ids.
std::vector<Symbol> edge_labels(const Graph& g, const std::vector<int>& edges) {
    std::vector<Symbol> out;
    out.reserve(edges.size());
    for (int e : edges) out.push_back(g.edges[e].label);
    return out;
}

// Witness lasso from a path to a cycle: prefix = path labels, period =
// cycle labels (the cycle must start where the path ends).
LassoWord lasso_from(const Graph& g, const std::vector<int>& path,
                     const std::vector<int>& cycle) {
    return LassoWord{edge_labels(g, path), edge_labels(g, cycle)};
}

// Some cycle through edge e inside its strongly connected component.
std::vector<int> cycle_through_edge(const Graph& g, const SccDecomposition& scc,
                                    int e) {
    std::vector<bool> edge_ok(g.edges.size());
    for (size_t i = 0; i < g.edges.size(); ++i)
        edge_ok[i] = scc.component[g.edges[i].from] == scc.component[g.edges[e].from] &&
                     scc_internal(scc, g.edges[i]);
    auto back = shortest_edge_path_filtered(g, g.edges[e].to, g.edges[e].from, edge_ok);
    std::vector<int> cycle{e};
    cycle.insert(cycle.end(), back->begin(), back->end());
    return cycle;
}

// Extend a node into a lasso by walking arbitrary edges until a state
// repeats; returns (path-from-node, cycle).
std::pair<std::vector<int>, std::vector<int>> walk_to_cycle(const Graph& g,
                                                            int node) {
    std::vector<int> order;       // edges taken
    std::vector<int> at;          // nodes visited, parallel to order
    std::vector<int> seen_pos(g.node_count(), -1);
    int u = node;
    while (seen_pos[u] == -1) {
        seen_pos[u] = static_cast<int>(order.size());
        at.push_back(u);
        int e = g.out[u][0];
        order.push_back(e);
        u = g.edges[e].to;
    }
    int split = seen_pos[u];
    std::vector<int> path(order.begin(), order.begin() + split);
    std::vector<int> cycle(order.begin() + split, order.end());
    return {path, cycle};
}

}  // namespace

TopValue top_value(const WeightedAutomaton& a) {
    if (!a.tag().infinite_words())
        throw WrongArity("top_value needs an infinite-word automaton");
    require_total(a);
    Graph g = automaton_graph(a);
    int root = static_cast<int>(a.state_index(a.initial()));

    // Restrict to the reachable part so witnesses can always be routed
    // from the initial state.
    std::vector<bool> reach = reachable_from(g, root);
    Graph r;
    std::vector<int> remap(g.node_count(), -1);
    for (size_t u = 0; u < g.node_count(); ++u)
        if (reach[u]) remap[u] = r.add_node(g.node_names[u]);
    for (const auto& e : g.edges)
        if (reach[e.from])
            r.add_edge(remap[e.from], remap[e.to], e.weight, e.label, e.tag);
    int rroot = remap[root];

    SccDecomposition scc = strongly_connected_components(r);
    TopValue out;
    switch (a.tag().kind()) {
        case ValueFunction::Sup: {
            int best = 0;
            for (size_t e = 0; e < r.edges.size(); ++e)
                if (r.edges[e].weight > r.edges[best].weight) best = static_cast<int>(e);
            out.value = r.edges[best].weight;
            auto path = *shortest_edge_path(r, rroot, r.edges[best].from);
            path.push_back(best);
            auto [tail, cycle] = walk_to_cycle(r, r.edges[best].to);
            path.insert(path.end(), tail.begin(), tail.end());
            out.witness = lasso_from(r, path, cycle);
            break;
        }
        case ValueFunction::LimSup: {
            int best = -1;
            for (size_t e = 0; e < r.edges.size(); ++e)
                if (scc_internal(scc, r.edges[e]) &&
                    (best < 0 || r.edges[e].weight > r.edges[best].weight))
                    best = static_cast<int>(e);
            out.value = r.edges[best].weight;
            auto path = *shortest_edge_path(r, rroot, r.edges[best].from);
            out.witness = lasso_from(r, path, cycle_through_edge(r, scc, best));
            break;
        }
        case ValueFunction::LimInf: {
            std::vector<Rational> candidates;
            for (const auto& e : r.edges) candidates.push_back(e.weight);
            std::sort(candidates.begin(), candidates.end());
            candidates.erase(std::unique(candidates.begin(), candidates.end()),
                             candidates.end());
            std::vector<bool> node_ok(r.node_count(), true);
            for (auto it = candidates.rbegin(); it != candidates.rend(); ++it) {
                std::vector<bool> edge_ok(r.edges.size());
                for (size_t e = 0; e < r.edges.size(); ++e)
                    edge_ok[e] = r.edges[e].weight >= *it;
                auto cycle = find_cycle(r, node_ok, edge_ok);
                if (!cycle) continue;
                out.value = *it;
                auto path = *shortest_edge_path(r, rroot, r.edges[(*cycle)[0]].from);
                out.witness = lasso_from(r, path, *cycle);
                break;
            }
            break;
        }
        case ValueFunction::LimAvg: {
            CycleStats stats = max_mean_cycle(r, rroot);
            out.value = stats.max_mean;
            auto path =
                *shortest_edge_path(r, rroot, r.edges[stats.max_witness[0]].from);
            out.witness = lasso_from(r, path, stats.max_witness);
            break;
        }
        case ValueFunction::Disc: {
            DiscountedOptimum opt = discounted_optimum(r, *a.tag().lambda());
            out.value = opt.value[rroot];
            // The optimal policy runs into a cycle; its labels are the witness.
            std::vector<int> path, cycle;
            std::vector<int> seen_pos(r.node_count(), -1);
            int u = rroot;
            std::vector<int> order;
            while (seen_pos[u] == -1) {
                seen_pos[u] = static_cast<int>(order.size());
                order.push_back(opt.policy[u]);
                u = r.edges[opt.policy[u]].to;
            }
            int split = seen_pos[u];
            path.assign(order.begin(), order.begin() + split);
            cycle.assign(order.begin() + split, order.end());
            out.witness = lasso_from(r, path, cycle);
            break;
        }
        default:
            throw WrongArity("unreachable");
    }
    return out;
}

}  // namespace quala
