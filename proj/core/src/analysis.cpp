#include "quala/analysis.hpp"

#include <algorithm>
#include <map>

#include "quala/errors.hpp"
#include "quala/graph.hpp"
#include "quala/valuation.hpp"

namespace quala {

BigInt boolean_reduction_granularity(const WeightedAutomaton& a) {
    BigInt n = 1;
    for (const auto& t : a.transitions())
        n = boost::multiprecision::lcm(n, t.weight.denominator());
    return n;
}

WeightedAutomaton boolean_weight_reduction(const WeightedAutomaton& a) {
    if (a.tag().kind() != ValueFunction::LimAvg)
        throw UnsupportedTag("boolean_weight_reduction needs a LimAvg automaton");
    for (const auto& t : a.transitions())
        if (t.weight < Rational(0) || t.weight > Rational(1))
            throw WeightOutOfRange("weight " + t.weight.str() +
                                   " is outside [0, 1]");

    BigInt n = boolean_reduction_granularity(a);
    long levels = n.convert_to<long>();

    // Full grid Q x [n]: the state count n * n_A is part of the contract.
    std::vector<State> states;
    std::map<std::pair<State, long>, State> names;
    for (const auto& q : a.states())
        for (long i = 0; i < levels; ++i) {
            State name = "(" + q + "," + std::to_string(i) + ")";
            names[{q, i}] = name;
            states.push_back(name);
        }

    std::vector<Transition> trans;
    for (const auto& t : a.transitions()) {
        // v * n_A is an integer by choice of n_A.
        BigInt scaled = t.weight.numerator() * (n / t.weight.denominator());
        long v_units = scaled.convert_to<long>();
        for (long i = 0; i < levels; ++i) {
            if (i + v_units < levels) {
                trans.push_back({names.at({t.from, i}), t.symbol,
                                 names.at({t.to, i + v_units}), Rational(0)});
            } else {
                trans.push_back({names.at({t.from, i}), t.symbol,
                                 names.at({t.to, i + v_units - levels}),
                                 Rational(1)});
            }
        }
    }
    return {std::move(states), names.at({a.initial(), 0}), a.alphabet(),
            std::move(trans), a.tag()};
}

namespace {

struct SccInterval {
    std::vector<int> members;
    Rational min_mean;
    Rational max_mean;
    std::vector<int> min_cycle;  // edge ids in the reachable graph
    std::vector<int> max_cycle;
};

struct ReachableView {
    Graph graph;  // reachable restriction of the automaton graph
    int root = 0;
    std::vector<SccInterval> intervals;
};

ReachableView scc_intervals(const WeightedAutomaton& a) {
    Graph full = automaton_graph(a);
    int root = static_cast<int>(a.state_index(a.initial()));
    std::vector<bool> reach = reachable_from(full, root);

    ReachableView view;
    std::vector<int> remap(full.node_count(), -1);
    for (size_t u = 0; u < full.node_count(); ++u)
        if (reach[u]) remap[u] = view.graph.add_node(full.node_names[u]);
    for (const auto& e : full.edges)
        if (reach[e.from])
            view.graph.add_edge(remap[e.from], remap[e.to], e.weight, e.label, e.tag);
    view.root = remap[root];

    SccDecomposition scc = strongly_connected_components(view.graph);
    Graph negated = view.graph;
    for (auto& e : negated.edges) e.weight = -e.weight;
    for (const auto& members : scc.members) {
        auto max_part = component_max_mean(view.graph, members);
        if (!max_part) continue;  // no cycle in this component
        auto neg_part = component_max_mean(negated, members);
        SccInterval interval;
        interval.members = members;
        interval.max_mean = max_part->first;
        interval.max_cycle = max_part->second;
        interval.min_mean = -neg_part->first;
        interval.min_cycle = neg_part->second;
        view.intervals.push_back(std::move(interval));
    }
    return view;
}

std::vector<Symbol> labels_of(const Graph& g, const std::vector<int>& edges) {
    std::vector<Symbol> out;
    out.reserve(edges.size());
    for (int e : edges) out.push_back(g.edges[e].label);
    return out;
}

// Lasso with value exactly eta inside a component whose cycle-mean
// interval contains eta: anchor both extreme cycles at the same node
// and repeat them p and q times so the combined mean is eta.
LassoWord mixed_cycle_witness(const Graph& g, int root, const SccInterval& iv,
                              const Rational& eta) {
    auto cycle_stats = [&](const std::vector<int>& cycle) {
        Rational sum(0);
        for (int e : cycle) sum += g.edges[e].weight;
        return std::make_pair(sum, Rational(BigInt(cycle.size()), BigInt(1)));
    };

    std::vector<int> period;
    if (eta == iv.min_mean) {
        period = iv.min_cycle;
    } else if (eta == iv.max_mean) {
        period = iv.max_cycle;
    } else {
        SccDecomposition scc = strongly_connected_components(g);
        int comp = scc.component[iv.members[0]];
        std::vector<bool> internal(g.edges.size());
        for (size_t e = 0; e < g.edges.size(); ++e)
            internal[e] = scc.component[g.edges[e].from] == comp &&
                          scc.component[g.edges[e].to] == comp;

        int x = g.edges[iv.min_cycle[0]].from;
        int y = g.edges[iv.max_cycle[0]].from;
        auto to_y = *shortest_edge_path_filtered(g, x, y, internal);
        auto to_x = *shortest_edge_path_filtered(g, y, x, internal);

        auto [smin, lmin] = cycle_stats(iv.min_cycle);
        auto [smax, lmax] = cycle_stats(iv.max_cycle);
        Rational sconn(0);
        for (int e : to_y) sconn += g.edges[e].weight;
        for (int e : to_x) sconn += g.edges[e].weight;
        Rational lconn(BigInt(to_y.size() + to_x.size()), BigInt(1));

        // Dilute the connectors with enough copies of the max cycle to
        // push the detour's mean above eta.
        Rational need = eta * lconn - sconn;  // k*(smax - eta*lmax) > need
        Rational per = smax - eta * lmax;     // > 0 since eta < max_mean
        long k = 1;
        while (Rational(k) * per <= need) ++k;

        std::vector<int> detour = to_y;
        for (long i = 0; i < k; ++i)
            detour.insert(detour.end(), iv.max_cycle.begin(), iv.max_cycle.end());
        detour.insert(detour.end(), to_x.begin(), to_x.end());
        Rational sdet = sconn + Rational(k) * smax;
        Rational ldet = lconn + Rational(k) * lmax;

        // p low cycles and q detours with p*(eta*lmin - smin) =
        // q*(sdet - eta*ldet); both coefficients are positive.
        Rational alpha = eta * lmin - smin;
        Rational beta = sdet - eta * ldet;
        BigInt den = boost::multiprecision::lcm(alpha.denominator(),
                                                beta.denominator());
        BigInt na = alpha.numerator() * (den / alpha.denominator());
        BigInt nb = beta.numerator() * (den / beta.denominator());
        BigInt g_ = boost::multiprecision::gcd(na, nb);
        BigInt p = nb / g_, q = na / g_;
        for (BigInt i = 0; i < p; ++i)
            period.insert(period.end(), iv.min_cycle.begin(), iv.min_cycle.end());
        for (BigInt i = 0; i < q; ++i)
            period.insert(period.end(), detour.begin(), detour.end());
    }

    int anchor = g.edges[period[0]].from;
    auto prefix = *shortest_edge_path(g, root, anchor);
    return LassoWord{labels_of(g, prefix), labels_of(g, period)};
}

}  // namespace

IsolationResult isolation_check_dlavg(const WeightedAutomaton& a,
                                      const Rational& eta) {
    if (a.tag().kind() != ValueFunction::LimAvg)
        throw UnsupportedTag("isolation_check_dlavg needs a LimAvg automaton");
    if (!validate(a).is_deterministic)
        throw UnsupportedTag(
            "isolation_check_dlavg is only available for deterministic "
            "LimAvg automata");

    ReachableView view = scc_intervals(a);
    std::optional<Rational> margin;
    for (const auto& iv : view.intervals) {
        if (iv.min_mean <= eta && eta <= iv.max_mean) {
            IsolationResult res;
            res.verdict = IsolationResult::Verdict::NotIsolated;
            res.witness = mixed_cycle_witness(view.graph, view.root, iv, eta);
            res.witness_value = eta;
            return res;
        }
        Rational d = eta < iv.min_mean ? iv.min_mean - eta : eta - iv.max_mean;
        if (!margin || d < *margin) margin = d;
    }
    IsolationResult res;
    res.verdict = IsolationResult::Verdict::Isolated;
    res.margin = margin;
    return res;
}

CutpointAutomaton cutpoint_dlavg(const WeightedAutomaton& a, const Rational& eta) {
    if (a.tag().kind() != ValueFunction::LimAvg)
        throw UnsupportedTag("cutpoint_dlavg needs a LimAvg automaton");
    if (!validate(a).is_deterministic)
        throw UnsupportedTag("cutpoint_dlavg needs a deterministic automaton");
    require_total(a);

    ReachableView view = scc_intervals(a);
    for (const auto& iv : view.intervals)
        if (iv.min_mean <= eta && eta <= iv.max_mean)
            throw NotIsolated("eta " + eta.str() +
                              " lies inside a reachable cycle-mean interval [" +
                              iv.min_mean.str() + ", " + iv.max_mean.str() + "]");

    // Accepting states: members of components whose cycles all average
    // above eta.  Edges into accepting states are the accepting edges.
    std::vector<bool> accepting(view.graph.node_count(), false);
    for (const auto& iv : view.intervals)
        if (iv.min_mean > eta)
            for (int u : iv.members) accepting[u] = true;

    std::vector<State> states = view.graph.node_names;
    std::vector<BooleanTransition> trans;
    for (const auto& e : view.graph.edges)
        trans.push_back({view.graph.node_names[e.from], e.label,
                         view.graph.node_names[e.to], accepting[e.to]});
    CutpointAutomaton out{
        BooleanOmegaAutomaton(std::move(states),
                              view.graph.node_names[view.root], a.alphabet(),
                              std::move(trans), AcceptanceKind::Buchi),
        eta,
        std::nullopt,
        std::nullopt,
        a.tag().name()};
    return out;
}

namespace {

Rational max_abs_weight(const WeightedAutomaton& a) {
    Rational v(0);
    for (const auto& t : a.transitions()) v = std::max(v, t.weight.abs());
    return v;
}

// One level of the exact unfolding: nodes merged on (state, value).
struct UnfoldNode {
    size_t state;
    Rational value;
    int parent;     // index in previous level, -1 at the root
    Symbol symbol;  // symbol taken from the parent
};

// Extends the unfolding by one level (nodes merged on (state, value)).
void unfold_step(const WeightedAutomaton& a,
                 std::vector<std::vector<UnfoldNode>>& levels,
                 const Rational& level_discount) {
    int d = static_cast<int>(levels.size()) - 1;
    levels.emplace_back();
    std::map<std::pair<size_t, Rational>, size_t> merged;
    for (size_t i = 0; i < levels[d].size(); ++i) {
        const UnfoldNode& node = levels[d][i];
        const State& q = a.states()[node.state];
        for (const auto& sym : a.alphabet()) {
            for (size_t t : a.transitions_from(q, sym)) {
                const Transition& tr = a.transitions()[t];
                Rational value = node.value + level_discount * tr.weight;
                size_t q2 = a.state_index(tr.to);
                auto key = std::make_pair(q2, value);
                if (merged.count(key)) continue;
                merged.emplace(key, levels[d + 1].size());
                levels[d + 1].push_back({q2, value, static_cast<int>(i), sym});
            }
        }
    }
}

std::vector<std::vector<UnfoldNode>> unfold(const WeightedAutomaton& a, int depth) {
    const Rational& lambda = *a.tag().lambda();
    std::vector<std::vector<UnfoldNode>> levels(1);
    levels[0].push_back({a.state_index(a.initial()), Rational(0), -1, ""});
    Rational pow(1);
    for (int d = 0; d < depth; ++d) {
        unfold_step(a, levels, pow);
        pow *= lambda;
    }
    return levels;
}

std::vector<Symbol> path_to(const std::vector<std::vector<UnfoldNode>>& levels,
                            int depth, size_t index) {
    std::vector<Symbol> symbols;
    int d = depth;
    size_t i = index;
    while (d > 0) {
        symbols.push_back(levels[d][i].symbol);
        i = static_cast<size_t>(levels[d][i].parent);
        --d;
    }
    std::reverse(symbols.begin(), symbols.end());
    return symbols;
}

}  // namespace

CutpointAutomaton cutpoint_ddisc(const WeightedAutomaton& a, const Rational& eta,
                                 const Rational& eps) {
    if (a.tag().kind() != ValueFunction::Disc)
        throw UnsupportedTag("cutpoint_ddisc needs a Disc automaton");
    if (!(eps > Rational(0))) throw EpsNotPositive("eps must be positive");
    require_total(a);

    const Rational& lambda = *a.tag().lambda();
    Rational v = max_abs_weight(a);
    // Least n with u_n = V*lambda^n/(1-lambda) < eps.
    int depth = 0;
    Rational u_n = v / (Rational(1) - lambda);
    while (u_n >= eps) {
        u_n *= lambda;
        ++depth;
    }
    Rational threshold = eta + eps - u_n;

    auto levels = unfold(a, depth);

    std::vector<State> states;
    std::vector<BooleanTransition> trans;
    auto name_of = [&](int d, size_t i) {
        const UnfoldNode& node = levels[d][i];
        return "(" + a.states()[node.state] + "," + node.value.str() + ")@" +
               std::to_string(d);
    };
    for (int d = 0; d <= depth; ++d)
        for (size_t i = 0; i < levels[d].size(); ++i)
            states.push_back(name_of(d, i));

    // Interior edges replay the unfolding onto the merged nodes; every
    // depth-n node becomes a sink whose universal self-loop accepts iff
    // its prefix value clears the threshold.
    Rational pow(1);
    for (int d = 0; d < depth; ++d) {
        std::map<std::pair<size_t, Rational>, size_t> index;
        for (size_t j = 0; j < levels[d + 1].size(); ++j)
            index[{levels[d + 1][j].state, levels[d + 1][j].value}] = j;
        for (size_t i = 0; i < levels[d].size(); ++i) {
            const UnfoldNode& node = levels[d][i];
            const State& q = a.states()[node.state];
            for (const auto& sym : a.alphabet()) {
                for (size_t t : a.transitions_from(q, sym)) {
                    const Transition& tr = a.transitions()[t];
                    size_t j = index.at(
                        {a.state_index(tr.to), node.value + pow * tr.weight});
                    trans.push_back({name_of(d, i), sym, name_of(d + 1, j), false});
                }
            }
        }
        pow *= lambda;
    }
    for (size_t i = 0; i < levels[depth].size(); ++i) {
        bool accept = levels[depth][i].value >= threshold;
        for (const auto& sym : a.alphabet())
            trans.push_back({name_of(depth, i), sym, name_of(depth, i), accept});
    }

    return CutpointAutomaton{
        BooleanOmegaAutomaton(std::move(states), name_of(0, 0), a.alphabet(),
                              std::move(trans), AcceptanceKind::Buchi),
        eta, eps, depth, a.tag().name()};
}

IsolationResult isolation_probe_disc(const WeightedAutomaton& a, const Rational& eta,
                                     const Rational& delta, int max_depth) {
    if (a.tag().kind() != ValueFunction::Disc)
        throw UnsupportedTag("isolation_probe_disc needs a Disc automaton");
    if (!(delta > Rational(0))) throw EpsNotPositive("delta must be positive");
    require_total(a);

    const Rational& lambda = *a.tag().lambda();
    Rational v = max_abs_weight(a);

    Graph g = automaton_graph(a);
    DiscountedOptimum best = discounted_optimum(g, lambda);
    Graph neg = g;
    for (auto& e : neg.edges) e.weight = -e.weight;
    DiscountedOptimum worst = discounted_optimum(neg, lambda);

    auto policy_tail = [&](const DiscountedOptimum& opt, const Graph& graph,
                           size_t state) {
        std::vector<int> order;
        std::vector<int> seen(graph.node_count(), -1);
        int u = static_cast<int>(state);
        while (seen[u] == -1) {
            seen[u] = static_cast<int>(order.size());
            order.push_back(opt.policy[u]);
            u = graph.edges[opt.policy[u]].to;
        }
        int split = seen[u];
        std::vector<Symbol> prefix, period;
        for (int i = 0; i < split; ++i) prefix.push_back(graph.edges[order[i]].label);
        for (size_t i = split; i < order.size(); ++i)
            period.push_back(graph.edges[order[i]].label);
        return std::make_pair(prefix, period);
    };

    // Levels are grown on demand; dense value sets make deep levels
    // exponentially large, so a level-size cap ends the probe early
    // with an honest Unknown.
    constexpr size_t kLevelCap = 200'000;
    std::vector<std::vector<UnfoldNode>> levels(1);
    levels[0].push_back({a.state_index(a.initial()), Rational(0), -1, ""});
    Rational level_discount(1);
    for (int n = 1; n <= max_depth; ++n) {
        unfold_step(a, levels, level_discount);
        level_discount *= lambda;
        if (levels[n].size() > kLevelCap) {
            IsolationResult res;
            res.verdict = IsolationResult::Verdict::Unknown;
            res.depth_reached = n - 1;
            return res;
        }
        Rational u_n =
            v * lambda.pow(static_cast<unsigned long>(n)) / (Rational(1) - lambda);
        Rational lo = eta - delta - u_n, hi = eta + delta + u_n;
        bool all_clear = true;
        for (const auto& node : levels[n])
            if (node.value >= lo && node.value <= hi) all_clear = false;
        if (all_clear) {
            IsolationResult res;
            res.verdict = IsolationResult::Verdict::Isolated;
            res.margin = delta;
            res.depth_reached = n;
            return res;
        }
        // Greedy completions: best and worst discounted continuation.
        Rational pow = lambda.pow(static_cast<unsigned long>(n));
        for (size_t i = 0; i < levels[n].size(); ++i) {
            const UnfoldNode& node = levels[n][i];
            for (bool maximize : {true, false}) {
                const DiscountedOptimum& opt = maximize ? best : worst;
                const Graph& graph = maximize ? g : neg;
                Rational cont = maximize ? opt.value[node.state]
                                         : -opt.value[node.state];
                Rational total = node.value + pow * cont;
                if ((total - eta).abs() > delta) continue;
                auto [tail_prefix, period] = policy_tail(opt, graph, node.state);
                LassoWord w;
                w.prefix = path_to(levels, n, i);
                w.prefix.insert(w.prefix.end(), tail_prefix.begin(),
                                tail_prefix.end());
                w.period = period;
                Rational exact = evaluate_lasso(a, w);
                if ((exact - eta).abs() <= delta) {
                    IsolationResult res;
                    res.verdict = IsolationResult::Verdict::NotIsolated;
                    res.witness = w;
                    res.witness_value = exact;
                    res.depth_reached = n;
                    return res;
                }
            }
        }
    }
    IsolationResult res;
    res.verdict = IsolationResult::Verdict::Unknown;
    res.depth_reached = max_depth;
    return res;
}

Rational dsup_bound(const ValueFunctionTag& tag, const Rational& eps) {
    switch (tag.kind()) {
        case ValueFunction::Sup:
        case ValueFunction::LimSup:
        case ValueFunction::LimInf:
        case ValueFunction::LimAvg:
            return eps;
        case ValueFunction::Disc:
            return eps / (Rational(1) - *tag.lambda());
        default:
            throw TagMismatch("dsup_bound needs an infinite-word value function");
    }
}

Rational sampled_dsup(const WeightedAutomaton& a, const WeightedAutomaton& b,
                      const std::vector<LassoWord>& sample) {
    if (a.tag() != b.tag())
        throw TagMismatch("sampled_dsup needs automata with the same tag");
    Rational best(0);
    for (const auto& w : sample)
        best = std::max(best, (evaluate_lasso(a, w) - evaluate_lasso(b, w)).abs());
    return best;
}

}  // namespace quala
