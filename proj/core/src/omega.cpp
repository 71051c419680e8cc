#include "quala/omega.hpp"

#include <algorithm>
#include <cassert>
#include <set>

#include "quala/errors.hpp"
#include "quala/graph.hpp"
#include "quala/valuation.hpp"

namespace quala {

BooleanOmegaAutomaton::BooleanOmegaAutomaton(
    std::vector<State> states, State initial, std::vector<Symbol> alphabet,
    std::vector<BooleanTransition> transitions, AcceptanceKind kind)
    : states_(std::move(states)),
      initial_(std::move(initial)),
      alphabet_(std::move(alphabet)),
      transitions_(std::move(transitions)),
      kind_(kind) {
    if (states_.empty()) throw Error("automaton needs at least one state");
    if (alphabet_.empty()) throw Error("automaton needs a nonempty alphabet");
    for (size_t i = 0; i < states_.size(); ++i)
        if (!state_index_.emplace(states_[i], i).second)
            throw Error("duplicate state '" + states_[i] + "'");
    for (size_t i = 0; i < alphabet_.size(); ++i)
        if (!symbol_index_.emplace(alphabet_[i], i).second)
            throw Error("duplicate alphabet symbol '" + alphabet_[i] + "'");
    if (!state_index_.count(initial_))
        throw Error("initial state '" + initial_ + "' is not a state");
    out_.assign(states_.size(), std::vector<std::vector<size_t>>(alphabet_.size()));
    to_index_.reserve(transitions_.size());
    for (size_t t = 0; t < transitions_.size(); ++t) {
        const auto& tr = transitions_[t];
        auto qs = state_index_.find(tr.from);
        auto qt = state_index_.find(tr.to);
        auto sy = symbol_index_.find(tr.symbol);
        if (qs == state_index_.end() || qt == state_index_.end() ||
            sy == symbol_index_.end())
            throw Error("transition references unknown state or symbol");
        out_[qs->second][sy->second].push_back(t);
        to_index_.push_back(qt->second);
    }
}

size_t BooleanOmegaAutomaton::state_index(const State& q) const {
    auto it = state_index_.find(q);
    if (it == state_index_.end()) throw Error("unknown state '" + q + "'");
    return it->second;
}

size_t BooleanOmegaAutomaton::symbol_index(const Symbol& s) const {
    auto it = symbol_index_.find(s);
    if (it == symbol_index_.end())
        throw AlphabetMismatch("symbol '" + s + "' is not in the alphabet");
    return it->second;
}

bool BooleanOmegaAutomaton::has_symbol(const Symbol& s) const {
    return symbol_index_.count(s) > 0;
}

const std::vector<size_t>& BooleanOmegaAutomaton::transitions_from(
    const State& q, const Symbol& s) const {
    auto qi = state_index_.find(q);
    auto si = symbol_index_.find(s);
    if (qi == state_index_.end() || si == symbol_index_.end()) return empty_;
    return out_[qi->second][si->second];
}

bool BooleanOmegaAutomaton::is_total() const {
    for (const auto& q : states_)
        for (const auto& s : alphabet_)
            if (transitions_from(q, s).empty()) return false;
    return true;
}

bool BooleanOmegaAutomaton::is_deterministic() const {
    for (const auto& q : states_)
        for (const auto& s : alphabet_)
            if (transitions_from(q, s).size() != 1) return false;
    return true;
}

BooleanOmegaAutomaton threshold_automaton(const WeightedAutomaton& a,
                                          const Rational& v) {
    AcceptanceKind kind;
    if (a.tag().kind() == ValueFunction::LimSup)
        kind = AcceptanceKind::Buchi;
    else if (a.tag().kind() == ValueFunction::LimInf)
        kind = AcceptanceKind::CoBuchi;
    else
        throw UnsupportedTag("threshold_automaton needs a LimSup or LimInf automaton");
    std::vector<BooleanTransition> trans;
    trans.reserve(a.transitions().size());
    for (const auto& t : a.transitions())
        trans.push_back({t.from, t.symbol, t.to, t.weight >= v});
    return {a.states(), a.initial(), a.alphabet(), std::move(trans), kind};
}

namespace {

// Graph view of a boolean automaton: edge weight 1 iff accepting.
Graph boolean_graph(const BooleanOmegaAutomaton& b) {
    Graph g;
    for (const auto& q : b.states()) g.add_node(q);
    for (size_t t = 0; t < b.transitions().size(); ++t) {
        const auto& tr = b.transitions()[t];
        g.add_edge(static_cast<int>(b.state_index(tr.from)),
                   static_cast<int>(b.state_index(tr.to)),
                   Rational(tr.accepting ? 1 : 0), tr.symbol, static_cast<int>(t));
    }
    return g;
}

// Accepting structure in a graph whose edges carry weight 1 iff
// accepting: for Buechi, a reachable cycle through an accepting edge;
// for coBuechi, a reachable cycle of accepting edges only.  Returns the
// cycle when one exists.
std::optional<std::vector<int>> accepting_cycle(const Graph& g, AcceptanceKind kind) {
    std::vector<bool> node_ok(g.node_count(), true);
    if (kind == AcceptanceKind::CoBuchi) {
        std::vector<bool> edge_ok(g.edges.size());
        for (size_t e = 0; e < g.edges.size(); ++e)
            edge_ok[e] = g.edges[e].weight == Rational(1);
        return find_cycle(g, node_ok, edge_ok);
    }
    SccDecomposition scc = strongly_connected_components(g);
    for (size_t e = 0; e < g.edges.size(); ++e) {
        if (g.edges[e].weight != Rational(1)) continue;
        if (!scc_internal(scc, g.edges[e])) continue;
        // Close the accepting edge into a cycle inside its component.
        std::vector<bool> edge_ok(g.edges.size());
        for (size_t i = 0; i < g.edges.size(); ++i)
            edge_ok[i] =
                scc.component[g.edges[i].from] == scc.component[g.edges[e].from] &&
                scc_internal(scc, g.edges[i]);
        auto back = shortest_edge_path_filtered(g, g.edges[e].to, g.edges[e].from,
                                                edge_ok);
        std::vector<int> cycle{static_cast<int>(e)};
        cycle.insert(cycle.end(), back->begin(), back->end());
        return cycle;
    }
    return std::nullopt;
}

}  // namespace

std::optional<LassoWord> accepting_witness(const BooleanOmegaAutomaton& b) {
    Graph g = boolean_graph(b);
    int root = static_cast<int>(b.state_index(b.initial()));
    std::vector<bool> reach = reachable_from(g, root);
    // Restrict to the reachable part.
    Graph r;
    std::vector<int> remap(g.node_count(), -1);
    for (size_t u = 0; u < g.node_count(); ++u)
        if (reach[u]) remap[u] = r.add_node(g.node_names[u]);
    for (const auto& e : g.edges)
        if (reach[e.from]) r.add_edge(remap[e.from], remap[e.to], e.weight, e.label);
    auto cycle = accepting_cycle(r, b.kind());
    if (!cycle) return std::nullopt;
    auto path = *shortest_edge_path(r, remap[root], r.edges[(*cycle)[0]].from);
    LassoWord w;
    for (int e : path) w.prefix.push_back(r.edges[e].label);
    for (int e : *cycle) w.period.push_back(r.edges[e].label);
    return w;
}

bool nbw_emptiness(const BooleanOmegaAutomaton& b) {
    return !accepting_witness(b).has_value();
}

namespace {

// Index-based product of the automaton with a normalized lasso for
// membership-only queries: no names, no weights, no witness paths.
struct MembershipProduct {
    const BooleanOmegaAutomaton& b;
    size_t states;
    size_t positions;
    std::vector<size_t> symbol_at;  // position -> alphabet index
    size_t wrap;                    // next position after the last

    explicit MembershipProduct(const BooleanOmegaAutomaton& automaton,
                               const LassoWord& w)
        : b(automaton), states(automaton.states().size()) {
        positions = w.prefix.size() + w.period.size();
        wrap = w.prefix.size();
        symbol_at.reserve(positions);
        for (const auto& s : w.prefix) symbol_at.push_back(b.symbol_index(s));
        for (const auto& s : w.period) symbol_at.push_back(b.symbol_index(s));
    }

    size_t node(size_t q, size_t pos) const { return q * positions + pos; }
    size_t next(size_t pos) const { return pos + 1 < positions ? pos + 1 : wrap; }

    template <typename Fn>
    void for_each_edge(size_t id, Fn&& fn) const {
        size_t q = id / positions, pos = id % positions;
        size_t npos = next(pos);
        for (size_t t : b.transitions_by_index(q, symbol_at[pos]))
            fn(node(b.target_index(t), npos), b.transitions()[t].accepting);
    }

    std::vector<bool> reachable() const {
        std::vector<bool> seen(states * positions, false);
        std::vector<size_t> queue{node(b.state_index(b.initial()), 0)};
        seen[queue[0]] = true;
        for (size_t head = 0; head < queue.size(); ++head) {
            for_each_edge(queue[head], [&](size_t to, bool) {
                if (!seen[to]) {
                    seen[to] = true;
                    queue.push_back(to);
                }
            });
        }
        return seen;
    }
};

// Iterative Tarjan over the reachable product; true iff some accepting
// edge joins two nodes of one component.
bool buchi_product_nonempty(const MembershipProduct& p) {
    std::vector<bool> reach = p.reachable();
    size_t n = p.states * p.positions;
    std::vector<int> index(n, -1), lowlink(n, 0), component(n, -1);
    std::vector<bool> on_stack(n, false);
    std::vector<size_t> stack;
    int next_index = 0, components = 0;

    struct Frame {
        size_t node;
        size_t edge_pos;
    };
    for (size_t start = 0; start < n; ++start) {
        if (!reach[start] || index[start] != -1) continue;
        std::vector<Frame> frames{{start, 0}};
        std::vector<std::vector<size_t>> succ_stack;
        index[start] = lowlink[start] = next_index++;
        stack.push_back(start);
        on_stack[start] = true;
        {
            std::vector<size_t> succ;
            p.for_each_edge(start, [&](size_t to, bool) { succ.push_back(to); });
            succ_stack.push_back(std::move(succ));
        }
        while (!frames.empty()) {
            Frame& f = frames.back();
            size_t u = f.node;
            auto& succ = succ_stack.back();
            if (f.edge_pos < succ.size()) {
                size_t v = succ[f.edge_pos++];
                if (index[v] == -1) {
                    index[v] = lowlink[v] = next_index++;
                    stack.push_back(v);
                    on_stack[v] = true;
                    frames.push_back({v, 0});
                    std::vector<size_t> vsucc;
                    p.for_each_edge(v, [&](size_t to, bool) { vsucc.push_back(to); });
                    succ_stack.push_back(std::move(vsucc));
                } else if (on_stack[v]) {
                    lowlink[u] = std::min(lowlink[u], index[v]);
                }
            } else {
                if (lowlink[u] == index[u]) {
                    size_t w;
                    do {
                        w = stack.back();
                        stack.pop_back();
                        on_stack[w] = false;
                        component[w] = components;
                    } while (w != u);
                    ++components;
                }
                frames.pop_back();
                succ_stack.pop_back();
                if (!frames.empty()) {
                    size_t parent = frames.back().node;
                    lowlink[parent] = std::min(lowlink[parent], lowlink[u]);
                }
            }
        }
    }
    for (size_t u = 0; u < n; ++u) {
        if (!reach[u]) continue;
        bool found = false;
        p.for_each_edge(u, [&](size_t to, bool accepting) {
            if (accepting && component[to] == component[u]) found = true;
        });
        if (found) return true;
    }
    return false;
}

// Cycle of accepting edges within the reachable product (coBuechi).
bool cobuchi_product_nonempty(const MembershipProduct& p) {
    std::vector<bool> reach = p.reachable();
    size_t n = p.states * p.positions;
    std::vector<int> status(n, 0);  // 0 new, 1 on stack, 2 done
    struct Frame {
        size_t node;
        size_t edge_pos;
        std::vector<size_t> succ;
    };
    for (size_t start = 0; start < n; ++start) {
        if (!reach[start] || status[start] != 0) continue;
        std::vector<Frame> frames;
        auto push = [&](size_t u) {
            status[u] = 1;
            Frame f{u, 0, {}};
            p.for_each_edge(u, [&](size_t to, bool accepting) {
                if (accepting) f.succ.push_back(to);
            });
            frames.push_back(std::move(f));
        };
        push(start);
        while (!frames.empty()) {
            Frame& f = frames.back();
            if (f.edge_pos < f.succ.size()) {
                size_t v = f.succ[f.edge_pos++];
                if (status[v] == 1) return true;
                if (status[v] == 0) push(v);
            } else {
                status[f.node] = 2;
                frames.pop_back();
            }
        }
    }
    return false;
}

}  // namespace

bool lasso_membership(const BooleanOmegaAutomaton& b, const LassoWord& w) {
    LassoWord norm = normalize_lasso(w);
    for (const auto& s : norm.prefix)
        if (!b.has_symbol(s))
            throw AlphabetMismatch("word symbol '" + s + "' not in the alphabet");
    for (const auto& s : norm.period)
        if (!b.has_symbol(s))
            throw AlphabetMismatch("word symbol '" + s + "' not in the alphabet");
    MembershipProduct p(b, norm);
    return b.kind() == AcceptanceKind::Buchi ? buchi_product_nonempty(p)
                                             : cobuchi_product_nonempty(p);
}

// ---------------------------------------------------------------
// Complementation: level rankings with obligation sets, adapted to
// edge acceptance.  A ranking of the run DAG of a rejected word is
// non-increasing along every edge, and an accepting edge may not stay
// on the same odd rank; every path eventually stabilizes on an odd
// rank.  States of the complement are (ranking of the current level,
// obligation subset still to visit an odd rank); a transition is
// accepting iff the obligation empties.
// ---------------------------------------------------------------

namespace {

struct RankState {
    std::vector<std::pair<int, int>> ranks;  // (state index, rank), sorted
    std::vector<int> obligation;             // sorted state indices

    bool operator<(const RankState& o) const {
        return std::tie(ranks, obligation) < std::tie(o.ranks, o.obligation);
    }

    std::string name() const {
        std::string s = "{";
        for (size_t i = 0; i < ranks.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(ranks[i].first) + ":" + std::to_string(ranks[i].second);
        }
        s += "|O:";
        for (size_t i = 0; i < obligation.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(obligation[i]);
        }
        return s + "}";
    }
};

}  // namespace

BooleanOmegaAutomaton nbw_complement(const BooleanOmegaAutomaton& b) {
    if (b.kind() != AcceptanceKind::Buchi)
        throw UnsupportedTag("nbw_complement needs a Buechi automaton");
    if (!b.is_total()) throw Error("nbw_complement needs a total automaton");

    size_t n = b.states().size();
    int max_rank = static_cast<int>(2 * n);

    // Per (state, symbol index): successor state indices with edge
    // acceptance.
    auto successors = [&](size_t q, size_t s) {
        std::vector<std::pair<size_t, bool>> out;
        for (size_t t : b.transitions_by_index(q, s))
            out.emplace_back(b.target_index(t), b.transitions()[t].accepting);
        return out;
    };

    std::map<RankState, State> names;
    std::vector<RankState> queue;
    std::vector<BooleanTransition> trans;
    std::vector<State> states;

    auto visit = [&](const RankState& rs) {
        auto it = names.find(rs);
        if (it != names.end()) return it->second;
        State name = rs.name();
        names.emplace(rs, name);
        states.push_back(name);
        queue.push_back(rs);
        return name;
    };

    RankState init;
    init.ranks = {{static_cast<int>(b.state_index(b.initial())), max_rank}};
    State init_name = visit(init);

    for (size_t head = 0; head < queue.size(); ++head) {
        RankState cur = queue[head];  // copy: queue may grow
        for (size_t si = 0; si < b.alphabet().size(); ++si) {
            const auto& sym = b.alphabet()[si];
            // Rank cap per successor: min over incoming edges; accepting
            // edges from an odd rank force a decrease.
            std::map<int, int> cap;
            for (const auto& [q, rank] : cur.ranks) {
                for (const auto& [q2, acc] : successors(q, si)) {
                    int allowed = rank;
                    if (acc && rank % 2 == 1) allowed = rank - 1;
                    auto it = cap.find(static_cast<int>(q2));
                    if (it == cap.end())
                        cap[static_cast<int>(q2)] = allowed;
                    else
                        it->second = std::min(it->second, allowed);
                }
            }
            // Successors of the obligation set.
            std::set<int> obligation_succ;
            for (int q : cur.obligation)
                for (const auto& [q2, acc] : successors(static_cast<size_t>(q), si))
                    obligation_succ.insert(static_cast<int>(q2));

            // Enumerate every ranking below the caps.
            std::vector<std::pair<int, int>> dom(cap.begin(), cap.end());
            std::vector<int> choice(dom.size(), 0);
            for (;;) {
                RankState next;
                for (size_t i = 0; i < dom.size(); ++i)
                    next.ranks.emplace_back(dom[i].first, choice[i]);
                auto even_in = [&](const std::set<int>* filter) {
                    std::vector<int> out;
                    for (const auto& [q, r] : next.ranks)
                        if (r % 2 == 0 && (!filter || filter->count(q)))
                            out.push_back(q);
                    return out;
                };
                next.obligation = cur.obligation.empty()
                                      ? even_in(nullptr)
                                      : even_in(&obligation_succ);
                bool accepting = next.obligation.empty();
                State to = visit(next);
                trans.push_back({names.at(cur), sym, to, accepting});

                // Next choice vector.
                size_t i = 0;
                while (i < dom.size() && choice[i] == dom[i].second) {
                    choice[i] = 0;
                    ++i;
                }
                if (i == dom.size()) break;
                ++choice[i];
            }
        }
    }
    return {std::move(states), init_name, b.alphabet(), std::move(trans),
            AcceptanceKind::Buchi};
}

BooleanOmegaAutomaton ncw_determinize(const BooleanOmegaAutomaton& b) {
    if (b.kind() != AcceptanceKind::CoBuchi)
        throw UnsupportedTag("ncw_determinize needs a coBuechi automaton");
    if (!b.is_total()) throw Error("ncw_determinize needs a total automaton");

    using Key = std::pair<std::vector<int>, std::vector<int>>;  // (S, O)
    auto key_name = [&](const Key& k) {
        std::string s = "{";
        for (size_t i = 0; i < k.first.size(); ++i)
            s += (i ? "," : "") + b.states()[k.first[i]];
        s += "|";
        for (size_t i = 0; i < k.second.size(); ++i)
            s += (i ? "," : "") + b.states()[k.second[i]];
        return s + "}";
    };

    std::map<Key, State> names;
    std::vector<Key> queue;
    std::vector<State> states;
    std::vector<BooleanTransition> trans;
    auto visit = [&](const Key& k) {
        auto it = names.find(k);
        if (it != names.end()) return it->second;
        State name = key_name(k);
        names.emplace(k, name);
        states.push_back(name);
        queue.push_back(k);
        return name;
    };

    int q0 = static_cast<int>(b.state_index(b.initial()));
    Key init{{q0}, {q0}};
    State init_name = visit(init);

    for (size_t head = 0; head < queue.size(); ++head) {
        Key cur = queue[head];
        for (const auto& sym : b.alphabet()) {
            std::set<int> succ, clean;
            for (int q : cur.first)
                for (size_t t : b.transitions_from(b.states()[q], sym))
                    succ.insert(static_cast<int>(b.state_index(b.transitions()[t].to)));
            for (int q : cur.second)
                for (size_t t : b.transitions_from(b.states()[q], sym)) {
                    const auto& tr = b.transitions()[t];
                    if (tr.accepting)
                        clean.insert(static_cast<int>(b.state_index(tr.to)));
                }
            Key next;
            next.first.assign(succ.begin(), succ.end());
            bool reset = clean.empty();
            if (reset)
                next.second = next.first;  // breakpoint: watch everything again
            else
                next.second.assign(clean.begin(), clean.end());
            State to = visit(next);
            trans.push_back({names.at(cur), sym, to, !reset});
        }
    }
    return {std::move(states), init_name, b.alphabet(), std::move(trans),
            AcceptanceKind::CoBuchi};
}

WeightedAutomaton nlinf_determinize(const WeightedAutomaton& a) {
    if (a.tag().kind() != ValueFunction::LimInf)
        throw UnsupportedTag("nlinf_determinize needs a LimInf automaton");
    require_total(a);

    std::vector<Rational> thresholds = weight_set(a);  // ascending
    std::vector<BooleanOmegaAutomaton> chain;
    chain.reserve(thresholds.size());
    for (const auto& v : thresholds)
        chain.push_back(ncw_determinize(threshold_automaton(a, v)));

    using Key = std::vector<State>;  // one state per chain component
    std::map<Key, State> names;
    std::vector<Key> queue;
    std::vector<State> states;
    std::vector<Transition> trans;
    auto visit = [&](const Key& k) {
        auto it = names.find(k);
        if (it != names.end()) return it->second;
        std::string label = "<";
        for (size_t i = 0; i < k.size(); ++i) label += (i ? ";" : "") + k[i];
        label += ">";
        names.emplace(k, label);
        states.push_back(label);
        queue.push_back(k);
        return label;
    };

    Key init;
    for (const auto& d : chain) init.push_back(d.initial());
    State init_name = visit(init);

    for (size_t head = 0; head < queue.size(); ++head) {
        Key cur = queue[head];
        for (const auto& sym : a.alphabet()) {
            Key next(cur.size());
            size_t clean_prefix = 0;
            bool still_clean = true;
            for (size_t i = 0; i < chain.size(); ++i) {
                size_t t = chain[i].transitions_from(cur[i], sym)[0];
                const auto& tr = chain[i].transitions()[t];
                next[i] = tr.to;
                if (still_clean && tr.accepting)
                    clean_prefix = i + 1;
                else
                    still_clean = false;
            }
            // Thresholds are nested, so the LimInf of these weights is
            // the largest threshold whose component chain stays clean.
            Rational weight = thresholds[clean_prefix == 0 ? 0 : clean_prefix - 1];
            State to = visit(next);
            trans.push_back({names.at(cur), sym, to, weight});
        }
    }
    return {std::move(states), init_name, a.alphabet(), std::move(trans),
            ValueFunctionTag::liminf()};
}

}  // namespace quala
