#include <map>

#include "closure_common.hpp"
#include "quala/closure.hpp"

namespace quala {

using detail::Builder;
using detail::check_same_alphabet;
using detail::check_same_tag;
using detail::is_deterministic;

namespace detail {

WeightedAutomaton initial_choice(const WeightedAutomaton& a,
                                 const WeightedAutomaton& b) {
    Builder out(a.alphabet(), a.tag());
    std::map<const WeightedAutomaton*, std::map<State, State>> names;
    const WeightedAutomaton* parts[2] = {&a, &b};
    for (int i = 0; i < 2; ++i)
        for (const auto& q : parts[i]->states())
            names[parts[i]][q] =
                out.fresh_state(std::to_string(i + 1) + ":" + q);
    State init = out.fresh_state("init");
    out.set_initial(init);
    for (int i = 0; i < 2; ++i) {
        const WeightedAutomaton& part = *parts[i];
        for (const auto& t : part.transitions())
            out.add_transition(names[&part][t.from], t.symbol, names[&part][t.to],
                               t.weight);
        for (const auto& t : part.transitions())
            if (t.from == part.initial())
                out.add_transition(init, t.symbol, names[&part][t.to], t.weight);
    }
    return std::move(out).build();
}

WeightedAutomaton synchronized_product(
    const WeightedAutomaton& a, const WeightedAutomaton& b,
    const std::function<Rational(const Rational&, const Rational&)>& combine) {
    Builder out(a.alphabet(), a.tag());
    using Key = std::pair<State, State>;
    std::map<Key, State> names;
    std::vector<Key> queue;
    auto visit = [&](const Key& key) {
        auto it = names.find(key);
        if (it != names.end()) return it->second;
        State name = out.fresh_state("(" + key.first + "," + key.second + ")");
        names.emplace(key, name);
        queue.push_back(key);
        return name;
    };
    out.set_initial(visit({a.initial(), b.initial()}));
    for (size_t head = 0; head < queue.size(); ++head) {
        Key key = queue[head];
        for (const auto& sym : a.alphabet()) {
            for (size_t ta : a.transitions_from(key.first, sym)) {
                for (size_t tb : b.transitions_from(key.second, sym)) {
                    const Transition& x = a.transitions()[ta];
                    const Transition& y = b.transitions()[tb];
                    State to = visit({x.to, y.to});
                    out.add_transition(names.at(key), sym, to,
                                       combine(x.weight, y.weight));
                }
            }
        }
    }
    return std::move(out).build();
}

WeightedAutomaton running_max_product(
    const WeightedAutomaton& a, const WeightedAutomaton& b,
    const std::function<Rational(const Rational&, const Rational&)>& combine) {
    Rational min_a = weight_set(a).front();
    Rational min_b = weight_set(b).front();

    Builder out(a.alphabet(), a.tag());
    using Key = std::tuple<State, Rational, State, Rational>;
    std::map<Key, State> names;
    std::vector<Key> queue;
    auto visit = [&](const Key& key) {
        auto it = names.find(key);
        if (it != names.end()) return it->second;
        State name = out.fresh_state(
            "(" + std::get<0>(key) + "|" + std::get<1>(key).str() + "," +
            std::get<2>(key) + "|" + std::get<3>(key).str() + ")");
        names.emplace(key, name);
        queue.push_back(key);
        return name;
    };
    out.set_initial(visit({a.initial(), min_a, b.initial(), min_b}));
    for (size_t head = 0; head < queue.size(); ++head) {
        Key key = queue[head];
        const auto& [qa, va, qb, vb] = key;
        for (const auto& sym : a.alphabet()) {
            for (size_t ta : a.transitions_from(qa, sym)) {
                for (size_t tb : b.transitions_from(qb, sym)) {
                    const Transition& x = a.transitions()[ta];
                    const Transition& y = b.transitions()[tb];
                    Rational va2 = std::max(va, x.weight);
                    Rational vb2 = std::max(vb, y.weight);
                    State to = visit({x.to, va2, y.to, vb2});
                    out.add_transition(names.at(key), sym, to, combine(va2, vb2));
                }
            }
        }
    }
    return std::move(out).build();
}

}  // namespace detail

namespace {

// Subset construction for Last-automata: the deterministic weight on s
// from a subset S is the best weight entering any successor, which
// preserves the Last-language.
WeightedAutomaton determinize_last(const WeightedAutomaton& a) {
    require_total(a);
    Builder out(a.alphabet(), a.tag());
    using Key = std::vector<State>;  // sorted subset
    std::map<Key, State> names;
    std::vector<Key> queue;
    auto visit = [&](const Key& key) {
        auto it = names.find(key);
        if (it != names.end()) return it->second;
        std::string label = "{";
        for (size_t i = 0; i < key.size(); ++i)
            label += (i ? "," : "") + key[i];
        label += "}";
        State name = out.fresh_state(label);
        names.emplace(key, name);
        queue.push_back(key);
        return name;
    };
    out.set_initial(visit({a.initial()}));
    for (size_t head = 0; head < queue.size(); ++head) {
        Key key = queue[head];
        for (const auto& sym : a.alphabet()) {
            std::set<State> successors;
            std::optional<Rational> best;
            for (const auto& q : key) {
                for (size_t t : a.transitions_from(q, sym)) {
                    const Transition& tr = a.transitions()[t];
                    successors.insert(tr.to);
                    if (!best || tr.weight > *best) best = tr.weight;
                }
            }
            Key next(successors.begin(), successors.end());
            State to = visit(next);
            out.add_transition(names.at(key), sym, to, *best);
        }
    }
    return std::move(out).build();
}

WeightedAutomaton negate_weights(const WeightedAutomaton& a) {
    std::vector<Transition> trans = a.transitions();
    for (auto& t : trans) t.weight = -t.weight;
    return {a.states(), a.initial(), a.alphabet(), std::move(trans), a.tag()};
}

}  // namespace

WeightedAutomaton max_finite(const WeightedAutomaton& a, const WeightedAutomaton& b) {
    check_same_alphabet(a, b);
    check_same_tag(a, b);
    if (!a.tag().finite_words())
        throw WrongArity("max_finite needs finite-word automata");
    bool det = is_deterministic(a) && is_deterministic(b);
    if (!det)
        return detail::initial_choice(a, b);
    switch (a.tag().kind()) {
        case ValueFunction::Max:
        case ValueFunction::Last:
            return detail::synchronized_product(
                a, b, [](const Rational& x, const Rational& y) {
                    return std::max(x, y);
                });
        case ValueFunction::Sum:
            throw ClosureError(
                "max", "deterministic Sum automata",
                "max of the a-count and b-count languages is realizable only "
                "with nondeterminism");
        default:
            throw WrongArity("unreachable");
    }
}

WeightedAutomaton min_finite(const WeightedAutomaton& a, const WeightedAutomaton& b) {
    check_same_alphabet(a, b);
    check_same_tag(a, b);
    if (!a.tag().finite_words())
        throw WrongArity("min_finite needs finite-word automata");
    switch (a.tag().kind()) {
        case ValueFunction::Last:
            return detail::synchronized_product(
                a, b, [](const Rational& x, const Rational& y) {
                    return std::min(x, y);
                });
        case ValueFunction::Max:
            return detail::running_max_product(
                a, b, [](const Rational& x, const Rational& y) {
                    return std::min(x, y);
                });
        case ValueFunction::Sum:
            throw ClosureError(
                "min", "Sum automata",
                "min of the a-count and b-count languages exceeds every "
                "cycle-bounded sum");
        default:
            throw WrongArity("unreachable");
    }
}

WeightedAutomaton complement_finite(const WeightedAutomaton& a) {
    if (!a.tag().finite_words())
        throw WrongArity("complement_finite needs a finite-word automaton");
    require_total(a);
    bool det = is_deterministic(a);
    switch (a.tag().kind()) {
        case ValueFunction::Max:
            throw ClosureError(
                "complement", "Max automata",
                "already fails for boolean reachability languages");
        case ValueFunction::Last: {
            WeightedAutomaton d = det ? a : determinize_last(a);
            return shift(negate_weights(d), Rational(1));
        }
        case ValueFunction::Sum:
            if (!det)
                throw ClosureError(
                    "complement", "nondeterministic Sum automata",
                    "would realize min of the a-count and b-count languages "
                    "through De Morgan");
            return shift(negate_weights(a), Rational(1));
        default:
            throw WrongArity("unreachable");
    }
}

WeightedAutomaton sum_finite(const WeightedAutomaton& a, const WeightedAutomaton& b) {
    check_same_alphabet(a, b);
    check_same_tag(a, b);
    if (!a.tag().finite_words())
        throw WrongArity("sum_finite needs finite-word automata");
    switch (a.tag().kind()) {
        case ValueFunction::Last:
        case ValueFunction::Sum:
            return detail::synchronized_product(
                a, b,
                [](const Rational& x, const Rational& y) { return x + y; });
        case ValueFunction::Max:
            return detail::running_max_product(
                a, b,
                [](const Rational& x, const Rational& y) { return x + y; });
        default:
            throw WrongArity("unreachable");
    }
}

}  // namespace quala
