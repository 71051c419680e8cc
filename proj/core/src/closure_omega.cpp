#include <map>
#include <tuple>

#include "closure_common.hpp"
#include "quala/closure.hpp"
#include "quala/omega.hpp"

namespace quala {

using detail::Builder;
using detail::check_same_alphabet;
using detail::check_same_tag;
using detail::is_deterministic;

namespace {

Rational min_of(const std::vector<Rational>& v) { return v.front(); }

// Weights V1 u V2, sorted ascending.
std::vector<Rational> joint_weights(const WeightedAutomaton& a,
                                    const WeightedAutomaton& b) {
    std::vector<Rational> va = weight_set(a), vb = weight_set(b);
    std::vector<Rational> all;
    std::merge(va.begin(), va.end(), vb.begin(), vb.end(), std::back_inserter(all));
    all.erase(std::unique(all.begin(), all.end()), all.end());
    return all;
}

std::string bits_name(const std::vector<int>& bits) {
    std::string s;
    for (int b : bits) s += static_cast<char>('0' + b);
    return s;
}

// Deterministic LimSup min: one watched-copy bit per joint weight; the
// bit flips whenever the watched copy crosses an edge at least that
// heavy, and the joint weight is the largest flipped threshold.  A
// threshold flips forever iff both components reach it infinitely
// often.
WeightedAutomaton bitvector_min_limsup(const WeightedAutomaton& a,
                                       const WeightedAutomaton& b) {
    std::vector<Rational> thresholds = joint_weights(a, b);
    Rational vmin = thresholds.front();
    size_t m = thresholds.size();

    Builder out(a.alphabet(), a.tag());
    using Key = std::tuple<State, State, std::vector<int>>;
    std::map<Key, State> names;
    std::vector<Key> queue;
    auto visit = [&](const Key& key) {
        auto it = names.find(key);
        if (it != names.end()) return it->second;
        State name = out.fresh_state("(" + std::get<0>(key) + "," +
                                     std::get<1>(key) + ",b=" +
                                     bits_name(std::get<2>(key)) + ")");
        names.emplace(key, name);
        queue.push_back(key);
        return name;
    };
    out.set_initial(visit({a.initial(), b.initial(), std::vector<int>(m, 1)}));
    for (size_t head = 0; head < queue.size(); ++head) {
        Key key = queue[head];
        const auto& [qa, qb, bits] = key;
        for (const auto& sym : a.alphabet()) {
            for (size_t ta : a.transitions_from(qa, sym)) {
                for (size_t tb : b.transitions_from(qb, sym)) {
                    const Transition& x = a.transitions()[ta];
                    const Transition& y = b.transitions()[tb];
                    std::vector<int> nbits = bits;
                    Rational weight = vmin;
                    for (size_t j = 0; j < m; ++j) {
                        const Rational& crossed =
                            bits[j] == 1 ? x.weight : y.weight;
                        if (crossed >= thresholds[j]) {
                            nbits[j] = 3 - bits[j];
                            weight = std::max(weight, thresholds[j]);
                        }
                    }
                    State to = visit({x.to, y.to, nbits});
                    out.add_transition(names.at(key), sym, to, weight);
                }
            }
        }
    }
    return std::move(out).build();
}

// Nondeterministic LimSup min: guess the joint value up front, then
// alternate between the copies, toggling whenever the watched copy
// crosses an edge at least as heavy as the guess.
WeightedAutomaton guess_min_limsup(const WeightedAutomaton& a,
                                   const WeightedAutomaton& b) {
    std::vector<Rational> thresholds = joint_weights(a, b);
    Rational vmin = thresholds.front();

    Builder out(a.alphabet(), a.tag());
    using Key = std::tuple<State, State, int, Rational>;
    std::map<Key, State> names;
    std::vector<Key> queue;
    auto visit = [&](const Key& key) {
        auto it = names.find(key);
        if (it != names.end()) return it->second;
        State name = out.fresh_state(
            "(" + std::get<0>(key) + "," + std::get<1>(key) +
            ",j=" + std::to_string(std::get<2>(key)) + ",v=" +
            std::get<3>(key).str() + ")");
        names.emplace(key, name);
        queue.push_back(key);
        return name;
    };
    State init = out.fresh_state("init");
    out.set_initial(init);
    for (const auto& sym : a.alphabet())
        for (size_t ta : a.transitions_from(a.initial(), sym))
            for (size_t tb : b.transitions_from(b.initial(), sym))
                for (const auto& v : thresholds) {
                    const Transition& x = a.transitions()[ta];
                    const Transition& y = b.transitions()[tb];
                    out.add_transition(init, sym, visit({x.to, y.to, 1, v}), vmin);
                }
    for (size_t head = 0; head < queue.size(); ++head) {
        Key key = queue[head];
        const auto& [qa, qb, j, v] = key;
        for (const auto& sym : a.alphabet()) {
            for (size_t ta : a.transitions_from(qa, sym)) {
                for (size_t tb : b.transitions_from(qb, sym)) {
                    const Transition& x = a.transitions()[ta];
                    const Transition& y = b.transitions()[tb];
                    const Rational& crossed = j == 1 ? x.weight : y.weight;
                    bool toggled = crossed >= v;
                    State to = visit({x.to, y.to, toggled ? 3 - j : j, v});
                    out.add_transition(names.at(key), sym, to, toggled ? v : vmin);
                }
            }
        }
    }
    return std::move(out).build();
}

// Nondeterministic LimSup sum: guess the pair of component values, then
// alternate, toggling when the watched copy crosses exactly its guess.
WeightedAutomaton guess_sum_limsup(const WeightedAutomaton& a,
                                   const WeightedAutomaton& b) {
    std::vector<Rational> va = weight_set(a), vb = weight_set(b);
    Rational vmin = min_of(va) + min_of(vb);

    Builder out(a.alphabet(), a.tag());
    using Key = std::tuple<State, State, int, Rational, Rational>;
    std::map<Key, State> names;
    std::vector<Key> queue;
    auto visit = [&](const Key& key) {
        auto it = names.find(key);
        if (it != names.end()) return it->second;
        State name = out.fresh_state(
            "(" + std::get<0>(key) + "," + std::get<1>(key) +
            ",j=" + std::to_string(std::get<2>(key)) + ",v1=" +
            std::get<3>(key).str() + ",v2=" + std::get<4>(key).str() + ")");
        names.emplace(key, name);
        queue.push_back(key);
        return name;
    };
    State init = out.fresh_state("init");
    out.set_initial(init);
    for (const auto& sym : a.alphabet())
        for (size_t ta : a.transitions_from(a.initial(), sym))
            for (size_t tb : b.transitions_from(b.initial(), sym))
                for (const auto& v1 : va)
                    for (const auto& v2 : vb) {
                        const Transition& x = a.transitions()[ta];
                        const Transition& y = b.transitions()[tb];
                        out.add_transition(init, sym,
                                           visit({x.to, y.to, 1, v1, v2}), vmin);
                    }
    for (size_t head = 0; head < queue.size(); ++head) {
        Key key = queue[head];
        const auto& [qa, qb, j, v1, v2] = key;
        for (const auto& sym : a.alphabet()) {
            for (size_t ta : a.transitions_from(qa, sym)) {
                for (size_t tb : b.transitions_from(qb, sym)) {
                    const Transition& x = a.transitions()[ta];
                    const Transition& y = b.transitions()[tb];
                    const Rational& crossed = j == 1 ? x.weight : y.weight;
                    const Rational& guess = j == 1 ? v1 : v2;
                    bool toggled = crossed == guess;
                    State to = visit({x.to, y.to, toggled ? 3 - j : j, v1, v2});
                    out.add_transition(names.at(key), sym, to,
                                       toggled ? v1 + v2 : vmin);
                }
            }
        }
    }
    return std::move(out).build();
}

// Deterministic LimSup sum: one alternation bit per weight pair; the
// pair's bit flips when the watched copy crosses exactly that weight,
// and the joint weight is the largest flipped pair sum.  A pair flips
// forever iff both components visit their weights infinitely often.
WeightedAutomaton bitfunction_sum_limsup(const WeightedAutomaton& a,
                                         const WeightedAutomaton& b) {
    std::vector<Rational> va = weight_set(a), vb = weight_set(b);
    std::vector<std::pair<Rational, Rational>> pairs;
    for (const auto& v1 : va)
        for (const auto& v2 : vb) pairs.emplace_back(v1, v2);
    Rational vmin = min_of(va) + min_of(vb);

    Builder out(a.alphabet(), a.tag());
    using Key = std::tuple<State, State, std::vector<int>>;
    std::map<Key, State> names;
    std::vector<Key> queue;
    auto visit = [&](const Key& key) {
        auto it = names.find(key);
        if (it != names.end()) return it->second;
        State name = out.fresh_state("(" + std::get<0>(key) + "," +
                                     std::get<1>(key) + ",f=" +
                                     bits_name(std::get<2>(key)) + ")");
        names.emplace(key, name);
        queue.push_back(key);
        return name;
    };
    out.set_initial(
        visit({a.initial(), b.initial(), std::vector<int>(pairs.size(), 1)}));
    for (size_t head = 0; head < queue.size(); ++head) {
        Key key = queue[head];
        const auto& [qa, qb, bits] = key;
        for (const auto& sym : a.alphabet()) {
            for (size_t ta : a.transitions_from(qa, sym)) {
                for (size_t tb : b.transitions_from(qb, sym)) {
                    const Transition& x = a.transitions()[ta];
                    const Transition& y = b.transitions()[tb];
                    std::vector<int> nbits = bits;
                    Rational weight = vmin;
                    for (size_t k = 0; k < pairs.size(); ++k) {
                        const Rational& watched =
                            bits[k] == 1 ? x.weight : y.weight;
                        const Rational& expected =
                            bits[k] == 1 ? pairs[k].first : pairs[k].second;
                        if (watched == expected) {
                            nbits[k] = 3 - bits[k];
                            weight = std::max(weight,
                                              pairs[k].first + pairs[k].second);
                        }
                    }
                    State to = visit({x.to, y.to, nbits});
                    out.add_transition(names.at(key), sym, to, weight);
                }
            }
        }
    }
    return std::move(out).build();
}

// LimInf sum: guess the pair of component floors up front; a step pays
// the guessed sum when both crossed weights meet their floors and the
// least possible sum otherwise.  The guess pays off iff violations
// happen only finitely often, which makes the run value the sum of the
// component LimInf values.
WeightedAutomaton guess_sum_liminf(const WeightedAutomaton& a,
                                   const WeightedAutomaton& b) {
    std::vector<Rational> va = weight_set(a), vb = weight_set(b);
    Rational vmin = min_of(va) + min_of(vb);

    Builder out(a.alphabet(), a.tag());
    using Key = std::tuple<State, State, Rational, Rational>;
    std::map<Key, State> names;
    std::vector<Key> queue;
    auto visit = [&](const Key& key) {
        auto it = names.find(key);
        if (it != names.end()) return it->second;
        State name = out.fresh_state(
            "(" + std::get<0>(key) + "," + std::get<1>(key) + ",v1=" +
            std::get<2>(key).str() + ",v2=" + std::get<3>(key).str() + ")");
        names.emplace(key, name);
        queue.push_back(key);
        return name;
    };
    State init = out.fresh_state("init");
    out.set_initial(init);
    auto step_weight = [&](const Transition& x, const Transition& y,
                           const Rational& v1, const Rational& v2) {
        return x.weight >= v1 && y.weight >= v2 ? v1 + v2 : vmin;
    };
    for (const auto& sym : a.alphabet())
        for (size_t ta : a.transitions_from(a.initial(), sym))
            for (size_t tb : b.transitions_from(b.initial(), sym))
                for (const auto& v1 : va)
                    for (const auto& v2 : vb) {
                        const Transition& x = a.transitions()[ta];
                        const Transition& y = b.transitions()[tb];
                        out.add_transition(init, sym, visit({x.to, y.to, v1, v2}),
                                           step_weight(x, y, v1, v2));
                    }
    for (size_t head = 0; head < queue.size(); ++head) {
        Key key = queue[head];
        const auto& [qa, qb, v1, v2] = key;
        for (const auto& sym : a.alphabet()) {
            for (size_t ta : a.transitions_from(qa, sym)) {
                for (size_t tb : b.transitions_from(qb, sym)) {
                    const Transition& x = a.transitions()[ta];
                    const Transition& y = b.transitions()[tb];
                    State to = visit({x.to, y.to, v1, v2});
                    out.add_transition(names.at(key), sym, to,
                                       step_weight(x, y, v1, v2));
                }
            }
        }
    }
    return std::move(out).build();
}

// Union by initial choice over arbitrarily many automata (same
// alphabet and tag).
WeightedAutomaton initial_choice_many(const std::vector<WeightedAutomaton>& parts) {
    Builder out(parts[0].alphabet(), parts[0].tag());
    std::vector<std::map<State, State>> names(parts.size());
    for (size_t i = 0; i < parts.size(); ++i)
        for (const auto& q : parts[i].states())
            names[i][q] = out.fresh_state(std::to_string(i + 1) + ":" + q);
    State init = out.fresh_state("init");
    out.set_initial(init);
    for (size_t i = 0; i < parts.size(); ++i) {
        for (const auto& t : parts[i].transitions())
            out.add_transition(names[i][t.from], t.symbol, names[i][t.to], t.weight);
        for (const auto& t : parts[i].transitions())
            if (t.from == parts[i].initial())
                out.add_transition(init, t.symbol, names[i][t.to], t.weight);
    }
    return std::move(out).build();
}

}  // namespace

WeightedAutomaton max_omega(const WeightedAutomaton& a, const WeightedAutomaton& b) {
    check_same_alphabet(a, b);
    check_same_tag(a, b);
    if (!a.tag().infinite_words())
        throw WrongArity("max_omega needs infinite-word automata");
    bool det = is_deterministic(a) && is_deterministic(b);
    if (!det) return detail::initial_choice(a, b);
    switch (a.tag().kind()) {
        case ValueFunction::Sup:
        case ValueFunction::LimSup:
            return detail::synchronized_product(
                a, b,
                [](const Rational& x, const Rational& y) { return std::max(x, y); });
        case ValueFunction::LimInf:
            return nlinf_determinize(detail::initial_choice(a, b));
        case ValueFunction::LimAvg:
            throw ClosureError(
                "max", "deterministic LimAvg automata",
                "max of the long-run a-fraction and b-fraction languages "
                "requires nondeterminism");
        case ValueFunction::Disc:
            throw ClosureError(
                "max", "deterministic Disc automata",
                "max of the discounted a-count and b-count languages "
                "requires nondeterminism");
        default:
            throw WrongArity("unreachable");
    }
}

WeightedAutomaton min_omega(const WeightedAutomaton& a, const WeightedAutomaton& b) {
    check_same_alphabet(a, b);
    check_same_tag(a, b);
    if (!a.tag().infinite_words())
        throw WrongArity("min_omega needs infinite-word automata");
    switch (a.tag().kind()) {
        case ValueFunction::Sup:
            return detail::running_max_product(
                a, b,
                [](const Rational& x, const Rational& y) { return std::min(x, y); });
        case ValueFunction::LimInf:
            return detail::synchronized_product(
                a, b,
                [](const Rational& x, const Rational& y) { return std::min(x, y); });
        case ValueFunction::LimSup:
            return is_deterministic(a) && is_deterministic(b)
                       ? bitvector_min_limsup(a, b)
                       : guess_min_limsup(a, b);
        case ValueFunction::LimAvg:
            throw ClosureError(
                "min", "LimAvg automata",
                "min of the long-run a-fraction and b-fraction languages "
                "would force every iterated cycle to break the bound");
        case ValueFunction::Disc:
            throw ClosureError(
                "min", "Disc automata",
                "min of the discounted a-count and b-count languages pins "
                "the discount factor to a polynomial root");
        default:
            throw WrongArity("unreachable");
    }
}

WeightedAutomaton complement_omega(const WeightedAutomaton& a) {
    if (!a.tag().infinite_words())
        throw WrongArity("complement_omega needs an infinite-word automaton");
    require_total(a);
    bool det = is_deterministic(a);
    switch (a.tag().kind()) {
        case ValueFunction::Sup:
            throw ClosureError(
                "complement", "Sup automata",
                "the complement of the language valuing every word but "
                "a^omega at 1 is not Sup-realizable");
        case ValueFunction::LimInf:
            throw ClosureError(
                "complement", "LimInf automata",
                "the complement of an eventually-always language leaves "
                "the coBuechi-like class");
        case ValueFunction::LimAvg:
            throw ClosureError(
                "complement", "LimAvg automata",
                "a complement automaton could be starved below 1/2 along "
                "alternating blocks on both sides");
        case ValueFunction::Disc: {
            if (!det)
                throw ClosureError(
                    "complement", "nondeterministic Disc automata",
                    "complementation would realize min of the discounted "
                    "a-count and b-count languages");
            const Rational& lambda = *a.tag().lambda();
            std::vector<Transition> trans = a.transitions();
            for (auto& t : trans)
                t.weight = Rational(1) - lambda - t.weight;
            return {a.states(), a.initial(), a.alphabet(), std::move(trans), a.tag()};
        }
        case ValueFunction::LimSup: {
            if (det)
                throw ClosureError(
                    "complement", "deterministic LimSup automata",
                    "already fails for the boolean complement of an "
                    "eventually-always language");
            std::vector<Rational> values = weight_set(a);
            size_t n = values.size();
            if (n == 1) {
                // Constant language; its complement is the constant 1-v.
                Builder out(a.alphabet(), a.tag());
                State q = out.fresh_state("const");
                out.set_initial(q);
                for (const auto& sym : a.alphabet())
                    out.add_transition(q, sym, q, Rational(1) - values[0]);
                return std::move(out).build();
            }
            // One complemented threshold automaton per value above the
            // least: accepting edges pay 1-v_{i-1}, others 1-v_n.
            std::vector<WeightedAutomaton> parts;
            for (size_t i = 1; i < n; ++i) {
                BooleanOmegaAutomaton comp =
                    nbw_complement(threshold_automaton(a, values[i]));
                std::vector<Transition> trans;
                trans.reserve(comp.transitions().size());
                for (const auto& t : comp.transitions())
                    trans.push_back({t.from, t.symbol, t.to,
                                     Rational(1) - (t.accepting ? values[i - 1]
                                                                : values[n - 1])});
                parts.emplace_back(comp.states(), comp.initial(), comp.alphabet(),
                                   std::move(trans), a.tag());
            }
            if (parts.size() == 1) return parts[0];
            return initial_choice_many(parts);
        }
        default:
            throw WrongArity("unreachable");
    }
}

WeightedAutomaton sum_omega(const WeightedAutomaton& a, const WeightedAutomaton& b) {
    check_same_alphabet(a, b);
    check_same_tag(a, b);
    if (!a.tag().infinite_words())
        throw WrongArity("sum_omega needs infinite-word automata");
    switch (a.tag().kind()) {
        case ValueFunction::Sup:
            return detail::running_max_product(
                a, b, [](const Rational& x, const Rational& y) { return x + y; });
        case ValueFunction::LimSup:
            return is_deterministic(a) && is_deterministic(b)
                       ? bitfunction_sum_limsup(a, b)
                       : guess_sum_limsup(a, b);
        case ValueFunction::LimInf: {
            WeightedAutomaton guessed = guess_sum_liminf(a, b);
            if (is_deterministic(a) && is_deterministic(b))
                return nlinf_determinize(guessed);
            return guessed;
        }
        case ValueFunction::Disc:
            return detail::synchronized_product(
                a, b, [](const Rational& x, const Rational& y) { return x + y; });
        case ValueFunction::LimAvg:
            throw ClosureError(
                "sum", "LimAvg automata",
                "the sum of the long-run a-fraction and b-fraction languages "
                "is not realizable: padding blocks starve any candidate");
        default:
            throw WrongArity("unreachable");
    }
}

}  // namespace quala
