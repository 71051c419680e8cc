#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <vector>

#include "quala/automaton.hpp"
#include "quala/errors.hpp"

namespace quala::detail {

inline void check_same_alphabet(const WeightedAutomaton& a,
                                const WeightedAutomaton& b) {
    require_total(a);
    require_total(b);
    std::set<Symbol> sa(a.alphabet().begin(), a.alphabet().end());
    std::set<Symbol> sb(b.alphabet().begin(), b.alphabet().end());
    if (sa != sb) throw AlphabetMismatch("operands have different alphabets");
}

inline void check_same_tag(const WeightedAutomaton& a, const WeightedAutomaton& b) {
    if (a.tag().kind() != b.tag().kind())
        throw TagMismatch("operands have different value functions: " +
                          a.tag().name() + " vs " + b.tag().name());
    if (a.tag().kind() == ValueFunction::Disc &&
        *a.tag().lambda() != *b.tag().lambda())
        throw LambdaMismatch("operands have different discount factors: " +
                             a.tag().lambda()->str() + " vs " +
                             b.tag().lambda()->str());
}

inline bool is_deterministic(const WeightedAutomaton& a) {
    return validate(a).is_deterministic;
}

/// Incremental construction helper: unique state names, transitions,
/// reachable-only BFS drivers.
class Builder {
public:
    explicit Builder(std::vector<Symbol> alphabet, ValueFunctionTag tag)
        : alphabet_(std::move(alphabet)), tag_(std::move(tag)) {}

    /// Adds (or finds) a state by name, making the name unique if a
    /// distinct state already claimed it.
    State fresh_state(const State& wanted) {
        State name = wanted;
        int k = 0;
        while (names_.count(name)) name = wanted + "~" + std::to_string(++k);
        names_.insert(name);
        states_.push_back(name);
        return name;
    }

    void add_transition(const State& from, const Symbol& sym, const State& to,
                        const Rational& weight) {
        transitions_.push_back({from, sym, to, weight});
    }

    void set_initial(const State& q) { initial_ = q; }

    WeightedAutomaton build() && {
        return {std::move(states_), std::move(initial_), std::move(alphabet_),
                std::move(transitions_), std::move(tag_)};
    }

    size_t state_count() const { return states_.size(); }

private:
    std::vector<Symbol> alphabet_;
    ValueFunctionTag tag_;
    std::set<State> names_;
    std::vector<State> states_;
    std::vector<Transition> transitions_;
    State initial_;
};

/// Initial nondeterministic choice between two automata over the same
/// alphabet and tag: a fresh initial state unions the out-transitions
/// of both initial states.
WeightedAutomaton initial_choice(const WeightedAutomaton& a,
                                 const WeightedAutomaton& b);

/// Reachable synchronized product; the weight of a joint transition is
/// combine(w1, w2).
WeightedAutomaton synchronized_product(
    const WeightedAutomaton& a, const WeightedAutomaton& b,
    const std::function<Rational(const Rational&, const Rational&)>& combine);

/// Reachable product remembering the largest weight seen so far in each
/// component; the weight of a joint transition is combine(v1', v2') on
/// the updated running maxima.  Initial running maxima are the least
/// weights of the components.
WeightedAutomaton running_max_product(
    const WeightedAutomaton& a, const WeightedAutomaton& b,
    const std::function<Rational(const Rational&, const Rational&)>& combine);

}  // namespace quala::detail
