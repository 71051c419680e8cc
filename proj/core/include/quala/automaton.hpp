#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "quala/rational.hpp"
#include "quala/words.hpp"

namespace quala {

enum class ValueFunction {
    Max,     // finite words
    Last,    // finite words
    Sum,     // finite words
    Sup,     // infinite words
    LimSup,  // infinite words
    LimInf,  // infinite words
    LimAvg,  // infinite words
    Disc,    // infinite words, carries 0 < lambda < 1
};

/// Value-function tag of an automaton; Disc carries its discount factor.
class ValueFunctionTag {
public:
    static ValueFunctionTag max() { return {ValueFunction::Max, {}}; }
    static ValueFunctionTag last() { return {ValueFunction::Last, {}}; }
    static ValueFunctionTag sum() { return {ValueFunction::Sum, {}}; }
    static ValueFunctionTag sup() { return {ValueFunction::Sup, {}}; }
    static ValueFunctionTag limsup() { return {ValueFunction::LimSup, {}}; }
    static ValueFunctionTag liminf() { return {ValueFunction::LimInf, {}}; }
    static ValueFunctionTag limavg() { return {ValueFunction::LimAvg, {}}; }
    static ValueFunctionTag disc(const Rational& lambda);

    ValueFunction kind() const { return kind_; }
    /// Discount factor; present exactly for Disc.
    const std::optional<Rational>& lambda() const { return lambda_; }

    bool finite_words() const {
        return kind_ == ValueFunction::Max || kind_ == ValueFunction::Last ||
               kind_ == ValueFunction::Sum;
    }
    bool infinite_words() const { return !finite_words(); }

    /// "max", "last", "sum", "sup", "limsup", "liminf", "limavg", "disc".
    std::string name() const;
    static ValueFunctionTag from_name(const std::string& name,
                                      const std::optional<Rational>& lambda);

    bool operator==(const ValueFunctionTag&) const = default;

private:
    ValueFunctionTag(ValueFunction k, std::optional<Rational> l)
        : kind_(k), lambda_(std::move(l)) {}
    ValueFunction kind_;
    std::optional<Rational> lambda_;
};

using State = std::string;

struct Transition {
    State from;
    Symbol symbol;
    State to;
    Rational weight;

    bool operator==(const Transition&) const = default;
};

struct ValidationReport {
    bool is_total = false;
    bool is_deterministic = false;
    /// (state, symbol) pairs with no outgoing transition.
    std::vector<std::pair<State, Symbol>> violations;
};

/// Weighted automaton over a finite alphabet: a finite set of states,
/// an initial state, a labelled transition relation with exact rational
/// weights, and a value function.  Parallel transitions with the same
/// (from, symbol, to) but different weights are allowed and kept
/// distinct by their position in the transition list.  Immutable after
/// construction; operations may be called concurrently on shared
/// automata.
class WeightedAutomaton {
public:
    WeightedAutomaton(std::vector<State> states, State initial,
                      std::vector<Symbol> alphabet,
                      std::vector<Transition> transitions,
                      ValueFunctionTag tag);

    const std::vector<State>& states() const { return states_; }
    const State& initial() const { return initial_; }
    const std::vector<Symbol>& alphabet() const { return alphabet_; }
    const std::vector<Transition>& transitions() const { return transitions_; }
    const ValueFunctionTag& tag() const { return tag_; }

    size_t state_index(const State& q) const;
    size_t symbol_index(const Symbol& s) const;
    bool has_symbol(const Symbol& s) const;

    /// Indices into transitions() leaving q on s (possibly empty).
    const std::vector<size_t>& transitions_from(const State& q, const Symbol& s) const;

private:
    std::vector<State> states_;
    State initial_;
    std::vector<Symbol> alphabet_;
    std::vector<Transition> transitions_;
    ValueFunctionTag tag_;

    std::map<State, size_t> state_index_;
    std::map<Symbol, size_t> symbol_index_;
    // out_[state][symbol] = transition indices
    std::vector<std::vector<std::vector<size_t>>> out_;
    std::vector<size_t> empty_;
};

/// Totality and determinism report, exactly as defined for the model:
/// total = every (state, symbol) has at least one successor;
/// deterministic = exactly one.
ValidationReport validate(const WeightedAutomaton& a);

/// Throws NotTotal (listing the missing pairs) when a is not total.
void require_total(const WeightedAutomaton& a);

/// Strictly increasing list of the distinct transition weights.
std::vector<Rational> weight_set(const WeightedAutomaton& a);

/// Automaton for the language c + L_a.  For Sum and Disc this adds a
/// fresh copy of the initial state whose outgoing weights absorb c;
/// for every other value function all weights are shifted by c.
WeightedAutomaton shift(const WeightedAutomaton& a, const Rational& c);

/// Automaton for the language c * L_a, c >= 0 (throws NegativeScale).
WeightedAutomaton scale(const WeightedAutomaton& a, const Rational& c);

/// Same states and transitions with every weight independently moved by
/// k*eps/16 for a seeded k in [-16, 16]; an eps-approximation of a.
WeightedAutomaton epsilon_approximation(const WeightedAutomaton& a,
                                        const Rational& eps, std::uint64_t seed);

}  // namespace quala
