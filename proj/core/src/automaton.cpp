#include "quala/automaton.hpp"

#include <algorithm>
#include <set>

#include "quala/errors.hpp"
#include "quala/prng.hpp"

namespace quala {

ValueFunctionTag ValueFunctionTag::disc(const Rational& lambda) {
    if (!(Rational(0) < lambda && lambda < Rational(1)))
        throw Error("discount factor must satisfy 0 < lambda < 1, got " + lambda.str());
    return {ValueFunction::Disc, lambda};
}

std::string ValueFunctionTag::name() const {
    switch (kind_) {
        case ValueFunction::Max: return "max";
        case ValueFunction::Last: return "last";
        case ValueFunction::Sum: return "sum";
        case ValueFunction::Sup: return "sup";
        case ValueFunction::LimSup: return "limsup";
        case ValueFunction::LimInf: return "liminf";
        case ValueFunction::LimAvg: return "limavg";
        case ValueFunction::Disc: return "disc";
    }
    return "?";
}

ValueFunctionTag ValueFunctionTag::from_name(const std::string& name,
                                             const std::optional<Rational>& lambda) {
    if (name == "disc") {
        if (!lambda) throw MissingLambda("value function 'disc' requires lambda");
        return disc(*lambda);
    }
    if (lambda) throw Error("lambda is only meaningful for 'disc'");
    if (name == "max") return max();
    if (name == "last") return last();
    if (name == "sum") return sum();
    if (name == "sup") return sup();
    if (name == "limsup") return limsup();
    if (name == "liminf") return liminf();
    if (name == "limavg") return limavg();
    throw SyntaxError("unknown value function '" + name + "'");
}

WeightedAutomaton::WeightedAutomaton(std::vector<State> states, State initial,
                                     std::vector<Symbol> alphabet,
                                     std::vector<Transition> transitions,
                                     ValueFunctionTag tag)
    : states_(std::move(states)),
      initial_(std::move(initial)),
      alphabet_(std::move(alphabet)),
      transitions_(std::move(transitions)),
      tag_(std::move(tag)) {
    if (states_.empty()) throw Error("automaton needs at least one state");
    if (alphabet_.empty()) throw Error("automaton needs a nonempty alphabet");
    for (size_t i = 0; i < states_.size(); ++i) {
        if (!state_index_.emplace(states_[i], i).second)
            throw Error("duplicate state '" + states_[i] + "'");
    }
    for (size_t i = 0; i < alphabet_.size(); ++i) {
        if (!symbol_index_.emplace(alphabet_[i], i).second)
            throw Error("duplicate alphabet symbol '" + alphabet_[i] + "'");
    }
    if (!state_index_.count(initial_))
        throw Error("initial state '" + initial_ + "' is not a state");

    out_.assign(states_.size(),
                std::vector<std::vector<size_t>>(alphabet_.size()));
    for (size_t t = 0; t < transitions_.size(); ++t) {
        const Transition& tr = transitions_[t];
        auto qs = state_index_.find(tr.from);
        auto qt = state_index_.find(tr.to);
        auto sy = symbol_index_.find(tr.symbol);
        if (qs == state_index_.end())
            throw Error("transition from unknown state '" + tr.from + "'");
        if (qt == state_index_.end())
            throw Error("transition to unknown state '" + tr.to + "'");
        if (sy == symbol_index_.end())
            throw Error("transition on unknown symbol '" + tr.symbol + "'");
        out_[qs->second][sy->second].push_back(t);
    }
}

size_t WeightedAutomaton::state_index(const State& q) const {
    auto it = state_index_.find(q);
    if (it == state_index_.end()) throw Error("unknown state '" + q + "'");
    return it->second;
}

size_t WeightedAutomaton::symbol_index(const Symbol& s) const {
    auto it = symbol_index_.find(s);
    if (it == symbol_index_.end())
        throw AlphabetMismatch("symbol '" + s + "' is not in the alphabet");
    return it->second;
}

bool WeightedAutomaton::has_symbol(const Symbol& s) const {
    return symbol_index_.count(s) > 0;
}

const std::vector<size_t>& WeightedAutomaton::transitions_from(
    const State& q, const Symbol& s) const {
    auto qi = state_index_.find(q);
    auto si = symbol_index_.find(s);
    if (qi == state_index_.end() || si == symbol_index_.end()) return empty_;
    return out_[qi->second][si->second];
}

ValidationReport validate(const WeightedAutomaton& a) {
    ValidationReport report;
    report.is_total = true;
    report.is_deterministic = true;
    for (const auto& q : a.states()) {
        for (const auto& s : a.alphabet()) {
            size_t n = a.transitions_from(q, s).size();
            if (n == 0) {
                report.is_total = false;
                report.violations.emplace_back(q, s);
            }
            if (n != 1) report.is_deterministic = false;
        }
    }
    return report;
}

void require_total(const WeightedAutomaton& a) {
    ValidationReport report = validate(a);
    if (report.is_total) return;
    std::string msg = "automaton is not total; missing transitions:";
    for (const auto& [q, s] : report.violations)
        msg += " (" + q + ", " + s + ")";
    throw NotTotal(msg, report.violations);
}

std::vector<Rational> weight_set(const WeightedAutomaton& a) {
    std::set<Rational> seen;
    for (const auto& t : a.transitions()) seen.insert(t.weight);
    return {seen.begin(), seen.end()};
}

WeightedAutomaton shift(const WeightedAutomaton& a, const Rational& c) {
    ValueFunction k = a.tag().kind();
    if (k == ValueFunction::Sum || k == ValueFunction::Disc) {
        // Fresh copy of the initial state; its outgoing weights absorb c
        // (for Disc only the first transition carries lambda^0 = 1).
        State fresh = a.initial() + "'";
        while (std::find(a.states().begin(), a.states().end(), fresh) !=
               a.states().end())
            fresh += "'";
        std::vector<State> states = a.states();
        states.push_back(fresh);
        std::vector<Transition> trans = a.transitions();
        for (const auto& t : a.transitions())
            if (t.from == a.initial())
                trans.push_back({fresh, t.symbol, t.to, t.weight + c});
        return {std::move(states), fresh, a.alphabet(), std::move(trans), a.tag()};
    }
    std::vector<Transition> trans = a.transitions();
    for (auto& t : trans) t.weight += c;
    return {a.states(), a.initial(), a.alphabet(), std::move(trans), a.tag()};
}

WeightedAutomaton scale(const WeightedAutomaton& a, const Rational& c) {
    if (c < Rational(0))
        throw NegativeScale("scale factor must be nonnegative, got " + c.str());
    std::vector<Transition> trans = a.transitions();
    for (auto& t : trans) t.weight *= c;
    return {a.states(), a.initial(), a.alphabet(), std::move(trans), a.tag()};
}

WeightedAutomaton epsilon_approximation(const WeightedAutomaton& a,
                                        const Rational& eps, std::uint64_t seed) {
    if (eps < Rational(0))
        throw Error("eps must be nonnegative, got " + eps.str());
    constexpr long kGranularity = 16;
    SplitMix64 rng(seed);
    std::vector<Transition> trans = a.transitions();
    for (auto& t : trans) {
        long k = rng.range(-kGranularity, kGranularity);
        t.weight += eps * Rational(BigInt(k), BigInt(kGranularity));
    }
    return {a.states(), a.initial(), a.alphabet(), std::move(trans), a.tag()};
}

}  // namespace quala
