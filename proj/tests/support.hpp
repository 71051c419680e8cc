#pragma once

#include <set>
#include <string>
#include <vector>

#include "quala/automaton.hpp"
#include "quala/prng.hpp"
#include "quala/words.hpp"

namespace quala::test {

struct Tr {
    const char* from;
    const char* symbol;
    const char* to;
    const char* weight;
};

inline WeightedAutomaton wa(std::vector<State> states, State initial,
                            std::vector<Symbol> alphabet, std::vector<Tr> trans,
                            ValueFunctionTag tag) {
    std::vector<Transition> ts;
    for (const auto& t : trans)
        ts.push_back({t.from, t.symbol, t.to, Rational::parse(t.weight)});
    return {std::move(states), std::move(initial), std::move(alphabet),
            std::move(ts), std::move(tag)};
}

inline Rational rat(const char* s) { return Rational::parse(s); }

inline LassoWord lasso(std::vector<Symbol> prefix, std::vector<Symbol> period) {
    return LassoWord{std::move(prefix), std::move(period)};
}

// Single-state LimAvg automaton over {a, b} computing the long-run
// fraction of a's.
inline WeightedAutomaton fraction_of_a() {
    return wa({"q"}, "q", {"a", "b"}, {{"q", "a", "q", "1"}, {"q", "b", "q", "0"}},
              ValueFunctionTag::limavg());
}

// Three-state energy model of a motor with a slow mode.
inline WeightedAutomaton motor_a() {
    return wa({"OFF", "ON", "SLOW"}, "OFF", {"on", "off", "slow"},
              {{"OFF", "off", "OFF", "0"},
               {"OFF", "on", "ON", "10"},
               {"OFF", "slow", "SLOW", "5"},
               {"ON", "on", "ON", "2"},
               {"ON", "off", "OFF", "10"},
               {"ON", "slow", "SLOW", "5"},
               {"SLOW", "slow", "SLOW", "1"},
               {"SLOW", "off", "OFF", "5"},
               {"SLOW", "on", "ON", "5"}},
              ValueFunctionTag::limavg());
}

// Two-state abstraction of the same motor; pointwise above motor_a.
inline WeightedAutomaton motor_b() {
    return wa({"OFF", "ON"}, "OFF", {"on", "off", "slow"},
              {{"OFF", "off", "OFF", "0"},
               {"OFF", "on", "ON", "10"},
               {"OFF", "slow", "ON", "10"},
               {"ON", "on", "ON", "2"},
               {"ON", "off", "OFF", "10"},
               {"ON", "slow", "OFF", "10"}},
              ValueFunctionTag::limavg());
}

// Discounted reward models of two banks; the alphabet encodes the pair
// of per-bank signals.
inline std::vector<Symbol> bank_alphabet() {
    return {"g1g2", "g1b2", "b1g2", "b1b2"};
}

inline WeightedAutomaton bank_a1(const Rational& lambda) {
    return wa({"G1", "B1"}, "G1", bank_alphabet(),
              {{"G1", "g1g2", "G1", "8"},
               {"G1", "g1b2", "G1", "8"},
               {"G1", "b1g2", "B1", "2"},
               {"G1", "b1b2", "B1", "2"},
               {"B1", "b1g2", "B1", "2"},
               {"B1", "b1b2", "B1", "2"},
               {"B1", "g1g2", "G1", "8"},
               {"B1", "g1b2", "G1", "8"}},
              ValueFunctionTag::disc(lambda));
}

inline WeightedAutomaton bank_a2(const Rational& lambda) {
    return wa({"G2", "B2"}, "G2", bank_alphabet(),
              {{"G2", "g1g2", "G2", "6"},
               {"G2", "b1g2", "G2", "6"},
               {"G2", "g1b2", "B2", "4"},
               {"G2", "b1b2", "B2", "4"},
               {"B2", "g1b2", "B2", "4"},
               {"B2", "b1b2", "B2", "4"},
               {"B2", "g1g2", "G2", "6"},
               {"B2", "b1g2", "G2", "6"}},
              ValueFunctionTag::disc(lambda));
}

// Single-state Sum automaton counting occurrences of one symbol of
// {a, b}.
inline WeightedAutomaton counter(const Symbol& counted) {
    return wa({"q"}, "q", {"a", "b"},
              {{"q", "a", "q", counted == "a" ? "1" : "0"},
               {"q", "b", "q", counted == "b" ? "1" : "0"}},
              ValueFunctionTag::sum());
}

struct RandomAutomatonOptions {
    int states = 3;
    std::vector<Symbol> alphabet = {"a", "b"};
    std::vector<const char*> weights = {"0", "1/3", "1/2", "1"};
    bool deterministic = false;
    int extra_transitions = 2;  // ignored when deterministic
};

/// Total random automaton: a deterministic skeleton plus a few extra
/// transitions when nondeterminism is requested.
inline WeightedAutomaton random_automaton(SplitMix64& rng, ValueFunctionTag tag,
                                          const RandomAutomatonOptions& opt = {}) {
    std::vector<State> states;
    for (int i = 0; i < opt.states; ++i) states.push_back("q" + std::to_string(i));
    auto weight = [&] { return rat(opt.weights[rng.below(opt.weights.size())]); };
    auto state = [&] { return states[rng.below(states.size())]; };
    std::vector<Transition> trans;
    for (const auto& q : states)
        for (const auto& s : opt.alphabet)
            trans.push_back({q, s, state(), weight()});
    if (!opt.deterministic) {
        int extra = static_cast<int>(rng.below(opt.extra_transitions + 1));
        for (int i = 0; i < extra; ++i)
            trans.push_back(
                {state(), opt.alphabet[rng.below(opt.alphabet.size())], state(),
                 weight()});
    }
    return {std::move(states), "q0", opt.alphabet, std::move(trans), tag};
}

/// Random automaton guaranteed to be nondeterministic.
inline WeightedAutomaton random_nondeterministic(SplitMix64& rng,
                                                 ValueFunctionTag tag,
                                                 RandomAutomatonOptions opt = {}) {
    opt.deterministic = false;
    auto weight = [&] { return rat(opt.weights[rng.below(opt.weights.size())]); };
    WeightedAutomaton a = random_automaton(rng, tag, opt);
    std::vector<Transition> trans = a.transitions();
    const State& q = a.states()[rng.below(a.states().size())];
    const Symbol& s = opt.alphabet[rng.below(opt.alphabet.size())];
    trans.push_back({q, s, a.states()[rng.below(a.states().size())], weight()});
    trans.push_back({q, s, a.states()[rng.below(a.states().size())], weight()});
    return {a.states(), a.initial(), a.alphabet(), std::move(trans), a.tag()};
}

/// All lassos over the alphabet with |u| + |v| <= max_total, one per
/// omega-word (normal forms, deduplicated).
inline std::vector<LassoWord> all_lassos(const std::vector<Symbol>& alphabet,
                                         size_t max_total) {
    std::vector<LassoWord> out;
    std::set<std::string> seen;
    std::vector<std::vector<Symbol>> words{{}};
    for (size_t len = 1; len <= max_total; ++len) {
        std::vector<std::vector<Symbol>> next;
        for (const auto& w : words)
            for (const auto& s : alphabet) {
                auto w2 = w;
                w2.push_back(s);
                next.push_back(std::move(w2));
            }
        words = std::move(next);
        for (const auto& w : words) {
            for (size_t ulen = 0; ulen < len; ++ulen) {
                LassoWord lw{{w.begin(), w.begin() + ulen},
                             {w.begin() + ulen, w.end()}};
                LassoWord norm = normalize_lasso(lw);
                if (seen.insert(norm.str()).second) out.push_back(norm);
            }
        }
    }
    return out;
}

/// Deterministic sample of lassos (normalized, not necessarily distinct).
inline std::vector<LassoWord> sampled_lassos(const std::vector<Symbol>& alphabet,
                                             size_t count, std::uint64_t seed,
                                             size_t max_prefix = 3,
                                             size_t max_period = 3) {
    SplitMix64 rng(seed);
    std::vector<LassoWord> out;
    for (size_t i = 0; i < count; ++i)
        out.push_back(sample_lasso(alphabet, rng, max_prefix, max_period));
    return out;
}

}  // namespace quala::test
