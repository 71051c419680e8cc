#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "quala/automaton.hpp"
#include "quala/words.hpp"

namespace quala {

enum class AcceptanceKind { Buchi, CoBuchi };

struct BooleanTransition {
    State from;
    Symbol symbol;
    State to;
    bool accepting;

    bool operator==(const BooleanTransition&) const = default;
};

/// Edge-accepting Buechi / coBuechi automaton.  A Buechi automaton
/// accepts a word iff some run crosses accepting edges infinitely
/// often; a coBuechi automaton accepts iff some run crosses
/// non-accepting edges only finitely often.  Totality is expected by
/// every operation below.
class BooleanOmegaAutomaton {
public:
    BooleanOmegaAutomaton(std::vector<State> states, State initial,
                          std::vector<Symbol> alphabet,
                          std::vector<BooleanTransition> transitions,
                          AcceptanceKind kind);

    const std::vector<State>& states() const { return states_; }
    const State& initial() const { return initial_; }
    const std::vector<Symbol>& alphabet() const { return alphabet_; }
    const std::vector<BooleanTransition>& transitions() const { return transitions_; }
    AcceptanceKind kind() const { return kind_; }

    size_t state_index(const State& q) const;
    size_t symbol_index(const Symbol& s) const;
    bool has_symbol(const Symbol& s) const;
    const std::vector<size_t>& transitions_from(const State& q, const Symbol& s) const;
    const std::vector<size_t>& transitions_by_index(size_t state, size_t symbol) const {
        return out_[state][symbol];
    }
    /// Precomputed state index of transitions()[t].to.
    size_t target_index(size_t t) const { return to_index_[t]; }

    bool is_total() const;
    bool is_deterministic() const;

private:
    std::vector<State> states_;
    State initial_;
    std::vector<Symbol> alphabet_;
    std::vector<BooleanTransition> transitions_;
    AcceptanceKind kind_;

    std::map<State, size_t> state_index_;
    std::map<Symbol, size_t> symbol_index_;
    std::vector<std::vector<std::vector<size_t>>> out_;
    std::vector<size_t> to_index_;
    std::vector<size_t> empty_;
};

/// Boolean language {w : L_a(w) >= v} of a LimSup automaton as a Buechi
/// automaton, or of a LimInf automaton as a coBuechi automaton: the
/// accepting edges are exactly those of weight >= v.
BooleanOmegaAutomaton threshold_automaton(const WeightedAutomaton& a,
                                          const Rational& v);

/// Complement of a (nondeterministic, edge-accepting) Buechi automaton
/// via level rankings bounded by 2n with a breakpoint obligation set.
BooleanOmegaAutomaton nbw_complement(const BooleanOmegaAutomaton& b);

/// Language-equal deterministic coBuechi automaton via the breakpoint
/// subset construction (at most 3^n reachable states).
BooleanOmegaAutomaton ncw_determinize(const BooleanOmegaAutomaton& b);

/// Language-equal deterministic LimInf automaton: one determinized
/// coBuechi threshold automaton per weight, run in product; the weight
/// of a joint step is the largest threshold whose chain of components
/// all took accepting steps.
WeightedAutomaton nlinf_determinize(const WeightedAutomaton& a);

/// Accepting lasso of the automaton, when any.
std::optional<LassoWord> accepting_witness(const BooleanOmegaAutomaton& b);

/// True iff the automaton accepts no word.
bool nbw_emptiness(const BooleanOmegaAutomaton& b);

/// True iff the automaton accepts u.v^omega.
bool lasso_membership(const BooleanOmegaAutomaton& b, const LassoWord& w);

}  // namespace quala
