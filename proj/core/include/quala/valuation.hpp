#pragma once

#include <optional>
#include <vector>

#include "quala/automaton.hpp"
#include "quala/graph.hpp"
#include "quala/words.hpp"

namespace quala {

/// Value of a finite weight sequence under a finite-word value function
/// (Max, Last, Sum).  Throws WrongArity for infinite-word functions.
Rational value_finite(const ValueFunctionTag& tag,
                      const std::vector<Rational>& weights);

/// Exact value of the infinite weight sequence prefix.period^omega
/// under an infinite-word value function:
///   Sup     max over all weights,
///   LimSup  max of the period weights,
///   LimInf  min of the period weights,
///   LimAvg  mean of the period weights,
///   Disc    sum_{i<|u|} l^i u_i + l^{|u|} (sum_j l^j v_j) / (1-l^{|v|}).
/// Throws WrongArity for finite-word functions and MissingLambda when
/// Disc is requested without a discount factor.
Rational value_lasso(ValueFunction kind, const std::vector<Rational>& prefix,
                     const std::vector<Rational>& period,
                     const std::optional<Rational>& lambda = {});
Rational value_lasso(const ValueFunctionTag& tag,
                     const std::vector<Rational>& prefix,
                     const std::vector<Rational>& period);

/// Graph of the automaton itself: one node per state, one edge per
/// transition (edge tag = transition index, label = symbol).
Graph automaton_graph(const WeightedAutomaton& a);

/// Synchronized product of the automaton with a lasso word: nodes are
/// (state, position) pairs for positions 0..|u|+|v|-1 with wrap-around
/// from the last position to |u|.  Only the part reachable from
/// (initial, 0) is built; node 0 is the initial node.
Graph product_graph(const WeightedAutomaton& a, const LassoWord& w);

/// L_a(w) = sup over runs of the value of the run, for finite words.
Rational evaluate_finite(const WeightedAutomaton& a, const FiniteWord& w);

/// L_a(w) = sup over runs of the value of the run, for lasso words.
/// Exact for all five infinite-word value functions.
Rational evaluate_lasso(const WeightedAutomaton& a, const LassoWord& w);

struct TopValue {
    Rational value;
    LassoWord witness;  // evaluate_lasso(a, witness) == value
};

/// sup over all infinite words of L_a, with a lasso witness attaining it.
TopValue top_value(const WeightedAutomaton& a);

}  // namespace quala
