#pragma once

#include <vector>

#include "quala/automaton.hpp"
#include "quala/graph.hpp"
#include "quala/valuation.hpp"
#include "quala/words.hpp"

namespace quala::oracle {

/// One explicit run over a finite word.
struct Run {
    std::vector<State> states;      // |w|+1 states
    std::vector<Rational> weights;  // |w| weights
};

/// All runs of the automaton over w (cap 10^6, throws TooLarge).
std::vector<Run> enumerate_runs(const WeightedAutomaton& a, const FiniteWord& w);

/// Max over all enumerated runs of the finite value function; shares no
/// search machinery with evaluate_finite.
Rational brute_value_finite(const WeightedAutomaton& a, const FiniteWord& w);

/// Max over all product lassos (simple path + simple cycle in the
/// automaton x word product) of the lasso value of the induced weight
/// sequence.  Memoryless optima make these shapes sufficient, so this
/// equals evaluate_lasso exactly, for all five value functions.
/// Product capped at 200 nodes and 2*10^6 enumerated shapes.
Rational brute_value_lasso(const WeightedAutomaton& a, const LassoWord& w);

struct SimpleCycle {
    std::vector<int> edges;  // edge ids, cycle order
    Rational mean;
};

/// All simple cycles of the graph with their exact means (<= 12 nodes).
std::vector<SimpleCycle> enumerate_simple_cycles(const Graph& g);

}  // namespace quala::oracle
