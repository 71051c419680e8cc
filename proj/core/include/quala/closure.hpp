#pragma once

#include "quala/automaton.hpp"

namespace quala {

// Closure constructions for quantitative languages.  Each operation
// builds an automaton for the composed language when the class of the
// inputs (value function + determinism) is closed under it, and throws
// ClosureError when it provably is not.  Binary operations require
// equal alphabets and tags (same lambda for Disc).

// -- finite words (Max / Last / Sum) --------------------------------

/// max(L_a, L_b).  Deterministic Max/Last: synchronized product with
/// per-transition max.  Nondeterministic Max/Last/Sum: initial choice.
/// Deterministic Sum: ClosureError.
WeightedAutomaton max_finite(const WeightedAutomaton& a, const WeightedAutomaton& b);

/// min(L_a, L_b).  Last: product with per-transition min; Max: running-
/// max tracking product; Sum (det or nondet): ClosureError.
WeightedAutomaton min_finite(const WeightedAutomaton& a, const WeightedAutomaton& b);

/// 1 - L_a.  Deterministic Last/Sum: negate weights, shift by 1;
/// nondeterministic Last: determinize first; Max and nondeterministic
/// Sum: ClosureError.
WeightedAutomaton complement_finite(const WeightedAutomaton& a);

/// L_a + L_b.  Last/Sum: product with summed weights; Max: running-max
/// tracking product.  Closed for every finite-word class.
WeightedAutomaton sum_finite(const WeightedAutomaton& a, const WeightedAutomaton& b);

// -- infinite words (Sup / LimSup / LimInf / LimAvg / Disc) ---------

/// max(L_a, L_b).  Nondeterministic: initial choice (any tag).
/// Deterministic Sup/LimSup: product with max weights; deterministic
/// LimInf: initial choice then determinization; deterministic
/// LimAvg/Disc: ClosureError.
WeightedAutomaton max_omega(const WeightedAutomaton& a, const WeightedAutomaton& b);

/// min(L_a, L_b).  Sup: running-max product with min combination;
/// LimInf: product with min weights; deterministic LimSup: watched-
/// threshold bit vector product; nondeterministic LimSup: guessed-
/// threshold product; LimAvg/Disc: ClosureError.
WeightedAutomaton min_omega(const WeightedAutomaton& a, const WeightedAutomaton& b);

/// 1 - L_a.  Deterministic Disc: weight map v -> 1-lambda-v.
/// Nondeterministic LimSup: per-threshold Buechi complementation and
/// reweighting, combined by initial choice.  Every other class:
/// ClosureError.
WeightedAutomaton complement_omega(const WeightedAutomaton& a);

/// L_a + L_b.  Sup: running-max product with summed combination;
/// nondeterministic LimSup: guessed weight pair with alternation bit;
/// deterministic LimSup: per-pair bit function product; LimInf: guessed
/// pair construction, determinized when both inputs are deterministic;
/// Disc: product with summed weights; LimAvg: ClosureError.
WeightedAutomaton sum_omega(const WeightedAutomaton& a, const WeightedAutomaton& b);

}  // namespace quala
