#pragma once

#include <optional>
#include <vector>

#include "quala/automaton.hpp"
#include "quala/omega.hpp"
#include "quala/words.hpp"

namespace quala {

struct IsolationResult {
    enum class Verdict { Isolated, NotIsolated, Unknown };
    Verdict verdict;
    std::optional<Rational> margin;         // Isolated: distance to the value set
    std::optional<LassoWord> witness;       // NotIsolated
    std::optional<Rational> witness_value;  // NotIsolated
    int depth_reached = 0;                  // Unknown (probe hit its cap)
};

/// Boolean automaton carved out of a weighted one at threshold eta,
/// with the parameters that produced it.
struct CutpointAutomaton {
    BooleanOmegaAutomaton automaton;
    Rational eta;
    std::optional<Rational> eps;  // Disc route
    std::optional<int> depth;     // Disc route: unfolding depth
    std::string source_tag;
};

/// Language-equal LimAvg automaton with weights in {0, 1}: states are
/// (state, accumulated remainder of the fractional weight mass), a unit
/// is paid out whenever the remainder wraps past 1.  Requires weights
/// in [0, 1]; preserves determinism; output has exactly n * n_A states
/// where 1/n_A is the gcd of the weights.
WeightedAutomaton boolean_weight_reduction(const WeightedAutomaton& a);

/// Least n with every weight a multiple of 1/n (the n_A above).
BigInt boolean_reduction_granularity(const WeightedAutomaton& a);

/// Isolation check for deterministic LimAvg: eta is isolated iff it
/// avoids every reachable component's [min cycle mean, max cycle mean]
/// interval.  A NotIsolated verdict carries a lasso witness whose value
/// is exactly eta, built by mixing the extreme cycles.
IsolationResult isolation_check_dlavg(const WeightedAutomaton& a, const Rational& eta);

/// Deterministic Buechi automaton for {w : L_a(w) >= eta} when a is
/// deterministic LimAvg and eta is isolated: accept exactly the states
/// of components whose minimum cycle mean exceeds eta.  Throws
/// NotIsolated otherwise.
CutpointAutomaton cutpoint_dlavg(const WeightedAutomaton& a, const Rational& eta);

/// Buechi automaton for {w : L_a(w) >= eta} for a Disc automaton whose
/// cut-point eta is isolated with margin eps (caller-certified): the
/// automaton is unfolded to the least depth n with V*lambda^n/(1-lambda)
/// < eps, prefixes of value >= eta + eps - u_n accept with a universal
/// self-loop, and every other depth-n node rejects.
CutpointAutomaton cutpoint_ddisc(const WeightedAutomaton& a, const Rational& eta,
                                 const Rational& eps);

/// Semi-decision of isolation for Disc automata: deepens the unfolding
/// until either every depth-n prefix value clears the widened band
/// around eta (Isolated), a greedy completion lands within delta of eta
/// (NotIsolated, evaluated exactly), or the depth cap is hit (Unknown).
IsolationResult isolation_probe_disc(const WeightedAutomaton& a, const Rational& eta,
                                     const Rational& delta, int max_depth);

/// Guaranteed sup-distance bound between a and any eps-approximation of
/// it: eps for Sup/LimSup/LimInf/LimAvg, eps/(1-lambda) for Disc.
Rational dsup_bound(const ValueFunctionTag& tag, const Rational& eps);

/// Largest |L_a(w) - L_b(w)| over the sampled lassos (a lower bound on
/// the sup-distance).
Rational sampled_dsup(const WeightedAutomaton& a, const WeightedAutomaton& b,
                      const std::vector<LassoWord>& sample);

}  // namespace quala
