#pragma once

#include <string>
#include <variant>
#include <vector>

#include "quala/prng.hpp"

namespace quala {

using Symbol = std::string;

/// Nonempty finite word.
struct FiniteWord {
    std::vector<Symbol> symbols;

    bool operator==(const FiniteWord&) const = default;
    std::string str() const;
};

/// Ultimately periodic infinite word u.v^omega; the period is nonempty.
struct LassoWord {
    std::vector<Symbol> prefix;
    std::vector<Symbol> period;

    bool operator==(const LassoWord&) const = default;
    std::string str() const;
    size_t positions() const { return prefix.size() + period.size(); }
};

using Word = std::variant<FiniteWord, LassoWord>;

/// Parses the textual word grammar shared with the CLI:
///   sym+              finite word
///   sym* "(" sym+ ")" lasso word u.v^omega
/// Symbols are whitespace-separated; parentheses may be glued to
/// symbols.  Throws SyntaxError with a character position.
Word parse_word(const std::string& text);

/// Canonical representative of the same infinite word: the period is
/// reduced to its primitive root and trailing prefix symbols matching
/// the rotated period are rolled into it.  Equal infinite words map to
/// equal representatives.
LassoWord normalize_lasso(const LassoWord& w);

/// First n symbols of u.v^omega, n >= 1.
FiniteWord unroll(const LassoWord& w, size_t n);

/// True iff the two lassos denote the same infinite word.
bool same_omega_word(const LassoWord& a, const LassoWord& b);

/// Uniformly random lasso with |u| <= max_prefix, 1 <= |v| <= max_period.
LassoWord sample_lasso(const std::vector<Symbol>& alphabet, SplitMix64& rng,
                       size_t max_prefix = 4, size_t max_period = 4);

}  // namespace quala
