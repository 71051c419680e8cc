#pragma once

#include <string>

#include <json.hpp>

#include "quala/automaton.hpp"
#include "quala/omega.hpp"

namespace quala {

using Json = nlohmann::ordered_json;

// Document schema (JSON):
//   name         optional string
//   type         max|last|sum|sup|limsup|liminf|limavg|disc|buchi|cobuchi
//   lambda       "p/q", present exactly when type == "disc"
//   alphabet     list of symbols
//   states       list of state names
//   initial      state name
//   transitions  list of {from, symbol, to, weight:"p/q"} for weighted
//                types, {from, symbol, to, accepting:bool} for boolean
// Weights and all other rationals serialize as exact "p/q" strings.

struct AutomatonDocument {
    std::string name;
    Json payload;
};

/// Parses a weighted-automaton document.  Throws SyntaxError on shape
/// problems; the automaton itself is validated by its constructor.
/// Callers that need totality check it separately (require_total).
WeightedAutomaton parse_automaton(const Json& doc);
WeightedAutomaton parse_automaton_text(const std::string& text);

/// Emits a weighted automaton; the result re-parses to an isomorphic
/// automaton (identical names and weights).
Json emit_automaton(const WeightedAutomaton& a, const std::string& name);

/// Boolean (buchi / cobuchi) documents.
BooleanOmegaAutomaton parse_boolean_automaton(const Json& doc);
Json emit_boolean_automaton(const BooleanOmegaAutomaton& a, const std::string& name);

/// True iff the document's "type" is "buchi" or "cobuchi".
bool is_boolean_document(const Json& doc);

/// Reads and parses a file; file errors and JSON errors become
/// SyntaxError.
Json load_json_file(const std::string& path);

}  // namespace quala
