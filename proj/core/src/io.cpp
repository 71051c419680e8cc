#include "quala/io.hpp"

#include <fstream>

#include "quala/errors.hpp"

namespace quala {

namespace {

std::string require_string(const Json& doc, const char* key) {
    if (!doc.contains(key) || !doc[key].is_string())
        throw SyntaxError(std::string("document needs a string field '") + key + "'");
    return doc[key].get<std::string>();
}

std::vector<std::string> require_string_list(const Json& doc, const char* key) {
    if (!doc.contains(key) || !doc[key].is_array())
        throw SyntaxError(std::string("document needs a list field '") + key + "'");
    std::vector<std::string> out;
    for (const auto& item : doc[key]) {
        if (!item.is_string())
            throw SyntaxError(std::string("'") + key + "' must contain strings");
        out.push_back(item.get<std::string>());
    }
    return out;
}

const Json& require_transitions(const Json& doc) {
    if (!doc.contains("transitions") || !doc["transitions"].is_array())
        throw SyntaxError("document needs a list field 'transitions'");
    return doc["transitions"];
}

}  // namespace

bool is_boolean_document(const Json& doc) {
    if (!doc.contains("type") || !doc["type"].is_string()) return false;
    std::string type = doc["type"].get<std::string>();
    return type == "buchi" || type == "cobuchi";
}

WeightedAutomaton parse_automaton(const Json& doc) {
    std::string type = require_string(doc, "type");
    std::optional<Rational> lambda;
    if (doc.contains("lambda")) {
        if (!doc["lambda"].is_string())
            throw SyntaxError("'lambda' must be a \"p/q\" string");
        lambda = Rational::parse(doc["lambda"].get<std::string>());
    }
    ValueFunctionTag tag = ValueFunctionTag::from_name(type, lambda);

    std::vector<Transition> transitions;
    for (const auto& t : require_transitions(doc)) {
        if (!t.is_object() || !t.contains("weight") || !t["weight"].is_string())
            throw SyntaxError("each transition needs from/symbol/to and a "
                              "\"p/q\" weight");
        transitions.push_back({require_string(t, "from"), require_string(t, "symbol"),
                               require_string(t, "to"),
                               Rational::parse(t["weight"].get<std::string>())});
    }
    return {require_string_list(doc, "states"), require_string(doc, "initial"),
            require_string_list(doc, "alphabet"), std::move(transitions), tag};
}

WeightedAutomaton parse_automaton_text(const std::string& text) {
    Json doc = Json::parse(text, nullptr, false);
    if (doc.is_discarded()) throw SyntaxError("invalid JSON");
    return parse_automaton(doc);
}

Json emit_automaton(const WeightedAutomaton& a, const std::string& name) {
    Json doc;
    if (!name.empty()) doc["name"] = name;
    doc["type"] = a.tag().name();
    if (a.tag().lambda()) doc["lambda"] = a.tag().lambda()->str_pq();
    doc["alphabet"] = a.alphabet();
    doc["states"] = a.states();
    doc["initial"] = a.initial();
    Json trans = Json::array();
    for (const auto& t : a.transitions()) {
        Json item;
        item["from"] = t.from;
        item["symbol"] = t.symbol;
        item["to"] = t.to;
        item["weight"] = t.weight.str_pq();
        trans.push_back(std::move(item));
    }
    doc["transitions"] = std::move(trans);
    return doc;
}

BooleanOmegaAutomaton parse_boolean_automaton(const Json& doc) {
    std::string type = require_string(doc, "type");
    AcceptanceKind kind;
    if (type == "buchi")
        kind = AcceptanceKind::Buchi;
    else if (type == "cobuchi")
        kind = AcceptanceKind::CoBuchi;
    else
        throw SyntaxError("boolean document type must be buchi or cobuchi");

    std::vector<BooleanTransition> transitions;
    for (const auto& t : require_transitions(doc)) {
        if (!t.is_object() || !t.contains("accepting") || !t["accepting"].is_boolean())
            throw SyntaxError("each transition needs from/symbol/to and a "
                              "boolean 'accepting'");
        transitions.push_back({require_string(t, "from"), require_string(t, "symbol"),
                               require_string(t, "to"),
                               t["accepting"].get<bool>()});
    }
    return {require_string_list(doc, "states"), require_string(doc, "initial"),
            require_string_list(doc, "alphabet"), std::move(transitions), kind};
}

Json emit_boolean_automaton(const BooleanOmegaAutomaton& a, const std::string& name) {
    Json doc;
    if (!name.empty()) doc["name"] = name;
    doc["type"] = a.kind() == AcceptanceKind::Buchi ? "buchi" : "cobuchi";
    doc["alphabet"] = a.alphabet();
    doc["states"] = a.states();
    doc["initial"] = a.initial();
    Json trans = Json::array();
    for (const auto& t : a.transitions()) {
        Json item;
        item["from"] = t.from;
        item["symbol"] = t.symbol;
        item["to"] = t.to;
        item["accepting"] = t.accepting;
        trans.push_back(std::move(item));
    }
    doc["transitions"] = std::move(trans);
    return doc;
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SyntaxError("cannot open file '" + path + "'");
    Json doc = Json::parse(in, nullptr, false);
    if (doc.is_discarded()) throw SyntaxError("invalid JSON in '" + path + "'");
    return doc;
}

}  // namespace quala
