#include "quala/words.hpp"

#include <algorithm>

#include "quala/errors.hpp"

namespace quala {

std::string FiniteWord::str() const {
    std::string out;
    for (size_t i = 0; i < symbols.size(); ++i) {
        if (i) out += ' ';
        out += symbols[i];
    }
    return out;
}

std::string LassoWord::str() const {
    std::string out;
    for (const auto& s : prefix) out += s + ' ';
    out += "(";
    for (const auto& s : period) out += ' ' + s;
    out += " )";
    return out;
}

namespace {

struct Token {
    std::string text;
    long position;
};

std::vector<Token> tokenize(const std::string& text) {
    std::vector<Token> tokens;
    std::string current;
    long start = -1;
    auto flush = [&] {
        if (!current.empty()) {
            tokens.push_back({current, start});
            current.clear();
            start = -1;
        }
    };
    for (size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
            flush();
        } else if (c == '(' || c == ')') {
            flush();
            tokens.push_back({std::string(1, c), static_cast<long>(i)});
        } else {
            if (current.empty()) start = static_cast<long>(i);
            current += c;
        }
    }
    flush();
    return tokens;
}

}  // namespace

Word parse_word(const std::string& text) {
    auto tokens = tokenize(text);
    if (tokens.empty()) throw SyntaxError("empty word", 0);

    std::vector<Symbol> prefix;
    size_t i = 0;
    while (i < tokens.size() && tokens[i].text != "(" && tokens[i].text != ")") {
        prefix.push_back(tokens[i].text);
        ++i;
    }
    if (i == tokens.size()) return FiniteWord{std::move(prefix)};
    if (tokens[i].text == ")")
        throw SyntaxError("')' without matching '('", tokens[i].position);

    // lasso: "(" sym+ ")"
    ++i;
    std::vector<Symbol> period;
    while (i < tokens.size() && tokens[i].text != ")") {
        if (tokens[i].text == "(")
            throw SyntaxError("nested '('", tokens[i].position);
        period.push_back(tokens[i].text);
        ++i;
    }
    if (i == tokens.size())
        throw SyntaxError("unterminated period, expected ')'",
                          static_cast<long>(text.size()));
    if (period.empty()) throw SyntaxError("empty period", tokens[i].position);
    if (i + 1 != tokens.size())
        throw SyntaxError("trailing input after ')'", tokens[i + 1].position);
    return LassoWord{std::move(prefix), std::move(period)};
}

LassoWord normalize_lasso(const LassoWord& w) {
    LassoWord out = w;
    // Reduce the period to its primitive root.
    size_t n = out.period.size();
    for (size_t p = 1; p <= n / 2; ++p) {
        if (n % p != 0) continue;
        bool periodic = true;
        for (size_t i = p; i < n && periodic; ++i)
            periodic = out.period[i] == out.period[i % p];
        if (periodic) {
            out.period.resize(p);
            break;
        }
    }
    // Roll trailing prefix symbols that match the rotated period:
    // u's (v s)^omega == u (s v')^omega when s is the last symbol of both.
    while (!out.prefix.empty() && out.prefix.back() == out.period.back()) {
        out.prefix.pop_back();
        std::rotate(out.period.begin(), out.period.end() - 1, out.period.end());
    }
    return out;
}

FiniteWord unroll(const LassoWord& w, size_t n) {
    if (n < 1) throw WrongArity("unroll requires n >= 1");
    std::vector<Symbol> symbols;
    symbols.reserve(n);
    for (size_t i = 0; i < n; ++i) {
        if (i < w.prefix.size())
            symbols.push_back(w.prefix[i]);
        else
            symbols.push_back(w.period[(i - w.prefix.size()) % w.period.size()]);
    }
    return FiniteWord{std::move(symbols)};
}

bool same_omega_word(const LassoWord& a, const LassoWord& b) {
    return normalize_lasso(a) == normalize_lasso(b);
}

LassoWord sample_lasso(const std::vector<Symbol>& alphabet, SplitMix64& rng,
                       size_t max_prefix, size_t max_period) {
    LassoWord w;
    size_t plen = rng.below(max_prefix + 1);
    size_t vlen = 1 + rng.below(max_period);
    for (size_t i = 0; i < plen; ++i)
        w.prefix.push_back(alphabet[rng.below(alphabet.size())]);
    for (size_t i = 0; i < vlen; ++i)
        w.period.push_back(alphabet[rng.below(alphabet.size())]);
    return w;
}

}  // namespace quala
