#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace quala {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A requested composition is provably impossible for the class of the
/// inputs.  Carries the operation, the class it was attempted on, and a
/// short explanation (typically the witness language that separates the
/// class from the requested result).
struct ClosureError : Error {
    std::string operation;
    std::string automaton_class;
    std::string explanation;

    ClosureError(std::string op, std::string cls, std::string why)
        : Error(cls + " is not closed under " + op + ": " + why),
          operation(std::move(op)),
          automaton_class(std::move(cls)),
          explanation(std::move(why)) {}
};

struct TagMismatch : Error {
    using Error::Error;
};

struct AlphabetMismatch : Error {
    using Error::Error;
};

struct LambdaMismatch : Error {
    using Error::Error;
};

/// Word / rational / document syntax error, with a character position
/// where that makes sense (-1 otherwise).
struct SyntaxError : Error {
    long position;
    SyntaxError(const std::string& what, long pos = -1)
        : Error(pos >= 0 ? what + " (at position " + std::to_string(pos) + ")" : what),
          position(pos) {}
};

struct WrongArity : Error {
    using Error::Error;
};

struct MissingLambda : Error {
    using Error::Error;
};

struct NegativeScale : Error {
    using Error::Error;
};

struct WeightOutOfRange : Error {
    using Error::Error;
};

struct UnsupportedTag : Error {
    using Error::Error;
};

struct NotIsolated : Error {
    using Error::Error;
};

struct EpsNotPositive : Error {
    using Error::Error;
};

struct DeadEnd : Error {
    using Error::Error;
};

struct Acyclic : Error {
    using Error::Error;
};

struct TooLarge : Error {
    using Error::Error;
};

/// An automaton that is not total was handed to an operation that
/// requires totality.  Carries the missing (state, symbol) pairs.
struct NotTotal : Error {
    std::vector<std::pair<std::string, std::string>> missing;
    NotTotal(const std::string& what,
             std::vector<std::pair<std::string, std::string>> pairs)
        : Error(what), missing(std::move(pairs)) {}
};

}  // namespace quala
