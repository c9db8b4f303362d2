#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace multiway {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// A rule or state of one substrate was handed to an operation of another.
class SubstrateMismatch : public Error {
public:
    using Error::Error;
};

// Operation is defined only for some substrates (e.g. completion on hypergraphs).
class SubstrateUnsupported : public Error {
public:
    using Error::Error;
};

// Empty lhs would match everywhere; rejected up front.
class EmptyLhs : public Error {
public:
    using Error::Error;
};

// Term rule whose lhs is a single variable; it would match every subterm.
class BareVariableLhs : public Error {
public:
    using Error::Error;
};

// A match is replayed against a state it no longer fits.
class StaleMatch : public Error {
public:
    using Error::Error;
};

// Closure presets accept only unary and binary edges.
class ArityError : public Error {
public:
    using Error::Error;
};

// State key absent from a multiway graph store.
class KeyNotFound : public Error {
public:
    using Error::Error;
};

// Foliation requested on a graph with a directed cycle.
class CyclicGraph : public Error {
public:
    using Error::Error;
};

// Homotopy synthesis over paths of different lengths.
class LengthMismatch : public Error {
public:
    using Error::Error;
};

// Homotopy synthesis over paths with different endpoints.
class EndpointMismatch : public Error {
public:
    using Error::Error;
};

// Rule cannot be reversed (empty or bare-variable reverse lhs).
class NonInvertibleRule : public Error {
public:
    using Error::Error;
};

// Two events of one evolution claim the same produced token.
class DuplicateTokenProduction : public Error {
public:
    using Error::Error;
};

// Evolution exceeded the configured state cap.
class FrontierLimitExceeded : public Error {
public:
    explicit FrontierLimitExceeded(const std::string& msg, std::size_t generation)
        : Error(msg), generation(generation) {}
    std::size_t generation;
};

// Ordering cannot decide a pair it is asked to orient.
class Incomparable : public Error {
public:
    using Error::Error;
};

// Rule file syntax error with source position.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t line, std::size_t column)
        : Error("parse error at " + std::to_string(line) + ":" + std::to_string(column) +
                ": " + msg),
          line(line), column(column) {}
    std::size_t line;
    std::size_t column;
};

// Well-formed syntax with inconsistent meaning (undeclared symbol, arity clash, ...).
class SemanticError : public Error {
public:
    using Error::Error;
};

}  // namespace multiway
