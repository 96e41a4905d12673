#pragma once

#include <stdexcept>
#include <string>

namespace minebench {

// Base class for all toolkit errors. Subclasses exist so callers can react
// to individual contract violations instead of string-matching messages.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class InvalidParams : public Error {
public:
    using Error::Error;
};

// A rule condition references an attribute index beyond the profile length.
class AttributeOutOfRange : public Error {
public:
    using Error::Error;
};

// Two conditions bind the same attribute to different values.
class ConflictingConditions : public Error {
public:
    using Error::Error;
};

// A deny rule was handed to the permit-only evaluator.
class DenyRuleUnderPermitOnly : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class EmptyMatrix : public Error {
public:
    using Error::Error;
};

// Rule sampling could not produce the requested number of distinct rules.
class GenerationExhausted : public Error {
public:
    using Error::Error;
};

// The density (or exact ones-count) target was not hit within the attempt budget.
class DensityUnreachable : public Error {
public:
    using Error::Error;
};

class NoRulesFound : public Error {
public:
    using Error::Error;
};

class MalformedRule : public Error {
public:
    MalformedRule(int line, const std::string& msg)
        : Error("line " + std::to_string(line) + ": " + msg), line_number(line) {}
    int line_number;
};

// Attribute name disagrees with its value token (e.g. ('SA_1', 'O_1_2')).
class KindMismatch : public Error {
public:
    using Error::Error;
};

class IncompatibleInputMethod : public Error {
public:
    using Error::Error;
};

class NoPermits : public Error {
public:
    using Error::Error;
};

class BudgetExceeded : public Error {
public:
    using Error::Error;
};

class ScaleExceeded : public Error {
public:
    using Error::Error;
};

class InvalidCounts : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

class TransportError : public Error {
public:
    using Error::Error;
};

} // namespace minebench
