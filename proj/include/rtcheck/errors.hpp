#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace rtcheck {

// Malformed input or broken structural invariant (undeclared proposition,
// bad state id, nondeterministic automaton fed to an op that requires a CDTA, ...).
class StructuralError : public std::runtime_error {
public:
    explicit StructuralError(const std::string& what) : std::runtime_error(what) {}
};

// Requirement-file syntax error, carries a position.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, int line, int column)
        : std::runtime_error(what + " (line " + std::to_string(line) + ", column " +
                             std::to_string(column) + ")"),
          line(line),
          column(column) {}
    int line;
    int column;
};

// A configurable safety limit was hit (semantic-graph node count, product size).
class ResourceLimitError : public std::runtime_error {
public:
    ResourceLimitError(const std::string& what, std::int64_t count)
        : std::runtime_error(what), count(count) {}
    std::int64_t count;
};

}  // namespace rtcheck
