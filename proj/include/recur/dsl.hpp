#pragma once

#include "recur/sequence.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace recur {

// Text form of a recurrence, e.g.
//
//     # Fibonacci
//     seq F: F(n)=F(n-1)+F(n-2); F(1)=1; F(2)=1
//
// Terms are `[±][int*]NAME(n-k)` with distinct lags k >= 1; the order is the
// largest lag and exactly that many seeds must follow at consecutive indices.
struct SpecSource {
    std::string text;
    std::string origin = "<inline>";
};

class ParseError : public std::runtime_error {
public:
    ParseError(std::string origin, int line, int column, const std::string& message);

    const std::string& origin() const { return origin_; }
    int line() const { return line_; }
    int column() const { return column_; }
    const std::string& message() const { return message_; }

private:
    std::string origin_;
    int line_;
    int column_;
    std::string message_;
};

/// Exactly one `seq` statement.
SequenceSpec parse(const SpecSource& source);

/// Every `seq` statement in order.
std::vector<SequenceSpec> parse_all(const SpecSource& source);

SpecSource read_source(const std::filesystem::path& path);

/// Canonical text; parse(format(s)) == s for every valid integer-mode spec.
std::string format(const SequenceSpec& spec);

} // namespace recur
