#pragma once

#include "recur/errors.hpp"
#include "recur/integer.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace recur {

using Index = std::int64_t;

/// An order-d constant-coefficient linear recurrence
///
///     U(n) = c_1*U(n-1) + ... + c_d*U(n-d)
///
/// together with d consecutive seed values U(seed_start) .. U(seed_start+d-1).
/// `coeffs[i]` holds c_{i+1}.
struct SequenceSpec {
    std::string name;
    std::vector<Integer> coeffs;
    std::vector<Integer> seeds;
    Index seed_start = 0;
    // Allows backward steps through |c_d| != 1 using exact fractions.
    bool rational_mode = false;

    std::size_t order() const { return coeffs.size(); }
    Index seed_end() const { return seed_start + static_cast<Index>(seeds.size()); }

    friend bool operator==(const SequenceSpec&, const SequenceSpec&) = default;
};

/// Throws InvalidSpec unless the spec has d >= 1 coefficients, d seeds and c_d != 0.
void validate(const SequenceSpec& spec);

SequenceSpec fibonacci_spec();                 // F(1)=1, F(2)=1
SequenceSpec lucas_spec();                     // L(0)=2, L(1)=1
SequenceSpec tribonacci_spec();                // T(0)=0, T(1)=0, T(2)=1

/// Fast doubling, O(log n) multiplications. F(0) = 0.
Integer fib(Index n);
/// L(n) = F(n-1) + F(n+1), sharing one fast-doubling pass.
Integer lucas(Index n);

/// True when the spec can be stepped backward in the current mode.
bool backward_invertible(const SequenceSpec& spec);

enum class Backward { Allow, Forbid };

/// Value at index n by plain iteration from the seeds.  Indices below the
/// seed window are reached through extend_backward unless forbidden.
Integer eval_term(const SequenceSpec& spec, Index n, Backward mode = Backward::Allow);

/// Values at lo..hi inclusive.
std::vector<Integer> eval_range(const SequenceSpec& spec, Index lo, Index hi,
                                Backward mode = Backward::Allow);

/// Value at an index below the seed window, solving the recurrence for
/// U(n-d).  Needs |c_d| = 1 in integer mode; in rational mode the result
/// must still come out integral, otherwise use extend_backward_exact.
Integer extend_backward(const SequenceSpec& spec, Index n);

/// Same as extend_backward but returns the exact fraction.
Rational extend_backward_exact(const SequenceSpec& spec, Index n);

/// Exact value at any index, integral or not.
Rational eval_exact(const SequenceSpec& spec, Index n);

} // namespace recur
