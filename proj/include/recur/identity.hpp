#pragma once

#include "recur/expansion.hpp"
#include "recur/sequence.hpp"

#include <chrono>
#include <optional>
#include <vector>

namespace recur {

/// Sequences plugged into S(n) = sum_{k=1}^{n-1} L(k) F(n-k).  Defaults are
/// the standard Fibonacci and Lucas numbers; swapping either in lets the
/// verifier be exercised against a deliberately broken input.
struct ConvolutionInputs {
    SequenceSpec fibonacci = fibonacci_spec();
    SequenceSpec lucas = lucas_spec();
};

struct Counterexample {
    Index n = 0;
    Rational lhs; // (n-1) U(n)
    Rational rhs; // weighted sum
};

struct IdentityReport {
    Index lo = 0;
    Index hi = 0;
    std::optional<Counterexample> first_failure;
    std::chrono::nanoseconds elapsed{0};

    bool passed() const { return !first_failure.has_value(); }
};

/// One checked index: both the multiplied and the division form.
struct IdentityRow {
    Index n = 0;
    Integer sum;        // S(n)
    Integer multiplied; // (n-1) F(n)
    bool divisible = false;
    Integer quotient;   // S(n) / (n-1), meaningful only when divisible
    bool passed = false;
};

/// S(n) by direct summation, n >= 2.
Integer convolution_sum(Index n);

/// Both forms at a single n, with F(n) from fast doubling.
IdentityReport check_identity(Index n);

/// Per-index rows for lo..hi.  F and L are tabulated once for the whole
/// range; `jobs` workers split the indices, output is independent of it.
std::vector<IdentityRow> identity_rows(Index lo, Index hi, const ConvolutionInputs& in = {},
                                       unsigned jobs = 1);

/// Aggregated check of lo..hi; first_failure is the least failing n.
IdentityReport check_range(Index lo, Index hi, const ConvolutionInputs& in = {},
                           unsigned jobs = 1);

/// S(m+1) = F(m) + S(m) + L(0) F(m-1) + S(m-1), and S(m+1) = m F(m+1).  m >= 3.
bool inductive_step_check(Index m);

/// sum_{k=2}^{m} L(k) F(m+1-k) == sum_{j=1}^{m-1} L(j+1) F(m-j), both sides
/// summed independently.  m >= 2.
bool reindexing_holds(Index m);

/// weights[k-1] == L(k) for k = 1..n-1.
bool weights_are_lucas(const CollectedWeights& w);

} // namespace recur
