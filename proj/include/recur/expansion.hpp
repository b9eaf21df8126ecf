#pragma once

#include "recur/sequence.hpp"

#include <map>
#include <span>
#include <vector>

namespace recur {

/// U(n) = sum over (shift k -> coefficient c) of c * U(n-k).
/// Zero coefficients are never stored.
struct LinearForm {
    std::map<Index, Integer> terms;
    SequenceSpec spec;

    bool empty() const { return terms.empty(); }
    Index min_shift() const { return terms.begin()->first; }
    Index max_shift() const { return terms.rbegin()->first; }

    friend bool operator==(const LinearForm&, const LinearForm&) = default;
};

/// Summed expansions E(1) + ... + E(n-1):
///
///     (n-1) U(n) = sum_{k=1}^{n-1} weights[k-1] U(n-k) + sum_{k>=n} residual[k] U(n-k)
struct CollectedWeights {
    Index n = 0;
    std::vector<Integer> weights;      // a_1 .. a_{n-1}
    std::map<Index, Integer> residual; // shift k >= n -> coefficient

    const Integer& weight(Index k) const { return weights.at(static_cast<std::size_t>(k - 1)); }

    friend bool operator==(const CollectedWeights&, const CollectedWeights&) = default;
};

/// E(1): the recurrence itself.
LinearForm initial_form(const SequenceSpec& spec);

/// Replace the minimal-shift term by its recurrence expansion.
LinearForm substitute_min_shift(const LinearForm& form);

/// E(r), r >= 1.
LinearForm expansion(const SequenceSpec& spec, Index r);

/// Coefficient-wise sum of E(1) .. E(n-1), n >= 2.
CollectedWeights sum_expansions(const SequenceSpec& spec, Index n);

/// Right-hand side of the form at index n, evaluated exactly (backward
/// extension included).
Rational evaluate_form(const LinearForm& form, Index n);

/// True iff the form reproduces U(n) at every test index.  Throws when an
/// index cannot be evaluated.
bool validate_form(const LinearForm& form, std::span<const Index> test_indices);

/// Both sides of the collected identity, evaluated by direct evaluation of
/// the sequence.  first = (n-1) U(n), second = weighted sum + residual.
std::pair<Rational, Rational> collected_sides(const SequenceSpec& spec, const CollectedWeights& w);

bool collected_holds(const SequenceSpec& spec, const CollectedWeights& w);

} // namespace recur
