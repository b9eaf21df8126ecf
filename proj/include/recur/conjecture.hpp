#pragma once

#include "recur/expansion.hpp"
#include "recur/identity.hpp"
#include "recur/sequence.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace recur {

/// x(i) = coeffs[0] x(i-1) + ... + coeffs[r-1] x(i-r), exact rationals.
struct Recurrence {
    std::vector<Rational> coeffs;

    std::size_t order() const { return coeffs.size(); }
    friend bool operator==(const Recurrence&, const Recurrence&) = default;
};

/// A sequence given by a recurrence and its first `order` values, starting
/// at index `start`.
struct RecurrentSequence {
    Recurrence rule;
    Index start = 0;
    std::vector<Rational> seeds;

    /// Values at start .. hi.
    std::vector<Rational> values_to(Index hi) const;
};

/// Coefficient of U(-offset) in the identity at n, as a sequence in n.
struct ResidualTerm {
    Index offset = 0;
    RecurrentSequence coefficient;
};

enum class ConjectureStatus { Verified, Refuted, Undetermined };

const char* to_string(ConjectureStatus s);

/// (n-1) U(n) = sum_{k=1}^{n-1} a(k) U(n-k) + sum_o r_o(n) U(-o)
struct ConjecturedIdentity {
    SequenceSpec spec;
    RecurrentSequence weights; // a(k), start = 1
    std::vector<ResidualTerm> residual;
    Index verified_lo = 0;
    Index verified_hi = 0;
    ConjectureStatus status = ConjectureStatus::Undetermined;
    std::optional<Counterexample> counterexample;
    std::string note;
};

constexpr std::size_t kDefaultMaxOrder = 8;

/// sum_expansions with every residual term checked to be evaluable against
/// backward-extended values.
CollectedWeights collect_general(const SequenceSpec& spec, Index n);

/// Least order r <= max_order whose exact recurrence fits every position
/// of `values`; nullopt if none fits.  Requires values.size() >= 2*max_order + 1.
std::optional<Recurrence> detect_min_recurrence(std::span<const Integer> values,
                                                std::size_t max_order);

/// Probe, detect, characterise the residual, then brute-force verify over
/// 2..verify_hi.  Detection failure yields Undetermined.
ConjecturedIdentity conjecture(const SequenceSpec& spec, Index probe_n, Index verify_hi,
                               std::size_t max_order = kDefaultMaxOrder);

/// Checks the identity at lo..hi from sequence values and the stated weight
/// and residual recurrences alone; the expansion engine is not consulted.
IdentityReport verify_conjecture(const ConjecturedIdentity& conj, Index lo, Index hi);

/// (n-1) U(n) - sum_{k=1}^{n-1} a(k) U(n-k), with a(k) taken from `weights`.
Rational identity_residual(const SequenceSpec& spec, std::span<const Integer> weights, Index n);

} // namespace recur
