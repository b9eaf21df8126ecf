#include "recur/expansion.hpp"

#include <algorithm>
#include <string>

namespace recur {

namespace {

void add_term(std::map<Index, Integer>& terms, Index shift, const Integer& c) {
    if (c == 0)
        return;
    auto [it, inserted] = terms.try_emplace(shift, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0)
            terms.erase(it);
    }
}

// Table of exact values lo..hi.
class ValueTable {
public:
    ValueTable(const SequenceSpec& spec, Index lo, Index hi) : lo_(lo) {
        values_.reserve(static_cast<std::size_t>(hi - lo + 1));
        Index fwd_lo = lo;
        if (lo < spec.seed_start) {
            const Index upto = std::min(hi, spec.seed_start - 1);
            for (Index j = lo; j <= upto; ++j)
                values_.push_back(extend_backward_exact(spec, j));
            fwd_lo = upto + 1;
        }
        if (fwd_lo <= hi)
            for (auto& v : eval_range(spec, fwd_lo, hi, Backward::Forbid))
                values_.emplace_back(v);
    }

    const Rational& at(Index j) const { return values_.at(static_cast<std::size_t>(j - lo_)); }

private:
    Index lo_;
    std::vector<Rational> values_;
};

} // namespace

LinearForm initial_form(const SequenceSpec& spec) {
    validate(spec);
    LinearForm form{{}, spec};
    for (std::size_t i = 0; i < spec.order(); ++i)
        add_term(form.terms, static_cast<Index>(i + 1), spec.coeffs[i]);
    return form;
}

LinearForm substitute_min_shift(const LinearForm& form) {
    if (form.empty())
        throw DomainError("substitute_min_shift: empty form");
    LinearForm out = form;
    auto first = out.terms.begin();
    const Index k = first->first;
    const Integer c = first->second;
    out.terms.erase(first);
    for (std::size_t i = 0; i < form.spec.order(); ++i)
        add_term(out.terms, k + static_cast<Index>(i + 1), c * form.spec.coeffs[i]);
    return out;
}

LinearForm expansion(const SequenceSpec& spec, Index r) {
    if (r < 1)
        throw DomainError("expansion: depth must be >= 1, got " + std::to_string(r));
    LinearForm form = initial_form(spec);
    for (Index i = 1; i < r; ++i)
        form = substitute_min_shift(form);
    return form;
}

CollectedWeights sum_expansions(const SequenceSpec& spec, Index n) {
    if (n < 2)
        throw DomainError("sum_expansions: n must be >= 2, got " + std::to_string(n));
    CollectedWeights out;
    out.n = n;
    out.weights.assign(static_cast<std::size_t>(n - 1), Integer(0));

    // E(r) is advanced in place; each step touches d + 1 entries.
    LinearForm form = initial_form(spec);
    for (Index r = 1; r <= n - 1; ++r) {
        if (r > 1)
            form = substitute_min_shift(form);
        for (const auto& [k, c] : form.terms) {
            if (k < n)
                out.weights[static_cast<std::size_t>(k - 1)] += c;
            else
                add_term(out.residual, k, c);
        }
    }
    return out;
}

Rational evaluate_form(const LinearForm& form, Index n) {
    if (form.empty())
        return Rational(0);
    ValueTable table(form.spec, n - form.max_shift(), n - form.min_shift());
    Rational sum = 0;
    for (const auto& [k, c] : form.terms)
        sum += Rational(c) * table.at(n - k);
    return sum;
}

bool validate_form(const LinearForm& form, std::span<const Index> test_indices) {
    for (Index n : test_indices) {
        if (evaluate_form(form, n) != eval_exact(form.spec, n))
            return false;
    }
    return true;
}

std::pair<Rational, Rational> collected_sides(const SequenceSpec& spec, const CollectedWeights& w) {
    const Index n = w.n;
    const Index lowest = w.residual.empty() ? 1 : n - w.residual.rbegin()->first;
    ValueTable table(spec, std::min<Index>(lowest, 1), n);
    Rational rhs = 0;
    for (Index k = 1; k <= n - 1; ++k)
        rhs += Rational(w.weight(k)) * table.at(n - k);
    for (const auto& [k, c] : w.residual)
        rhs += Rational(c) * table.at(n - k);
    Rational lhs = Rational(n - 1) * table.at(n);
    return {lhs, rhs};
}

bool collected_holds(const SequenceSpec& spec, const CollectedWeights& w) {
    auto [lhs, rhs] = collected_sides(spec, w);
    return lhs == rhs;
}

} // namespace recur
