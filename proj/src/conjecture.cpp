#include "recur/conjecture.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace recur {

const char* to_string(ConjectureStatus s) {
    switch (s) {
    case ConjectureStatus::Verified:
        return "verified";
    case ConjectureStatus::Refuted:
        return "refuted";
    case ConjectureStatus::Undetermined:
        return "undetermined";
    }
    return "undetermined";
}

std::vector<Rational> RecurrentSequence::values_to(Index hi) const {
    std::vector<Rational> out(seeds.begin(), seeds.end());
    const Index count = hi - start + 1;
    if (count <= static_cast<Index>(out.size())) {
        out.resize(static_cast<std::size_t>(std::max<Index>(count, 0)));
        return out;
    }
    const std::size_t r = rule.order();
    while (static_cast<Index>(out.size()) < count) {
        Rational next = 0;
        const std::size_t m = out.size();
        for (std::size_t i = 0; i < r; ++i)
            next += rule.coeffs[i] * out[m - 1 - i];
        out.push_back(std::move(next));
    }
    return out;
}

CollectedWeights collect_general(const SequenceSpec& spec, Index n) {
    CollectedWeights w = sum_expansions(spec, n);
    for (const auto& entry : w.residual) {
        const Index idx = n - entry.first;
        if (idx < spec.seed_start)
            (void)extend_backward_exact(spec, idx); // throws NonInvertibleStep
    }
    return w;
}

namespace {

// Solves sum_j c_j v[i-j] = v[i] for i = r..len-1 by Gauss-Jordan
// elimination.  Returns nullopt when the system is inconsistent.
std::optional<Recurrence> fit_order(std::span<const Integer> v, std::size_t r) {
    const std::size_t rows = v.size() - r;
    std::vector<std::vector<Rational>> m(rows, std::vector<Rational>(r + 1));
    for (std::size_t row = 0; row < rows; ++row) {
        const std::size_t i = row + r;
        for (std::size_t j = 0; j < r; ++j)
            m[row][j] = v[i - 1 - j];
        m[row][r] = v[i];
    }

    std::vector<std::size_t> pivot_cols;
    std::size_t pivot_row = 0;
    for (std::size_t col = 0; col < r && pivot_row < rows; ++col) {
        std::size_t sel = pivot_row;
        while (sel < rows && m[sel][col] == 0)
            ++sel;
        if (sel == rows)
            continue;
        std::swap(m[sel], m[pivot_row]);
        const Rational inv = 1 / m[pivot_row][col];
        for (auto& x : m[pivot_row])
            x *= inv;
        for (std::size_t other = 0; other < rows; ++other) {
            if (other == pivot_row || m[other][col] == 0)
                continue;
            const Rational f = m[other][col];
            for (std::size_t j = col; j <= r; ++j)
                m[other][j] -= f * m[pivot_row][j];
        }
        pivot_cols.push_back(col);
        ++pivot_row;
    }
    for (std::size_t row = pivot_row; row < rows; ++row)
        if (m[row][r] != 0)
            return std::nullopt;

    // free variables are zero
    Recurrence rec;
    rec.coeffs.assign(r, Rational(0));
    for (std::size_t p = 0; p < pivot_cols.size(); ++p) {
        rec.coeffs[pivot_cols[p]] = m[p][r];
        rec.coeffs[pivot_cols[p]].canonicalize();
    }
    return rec;
}

bool fits(std::span<const Integer> v, const Recurrence& rec) {
    const std::size_t r = rec.order();
    for (std::size_t i = r; i < v.size(); ++i) {
        Rational s = 0;
        for (std::size_t j = 0; j < r; ++j)
            s += rec.coeffs[j] * Rational(v[i - 1 - j]);
        if (s != Rational(v[i]))
            return false;
    }
    return true;
}

RecurrentSequence make_sequence(std::span<const Integer> values, Recurrence rule, Index start) {
    RecurrentSequence seq;
    seq.start = start;
    for (std::size_t i = 0; i < rule.order(); ++i)
        seq.seeds.emplace_back(values[i]);
    seq.rule = std::move(rule);
    return seq;
}

} // namespace

std::optional<Recurrence> detect_min_recurrence(std::span<const Integer> values,
                                                std::size_t max_order) {
    if (max_order == 0 || values.size() < 2 * max_order + 1)
        throw InsufficientData("detect_min_recurrence: need at least " +
                               std::to_string(2 * max_order + 1) + " values for max order " +
                               std::to_string(max_order) + ", got " +
                               std::to_string(values.size()));
    for (std::size_t r = 1; r <= max_order; ++r) {
        if (auto rec = fit_order(values, r); rec && fits(values, *rec))
            return rec;
    }
    return std::nullopt;
}

ConjecturedIdentity conjecture(const SequenceSpec& spec, Index probe_n, Index verify_hi,
                               std::size_t max_order) {
    validate(spec);
    if (probe_n - 1 < static_cast<Index>(2 * max_order + 1))
        throw InsufficientData("conjecture: probe n = " + std::to_string(probe_n) +
                               " gives fewer than " + std::to_string(2 * max_order + 1) +
                               " weights");
    if (verify_hi < 2)
        throw DomainError("conjecture: verification bound must be >= 2");

    ConjecturedIdentity conj;
    conj.spec = spec;

    const CollectedWeights probe = collect_general(spec, probe_n);
    auto weight_rule = detect_min_recurrence(probe.weights, max_order);
    if (!weight_rule) {
        conj.note = "no weight recurrence of order <= " + std::to_string(max_order);
        return conj;
    }
    conj.weights = make_sequence(probe.weights, std::move(*weight_rule), 1);

    // Residual coefficient at shift n + offset, tracked as a sequence in n.
    std::vector<CollectedWeights> history;
    std::set<Index> offsets;
    for (Index n = 2; n <= probe_n; ++n) {
        history.push_back(n == probe_n ? probe : collect_general(spec, n));
        for (const auto& entry : history.back().residual)
            offsets.insert(entry.first - n);
    }
    for (Index offset : offsets) {
        std::vector<Integer> series;
        series.reserve(history.size());
        for (const auto& w : history) {
            auto it = w.residual.find(w.n + offset);
            series.push_back(it == w.residual.end() ? Integer(0) : it->second);
        }
        auto rule = detect_min_recurrence(series, max_order);
        if (!rule) {
            conj.note = "no recurrence of order <= " + std::to_string(max_order) +
                        " for the residual at offset " + std::to_string(offset);
            return conj;
        }
        conj.residual.push_back({offset, make_sequence(series, std::move(*rule), 2)});
    }

    const IdentityReport report = verify_conjecture(conj, 2, verify_hi);
    conj.verified_lo = 2;
    conj.verified_hi = verify_hi;
    if (report.passed()) {
        conj.status = ConjectureStatus::Verified;
        conj.note = "holds for 2 <= n <= " + std::to_string(verify_hi) + " (finite check)";
    } else {
        conj.status = ConjectureStatus::Refuted;
        conj.counterexample = report.first_failure;
        conj.note = "fails at n = " + std::to_string(report.first_failure->n);
    }
    return conj;
}

IdentityReport verify_conjecture(const ConjecturedIdentity& conj, Index lo, Index hi) {
    if (lo < 2 || lo > hi)
        throw DomainError("verify_conjecture: range must satisfy 2 <= lo <= hi");
    const auto start = std::chrono::steady_clock::now();
    IdentityReport report;
    report.lo = lo;
    report.hi = hi;

    Index max_offset = 0;
    for (const auto& term : conj.residual)
        max_offset = std::max(max_offset, term.offset);
    // U(j) for j in -max_offset .. hi
    const Index base = std::min<Index>(-max_offset, 0);
    std::vector<Rational> u;
    for (Index j = base; j <= hi; ++j)
        u.push_back(eval_exact(conj.spec, j));
    auto U = [&](Index j) -> const Rational& { return u[static_cast<std::size_t>(j - base)]; };

    const auto a = conj.weights.values_to(std::max<Index>(hi - 1, 1));
    std::vector<std::vector<Rational>> r;
    for (const auto& term : conj.residual)
        r.push_back(term.coefficient.values_to(hi));

    for (Index n = lo; n <= hi; ++n) {
        const Rational lhs = Rational(n - 1) * U(n);
        Rational rhs = 0;
        for (Index k = 1; k <= n - 1; ++k)
            rhs += a[static_cast<std::size_t>(k - 1)] * U(n - k);
        for (std::size_t t = 0; t < conj.residual.size(); ++t)
            rhs += r[t][static_cast<std::size_t>(n - 2)] * U(-conj.residual[t].offset);
        if (lhs != rhs) {
            report.first_failure = Counterexample{n, lhs, rhs};
            break;
        }
    }
    report.elapsed = std::chrono::steady_clock::now() - start;
    return report;
}

Rational identity_residual(const SequenceSpec& spec, std::span<const Integer> weights, Index n) {
    if (n < 2 || static_cast<Index>(weights.size()) < n - 1)
        throw DomainError("identity_residual: need n >= 2 and n - 1 weights");
    const Index lo = std::min<Index>(1, spec.seed_start);
    std::vector<Rational> u;
    for (Index j = lo; j <= n; ++j)
        u.push_back(eval_exact(spec, j));
    auto U = [&](Index j) -> const Rational& { return u[static_cast<std::size_t>(j - lo)]; };
    Rational out = Rational(n - 1) * U(n);
    for (Index k = 1; k <= n - 1; ++k)
        out -= Rational(weights[static_cast<std::size_t>(k - 1)]) * U(n - k);
    return out;
}

} // namespace recur
