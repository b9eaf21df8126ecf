#include "recur/sequence.hpp"

#include <algorithm>
#include <bit>
#include <utility>

namespace recur {

void validate(const SequenceSpec& spec) {
    if (spec.coeffs.empty())
        throw InvalidSpec("sequence '" + spec.name + "': order must be at least 1");
    if (spec.seeds.size() != spec.coeffs.size())
        throw InvalidSpec("sequence '" + spec.name + "': expected " +
                          std::to_string(spec.coeffs.size()) + " seeds, got " +
                          std::to_string(spec.seeds.size()));
    if (spec.coeffs.back() == 0)
        throw InvalidSpec("sequence '" + spec.name + "': trailing coefficient is zero");
}

SequenceSpec fibonacci_spec() { return {"F", {1, 1}, {1, 1}, 1, false}; }
SequenceSpec lucas_spec() { return {"L", {1, 1}, {2, 1}, 0, false}; }
SequenceSpec tribonacci_spec() { return {"T", {1, 1, 1}, {0, 0, 1}, 0, false}; }

namespace {

// (F(n), F(n+1))
std::pair<Integer, Integer> fib_pair(Index n) {
    Integer a = 0, b = 1;
    if (n == 0)
        return {a, b};
    auto bits = std::bit_width(static_cast<std::uint64_t>(n));
    Integer c, d;
    for (int i = static_cast<int>(bits) - 1; i >= 0; --i) {
        c = a * (2 * b - a);
        d = a * a + b * b;
        if ((static_cast<std::uint64_t>(n) >> i) & 1U) {
            a = d;
            b = c + d;
        } else {
            a = c;
            b = d;
        }
    }
    return {a, b};
}

} // namespace

Integer fib(Index n) {
    if (n < 0)
        throw DomainError("fib: negative index " + std::to_string(n));
    return fib_pair(n).first;
}

Integer lucas(Index n) {
    if (n < 0)
        throw DomainError("lucas: negative index " + std::to_string(n));
    // L(n) = F(n-1) + F(n+1) = 2F(n+1) - F(n)
    auto [f, f1] = fib_pair(n);
    return 2 * f1 - f;
}

bool backward_invertible(const SequenceSpec& spec) {
    if (spec.rational_mode)
        return true;
    return abs(spec.coeffs.back()) == 1;
}

namespace {

// Forward iteration: values at seed_start .. hi, hi >= seed_end - 1.
std::vector<Integer> forward_window(const SequenceSpec& spec, Index hi) {
    const std::size_t d = spec.order();
    std::vector<Integer> out(spec.seeds.begin(), spec.seeds.end());
    const Index count = hi - spec.seed_start + 1;
    out.reserve(static_cast<std::size_t>(std::max<Index>(count, 0)));
    while (static_cast<Index>(out.size()) < count) {
        Integer next = 0;
        const std::size_t m = out.size();
        for (std::size_t i = 0; i < d; ++i)
            next += spec.coeffs[i] * out[m - 1 - i];
        out.push_back(std::move(next));
    }
    return out;
}

// Exact values at lo .. seed_start-1 (lo < seed_start), in increasing index order.
std::vector<Rational> backward_window(const SequenceSpec& spec, Index lo) {
    const std::size_t d = spec.order();
    // window[0] is the lowest index reached so far
    std::vector<Rational> window;
    window.reserve(d);
    for (const auto& s : spec.seeds)
        window.emplace_back(s);

    const Rational lead(spec.coeffs.back());
    std::vector<Rational> below;
    for (Index j = spec.seed_start - 1; j >= lo; --j) {
        // U(j+d) = sum_{i=1}^{d-1} c_i U(j+d-i) + c_d U(j)
        Rational rest = window[d - 1];
        for (std::size_t i = 1; i < d; ++i)
            rest -= Rational(spec.coeffs[i - 1]) * window[d - 1 - i];
        Rational value = rest / lead;
        value.canonicalize();
        window.pop_back();
        window.insert(window.begin(), value);
        below.push_back(std::move(value));
    }
    std::reverse(below.begin(), below.end());
    return below;
}

void require_invertible(const SequenceSpec& spec) {
    if (!backward_invertible(spec))
        throw NonInvertibleStep("sequence '" + spec.name + "': backward step divides by c_d = " +
                                to_decimal(spec.coeffs.back()) +
                                "; enable rational mode to extend below index " +
                                std::to_string(spec.seed_start));
}

Integer to_integer(const Rational& q, const SequenceSpec& spec, Index n) {
    if (!is_integral(q))
        throw NonInvertibleStep("sequence '" + spec.name + "': value at index " +
                                std::to_string(n) + " is not an integer (" + to_decimal(q) + ")");
    return q.get_num();
}

} // namespace

Rational extend_backward_exact(const SequenceSpec& spec, Index n) {
    validate(spec);
    if (n >= spec.seed_start)
        throw DomainError("extend_backward: index " + std::to_string(n) +
                          " is not below the seed window");
    require_invertible(spec);
    return backward_window(spec, n).front();
}

Integer extend_backward(const SequenceSpec& spec, Index n) {
    return to_integer(extend_backward_exact(spec, n), spec, n);
}

Rational eval_exact(const SequenceSpec& spec, Index n) {
    if (n < spec.seed_start)
        return extend_backward_exact(spec, n);
    return Rational(eval_term(spec, n, Backward::Forbid));
}

Integer eval_term(const SequenceSpec& spec, Index n, Backward mode) {
    validate(spec);
    if (n < spec.seed_start) {
        if (mode == Backward::Forbid)
            throw DomainError("sequence '" + spec.name + "': index " + std::to_string(n) +
                              " is below the seed window starting at " +
                              std::to_string(spec.seed_start));
        return extend_backward(spec, n);
    }
    if (n < spec.seed_end())
        return spec.seeds[static_cast<std::size_t>(n - spec.seed_start)];
    return forward_window(spec, n).back();
}

std::vector<Integer> eval_range(const SequenceSpec& spec, Index lo, Index hi, Backward mode) {
    validate(spec);
    if (lo > hi)
        throw DomainError("eval_range: empty range " + std::to_string(lo) + ".." +
                          std::to_string(hi));
    std::vector<Integer> out;
    out.reserve(static_cast<std::size_t>(hi - lo + 1));
    if (lo < spec.seed_start) {
        if (mode == Backward::Forbid)
            throw DomainError("sequence '" + spec.name + "': index " + std::to_string(lo) +
                              " is below the seed window starting at " +
                              std::to_string(spec.seed_start));
        require_invertible(spec);
        auto below = backward_window(spec, lo);
        const Index upto = std::min(hi, spec.seed_start - 1);
        for (Index j = lo; j <= upto; ++j)
            out.push_back(to_integer(below[static_cast<std::size_t>(j - lo)], spec, j));
    }
    if (hi >= spec.seed_start) {
        auto fwd = forward_window(spec, std::max(hi, spec.seed_end() - 1));
        for (Index j = std::max(lo, spec.seed_start); j <= hi; ++j)
            out.push_back(std::move(fwd[static_cast<std::size_t>(j - spec.seed_start)]));
    }
    return out;
}

} // namespace recur
