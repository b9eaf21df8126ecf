#include "recur/identity.hpp"

#include <algorithm>
#include <string>
#include <thread>

namespace recur {

namespace {

void require_n(Index n, const char* what) {
    if (n < 2)
        throw DomainError(std::string(what) + ": n must be >= 2, got " + std::to_string(n));
}

// Dense tables F(0..hi), L(0..hi).
struct Tables {
    std::vector<Integer> f;
    std::vector<Integer> l;

    Tables(const ConvolutionInputs& in, Index hi)
        : f(eval_range(in.fibonacci, 0, hi)), l(eval_range(in.lucas, 0, hi)) {}

    const Integer& F(Index i) const { return f[static_cast<std::size_t>(i)]; }
    const Integer& L(Index i) const { return l[static_cast<std::size_t>(i)]; }

    Integer S(Index n) const {
        Integer s = 0;
        for (Index k = 1; k <= n - 1; ++k)
            s += L(k) * F(n - k);
        return s;
    }
};

IdentityRow make_row(Index n, Integer sum, const Integer& fn) {
    IdentityRow row;
    row.n = n;
    row.sum = std::move(sum);
    row.multiplied = (n - 1) * fn;
    const Integer divisor(n - 1);
    row.divisible = mpz_divisible_p(row.sum.get_mpz_t(), divisor.get_mpz_t()) != 0;
    if (row.divisible)
        mpz_divexact(row.quotient.get_mpz_t(), row.sum.get_mpz_t(), divisor.get_mpz_t());
    row.passed = row.sum == row.multiplied && row.divisible && row.quotient == fn;
    return row;
}

} // namespace

Integer convolution_sum(Index n) {
    require_n(n, "convolution_sum");
    return Tables({}, n).S(n);
}

IdentityReport check_identity(Index n) {
    require_n(n, "check_identity");
    const auto start = std::chrono::steady_clock::now();
    IdentityReport report;
    report.lo = report.hi = n;
    const Integer fn = fib(n);
    IdentityRow row = make_row(n, convolution_sum(n), fn);
    if (!row.passed)
        report.first_failure = Counterexample{n, Rational(row.multiplied), Rational(row.sum)};
    report.elapsed = std::chrono::steady_clock::now() - start;
    return report;
}

std::vector<IdentityRow> identity_rows(Index lo, Index hi, const ConvolutionInputs& in,
                                       unsigned jobs) {
    if (lo < 2 || lo > hi)
        throw DomainError("identity range must satisfy 2 <= lo <= hi, got " + std::to_string(lo) +
                          ".." + std::to_string(hi));
    const Tables t(in, hi);
    const std::size_t count = static_cast<std::size_t>(hi - lo + 1);
    std::vector<IdentityRow> rows(count);

    // Strided assignment balances the O(n) cost per index across workers.
    auto work = [&](std::size_t first, std::size_t stride) {
        for (std::size_t i = first; i < count; i += stride) {
            const Index n = lo + static_cast<Index>(i);
            rows[i] = make_row(n, t.S(n), t.F(n));
        }
    };
    jobs = std::clamp<unsigned>(jobs, 1, static_cast<unsigned>(std::min<std::size_t>(count, 256)));
    if (jobs == 1) {
        work(0, 1);
    } else {
        std::vector<std::jthread> workers;
        for (unsigned j = 0; j < jobs; ++j)
            workers.emplace_back(work, j, jobs);
    }
    return rows;
}

IdentityReport check_range(Index lo, Index hi, const ConvolutionInputs& in, unsigned jobs) {
    const auto start = std::chrono::steady_clock::now();
    IdentityReport report;
    report.lo = lo;
    report.hi = hi;
    for (const auto& row : identity_rows(lo, hi, in, jobs)) {
        if (!row.passed) {
            report.first_failure = Counterexample{row.n, Rational(row.multiplied), Rational(row.sum)};
            break;
        }
    }
    report.elapsed = std::chrono::steady_clock::now() - start;
    return report;
}

bool inductive_step_check(Index m) {
    if (m < 3)
        throw DomainError("inductive_step_check: m must be >= 3, got " + std::to_string(m));
    const Tables t({}, m + 1);
    const Integer next = t.S(m + 1);
    const Integer decomposed = t.F(m) + t.S(m) + t.L(0) * t.F(m - 1) + t.S(m - 1);
    return next == decomposed && next == m * t.F(m + 1);
}

bool reindexing_holds(Index m) {
    if (m < 2)
        throw DomainError("reindexing_holds: m must be >= 2, got " + std::to_string(m));
    const Tables t({}, m + 1);
    Integer by_k = 0;
    for (Index k = 2; k <= m; ++k)
        by_k += t.L(k) * t.F(m + 1 - k);
    Integer by_j = 0;
    for (Index j = 1; j <= m - 1; ++j)
        by_j += t.L(j + 1) * t.F(m - j);
    return by_k == by_j;
}

bool weights_are_lucas(const CollectedWeights& w) {
    if (w.weights.empty())
        return true;
    const auto l = eval_range(lucas_spec(), 1, static_cast<Index>(w.weights.size()));
    return std::equal(w.weights.begin(), w.weights.end(), l.begin());
}

} // namespace recur
