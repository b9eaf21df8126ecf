#include "oracles.hpp"

#include "recur/identity.hpp"

#include <doctest.h>

using namespace recur;

TEST_CASE("convolution_sum") {
    CHECK(convolution_sum(6) == 40);
    CHECK(convolution_sum(2) == 1);
    // L(1)F(2) + L(2)F(1) = 1 + 3
    CHECK(convolution_sum(3) == 4);
    CHECK_THROWS_AS(convolution_sum(1), DomainError);
}

TEST_CASE("convolution_sum against the dense oracle tables") {
    const auto F = oracle::fibonacci_upto(120);
    const auto L = oracle::lucas_upto(120);
    for (std::size_t n = 2; n <= 120; ++n) {
        Integer s = 0;
        for (std::size_t k = 1; k < n; ++k)
            s += L[k] * F[n - k];
        REQUIRE(convolution_sum(static_cast<Index>(n)) == s);
    }
}

TEST_CASE("check_identity") {
    for (Index n : {2, 6, 1000}) {
        const auto r = check_identity(n);
        CHECK(r.passed());
        CHECK(r.lo == n);
        CHECK(r.hi == n);
    }
    CHECK_THROWS_AS(check_identity(1), DomainError);
}

TEST_CASE("check_range") {
    CHECK(check_range(2, 100).passed());
    CHECK(check_range(2, 2).passed());
    CHECK_THROWS_AS(check_range(1, 5), DomainError);
    CHECK_THROWS_AS(check_range(7, 5), DomainError);
}

TEST_CASE("check_range reports the least failing n for a tampered Lucas input") {
    ConvolutionInputs in;
    in.lucas = SequenceSpec{"L", {1, 1}, {1, 4}, 1, false}; // L(2) = 4
    const auto r = check_range(2, 10, in);
    REQUIRE_FALSE(r.passed());
    CHECK(r.first_failure->n == 3);
    // S(3) = L(1)F(2) + L(2)F(1) = 1 + 4
    CHECK(r.first_failure->rhs == 5);
    CHECK(r.first_failure->lhs == 4);

    for (unsigned jobs : {2u, 3u, 8u}) {
        const auto par = check_range(2, 10, in, jobs);
        REQUIRE_FALSE(par.passed());
        CHECK(par.first_failure->n == 3);
    }
}

TEST_CASE("identity rows: both forms, independent of worker count") {
    const auto serial = identity_rows(2, 400, {}, 1);
    const auto parallel = identity_rows(2, 400, {}, 5);
    REQUIRE(serial.size() == parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
        const auto& a = serial[i];
        const auto& b = parallel[i];
        REQUIRE(a.n == b.n);
        REQUIRE(a.sum == b.sum);
        REQUIRE(a.multiplied == b.multiplied);
        REQUIRE(a.passed);
        REQUIRE(a.divisible);
        REQUIRE(a.quotient == fib(a.n));
    }
}

TEST_CASE("division form fails when S(n) is not a multiple of n-1") {
    // Lucas re-seeded from index 1 is still the Lucas sequence.
    ConvolutionInputs in;
    in.lucas = SequenceSpec{"L", {1, 1}, {1, 3}, 1, false};
    CHECK(check_range(2, 50, in).passed());
    // L(1) = 2: S(3) = 2 + 3 = 5 is odd.
    in.lucas = SequenceSpec{"L", {1, 1}, {2, 3}, 1, false};
    const auto rows = identity_rows(2, 6, in);
    bool saw_indivisible = false;
    for (const auto& row : rows)
        if (!row.divisible) {
            saw_indivisible = true;
            CHECK_FALSE(row.passed);
        }
    CHECK(saw_indivisible);
}

TEST_CASE("inductive_step_check") {
    // S(6) = F(5) + S(5) + 2F(4) + S(4) = 5 + 20 + 6 + 9
    CHECK(convolution_sum(5) == 20);
    CHECK(convolution_sum(4) == 9);
    CHECK(inductive_step_check(5));
    CHECK(inductive_step_check(3));
    CHECK(inductive_step_check(100));
    CHECK_THROWS_AS(inductive_step_check(2), DomainError);
}

TEST_CASE("reindexing j = k - 1 leaves the sum unchanged") {
    for (Index m = 3; m <= 60; ++m)
        REQUIRE(reindexing_holds(m));
}

TEST_CASE("weights_are_lucas") {
    CHECK(weights_are_lucas(sum_expansions(fibonacci_spec(), 6)));
    CHECK(weights_are_lucas(sum_expansions(fibonacci_spec(), 50)));
    CollectedWeights bad;
    bad.n = 6;
    bad.weights = {1, 3, 4, 7, 12};
    CHECK_FALSE(weights_are_lucas(bad));
}

TEST_CASE("collected weights and Lucas weights give the same sum") {
    for (Index n = 2; n <= 150; ++n) {
        const auto w = sum_expansions(fibonacci_spec(), n);
        const auto F = eval_range(fibonacci_spec(), 0, n);
        Integer dot = 0;
        for (Index k = 1; k <= n - 1; ++k)
            dot += w.weight(k) * F[static_cast<std::size_t>(n - k)];
        REQUIRE(dot == convolution_sum(n));
    }
}
