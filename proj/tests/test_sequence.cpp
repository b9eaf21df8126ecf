#include "oracles.hpp"

#include "recur/sequence.hpp"

#include <doctest.h>

using namespace recur;

TEST_CASE("fib: known values") {
    CHECK(fib(6) == 8);
    CHECK(fib(0) == 0);
    CHECK(fib(1) == 1);
    CHECK(fib(2) == 1);
    CHECK(oracle::fibonacci_upto(50)[50] == Integer("12586269025"));
    CHECK(fib(50) == Integer("12586269025"));
    CHECK_THROWS_AS(fib(-1), DomainError);
}

TEST_CASE("fib: fast doubling matches iteration up to 10^4") {
    const auto ref = oracle::fibonacci_upto(10000);
    for (Index n = 0; n <= 10000; ++n)
        REQUIRE_MESSAGE(fib(n) == ref[static_cast<std::size_t>(n)], "n = " << n);
}

TEST_CASE("lucas: known values") {
    CHECK(lucas(0) == 2);
    CHECK(lucas(1) == 1);
    CHECK(lucas(2) == 3);
    CHECK(lucas(5) == 11);
    CHECK(oracle::lucas_upto(10)[10] == 123);
    CHECK(lucas(10) == 123);
    CHECK_THROWS_AS(lucas(-3), DomainError);
}

TEST_CASE("lucas(n) = fib(n-1) + fib(n+1) up to 10^4") {
    const auto lref = oracle::lucas_upto(10000);
    const Integer fib_minus_one = extend_backward(fibonacci_spec(), -1);
    CHECK(fib_minus_one == 1);
    for (Index n = 0; n <= 10000; ++n) {
        const Integer prev = n == 0 ? fib_minus_one : fib(n - 1);
        const Integer l = lucas(n);
        REQUIRE_MESSAGE(l == prev + fib(n + 1), "n = " << n);
        REQUIRE(l == lref[static_cast<std::size_t>(n)]);
    }
}

TEST_CASE("eval_term") {
    CHECK(eval_term(fibonacci_spec(), 6) == 8);
    CHECK(eval_term(lucas_spec(), 2) == 3);
    CHECK(eval_term(tribonacci_spec(), 9) == 44);
    CHECK(oracle::iterate({1, 1, 1}, {0, 0, 1}, 9)[9] == 44);

    const auto ref = oracle::fibonacci_upto(300);
    for (Index n = 0; n <= 300; ++n)
        REQUIRE(eval_term(fibonacci_spec(), n) == ref[static_cast<std::size_t>(n)]);

    CHECK_THROWS_AS(eval_term(fibonacci_spec(), 0, Backward::Forbid), DomainError);
    CHECK(eval_term(fibonacci_spec(), 0, Backward::Allow) == 0);
}

TEST_CASE("eval_range") {
    CHECK(eval_range(fibonacci_spec(), 1, 5) == std::vector<Integer>{1, 1, 2, 3, 5});
    CHECK(eval_range(lucas_spec(), 1, 5) == std::vector<Integer>{1, 3, 4, 7, 11});
    CHECK(eval_range(fibonacci_spec(), 3, 3) == std::vector<Integer>{2});
    CHECK(eval_range(fibonacci_spec(), -4, 2) == std::vector<Integer>{-3, 2, -1, 1, 0, 1, 1});
    CHECK_THROWS_AS(eval_range(fibonacci_spec(), 5, 4), DomainError);
    CHECK_THROWS_AS(eval_range(fibonacci_spec(), -2, 4, Backward::Forbid), DomainError);
}

TEST_CASE("eval_range agrees with eval_term pointwise") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t d = 1 + rng() % 4;
        SequenceSpec spec{"U", {}, {}, static_cast<Index>(rng() % 7) - 3, false};
        for (std::size_t i = 0; i < d; ++i) {
            spec.coeffs.push_back(oracle::random_int(rng, -3, 3));
            spec.seeds.push_back(oracle::random_int(rng, -9, 9));
        }
        spec.coeffs.back() = (rng() & 1) ? 1 : -1;
        const Index lo = spec.seed_start - 6, hi = spec.seed_start + 25;
        const auto values = eval_range(spec, lo, hi);
        for (Index n = lo; n <= hi; ++n)
            REQUIRE(values[static_cast<std::size_t>(n - lo)] == eval_term(spec, n));
    }
}

TEST_CASE("extend_backward") {
    CHECK(extend_backward(fibonacci_spec(), 0) == 0);
    CHECK(extend_backward(fibonacci_spec(), -1) == 1);
    // F(1) = F(0) + F(-1)
    CHECK(eval_term(fibonacci_spec(), 1) ==
          extend_backward(fibonacci_spec(), 0) + extend_backward(fibonacci_spec(), -1));

    const SequenceSpec lucas_from_one{"L", {1, 1}, {1, 3}, 1, false};
    CHECK(extend_backward(lucas_from_one, 0) == 2);

    CHECK_THROWS_AS(extend_backward(fibonacci_spec(), 1), DomainError);
}

TEST_CASE("extend_backward: non-unit trailing coefficient") {
    SequenceSpec spec{"P", {1, 2}, {3, 5}, 0, false};
    CHECK_FALSE(backward_invertible(spec));
    CHECK_THROWS_AS(extend_backward(spec, -1), NonInvertibleStep);
    CHECK_THROWS_AS(eval_term(spec, -1), NonInvertibleStep);

    spec.rational_mode = true;
    // 5 = 3 + 2 U(-1)
    CHECK(extend_backward_exact(spec, -1) == Rational(1));
    CHECK(extend_backward(spec, -1) == 1);
    // 3 = 1 + 2 U(-2)
    CHECK(extend_backward_exact(spec, -2) == Rational(1));
    // 1 = 1 + 2 U(-3)
    CHECK(extend_backward_exact(spec, -3) == Rational(0));

    SequenceSpec odd{"Q", {0, 2}, {1, 0}, 0, true};
    // 0 = 2 U(-2) ... U(1) = 2 U(-1) -> U(-1) = 0; U(0) = 2 U(-2) -> 1/2
    CHECK(extend_backward_exact(odd, -2) == Rational(1, 2));
    CHECK_THROWS_AS(extend_backward(odd, -2), NonInvertibleStep);
}

TEST_CASE("backward then forward reproduces the seeds") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t d = 1 + rng() % 5;
        SequenceSpec spec{"U", {}, {}, static_cast<Index>(rng() % 11) - 5, false};
        for (std::size_t i = 0; i < d; ++i) {
            spec.coeffs.push_back(oracle::random_int(rng, -4, 4));
            spec.seeds.push_back(oracle::random_int(rng, -20, 20));
        }
        spec.coeffs.back() = (rng() & 1) ? 1 : -1;
        const Index depth = 1 + static_cast<Index>(rng() % 15);
        const Index low = spec.seed_start - depth;

        SequenceSpec reseeded = spec;
        reseeded.seed_start = low;
        reseeded.seeds.clear();
        for (Index j = low; j < low + static_cast<Index>(d); ++j)
            reseeded.seeds.push_back(j < spec.seed_start ? extend_backward(spec, j)
                                                         : eval_term(spec, j));
        for (Index j = spec.seed_start; j < spec.seed_end(); ++j)
            REQUIRE(eval_term(reseeded, j) == spec.seeds[static_cast<std::size_t>(j - spec.seed_start)]);
    }
}

TEST_CASE("validate") {
    CHECK_NOTHROW(validate(fibonacci_spec()));
    CHECK_THROWS_AS(validate(SequenceSpec{"X", {}, {}, 0, false}), InvalidSpec);
    CHECK_THROWS_AS(validate(SequenceSpec{"X", {1, 1}, {1}, 0, false}), InvalidSpec);
    CHECK_THROWS_AS(validate(SequenceSpec{"X", {1, 0}, {1, 1}, 0, false}), InvalidSpec);
    CHECK_THROWS_AS(eval_term(SequenceSpec{"X", {1, 0}, {1, 1}, 0, false}, 4), InvalidSpec);
}
