#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdint>
#include <vector>

#include "primlab/arith.hpp"
#include "primlab/errors.hpp"

using namespace primlab;

namespace {
const FactorSieve& sieve1m() {
    static FactorSieve s = build_sieve(1'000'000);
    return s;
}
} // namespace

TEST_CASE("sieve primality, spf, and factor counts agree with trial division") {
    const FactorSieve& s = sieve1m();
    CHECK(s.is_prime(2));
    CHECK(s.is_prime(999983)); // largest prime below 1e6
    CHECK_FALSE(s.is_prime(1));
    CHECK_FALSE(s.is_prime(999985));
    CHECK(s.spf(2 * 3 * 5 * 7) == 2);
    CHECK(s.spf(997 * 991) == 991);
    CHECK(s.largest_prime_factor(997 * 991) == 997);
    CHECK(s.largest_prime_factor(1 << 19) == 2);

    for (std::uint64_t n = 2; n <= 5000; ++n) {
        unsigned big = 0, small = 0;
        std::uint64_t m = n;
        for (std::uint64_t p = 2; p * p <= m; ++p) {
            if (m % p) continue;
            ++small;
            while (m % p == 0) {
                m /= p;
                ++big;
            }
        }
        if (m > 1) {
            ++small;
            ++big;
        }
        REQUIRE(s.big_omega(n) == big);
        REQUIRE(s.small_omega(n) == small);
    }
}

TEST_CASE("factorize reconstructs n with ascending primes") {
    const FactorSieve& s = sieve1m();
    for (std::uint64_t n : {2ull, 360ull, 9973ull, 2ull * 3 * 5 * 7 * 11 * 13,
                            524288ull, 999983ull, 963761ull}) {
        const Factorization f = factorize(s, n);
        std::uint64_t prod = 1;
        std::uint32_t prev = 0;
        for (auto [p, e] : f.factors) {
            CHECK(s.is_prime(p));
            CHECK(p > prev);
            prev = p;
            for (std::uint32_t i = 0; i < e; ++i) prod *= p;
        }
        CHECK(prod == n);
        CHECK(f.big_omega() == s.big_omega(n));
        CHECK(f.small_omega() == s.small_omega(n));
    }
    const Factorization one = factorize(s, 1);
    CHECK(one.factors.empty());
    CHECK(one.largest_prime() == 0);
    CHECK(one.smallest_prime() == 0);
}

TEST_CASE("primes_upto and next_prime") {
    const FactorSieve& s = sieve1m();
    const auto p30 = s.primes_upto(30);
    CHECK(p30 == std::vector<std::uint32_t>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29});
    CHECK(s.primes_upto(1).empty());
    CHECK(s.next_prime(1) == 2);
    CHECK(s.next_prime(30) == 31);
    CHECK(s.next_prime(997 * 991 / 997) == 997); // 991 -> 997
    CHECK_THROWS_AS((void)s.next_prime(999983), resource_error);
}

TEST_CASE("build_sieve rejects out-of-range limits") {
    CHECK_THROWS_AS(build_sieve(1), std::invalid_argument);
    CHECK_THROWS_AS(build_sieve(std::uint64_t{1} << 31), resource_error);
}

TEST_CASE("count_layer equals enumerate_layer size and matches brute counts") {
    const FactorSieve& s = sieve1m();
    CHECK(enumerate_layer(s, 2, 12) == std::vector<std::uint64_t>{4, 6, 9, 10});
    CHECK(count_layer(s, 0, 100) == 1); // only n = 1
    CHECK(enumerate_layer(s, 0, 100) == std::vector<std::uint64_t>{1});

    for (unsigned k = 1; k <= 6; ++k) {
        for (std::uint64_t x : {10ull, 100ull, 1000ull}) {
            std::uint64_t brute = 0;
            for (std::uint64_t n = 2; n <= x; ++n)
                if (s.big_omega(n) == k) ++brute;
            const auto elems = enumerate_layer(s, k, x);
            CHECK(count_layer(s, k, x) == brute);
            CHECK(elems.size() == brute);
            for (std::uint64_t n : elems) CHECK(s.big_omega(n) == k);
            CHECK(std::is_sorted(elems.begin(), elems.end()));
        }
    }
}

TEST_CASE("harmonic weight of the 2-factor layer below 1e6 (frozen oracle value)") {
    const FactorSieve& s = sieve1m();
    long double w = 0.0L;
    for (std::uint64_t n : enumerate_layer(s, 2, 1'000'000)) w += 1.0L / n;
    CHECK(std::fabs(static_cast<double>(w) - 3.677024678094497) < 1e-12);
}

TEST_CASE("layer-count bound holds on a grid and skips x < 3") {
    const FactorSieve& s = sieve1m();
    const LayerBoundReport rep = check_layer_bound(s, 10, {2, 3, 100, 99991});
    CHECK(rep.all_pass);
    CHECK(rep.rows.size() == 30); // the x = 2 column is dropped, 10 k-rows each
    for (const auto& r : rep.rows) {
        CHECK(r.x >= 3);
        CHECK(r.pass);
        CHECK(static_cast<double>(r.count) <=
              1.35 * std::pow(double(r.k), 3) * double(r.x) * std::log(double(r.x)) /
                  std::pow(2.0, double(r.k)));
    }
}

TEST_CASE("layer bound sweep is exhaustive and reports a sane worst margin") {
    const FactorSieve& s = sieve1m();
    const SweepSummary sum = layer_bound_sweep(s, 12, 100'000);
    CHECK(sum.all_pass);
    CHECK(sum.checks > 99'000); // one check per layer element in [3, x_max]
    CHECK(sum.worst_margin > 0.0);
    CHECK(sum.worst_margin < 1e300);
    CHECK(sum.worst_k >= 1);
}

TEST_CASE("divisor-count tail bound: spot values and sweep") {
    const FactorSieve& s = sieve1m();
    // # { n <= 10 : small_omega(n) >= 2 } counts only 6 and 10.
    const DivisorBoundRow row = divisor_bound_check(s, 10, 2);
    CHECK(row.count == 2);
    CHECK(row.pass);
    const DivisorBoundRow zero = divisor_bound_check(s, 100, 0);
    CHECK(zero.count == 100); // every n has at least zero distinct factors
    CHECK(zero.pass);

    const SweepSummary sum = divisor_bound_sweep(s, 16, 50'000);
    CHECK(sum.all_pass);
    CHECK(sum.worst_margin > 0.0);
}
