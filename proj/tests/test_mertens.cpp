#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "primlab/arith.hpp"
#include "primlab/errors.hpp"
#include "primlab/mertens.hpp"
#include "primlab/special.hpp"

using namespace primlab;

namespace {
const FactorSieve& sieve1m() {
    static FactorSieve s = build_sieve(1'000'000);
    return s;
}
} // namespace

TEST_CASE("finite Euler products: exact small cases and the degenerate zero") {
    const FactorSieve& s = sieve1m();
    CHECK(euler_product(s, 1.0, 3.0).value() == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(euler_product(s, 1.0, 8.0).value() ==
          doctest::Approx(0.5 * (2.0 / 3.0) * (4.0 / 5.0) * (6.0 / 7.0)).epsilon(1e-14));
    CHECK(euler_product(s, 0.0, 100.0).value() == doctest::Approx(1.0));
    // z = 2 kills the p = 2 factor.
    const EulerProductState deg = euler_product(s, 2.0, 10.0);
    CHECK(deg.degenerate_zero);
    CHECK(deg.value() == 0.0);
    CHECK_FALSE(euler_product(s, 2.0, 2.0).degenerate_zero); // empty product
    CHECK_THROWS_AS((void)euler_product(s, 2.5, 10.0), std::domain_error);
}

TEST_CASE("mu_x(1) tends to 1 (Mertens) and matches its two-factor form") {
    const FactorSieve& s = sieve1m();
    const ValueWithError big = mu_x(s, 1.0, 1'000'000.0, 1'000'000);
    CHECK(std::fabs(big.value - 1.0) < 1e-3);

    // Direct recomputation of the defining product at x = 100, z = 0.7.
    const double z = 0.7;
    const ValueWithError m = mu_x(s, z, 100.0, 300);
    const ValueWithError c = c_z_const(z, 300);
    const double direct = std::exp(kEulerGamma * z) * c.value *
                          std::pow(std::log(100.0), z) *
                          euler_product(s, z, 100.0).value();
    CHECK(std::fabs(m.value - direct) <= m.err + c.err + 1e-12);
}

TEST_CASE("c_z_const is 1 at z = 1 and stable in the cutoff") {
    const ValueWithError c1 = c_z_const(1.0, 300);
    CHECK(std::fabs(c1.value - 1.0) <= c1.err + 1e-12);
    const ValueWithError a = c_z_const(0.6, 300);
    const ValueWithError b = c_z_const(0.6, 10'000);
    CHECK(std::fabs(a.value - b.value) <= a.err + b.err);
}

TEST_CASE("bundle at q = 3, z = 1: frozen values and the honest infimum") {
    const FactorSieve& s = sieve1m();
    const MertensBundle b = mertens_bundle(s, 3, 1.0);
    CHECK(b.q == 3);
    CHECK(std::fabs(b.mu - 0.97835402270592786) < 1e-12);
    CHECK(std::fabs(b.m_lower - 0.92421517183097268) < 1e-12);
    CHECK(std::fabs(b.M_upper - 1.0010901255971516) < 1e-12);
    CHECK(std::fabs(b.r_upper - 1.0831786321078036) < 1e-12);

    // M_upper realizes 1 + 1/(2 log^2(2e9)) up to outward slack.
    const double eps9 = 0.5 / std::pow(std::log(2e9), 2);
    CHECK(b.M_upper == doctest::Approx(1.0 + eps9).epsilon(1e-7));

    // The infimum over p >= 3 is attained at p = 7 and sits BELOW 0.925:
    // mu_7(1) = e^gamma * log(7) * (4/15) = 0.92421526...  A looser 0.925
    // floor is sometimes quoted; the certified bound must not use it.
    const double mu7 = std::exp(kEulerGamma) * std::log(7.0) * (4.0 / 15.0);
    CHECK(mu7 < 0.925);
    CHECK(b.m_lower <= mu7);
    CHECK(b.m_lower > mu7 - 1e-6);
}

TEST_CASE("bundle brackets dominate sampled mu values across q and z") {
    const FactorSieve& s = sieve1m();
    const std::vector<std::uint64_t> anchors = {3, 7, 31, 293};
    const std::vector<std::uint64_t> samples = {3, 5, 7, 11, 101, 293, 997, 99991};
    for (double z : {0.44, 0.7, 1.0, 1.3, 1.99}) {
        for (std::uint64_t q : anchors) {
            const MertensBundle b = mertens_bundle(s, q, z);
            INFO("q=", q, " z=", z);
            CHECK(b.m_lower <= b.mu_lo);
            CHECK(b.mu_lo <= b.mu);
            CHECK(b.mu <= b.mu_hi);
            CHECK(b.mu_hi <= b.M_upper);
            CHECK(b.r_upper >= 1.0);
            CHECK(b.r_upper <= b.M_upper / b.m_lower + 1e-12);
            for (std::uint64_t p : samples) {
                if (p < q) continue;
                const ValueWithError mu = mu_x(s, z, double(p), 1'000'000);
                INFO("sample p=", p);
                CHECK(b.m_lower <= mu.value + mu.err);
                CHECK(b.M_upper >= mu.value - mu.err);
            }
        }
    }
}

TEST_CASE("bundle handles z = 2 and anchors beyond the cutoff") {
    const FactorSieve& s = sieve1m();
    const MertensBundle b2 = mertens_bundle(s, 3, 2.0);
    CHECK(b2.m_lower > 0.0);
    CHECK(b2.m_lower <= b2.mu);
    CHECK(b2.mu <= b2.M_upper);
    CHECK(b2.r_upper >= 1.0);

    // q above the finite-product cutoff takes the uniform-tail path.
    const MertensBundle far = mertens_bundle(s, 1009, 1.0, 300);
    const ValueWithError mu1009 = mu_x(s, 1.0, 1009.0, 1'000'000);
    CHECK(far.m_lower <= mu1009.value + mu1009.err);
    CHECK(far.M_upper >= mu1009.value - mu1009.err);
    // Far out, everything is squeezed near 1.
    CHECK(far.m_lower > 0.95);
    CHECK(far.M_upper < 1.05);
    CHECK(far.r_upper < mertens_bundle(s, 3, 1.0).r_upper);
}

TEST_CASE("bundle rejects invalid anchors") {
    const FactorSieve& s = sieve1m();
    CHECK_THROWS_AS((void)mertens_bundle(s, 2, 1.0), std::invalid_argument);
    CHECK_THROWS_AS((void)mertens_bundle(s, 9, 1.0), std::invalid_argument);
    CHECK_THROWS_AS((void)mertens_bundle(s, 3, 0.0), std::domain_error);
    CHECK_THROWS_AS((void)mertens_bundle(s, 3, 2.5), std::domain_error);
    CHECK_THROWS_AS((void)mertens_bundle(s, 3, 1.0, 200), std::invalid_argument);
}

TEST_CASE("brackets tighten when the finite-product cutoff grows") {
    const FactorSieve& s = sieve1m();
    for (double z : {0.5, 1.5}) {
        const MertensBundle small = mertens_bundle(s, 3, z, 300);
        const MertensBundle large = mertens_bundle(s, 3, z, 10'000);
        INFO("z=", z);
        CHECK(large.M_upper <= small.M_upper + 1e-12);
        CHECK(large.m_lower >= small.m_lower - 1e-12);
        CHECK(large.r_upper <= small.r_upper + 1e-12);
    }
}

TEST_CASE("third Mertens inequality: boundary, skip notes, and sweep") {
    const FactorSieve& s = sieve1m();
    const GridCheckReport rep = mertens3_check(s, {285.0, 286.0, 1000.0, 999983.0});
    REQUIRE(rep.rows.size() == 4);
    CHECK(rep.rows[0].skipped);
    CHECK_FALSE(rep.rows[0].note.empty());
    for (std::size_t i = 1; i < 4; ++i) {
        CHECK_FALSE(rep.rows[i].skipped);
        CHECK(rep.rows[i].pass);
        CHECK(rep.rows[i].lhs <= rep.rows[i].bound);
    }
    CHECK(rep.all_pass);

    const SweepSummary sweep = mertens3_sweep(s, 200'000);
    CHECK(sweep.all_pass);
    CHECK(sweep.worst_margin > 0.0);
}

TEST_CASE("two-prime product bound: near-tight N = 3 and exhaustive sweep") {
    const FactorSieve& s = sieve1m();
    // N = 3: lhs = (1 - 2/3)^{-1} = 3, bound = 2.486 log(3)^2 = 3.0005...
    const GridCheckReport rep = two_product_check(s, {2.0, 3.0, 1000.0});
    REQUIRE(rep.rows.size() == 3);
    CHECK(rep.all_pass);
    CHECK(rep.rows[1].lhs == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(rep.rows[1].bound == doctest::Approx(3.00054).epsilon(1e-4));
    CHECK(rep.rows[1].bound - rep.rows[1].lhs < 0.001); // genuinely near-tight

    CHECK_THROWS_AS((void)two_product_check(s, {1.0}), std::invalid_argument);

    const SweepSummary sweep = two_product_sweep(s, 200'000);
    CHECK(sweep.all_pass);
    CHECK(sweep.worst_x == 3.0); // the N = 3 point is the global worst case
}

TEST_CASE("prime-square tail sums are consistent with prime zeta") {
    // The bundle machinery folds sum_{p > cutoff} p^-m into its outward
    // brackets.  Recompute the m = 2 and m = 3 tails here and check the
    // magnitudes the brackets must dominate.
    const FactorSieve& s = sieve1m();
    long double s2 = 0.0L, s3 = 0.0L;
    for (std::uint32_t p : s.primes_upto(300)) {
        s2 += 1.0L / ((long double)p * p);
        s3 += 1.0L / ((long double)p * p * p);
    }
    const double tail2 = prime_zeta(2.0) - static_cast<double>(s2);
    const double tail3 = prime_zeta(3.0) - static_cast<double>(s3);
    // First missing prime is 307, and sum_{n>300} n^-2 < 1/300.
    CHECK(tail2 > 1.0 / (307.0 * 307.0));
    CHECK(tail2 < 1.0 / 300.0);
    CHECK(tail3 > 0.0);
    CHECK(tail3 < 1.0 / (2.0 * 300.0 * 300.0));

    // The uniform beyond-cutoff brackets absorb these second-order tails
    // (among larger first-order terms), so the bracket width must exceed
    // them by a wide margin.
    const MertensBundle b = mertens_bundle(s, 293, 0.999);
    CHECK(b.m_lower < 1.0);
    CHECK(b.M_upper > 1.0);
    CHECK(std::log(b.M_upper / b.m_lower) > tail2);
}
