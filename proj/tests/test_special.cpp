#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <map>
#include <utility>
#include <vector>

#include "primlab/arith.hpp"
#include "primlab/special.hpp"

using namespace primlab;

namespace {

constexpr double kPi = 3.14159265358979323846;

// High-precision layer-sum values frozen from an independent
// arbitrary-precision evaluation of the defining integral.
const std::map<std::pair<double, unsigned>, double>& gamma_table() {
    static const std::map<std::pair<double, unsigned>, double> t = {
        {{1.0, 1}, 1.6366163233512596638},   {{1.0, 2}, 1.1448165734059180448},
        {{1.0, 4}, 0.99734214859525240383},  {{1.0, 6}, 0.98875345301450964618},
        {{1.0, 7}, 0.99102059500273804128},  {{1.0, 12}, 0.99888781852800778472},
        {{1.0, 20}, 0.99998542883264988367}, {{1.0, 25}, 0.99999923628054779796},
        {{0.5, 1}, 1.2282887222223950809},   {{0.5, 6}, 1.028779517396823073},
        {{0.5, 20}, 1.0286203564349472778},  {{0.5, 26}, 1.0286203565341432309},
        {{1.5, 4}, 0.97551642641749195561},  {{1.5, 10}, 1.0900312298335628261},
        {{1.5, 20}, 1.1982511239854578537},  {{1.99, 3}, 1.0288608454779488676},
        {{1.99, 12}, 1.662419519595938661},  {{1.99, 25}, 3.588626344454945845},
        {{2.0, 1}, 3.0419408798788725987},   {{2.0, 8}, 1.1922465586695914314},
        {{2.0, 20}, 2.895335253212300343},   {{0.3, 2}, 1.0490944099945323497},
        {{0.3, 26}, 1.0361987103386544808},  {{1.9, 10}, 1.3329556016960570326},
        {{1.9, 26}, 2.6972337293674120559},
    };
    return t;
}

} // namespace

TEST_CASE("zeta, gamma, and prime zeta hit reference values") {
    CHECK(std::fabs(zeta_real(2.0) - kPi * kPi / 6.0) < 1e-14);
    CHECK(std::fabs(zeta_real(4.0) - std::pow(kPi, 4) / 90.0) < 1e-14);
    CHECK(std::fabs(zeta_real(1.5) - 2.6123753486854883433) < 1e-12);
    CHECK(std::fabs(gamma_fn(0.5) - std::sqrt(kPi)) < 1e-13);
    CHECK(std::fabs(gamma_fn(5.0) - 24.0) < 1e-11);
    CHECK(std::fabs(gamma_fn(1.0) - 1.0) < 1e-14);
    // P(s) reference values (series constants).
    CHECK(std::fabs(prime_zeta(2.0) - 0.45224742004106549850) < 1e-13);
    CHECK(std::fabs(prime_zeta(3.0) - 0.17476263929944353643) < 1e-13);
    // P(s) -> 2^-s as s grows.
    CHECK(std::fabs(prime_zeta(30.0) - std::pow(2.0, -30.0)) < 1e-13);
}

TEST_CASE("layer Dirichlet series agrees with a sieve sum at s = 2") {
    FactorSieve s = build_sieve(1'000'000);
    long double direct = 0.0L;
    for (std::uint64_t n : enumerate_layer(s, 2, 1'000'000)) direct += 1.0L / n / n;
    // Frozen cross-check: truncation error of the sieve sum is ~1.9e-7.
    CHECK(std::fabs(static_cast<double>(direct) - 0.140760241700474) < 1e-12);
    CHECK(std::fabs(pk_dirichlet(2.0, 2) - 0.1407604343490234) < 1e-10);
    CHECK(std::fabs(pk_dirichlet(2.0, 0) - 1.0) == 0.0);
    CHECK(std::fabs(pk_dirichlet(2.0, 1) - prime_zeta(2.0)) < 1e-13);
}

TEST_CASE("quadrature layer sums reproduce the frozen table") {
    for (const auto& [key, expected] : gamma_table()) {
        const auto [z, k] = key;
        const GammaKResult g = gamma_k(k, z);
        INFO("k=", k, " z=", z);
        CHECK(g.method == "quadrature");
        CHECK(std::fabs(g.value - expected) <= g.est_error + 1e-10);
    }
}

TEST_CASE("batch evaluation matches single evaluations") {
    for (double z : {0.5, 1.0, 1.99}) {
        const auto batch = gamma_k_batch(12, z);
        REQUIRE(batch.size() == 12);
        for (const auto& g : batch) {
            const GammaKResult single = gamma_k(g.k, z);
            CHECK(std::fabs(g.value - single.value) <= g.est_error + single.est_error);
        }
    }
}

TEST_CASE("the k = 6 layer sum is minimal at z = 1") {
    const auto batch = gamma_k_batch(12, 1.0);
    for (const auto& g : batch)
        if (g.k != 6) CHECK(batch[5].value < g.value);
}

TEST_CASE("limit constants: G, C, d_w, and their Gamma-function relation") {
    const ValueWithError g1 = big_G(1.0);
    CHECK(std::fabs(g1.value - 1.0) <= g1.err + 1e-12);
    const ValueWithError c1 = c_of_z(1.0);
    CHECK(std::fabs(c1.value - 1.0) <= c1.err + 1e-12);

    // The layer sums converge to G(z); compare against the deep table rows.
    const ValueWithError g05 = big_G(0.5);
    CHECK(std::fabs(g05.value - 1.0286203565341432309) < 1e-12);
    const ValueWithError g03 = big_G(0.3);
    CHECK(std::fabs(g03.value - 1.0361987103386544808) < 5e-13);

    // C(z) = G(z) * Gamma(1 + z), and C(z) = (1 - z/2)^{-1} d_z.
    for (double z : {0.7, 1.3, 1.9}) {
        const ValueWithError c = c_of_z(z);
        const ValueWithError g = big_G(z);
        CHECK(std::fabs(c.value - g.value * gamma_fn(1.0 + z)) <=
              c.err + g.err * gamma_fn(1.0 + z) + 1e-12);
        const ValueWithError d = d_w_const(z);
        CHECK(std::fabs(c.value - d.value / (1.0 - z / 2.0)) <=
              c.err + d.err / (1.0 - z / 2.0) + 1e-11 * c.value);
    }

    // Settled by a brute product over all primes below 1e7.
    const ValueWithError c19 = c_of_z(1.9);
    CHECK(std::fabs(c19.value - 7.532304893550) < 1e-9);
    CHECK(c19.value > 7.532304855809); // truncated product is a strict lower bound

    // d_w stays finite through w = 2, where C(w) blows up.
    const ValueWithError d2 = d_w_const(2.0);
    CHECK(std::fabs(d2.value - 0.37869503203439708) < 1e-12);
    CHECK_THROWS_AS((void)big_G(2.0), std::domain_error);
    CHECK_THROWS_AS((void)d_w_const(3.0), std::domain_error);
}

TEST_CASE("z = 1 asymptotic form tracks the measured deviation from 1") {
    const auto batch = gamma_k_batch(25, 1.0);
    std::map<unsigned, double> val;
    for (const auto& g : batch) val[g.k] = g.value;
    for (unsigned k = 18; k <= 25; ++k) {
        const double dev = std::fabs(val.at(k) - 1.0);
        const double predicted = 1.0 - gamma_k_asymptotic(k, 1.0, AsymptoticVariant::eq1);
        CHECK(predicted > 0.0);
        CHECK(dev / predicted > 0.5);
        CHECK(dev / predicted < 2.0);
    }
}

TEST_CASE("z < 1 asymptotic form converges to the table values") {
    const auto& table = gamma_table();
    const double d10 =
        std::fabs(gamma_k_asymptotic(10, 0.5, AsymptoticVariant::sub1) - 1.0286188843851526475);
    const double d20 =
        std::fabs(gamma_k_asymptotic(20, 0.5, AsymptoticVariant::sub1) -
                  table.at({0.5, 20}));
    const double d26 =
        std::fabs(gamma_k_asymptotic(26, 0.5, AsymptoticVariant::sub1) -
                  table.at({0.5, 26}));
    CHECK(d10 < 1e-4);
    CHECK(d20 < d10);
    CHECK(d20 < 1e-9);
    CHECK(d26 < 1e-11);
}

TEST_CASE("z = 2 asymptotic form undershoots slowly from below") {
    // The drift term shrinks like 1/sqrt(log k); assert the measured gap
    // is positive, below 0.3, and decreasing over the frozen table rows.
    const double g20 = gamma_table().at({2.0, 20});
    const double a20 = gamma_k_asymptotic(20, 2.0, AsymptoticVariant::eq2);
    CHECK(g20 - a20 > 0.0);
    CHECK(g20 - a20 < 0.3);
    const GammaKResult g26 = gamma_k(26, 2.0);
    const double a26 = gamma_k_asymptotic(26, 2.0, AsymptoticVariant::eq2);
    CHECK(g26.value - a26 > 0.0);
    CHECK(g26.value - a26 < g20 - a20);
}

TEST_CASE("uniform asymptotic variant returns the limit constant") {
    const double u = gamma_k_asymptotic(7, 1.3, AsymptoticVariant::uniform);
    const ValueWithError g = big_G(1.3);
    CHECK(std::fabs(u - g.value) <= g.err + 1e-12);
    const double s = gamma_k_asymptotic(9, 1.5, AsymptoticVariant::super1);
    const ValueWithError g15 = big_G(1.5);
    CHECK(std::fabs(s - g15.value) <= g15.err + 1e-12);
}

TEST_CASE("direct layer sums bracket the quadrature values") {
    FactorSieve s = build_sieve(1'000'000);
    // z <= 1: the tail is a doubled first-order model, explicitly flagged.
    for (double z : {0.5, 1.0}) {
        for (unsigned k = 1; k <= 8; ++k) {
            const DirectSumResult ds = direct_sum_oracle(s, k, z, 1'000'000);
            const GammaKResult g = gamma_k(k, z);
            INFO("z=", z, " k=", k);
            CHECK_FALSE(ds.tail_rigorous);
            CHECK(g.value + g.est_error >= ds.partial);
            CHECK(g.value - g.est_error <= ds.partial + ds.tail_bound);
        }
    }
    // z > 1: integral-comparison tail, rigorous.
    for (double z : {1.5, 1.9}) {
        for (unsigned k : {1u, 4u, 8u}) {
            const DirectSumResult ds = direct_sum_oracle(s, k, z, 1'000'000);
            const GammaKResult g = gamma_k(k, z);
            INFO("z=", z, " k=", k);
            CHECK(ds.tail_rigorous);
            CHECK(g.value + g.est_error >= ds.partial);
            CHECK(g.value - g.est_error <= ds.partial + ds.tail_bound);
        }
    }
    // Frozen partial sums at the 1e6 cutoff (z = 1).
    const DirectSumResult d1 = direct_sum_oracle(s, 1, 1.0, 1'000'000);
    CHECK(std::fabs(d1.partial - 1.564236) < 1e-6);
    const DirectSumResult d4 = direct_sum_oracle(s, 4, 1.0, 1'000'000);
    CHECK(std::fabs(d4.partial - 0.260946) < 1e-6);
    // An empty layer is reported as such.
    const DirectSumResult e = direct_sum_oracle(s, 25, 1.0, 1000);
    CHECK(e.empty_layer);
    CHECK(e.partial == 0.0);
}

TEST_CASE("log zeta near 1 matches the direct evaluation on the overlap") {
    for (double t : {4.0, 6.0, 10.0}) {
        // t = 4 sits at the edge of the expansion's domain, where its
        // truncation error is ~4e-11; deeper in it is far smaller.
        const double direct = std::log(zeta_real(1.0 + std::exp(-t)));
        CHECK(std::fabs(log_zeta_near_one_t(t) - direct) < 1e-10);
    }
    CHECK(log_zeta_near_one_t(40.0) > 39.9); // ~ -log eps = t for tiny eps
}
