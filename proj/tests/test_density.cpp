#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "primlab/arith.hpp"
#include "primlab/density.hpp"
#include "primlab/errors.hpp"
#include "primlab/primsets.hpp"

using namespace primlab;

namespace {
const FactorSieve& sieve1m() {
    static FactorSieve s = build_sieve(1'000'000);
    return s;
}

AntichainSolution solve(std::uint64_t n, double z, AntichainMethod m) {
    return max_weight_antichain(build_poset(sieve1m(), n, z), m);
}
} // namespace

TEST_CASE("harmonic-weight denominators: exact small rationals") {
    const FactorSieve& s = sieve1m();
    CHECK(denominator_sum(s, 4, 1.0) == doctest::Approx(25.0 / 12.0).epsilon(1e-15));
    CHECK(denominator_sum(s, 6, 1.0) == doctest::Approx(49.0 / 20.0).epsilon(1e-15));
    // z = 2: 1 + 2/2 + 2/3 + 4/4 = 11/3.
    CHECK(denominator_sum(s, 4, 2.0) == doctest::Approx(11.0 / 3.0).epsilon(1e-15));
    // z = 0 degenerates to the single term n = 1.
    CHECK(denominator_sum(s, 1, 3.0) == 1.0);
}

TEST_CASE("exact optimum at N = 4 and N = 6: known closed forms") {
    const FactorSieve& s = sieve1m();
    for (AntichainMethod m : {AntichainMethod::flow, AntichainMethod::brute}) {
        const AntichainSolution a4 = solve(4, 1.0, m);
        // Max weight 1 is attained by {1} alone; density 12/25.
        CHECK(a4.weight == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(a4.elements == std::vector<std::uint64_t>{1});
        CHECK(a4.certificate_ok);

        const AntichainSolution a6 = solve(6, 1.0, m);
        // {2, 3, 5}: 1/2 + 1/3 + 1/5 = 31/30 beats 1.
        CHECK(a6.weight == doctest::Approx(31.0 / 30.0).epsilon(1e-12));
        CHECK(a6.elements == std::vector<std::uint64_t>{2, 3, 5});
        CHECK(a6.certificate_ok);
    }
    CHECK(d_z_density(s, 4, 1.0) == doctest::Approx(12.0 / 25.0).epsilon(1e-12));
    CHECK(d_z_density(s, 6, 1.0) == doctest::Approx(62.0 / 147.0).epsilon(1e-12));
}

TEST_CASE("flow agrees with branch-and-bound across N and z") {
    for (std::uint64_t n = 1; n <= 20; ++n) {
        for (double z : {0.5, 1.0, 2.0, 3.0}) {
            const AntichainSolution f = solve(n, z, AntichainMethod::flow);
            const AntichainSolution b = solve(n, z, AntichainMethod::brute);
            INFO("N=", n, " z=", z);
            CHECK(f.method == "flow");
            CHECK(b.method == "brute");
            CHECK(f.certificate_ok);
            CHECK(b.certificate_ok);
            CHECK(std::fabs(f.weight - b.weight) <= 1e-12);
            CHECK(std::fabs(f.dual_value - f.weight) <= 1e-9);
            CHECK(is_primitive(f.elements, sieve1m()));
            CHECK(is_primitive(b.elements, sieve1m()));
        }
    }
}

TEST_CASE("frozen optimum weights at N = 12..20") {
    const FactorSieve& s = sieve1m();
    const AntichainSolution w12 = solve(12, 2.0, AntichainMethod::flow);
    CHECK(w12.weight == doctest::Approx(2.978643578643579).epsilon(1e-12));

    const AntichainSolution w16 = solve(16, 2.0, AntichainMethod::flow);
    CHECK(w16.weight == doctest::Approx(3.399156399156399).epsilon(1e-12));
    CHECK(d_z_density(s, 16, 2.0) ==
          doctest::Approx(0.360913438760333).epsilon(1e-12));

    const AntichainSolution w20 = solve(20, 1.0, AntichainMethod::flow);
    CHECK(w20.weight == doctest::Approx(1.455477752381777).epsilon(1e-12));
    CHECK(w20.elements.size() == 8);
    CHECK(d_z_density(s, 20, 1.0) ==
          doctest::Approx(0.404553383814689).epsilon(1e-12));

    const AntichainSolution w20z3 = solve(20, 3.0, AntichainMethod::flow);
    CHECK(w20z3.weight == doctest::Approx(12.243218971431046).epsilon(1e-12));
    CHECK(w20z3.elements.size() == 10);

    // Small z favors {1}: at z = 0.5 no antichain beats weight 1.
    const AntichainSolution w20z05 = solve(20, 0.5, AntichainMethod::flow);
    CHECK(w20z05.weight == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(w20z05.elements == std::vector<std::uint64_t>{1});
}

TEST_CASE("single-layer heuristic: frozen value and lower-bound property") {
    const FactorSieve& s = sieve1m();
    const LayerHeuristic lh = layer_heuristic(s, 1'000'000, 1.0);
    CHECK(lh.k_star == 2);
    CHECK(lh.weight == doctest::Approx(3.677024678094497).epsilon(1e-12));
    CHECK(lh.density ==
          doctest::Approx(3.677024678094497 / 14.392726722865724).epsilon(1e-10));

    // The layer is one feasible antichain, never better than the optimum.
    CHECK(layer_heuristic(s, 10'000, 1.0).density <=
          d_z_density(s, 10'000, 1.0, AntichainMethod::flow) + 1e-12);
    CHECK(best_layer_bound(s, 100, 3.0).density <=
          d_z_density(s, 100, 3.0, AntichainMethod::flow) + 1e-12);
    // best_layer_bound optimizes over k, so it dominates the k* pick.
    CHECK(best_layer_bound(s, 10'000, 1.0).density >=
          layer_heuristic(s, 10'000, 1.0).density - 1e-15);

    CHECK_THROWS_AS((void)layer_heuristic(s, 8, 1.0), std::invalid_argument);
    CHECK_THROWS_AS((void)layer_heuristic(s, 100, 2.0), std::domain_error);
}

TEST_CASE("density bound for z > 2: frozen grid values") {
    const FactorSieve& s = sieve1m();
    struct Expect {
        double z;
        std::vector<double> density; // at N = 4, 100, 1000
    };
    const std::vector<Expect> table = {
        {2.1, {0.467878001, 0.297107510, 0.233088176}},
        {3.0, {0.565217391, 0.425562160, 0.379975881}},
        {4.0, {0.640000000, 0.536758996, 0.512236743}},
    };
    const std::vector<std::uint64_t> grid = {4, 100, 1000};
    for (const Expect& e : table) {
        const SarkozyReport rep = sarkozy_bound_check(s, e.z, grid);
        CHECK(rep.all_pass);
        REQUIRE(rep.rows.size() == 3);
        const double floor = (1.0 - 2.0 / e.z) / 3.0;
        for (std::size_t i = 0; i < 3; ++i) {
            INFO("z=", e.z, " N=", grid[i]);
            CHECK(rep.rows[i].method == "flow");
            CHECK(rep.rows[i].density == doctest::Approx(e.density[i]).epsilon(1e-8));
            CHECK(rep.rows[i].bound == doctest::Approx(floor).epsilon(1e-12));
            CHECK(rep.rows[i].pass);
            CHECK(rep.rows[i].density > rep.rows[i].bound);
        }
    }
    CHECK_THROWS_AS((void)sarkozy_bound_check(s, 2.0, grid), std::domain_error);
    CHECK_THROWS_AS((void)sarkozy_bound_check(s, 3.0, {3}), std::invalid_argument);
}

TEST_CASE("solver guards and scaling limits") {
    const FactorSieve& s = sieve1m();
    CHECK_THROWS_AS((void)build_poset(s, 0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS((void)build_poset(s, 100, 0.0), std::domain_error);
    CHECK_THROWS_AS((void)solve(100'001, 1.0, AntichainMethod::flow), resource_error);
    CHECK_THROWS_AS((void)solve(41, 1.0, AntichainMethod::brute), resource_error);

    // Automatic resolves to flow.
    const AntichainSolution a = solve(50, 1.0, AntichainMethod::automatic);
    CHECK(a.method == "flow");
    CHECK(a.certificate_ok);
}

TEST_CASE("z = 2 optimum stays under the odd-prime Euler product") {
    // Every antichain avoiding divisor chains has z = 2 weight at most
    // prod_{2 < p <= N} (1 - 2/p)^{-1}; check the exact optimum respects it.
    const FactorSieve& s = sieve1m();
    const AntichainSolution a = solve(100, 2.0, AntichainMethod::flow);
    long double cap = 1.0L;
    for (std::uint32_t p : s.primes_upto(100))
        if (p > 2) cap /= (1.0L - 2.0L / p);
    CHECK(a.certificate_ok);
    CHECK(a.weight < static_cast<double>(cap));
}

TEST_CASE("poset structure: weights and covers") {
    const FactorSieve& s = sieve1m();
    const DivisibilityPoset p = build_poset(s, 12, 1.5);
    REQUIRE(p.weights.size() == 13);
    CHECK(p.weights[1] == 1.0);
    CHECK(p.weights[6] == doctest::Approx(1.5 * 1.5 / 6.0));
    CHECK(p.weights[8] == doctest::Approx(std::pow(1.5, 3) / 8.0));
    CHECK(p.covers[6] == std::vector<std::uint32_t>{12});
    CHECK(p.covers[4] == std::vector<std::uint32_t>{8, 12});
    CHECK(p.covers[12].empty());
    // Threaded build is identical.
    const DivisibilityPoset pt = build_poset(s, 12, 1.5, 4);
    CHECK(pt.weights == p.weights);
}
