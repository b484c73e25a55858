#pragma once

// z-logarithmic density of primitive subsets of [1, N]: the weights
// h_z(n) = z^Omega(n)/n, their full sum over [1, N], and the EXACT
// maximum-weight divisibility antichain.  The exact solver uses weighted
// Dilworth duality: the minimum flow that pushes at least h_z(v) through
// every element equals the maximum antichain weight, and is computed as a
// single max-flow on a split-vertex network with the weights carried on
// source/sink arcs under a declared fixed-point rational scaling.

#include <cstdint>
#include <string>
#include <vector>

#include "primlab/arith.hpp"

namespace primlab {

struct DivisibilityPoset {
    std::uint64_t n_hi = 0;
    double z = 1.0;
    std::vector<double> weights;               // weights[n] = z^Omega(n)/n, n in [1, n_hi]
    std::vector<std::vector<std::uint32_t>> covers;  // covers[n] = { n*p : p prime, n*p <= n_hi }
};

// Builds weights and covering relations; weight computation parallelizes
// over elements.
DivisibilityPoset build_poset(const FactorSieve& sieve, std::uint64_t n_hi,
                              double z, int threads = 1);

enum class AntichainMethod { automatic, flow, brute };

struct AntichainSolution {
    std::vector<std::uint64_t> elements;  // ascending
    double weight = 0.0;                  // sum of true (unscaled) weights
    std::string method;                   // "flow" or "brute"
    double dual_value = 0.0;              // optimum certified by the dual side
    bool certificate_ok = false;
};

// Globally optimal antichain.  flow: N <= 1e5; brute: N <= 40 (branch and
// bound, used as an independent oracle); automatic picks flow.  The flow
// certificate checks exact integer equality of primal and dual under the
// declared scaling, that the elements pass is_primitive, and that the true
// weight matches the dual value within 1e-9.
AntichainSolution max_weight_antichain(const DivisibilityPoset& poset,
                                       AntichainMethod method = AntichainMethod::automatic);

// Exact sum_{n <= N} z^Omega(n)/n (compensated extended-precision sum).
double denominator_sum(const FactorSieve& sieve, std::uint64_t n_hi, double z);

// max antichain weight / denominator_sum.
double d_z_density(const FactorSieve& sieve, std::uint64_t n_hi, double z,
                   AntichainMethod method = AntichainMethod::automatic);

struct LayerHeuristic {
    unsigned k_star = 0;
    double weight = 0.0;
    double density = 0.0;
};

// The single-layer lower bound at k* = floor(z log log N): the layer
// {n <= N : Omega(n) = k*} is an antichain, so its density is a lower
// bound for the optimum.  Requires N >= 16 and z in (0, 2).
LayerHeuristic layer_heuristic(const FactorSieve& sieve, std::uint64_t n_hi, double z);

// Best single-layer lower bound over all k (valid for any z > 0); used for
// grid points too large for the exact solver.
LayerHeuristic best_layer_bound(const FactorSieve& sieve, std::uint64_t n_hi, double z);

struct SarkozyRow {
    std::uint64_t n = 0;
    double density = 0.0;  // exact optimum or a certified lower bound
    double bound = 0.0;    // (1 - 2/z)/3
    std::string method;    // "flow" or "layer"
    bool pass = false;
};

struct SarkozyReport {
    double z = 0.0;
    std::vector<SarkozyRow> rows;
    bool all_pass = true;
};

// Checks the density lower bound D_z(N) >= (1 - 2/z)/3 for z > 2 at each
// grid N >= 4 (exact flow optimum up to 1e5, best layer bound beyond).
SarkozyReport sarkozy_bound_check(const FactorSieve& sieve, double z,
                                  const std::vector<std::uint64_t>& n_grid);

}  // namespace primlab
