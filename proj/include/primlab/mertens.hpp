#pragma once

// Partial Euler products, the Mertens-normalized family mu_x(z), and the
// certified bracket bundle (m_lower, M_upper, r_upper) used by the
// strong-prime certification engine.  All bundle quantities are outward
// rounded: every *_lower is a true lower bound and every *_upper a true
// upper bound for the corresponding infinite product / sup / inf, assuming
// only IEEE double arithmetic and the frozen tail constants (which are
// re-validated against prime zeta series in the test suite).

#include <cstdint>
#include <string>
#include <vector>

#include "primlab/arith.hpp"
#include "primlab/special.hpp"

namespace primlab {

// log of prod_{p < x} (1 - z/p), exact over the sieved primes.
// Degenerate case z == 2, x > 2: the p = 2 factor vanishes; the state is
// flagged and log_value is -infinity.
struct EulerProductState {
    double z = 0.0;
    double cutoff_x = 2.0;
    double log_value = 0.0;  // log prod_{p<x} (1 - z/p)
    double err = 0.0;        // 0: the finite product is exact up to rounding
    bool degenerate_zero = false;

    double value() const;
};

// pre: 0 <= z <= 2, x >= 2, x <= sieve.limit() + 1.
EulerProductState euler_product(const FactorSieve& sieve, double z, double x);

// C_z = prod_p (1 - z/p)^{-1} (1 - 1/p)^z, truncated at `cutoff` with the
// exact series tail folded into .err.  Domain: 0 < z < 2.
ValueWithError c_z_const(double z, std::uint64_t cutoff);

// mu_x(z) = e^{gamma z} C_z (log x)^z prod_{p<x} (1 - z/p).
// Domain: 0 < z < 2, x >= 2.  Error combines the C_z tail bound with a
// rounding allowance for the finite product.
ValueWithError mu_x(const FactorSieve& sieve, double z, double x,
                    std::uint64_t cutoff);

// Certified bracket bundle at a prime q:
//   mu_lo <= mu_q(z) <= mu_hi,
//   m_lower <= inf_{p >= q, p prime} mu_p(z),
//   M_upper >= sup_{p >= q, p prime} mu_p(z)  (= sup over real y >= q),
//   r_upper >= sup_{p >= q} ( sup_{p' >= p} mu_{p'}(z) ) / mu_p(z).
// `mu` is the geometric midpoint of [mu_lo, mu_hi].
struct MertensBundle {
    std::uint64_t q = 0;
    double z = 0.0;
    double mu = 0.0;
    double mu_lo = 0.0;
    double mu_hi = 0.0;
    double m_lower = 0.0;
    double M_upper = 0.0;
    double r_upper = 0.0;
};

// pre: q an odd prime (q = 2 unsupported), 0 < z <= 2, cutoff >= 300.
// Primes in [q, cutoff] are bracketed via exact finite products; the
// uniform beyond-cutoff brackets come from explicit Mertens error terms
// and the prime-square tail sums S2/S3 (computed with outward slack).
MertensBundle mertens_bundle(const FactorSieve& sieve, std::uint64_t q,
                             double z, std::uint64_t cutoff = 300);

// One row of a grid inequality check.
struct GridCheckRow {
    double x = 0.0;
    double lhs = 0.0;
    double bound = 0.0;
    bool pass = false;
    bool skipped = false;
    std::string note;
};

struct GridCheckReport {
    std::string check_name;
    std::vector<GridCheckRow> rows;
    bool all_pass = true;  // over non-skipped rows
};

// prod_{p <= x} (1 - 1/p)^{-1}  <=  e^gamma (log x) (1 + 2 / log^2 x),
// claimed for x >= 286; smaller grid entries are skipped with a note.
GridCheckReport mertens3_check(const FactorSieve& sieve,
                               const std::vector<double>& x_grid);

// Exhaustive integer sweep of the same inequality on [286, x_max].
// Checking at every integer dominates all real x: the left side only
// jumps up at primes and the right side is increasing.
SweepSummary mertens3_sweep(const FactorSieve& sieve, std::uint64_t x_max);

// prod_{2 < p <= N} (1 - 2/p)^{-1}  <=  2.486 (log N)^2, N >= 2.
GridCheckReport two_product_check(const FactorSieve& sieve,
                                  const std::vector<double>& n_grid);

// Exhaustive integer sweep on [2, n_max].
SweepSummary two_product_sweep(const FactorSieve& sieve, std::uint64_t n_max);

}  // namespace primlab
