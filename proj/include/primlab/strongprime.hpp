#pragma once

// Certification that primes are z-strong: for a prime q and exponent z the
// quantity b_q(z) = I(z) * r_q(z) * mu_q(z) / m_q(z) is an upper bound for
// the obstruction ratio, and b_q(z) < 1 certifies q as z-strong.  The
// routines here evaluate a rigorous upper bound for b_q(z) from a
// MertensBundle, propagate it across z-intervals with the explicit
// logarithmic-derivative constant 3.54, and assemble full certificates
// over prime ranges with an always-on uniform tail argument covering all
// primes beyond the examined range.

#include <cstdint>
#include <string>
#include <vector>

#include "primlab/arith.hpp"
#include "primlab/mertens.hpp"
#include "primlab/special.hpp"

namespace primlab {

// I(z) = integral_0^1 (1 + t^(2/z))^(-z) dt for z in (0, 2].
// I(1) = pi/4 and I(2) = 1/2.
ValueWithError i_of_z(double z);

// Upper bound for b_q(z) assembled from a bundle's outward-rounded
// brackets; includes a fixed allowance for the I(z) quadrature.
double b_q_upper(const MertensBundle& bundle);

// One certified z-interval: bound >= sup over [z_lo, z_hi] of b_q, obtained
// by anchoring at the left endpoint and applying the one-sided Lipschitz
// inequality  b_q(z) <= b_q(a) * (1 + 3.54 d / (1 - 3.54 d)),  d = z - a.
struct CertInterval {
    double z_lo = 0.0;
    double z_hi = 0.0;
    double bound = 0.0;         // certified upper bound over the interval
    double anchor_z = 0.0;      // left endpoint where b was evaluated
    double anchor_value = 0.0;  // b upper bound at the anchor
};

// Certify a single interval for a single prime.  Requires
// 0 < z_lo < z_hi <= 2 and z_hi - z_lo <= 0.25.
CertInterval certify_interval(const FactorSieve& sieve, std::uint64_t q,
                              double z_lo, double z_hi,
                              std::uint64_t cutoff = 300);

struct SubdivisionConfig {
    double initial_width = 0.01;  // target width of the first-pass chunks
    double min_width = 1e-6;      // refinement floor; below it -> inconclusive
};

// Certificate for one prime over the full requested z-range: the covering
// intervals in ascending order and the verdict ("pass" when every interval
// bound is < 1, otherwise "inconclusive" -- a bound >= 1 at the refinement
// floor never demonstrates failure, only exhaustion).
struct PrimeCertificate {
    std::uint64_t q = 0;
    std::vector<CertInterval> intervals;
    bool pass = false;
    std::string verdict;
};

// Uniform argument covering every prime >= q_threshold at once, built from
// the bundle at q_threshold whose M/m/r brackets dominate those of all
// larger primes.
struct TailArgument {
    std::uint64_t q_threshold = 0;
    double uniform_bound = 0.0;  // max certified bound across the z-range
    bool pass = false;
};

struct CertificationReport {
    double z_lo = 0.0;
    double z_hi = 0.0;
    std::uint64_t q_max = 0;
    std::uint64_t cutoff = 300;
    std::vector<PrimeCertificate> primes;  // odd primes in [3, q_max]
    TailArgument tail;
    bool overall = false;
};

// Certify every odd prime q <= q_max as z-strong across [z_lo, z_hi]
// (0 < z_lo < z_hi <= 2), each via adaptive interval subdivision, then add
// the uniform tail argument at the smallest prime above q_max.  Threads
// parallelize across primes; the report is deterministic regardless of
// thread count.
CertificationReport certify_strong(const FactorSieve& sieve, double z_lo,
                                   double z_hi, std::uint64_t q_max,
                                   const SubdivisionConfig& config = {},
                                   unsigned threads = 1,
                                   std::uint64_t cutoff = 300);

}  // namespace primlab
