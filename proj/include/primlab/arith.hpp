#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace primlab {

// Smallest-prime-factor sieve over [0, limit] with O(1) queries for the
// number of prime factors with multiplicity (big_omega) and the number
// of distinct prime factors (small_omega).
class FactorSieve {
  public:
    std::uint32_t limit() const { return limit_; }
    bool is_prime(std::uint64_t n) const { return n >= 2 && n <= limit_ && spf(n) == n; }
    std::uint32_t spf(std::uint64_t n) const; // smallest prime factor, n in [2, limit]
    unsigned big_omega(std::uint64_t n) const { check(n); return big_[n]; }
    unsigned small_omega(std::uint64_t n) const { check(n); return small_[n]; }

    // Largest prime factor of n (n >= 2); the slow walk is fine because
    // factorizations have O(log n) steps.
    std::uint32_t largest_prime_factor(std::uint64_t n) const;

    // All primes <= hi (hi <= limit), ascending.
    std::vector<std::uint32_t> primes_upto(std::uint64_t hi) const;
    // Smallest prime strictly greater than n; throws resource_error if
    // none exists within the sieve.
    std::uint32_t next_prime(std::uint64_t n) const;

  private:
    friend FactorSieve build_sieve(std::uint64_t limit);
    void check(std::uint64_t n) const;
    std::uint32_t limit_ = 0;
    std::vector<std::uint32_t> spf_;
    std::vector<std::uint8_t> big_;
    std::vector<std::uint8_t> small_;
};

// Builds the sieve; limit must be in [2, 2^31).  Memory is about
// 6 bytes per integer.
FactorSieve build_sieve(std::uint64_t limit);

// Prime factorization as (prime, exponent) pairs in ascending prime order.
struct Factorization {
    std::uint64_t n = 1;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> factors;

    unsigned big_omega() const;
    unsigned small_omega() const { return static_cast<unsigned>(factors.size()); }
    std::uint32_t largest_prime() const; // 0 for n = 1
    std::uint32_t smallest_prime() const; // 0 for n = 1
};

Factorization factorize(const FactorSieve& sieve, std::uint64_t n);

// #{ n <= x : big_omega(n) = k }.  k = 0 counts only n = 1.
std::uint64_t count_layer(const FactorSieve& sieve, unsigned k, std::uint64_t x);

// The elements of the k-th layer up to x, ascending.
std::vector<std::uint64_t> enumerate_layer(const FactorSieve& sieve, unsigned k, std::uint64_t x);

struct LayerBoundRow {
    unsigned k;
    std::uint64_t x;
    std::uint64_t count;
    double bound;
    bool pass;
};

struct LayerBoundReport {
    std::vector<LayerBoundRow> rows;
    bool all_pass = true;
};

// Checks  #{n <= x : big_omega(n) = k}  <=  1.35 * k^3 * x * log(x) / 2^k
// on the given grid of x values (entries below 3 are skipped: the bound
// only claims x >= 3) for 1 <= k <= k_max.
LayerBoundReport check_layer_bound(const FactorSieve& sieve, unsigned k_max,
                                   const std::vector<std::uint64_t>& x_grid);

struct SweepSummary {
    std::uint64_t checks = 0;
    bool all_pass = true;
    double worst_margin = 1e300; // min of (bound - count) or (rhs - lhs)
    double worst_x = 0;
    unsigned worst_k = 0;
};

// Exhaustive version of check_layer_bound: the count function jumps only
// at layer elements and the bound is increasing in x, so verifying at
// x = 3 and at every layer element n in [3, x_max] covers all real x in
// [3, x_max].
SweepSummary layer_bound_sweep(const FactorSieve& sieve, unsigned k_max, std::uint64_t x_max);

struct DivisorBoundRow {
    std::uint64_t z_hi;
    unsigned a;
    std::uint64_t count;
    double bound;
    bool pass;
};

// #{ n <= Z : small_omega(n) >= A }  <=  1.123 * 2^{-A} * Z * log(Z + 2).
DivisorBoundRow divisor_bound_check(const FactorSieve& sieve, std::uint64_t Z, unsigned A);

// Exhaustive sweep over Z in [1, z_max] and A in [0, a_max]: counts jump
// only when small_omega(n) >= A, and the bound increases in Z, so it is
// checked at every jump point and at Z = 1.
SweepSummary divisor_bound_sweep(const FactorSieve& sieve, unsigned a_max, std::uint64_t z_max);

} // namespace primlab
