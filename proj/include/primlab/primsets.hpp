#pragma once

// Primitive and L-primitive set machinery: divisibility antichain
// predicates, weighted Erdős-type sums, the generalized inequality
//   sum_{a in A} f(a) prod_{p before P'(a)} (1 - f(p))  <=  1
// for L-primitive A, exhaustive antichain enumeration over small ranges,
// and finite truncations of the layered tightness construction.

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "primlab/arith.hpp"

namespace primlab {

// Sentinel standing for the "prime" +infinity: the smallest-prime side of
// an empty factorization (p'(1)) ranks above every actual prime.
inline constexpr std::uint64_t kInfinitePrime = ~std::uint64_t{0};

// A linear order on the primes: either the usual increasing order, or an
// explicit finite prefix (listed primes first, in list order) followed by
// all remaining primes in increasing order.
class PrimeOrder {
  public:
    static PrimeOrder increasing();
    // `listed` must be distinct primes; they become the order's prefix.
    static PrimeOrder with_prefix(std::vector<std::uint64_t> listed);

    bool is_increasing() const { return listed_.empty(); }
    const std::vector<std::uint64_t>& listed() const { return listed_; }

    // Total-order rank: listed primes get 0..L-1, every other prime p gets
    // L + p, and kInfinitePrime ranks above all.
    std::uint64_t rank(std::uint64_t p) const;
    // Strict precedence p before r.
    bool before(std::uint64_t p, std::uint64_t r) const { return rank(p) < rank(r); }

  private:
    std::vector<std::uint64_t> listed_;
    std::map<std::uint64_t, std::uint64_t> index_;
};

// A completely multiplicative weight with 0 <= f(p) <= 1: either
// f(p) = z/p (requires z in (0, 2] so that every value stays in [0, 1]),
// or an explicit table (primes absent from the table get f(p) = 0).
class MultiplicativeWeight {
  public:
    static MultiplicativeWeight z_over_p(double z);
    static MultiplicativeWeight table(std::map<std::uint64_t, double> values);

    double at_prime(std::uint64_t p) const;
    // f(n) = prod f(p)^e over the factorization; f(1) = 1.
    double value(const Factorization& fact) const;

  private:
    bool z_kind_ = true;
    double z_ = 1.0;
    std::map<std::uint64_t, double> table_;
};

// True iff no element divides a distinct element.  Duplicates collapse
// (set semantics); 1 in A forces A = {1}.  Elements must lie in
// [1, sieve limit].
bool is_primitive(const std::vector<std::uint64_t>& a, const FactorSieve& sieve);

// Membership n in L_a = { a b : P'(a) precedes-or-equals p'(b), or b = 1 },
// where P'(a) is the order-maximal prime of a and p'(b) the order-minimal
// prime of b (p'(1) = kInfinitePrime).  a = 1 gives L_1 = all of Z+.
bool l_member(const FactorSieve& sieve, const PrimeOrder& order, std::uint64_t a,
              std::uint64_t n);

// True iff a' is outside L_a for all distinct a, a' in A.  Pairwise
// membership testing is exact: two overlapping L-sets force one generator
// into the other's L-set.
bool is_l_primitive(const std::vector<std::uint64_t>& a, const PrimeOrder& order,
                    const FactorSieve& sieve);

// sum over a in A of z^Omega(a) / (a (log a)^z); finite-sum semantics.
// Requires z in (0, 2] and every a >= 2 (a = 1 has log a = 0).
double erdos_sum(const std::vector<std::uint64_t>& a, double z,
                 const FactorSieve& sieve);

// sum over a in A of z^Omega(a)/a * prod_{p before P'(a)} (1 - z/p), the
// z-logarithmic density of the union of the L_a.  Requires every a >= 2.
// Internally evaluated in extended precision so that the telescoping
// identity over prime sets holds to 1e-14 even for 10^4 terms.
double dz_of_l(const std::vector<std::uint64_t>& a, double z,
               const PrimeOrder& order, const FactorSieve& sieve);

struct InequalityResult {
    double lhs = 0.0;
    bool pass = false;
};

// Checks sum_{a in A} f(a) prod_{p before P'(a)} (1 - f(p)) <= 1 + 1e-12.
// Throws std::invalid_argument when A is not L-primitive under the order
// (the inequality is only claimed for L-primitive sets).
InequalityResult erdos_inequality_check(const std::vector<std::uint64_t>& a,
                                        const MultiplicativeWeight& f,
                                        const PrimeOrder& order,
                                        const FactorSieve& sieve);

// Calls `emit` once for every divisibility antichain of [range_lo, range_hi]
// (the empty set and singletons included), each sorted ascending, in a
// deterministic order: recursive descent over elements taken in decreasing
// order, skip branch before take branch, with divisor-mask pruning.
// Guard: range_hi <= 40.
void enumerate_antichains(std::uint64_t range_hi, const FactorSieve& sieve,
                          const std::function<void(const std::vector<std::uint64_t>&)>& emit,
                          std::uint64_t range_lo = 1);

// Materialized variant of enumerate_antichains (same order).
std::vector<std::vector<std::uint64_t>> all_antichains(std::uint64_t range_hi,
                                                       const FactorSieve& sieve,
                                                       std::uint64_t range_lo = 1);

// Independent oracle: counts antichains of [range_lo, range_hi] by scanning
// all bitmask subsets.  Guard: range width <= 20.
std::uint64_t count_antichains_bitmask(std::uint64_t range_hi, const FactorSieve& sieve,
                                       std::uint64_t range_lo = 1);

// Verifies that the truncations L_a intersect [1, b_hi] pairwise disjointly
// by direct membership testing of every n <= b_hi.  Throws
// std::invalid_argument when A is not L-primitive.
bool lset_disjointness_check(const std::vector<std::uint64_t>& a,
                             const PrimeOrder& order, std::uint64_t b_hi,
                             const FactorSieve& sieve);

// Finite truncation of the i-th layer of the tightness construction:
// { p_i b : b odd, coprime to the first i odd primes, Omega(b) = c }
// intersected with [1, x_hi], where p_i is the i-th odd prime.  Ascending.
std::vector<std::uint64_t> tightness_layer(unsigned i, unsigned c,
                                           std::uint64_t x_hi,
                                           const FactorSieve& sieve);

}  // namespace primlab
