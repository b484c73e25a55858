#include "primlab/arith.hpp"

#include "primlab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace primlab {

void FactorSieve::check(std::uint64_t n) const {
    if (n < 1 || n > limit_)
        throw std::invalid_argument("value " + std::to_string(n) + " outside sieve range [1, " +
                                    std::to_string(limit_) + "]");
}

std::uint32_t FactorSieve::spf(std::uint64_t n) const {
    check(n);
    if (n < 2)
        throw std::invalid_argument("smallest prime factor undefined for n = 1");
    return spf_[n];
}

std::uint32_t FactorSieve::largest_prime_factor(std::uint64_t n) const {
    check(n);
    if (n < 2)
        throw std::invalid_argument("largest prime factor undefined for n = 1");
    std::uint32_t last = 0;
    while (n > 1) {
        last = spf_[n];
        n /= last;
    }
    return last;
}

std::vector<std::uint32_t> FactorSieve::primes_upto(std::uint64_t hi) const {
    if (hi > limit_)
        throw resource_error("primes_upto(" + std::to_string(hi) + ") exceeds sieve limit " +
                             std::to_string(limit_));
    std::vector<std::uint32_t> ps;
    for (std::uint64_t n = 2; n <= hi; ++n)
        if (spf_[n] == n)
            ps.push_back(static_cast<std::uint32_t>(n));
    return ps;
}

std::uint32_t FactorSieve::next_prime(std::uint64_t n) const {
    for (std::uint64_t m = n + 1; m <= limit_; ++m)
        if (m >= 2 && spf_[m] == m)
            return static_cast<std::uint32_t>(m);
    throw resource_error("no prime greater than " + std::to_string(n) + " within sieve limit " +
                         std::to_string(limit_));
}

FactorSieve build_sieve(std::uint64_t limit) {
    if (limit < 2)
        throw std::invalid_argument("sieve limit must be at least 2");
    if (limit >= (1ull << 31))
        throw resource_error("sieve limit " + std::to_string(limit) + " exceeds 2^31 - 1");
    FactorSieve s;
    s.limit_ = static_cast<std::uint32_t>(limit);
    s.spf_.assign(limit + 1, 0);
    s.big_.assign(limit + 1, 0);
    s.small_.assign(limit + 1, 0);
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (s.spf_[i] == 0) { // prime
            for (std::uint64_t j = i; j <= limit; j += i)
                if (s.spf_[j] == 0)
                    s.spf_[j] = static_cast<std::uint32_t>(i);
        }
    }
    // big_omega/small_omega by peeling one smallest prime factor: both
    // tables for m = n / spf(n) are already filled when n is reached.
    for (std::uint64_t n = 2; n <= limit; ++n) {
        std::uint64_t m = n / s.spf_[n];
        s.big_[n] = static_cast<std::uint8_t>(s.big_[m] + 1);
        s.small_[n] = static_cast<std::uint8_t>(s.small_[m] + (m % s.spf_[n] != 0 ? 1 : 0));
    }
    return s;
}

unsigned Factorization::big_omega() const {
    unsigned k = 0;
    for (auto& [p, e] : factors)
        k += e;
    return k;
}

std::uint32_t Factorization::largest_prime() const {
    return factors.empty() ? 0 : factors.back().first;
}

std::uint32_t Factorization::smallest_prime() const {
    return factors.empty() ? 0 : factors.front().first;
}

Factorization factorize(const FactorSieve& sieve, std::uint64_t n) {
    if (n < 1 || n > sieve.limit())
        throw std::invalid_argument("factorize: n outside sieve range");
    Factorization f;
    f.n = n;
    while (n > 1) {
        std::uint32_t p = sieve.spf(n);
        std::uint32_t e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        f.factors.emplace_back(p, e);
    }
    return f;
}

std::uint64_t count_layer(const FactorSieve& sieve, unsigned k, std::uint64_t x) {
    if (x > sieve.limit())
        throw resource_error("count_layer: x exceeds sieve limit");
    if (x < 1)
        return 0;
    if (k == 0)
        return 1; // only n = 1
    std::uint64_t c = 0;
    for (std::uint64_t n = 2; n <= x; ++n)
        if (sieve.big_omega(n) == k)
            ++c;
    return c;
}

std::vector<std::uint64_t> enumerate_layer(const FactorSieve& sieve, unsigned k,
                                           std::uint64_t x) {
    if (x > sieve.limit())
        throw resource_error("enumerate_layer: x exceeds sieve limit");
    std::vector<std::uint64_t> out;
    if (x >= 1 && k == 0) {
        out.push_back(1);
        return out;
    }
    for (std::uint64_t n = 2; n <= x; ++n)
        if (sieve.big_omega(n) == k)
            out.push_back(n);
    return out;
}

static double layer_bound_rhs(unsigned k, double x) {
    return 1.35 * std::pow(static_cast<double>(k), 3) * x * std::log(x) /
           std::pow(2.0, static_cast<double>(k));
}

LayerBoundReport check_layer_bound(const FactorSieve& sieve, unsigned k_max,
                                   const std::vector<std::uint64_t>& x_grid) {
    LayerBoundReport rep;
    for (unsigned k = 1; k <= k_max; ++k) {
        for (std::uint64_t x : x_grid) {
            if (x < 3)
                continue; // the inequality is only claimed for x >= 3
            std::uint64_t c = count_layer(sieve, k, x);
            double b = layer_bound_rhs(k, static_cast<double>(x));
            rep.rows.push_back({k, x, c, b, static_cast<double>(c) <= b});
            rep.all_pass = rep.all_pass && rep.rows.back().pass;
        }
    }
    return rep;
}

SweepSummary layer_bound_sweep(const FactorSieve& sieve, unsigned k_max, std::uint64_t x_max) {
    if (x_max > sieve.limit())
        throw resource_error("layer_bound_sweep: x_max exceeds sieve limit");
    SweepSummary s;
    std::vector<std::uint64_t> cnt(k_max + 2, 0);
    auto note = [&](unsigned k, std::uint64_t x, std::uint64_t c) {
        double b = layer_bound_rhs(k, static_cast<double>(x));
        double margin = b - static_cast<double>(c);
        ++s.checks;
        if (margin < s.worst_margin) {
            s.worst_margin = margin;
            s.worst_x = static_cast<double>(x);
            s.worst_k = k;
        }
        if (margin < 0)
            s.all_pass = false;
    };
    for (std::uint64_t n = 2; n <= x_max; ++n) {
        unsigned k = sieve.big_omega(n);
        if (k <= k_max)
            ++cnt[k];
        if (n == 3) {
            // Left edge of the claimed range: every layer count must
            // already satisfy the bound at x = 3.
            for (unsigned kk = 1; kk <= k_max; ++kk)
                note(kk, 3, cnt[kk]);
        } else if (n > 3 && k >= 1 && k <= k_max) {
            // Between jumps the count is constant while the bound grows,
            // so checking at each jump point (and at x = 3) is exhaustive.
            note(k, n, cnt[k]);
        }
    }
    return s;
}

static double divisor_bound_rhs(unsigned a, double z) {
    return 1.123 * std::pow(2.0, -static_cast<double>(a)) * z * std::log(z + 2.0);
}

DivisorBoundRow divisor_bound_check(const FactorSieve& sieve, std::uint64_t Z, unsigned A) {
    if (Z < 1 || Z > sieve.limit())
        throw std::invalid_argument("divisor_bound_check: Z outside sieve range");
    std::uint64_t c = A == 0 ? Z : 0;
    if (A >= 1)
        for (std::uint64_t n = 2; n <= Z; ++n)
            if (sieve.small_omega(n) >= A)
                ++c;
    double b = divisor_bound_rhs(A, static_cast<double>(Z));
    return {Z, A, c, b, static_cast<double>(c) <= b};
}

SweepSummary divisor_bound_sweep(const FactorSieve& sieve, unsigned a_max, std::uint64_t z_max) {
    if (z_max > sieve.limit())
        throw resource_error("divisor_bound_sweep: z_max exceeds sieve limit");
    SweepSummary s;
    std::vector<std::uint64_t> cnt(a_max + 1, 0);
    cnt[0] = 1; // n = 1 has small_omega = 0
    auto note = [&](unsigned a, std::uint64_t z, std::uint64_t c) {
        double b = divisor_bound_rhs(a, static_cast<double>(z));
        double margin = b - static_cast<double>(c);
        ++s.checks;
        if (margin < s.worst_margin) {
            s.worst_margin = margin;
            s.worst_x = static_cast<double>(z);
            s.worst_k = a;
        }
        if (margin < 0)
            s.all_pass = false;
    };
    note(0, 1, 1);
    for (std::uint64_t n = 2; n <= z_max; ++n) {
        unsigned w = sieve.small_omega(n);
        unsigned top = std::min(w, a_max);
        for (unsigned a = 0; a <= top; ++a)
            ++cnt[a];
        // The count for level a jumps exactly at n with small_omega(n) >= a;
        // the bound is increasing in Z, so jump points are the worst cases.
        for (unsigned a = 0; a <= top; ++a)
            note(a, n, cnt[a]);
    }
    return s;
}

} // namespace primlab
