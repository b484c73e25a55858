#include "primlab/primsets.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "primlab/errors.hpp"

namespace primlab {

namespace {

bool trial_is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

void check_in_sieve(const std::vector<std::uint64_t>& a, const FactorSieve& sieve,
                    std::uint64_t min_value) {
    for (std::uint64_t v : a) {
        if (v < min_value)
            throw std::domain_error("set element below the supported minimum");
        if (v > sieve.limit())
            throw resource_error("set element exceeds sieve limit");
    }
}

// Rank of the order-maximal prime dividing a (P'(a)); a = 1 maps to rank 0,
// below every prime, so that its product prefix is empty and L_1 = Z+.
std::uint64_t max_prime_rank(const FactorSieve& sieve, const PrimeOrder& order,
                             std::uint64_t a) {
    std::uint64_t best = 0;
    std::uint64_t n = a;
    while (n > 1) {
        std::uint64_t p = sieve.spf(n);
        best = std::max(best, order.rank(p));
        while (n % p == 0) n /= p;
    }
    return best;
}

// Rank of the order-minimal prime dividing b (p'(b)); b = 1 maps to the
// infinite sentinel.
std::uint64_t min_prime_rank(const FactorSieve& sieve, const PrimeOrder& order,
                             std::uint64_t b) {
    std::uint64_t best = order.rank(kInfinitePrime);
    std::uint64_t n = b;
    while (n > 1) {
        std::uint64_t p = sieve.spf(n);
        best = std::min(best, order.rank(p));
        while (n % p == 0) n /= p;
    }
    return best;
}

// Shared evaluator for sums of the shape
//   sum_a weight(a) * prod_{p before P'(a)} (1 - f(p))
// in extended precision.  For the increasing order the prefix products are
// tabulated once over all primes up to max P'(a); general orders memoize
// per distinct P'(a).
double weighted_prefix_sum(const std::vector<std::uint64_t>& a,
                           const PrimeOrder& order, const FactorSieve& sieve,
                           const std::function<double(std::uint64_t)>& f_at_prime,
                           const std::function<double(const Factorization&)>& weight) {
    long double total = 0.0L;
    if (order.is_increasing()) {
        std::uint32_t max_p = 0;
        for (std::uint64_t v : a)
            if (v > 1) max_p = std::max(max_p, sieve.largest_prime_factor(v));
        std::vector<std::uint32_t> primes =
            max_p >= 2 ? sieve.primes_upto(max_p) : std::vector<std::uint32_t>{};
        std::vector<long double> prefix(primes.size() + 1, 1.0L);
        for (std::size_t j = 0; j < primes.size(); ++j)
            prefix[j + 1] = prefix[j] * (1.0L - static_cast<long double>(f_at_prime(primes[j])));
        for (std::uint64_t v : a) {
            Factorization fact = factorize(sieve, v);
            long double prod = 1.0L;
            if (v > 1) {
                std::uint32_t top = fact.largest_prime();
                std::size_t j = static_cast<std::size_t>(
                    std::lower_bound(primes.begin(), primes.end(), top) - primes.begin());
                prod = prefix[j];
            }
            total += static_cast<long double>(weight(fact)) * prod;
        }
        return static_cast<double>(total);
    }

    std::map<std::uint64_t, long double> memo;  // keyed by rank of P'(a)
    for (std::uint64_t v : a) {
        Factorization fact = factorize(sieve, v);
        std::uint64_t top_rank = max_prime_rank(sieve, order, v);
        auto it = memo.find(top_rank);
        if (it == memo.end()) {
            long double prod = 1.0L;
            for (std::uint64_t p : order.listed()) {
                if (order.rank(p) >= top_rank) continue;
                prod *= 1.0L - static_cast<long double>(f_at_prime(p));
            }
            // Unlisted primes precede rank R iff L + p < R.
            std::uint64_t l = order.listed().size();
            if (top_rank > l) {
                std::uint64_t p_max = top_rank - l - 1;
                if (p_max >= 2) {
                    for (std::uint32_t p : sieve.primes_upto(std::min<std::uint64_t>(
                             p_max, sieve.limit()))) {
                        if (order.rank(p) < top_rank && order.rank(p) >= l)
                            prod *= 1.0L - static_cast<long double>(f_at_prime(p));
                    }
                }
            }
            it = memo.emplace(top_rank, prod).first;
        }
        total += static_cast<long double>(weight(fact)) * it->second;
    }
    return static_cast<double>(total);
}

}  // namespace

PrimeOrder PrimeOrder::increasing() { return PrimeOrder{}; }

PrimeOrder PrimeOrder::with_prefix(std::vector<std::uint64_t> listed) {
    PrimeOrder o;
    for (std::size_t i = 0; i < listed.size(); ++i) {
        if (!trial_is_prime(listed[i]))
            throw std::invalid_argument("PrimeOrder: listed entries must be prime");
        if (!o.index_.emplace(listed[i], i).second)
            throw std::invalid_argument("PrimeOrder: listed primes must be distinct");
    }
    o.listed_ = std::move(listed);
    return o;
}

std::uint64_t PrimeOrder::rank(std::uint64_t p) const {
    if (p == kInfinitePrime) return kInfinitePrime;
    auto it = index_.find(p);
    if (it != index_.end()) return it->second;
    return listed_.size() + p;
}

MultiplicativeWeight MultiplicativeWeight::z_over_p(double z) {
    if (!(z > 0.0 && z <= 2.0))
        throw std::domain_error("MultiplicativeWeight: z must lie in (0, 2]");
    MultiplicativeWeight w;
    w.z_kind_ = true;
    w.z_ = z;
    return w;
}

MultiplicativeWeight MultiplicativeWeight::table(std::map<std::uint64_t, double> values) {
    for (const auto& [p, v] : values) {
        if (!trial_is_prime(p))
            throw std::invalid_argument("MultiplicativeWeight: table keys must be prime");
        if (!(v >= 0.0 && v <= 1.0))
            throw std::domain_error("MultiplicativeWeight: values must lie in [0, 1]");
    }
    MultiplicativeWeight w;
    w.z_kind_ = false;
    w.table_ = std::move(values);
    return w;
}

double MultiplicativeWeight::at_prime(std::uint64_t p) const {
    if (z_kind_) return z_ / static_cast<double>(p);
    auto it = table_.find(p);
    return it == table_.end() ? 0.0 : it->second;
}

double MultiplicativeWeight::value(const Factorization& fact) const {
    double v = 1.0;
    for (const auto& [p, e] : fact.factors) v *= std::pow(at_prime(p), e);
    return v;
}

bool is_primitive(const std::vector<std::uint64_t>& a, const FactorSieve& sieve) {
    check_in_sieve(a, sieve, 1);
    if (a.empty()) return true;
    std::vector<std::uint64_t> s(a);
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    const std::uint64_t hi = s.back();
    std::vector<bool> divisible(hi + 1, false);
    for (std::uint64_t v : s) {
        if (divisible[v]) return false;
        for (std::uint64_t m = 2 * v; m <= hi; m += v) divisible[m] = true;
    }
    return true;
}

bool l_member(const FactorSieve& sieve, const PrimeOrder& order, std::uint64_t a,
              std::uint64_t n) {
    if (a == 0 || n == 0) throw std::domain_error("l_member: arguments must be positive");
    if (n > sieve.limit()) throw resource_error("l_member: n exceeds sieve limit");
    if (n % a != 0) return false;
    if (a == 1) return true;
    std::uint64_t b = n / a;
    return max_prime_rank(sieve, order, a) <= min_prime_rank(sieve, order, b);
}

bool is_l_primitive(const std::vector<std::uint64_t>& a, const PrimeOrder& order,
                    const FactorSieve& sieve) {
    check_in_sieve(a, sieve, 1);
    std::vector<std::uint64_t> s(a);
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = 0; j < s.size(); ++j)
            if (i != j && l_member(sieve, order, s[i], s[j])) return false;
    return true;
}

double erdos_sum(const std::vector<std::uint64_t>& a, double z,
                 const FactorSieve& sieve) {
    if (!(z > 0.0 && z <= 2.0))
        throw std::domain_error("erdos_sum: z must lie in (0, 2]");
    for (std::uint64_t v : a)
        if (v < 2) throw std::domain_error("erdos_sum: elements must be >= 2");
    check_in_sieve(a, sieve, 2);
    long double total = 0.0L;
    for (std::uint64_t v : a) {
        double la = std::log(static_cast<double>(v));
        total += static_cast<long double>(
            std::pow(z, sieve.big_omega(v)) / (static_cast<double>(v) * std::pow(la, z)));
    }
    return static_cast<double>(total);
}

double dz_of_l(const std::vector<std::uint64_t>& a, double z,
               const PrimeOrder& order, const FactorSieve& sieve) {
    if (!(z > 0.0 && z <= 2.0))
        throw std::domain_error("dz_of_l: z must lie in (0, 2]");
    for (std::uint64_t v : a)
        if (v < 2) throw std::domain_error("dz_of_l: elements must be >= 2");
    check_in_sieve(a, sieve, 2);
    return weighted_prefix_sum(
        a, order, sieve,
        [z](std::uint64_t p) { return z / static_cast<double>(p); },
        [z](const Factorization& fact) {
            return std::pow(z, fact.big_omega()) / static_cast<double>(fact.n);
        });
}

InequalityResult erdos_inequality_check(const std::vector<std::uint64_t>& a,
                                        const MultiplicativeWeight& f,
                                        const PrimeOrder& order,
                                        const FactorSieve& sieve) {
    if (!is_l_primitive(a, order, sieve))
        throw std::invalid_argument(
            "erdos_inequality_check: the set is not L-primitive under this order");
    InequalityResult r;
    r.lhs = weighted_prefix_sum(
        a, order, sieve, [&f](std::uint64_t p) { return f.at_prime(p); },
        [&f](const Factorization& fact) { return f.value(fact); });
    r.pass = r.lhs <= 1.0 + 1e-12;
    return r;
}

void enumerate_antichains(std::uint64_t range_hi, const FactorSieve& sieve,
                          const std::function<void(const std::vector<std::uint64_t>&)>& emit,
                          std::uint64_t range_lo) {
    if (range_lo < 1 || range_lo > range_hi)
        throw std::invalid_argument("enumerate_antichains: need 1 <= range_lo <= range_hi");
    if (range_hi > 40)
        throw resource_error("enumerate_antichains: range_hi must be <= 40");
    if (range_hi > sieve.limit())
        throw resource_error("enumerate_antichains: range exceeds sieve limit");

    // Elements in decreasing order; conflicts[i] marks every j whose value
    // divides or is divided by values[i].
    std::vector<std::uint64_t> values;
    for (std::uint64_t v = range_hi; v >= range_lo; --v) values.push_back(v);
    const std::size_t n = values.size();
    std::vector<std::uint64_t> conflicts(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && (values[i] % values[j] == 0 || values[j] % values[i] == 0))
                conflicts[i] |= std::uint64_t{1} << j;

    std::vector<std::uint64_t> current;
    const std::function<void(std::size_t, std::uint64_t)> descend =
        [&](std::size_t pos, std::uint64_t banned) {
            if (pos == n) {
                std::vector<std::uint64_t> out(current.rbegin(), current.rend());
                emit(out);
                return;
            }
            descend(pos + 1, banned);
            if (!(banned >> pos & 1)) {
                current.push_back(values[pos]);
                descend(pos + 1, banned | conflicts[pos]);
                current.pop_back();
            }
        };
    descend(0, 0);
}

std::vector<std::vector<std::uint64_t>> all_antichains(std::uint64_t range_hi,
                                                       const FactorSieve& sieve,
                                                       std::uint64_t range_lo) {
    std::vector<std::vector<std::uint64_t>> out;
    enumerate_antichains(
        range_hi, sieve,
        [&out](const std::vector<std::uint64_t>& a) { out.push_back(a); }, range_lo);
    return out;
}

std::uint64_t count_antichains_bitmask(std::uint64_t range_hi, const FactorSieve& sieve,
                                       std::uint64_t range_lo) {
    if (range_lo < 1 || range_lo > range_hi)
        throw std::invalid_argument("count_antichains_bitmask: need 1 <= range_lo <= range_hi");
    const std::uint64_t width = range_hi - range_lo + 1;
    if (width > 20)
        throw resource_error("count_antichains_bitmask: range width must be <= 20");
    if (range_hi > sieve.limit())
        throw resource_error("count_antichains_bitmask: range exceeds sieve limit");

    std::vector<std::uint32_t> conflicts(width, 0);
    for (std::uint64_t i = 0; i < width; ++i)
        for (std::uint64_t j = 0; j < width; ++j) {
            std::uint64_t vi = range_lo + i, vj = range_lo + j;
            if (i != j && (vi % vj == 0 || vj % vi == 0))
                conflicts[i] |= std::uint32_t{1} << j;
        }
    std::uint64_t count = 0;
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << width); ++mask) {
        bool ok = true;
        for (std::uint32_t m = mask; m && ok; m &= m - 1) {
            unsigned i = static_cast<unsigned>(__builtin_ctz(m));
            ok = (conflicts[i] & mask) == 0;
        }
        if (ok) ++count;
    }
    return count;
}

bool lset_disjointness_check(const std::vector<std::uint64_t>& a,
                             const PrimeOrder& order, std::uint64_t b_hi,
                             const FactorSieve& sieve) {
    if (!is_l_primitive(a, order, sieve))
        throw std::invalid_argument(
            "lset_disjointness_check: the set is not L-primitive under this order");
    if (b_hi > sieve.limit())
        throw resource_error("lset_disjointness_check: b_hi exceeds sieve limit");
    std::vector<std::uint64_t> s(a);
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    for (std::uint64_t n = 1; n <= b_hi; ++n) {
        int owners = 0;
        for (std::uint64_t v : s) {
            if (l_member(sieve, order, v, n) && ++owners > 1) return false;
        }
    }
    return true;
}

std::vector<std::uint64_t> tightness_layer(unsigned i, unsigned c,
                                           std::uint64_t x_hi,
                                           const FactorSieve& sieve) {
    if (i < 1) throw std::invalid_argument("tightness_layer: i must be >= 1");
    if (x_hi > sieve.limit())
        throw resource_error("tightness_layer: x_hi exceeds sieve limit");

    std::vector<std::uint32_t> odd_primes;
    std::uint64_t p = 2;
    while (odd_primes.size() < i) {
        p = sieve.next_prime(p);
        if (p > 2) odd_primes.push_back(static_cast<std::uint32_t>(p));
    }
    const std::uint64_t pi = odd_primes.back();

    std::vector<std::uint64_t> out;
    for (std::uint64_t n = pi; n <= x_hi; n += pi) {
        std::uint64_t b = n / pi;
        if (sieve.big_omega(b) != c) continue;
        if (b % 2 == 0) continue;
        bool coprime = true;
        for (std::uint32_t q : odd_primes)
            if (b % q == 0) {
                coprime = false;
                break;
            }
        if (coprime) out.push_back(n);
    }
    return out;
}

}  // namespace primlab
