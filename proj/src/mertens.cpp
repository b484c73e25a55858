#include "primlab/mertens.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>

#include "primlab/errors.hpp"

namespace primlab {

namespace {

// Compensated accumulator for long log-products.
struct KahanSum {
    double sum = 0.0;
    double c = 0.0;
    void add(double v) {
        double y = v - c;
        double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
};

// 1 / (2 log^2(2e9)): uniform Mertens error allowance valid for all primes.
double eps_2e9() {
    static const double v = [] {
        double l = std::log(2.0e9);
        return 1.0 / (2.0 * l * l);
    }();
    return v;
}

// Upper bounds for the beyond-cutoff tail sums
//   S2(X) = sum_{p > X} sum_{m >= 2} 1 / (m p^m)
//   S3(X) = sum_{p > X} sum_{m >= 2} (2^m - 2) / (m p^m)
// so that for the tail factor T(z) = prod_{p > X} (1 - z/p)^{-1} (1 - 1/p)^z:
//   log T(z) in [-z. S2, 0] for z in (0, 1]   and   [0, S3] for z in [1, 2].
// Computed from prime zeta differences for m <= 7 plus an analytic bound on
// the remaining m, all rounded outward.
struct TailSums {
    double s2_up = 0.0;
    double s3_up = 0.0;
};

TailSums tail_sums(const FactorSieve& sieve, std::uint64_t cutoff) {
    static std::mutex mu;
    static std::map<std::uint64_t, TailSums> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(cutoff);
        if (it != cache.end()) return it->second;
    }

    SeriesTolerance tight;
    tight.abs_tol = 1e-15;

    const auto primes = sieve.primes_upto(cutoff);
    double s2 = 0.0;
    double s3 = 0.0;
    for (int m = 2; m <= 7; ++m) {
        KahanSum below;
        for (std::uint64_t p : primes)
            below.add(std::pow(static_cast<double>(p), -m));
        double tail_m = prime_zeta(static_cast<double>(m), tight) - below.sum;
        // Outward allowance for the series tolerance and the cancellation
        // in the difference of two O(1) quantities.
        tail_m = std::max(0.0, tail_m) + 4e-15;
        s2 += tail_m / m;
        s3 += (std::pow(2.0, m) - 2.0) * tail_m / m;
    }
    // Remaining m >= 8, bounded via sum_{p > X} p^{-m} <= 2 X^{1-m}:
    //   sum_{m>=8} a^m/m * 2 X^{1-m} <= (2X/8) (a/X)^8 / (1 - a/X),  a = 1, 2.
    const double X = static_cast<double>(cutoff);
    s2 += (2.0 * X / 8.0) * std::pow(1.0 / X, 8) / (1.0 - 1.0 / X);
    s3 += (2.0 * X / 8.0) * std::pow(2.0 / X, 8) / (1.0 - 2.0 / X);
    TailSums out{s2 * (1.0 + 1e-11) + 1e-12, s3 * (1.0 + 1e-11) + 1e-12};

    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(cutoff, out);
    return out;
}

// Bracket for the tail factor prod_{p > cutoff, p >= start} of mu's
// z-dependent product, uniform over all starting points >= cutoff.
void tail_factor_bracket(double z, const TailSums& ts, double* lo, double* hi) {
    if (z == 1.0) {
        *lo = 1.0;
        *hi = 1.0;
        return;
    }
    *lo = (z < 1.0) ? std::exp(-z * ts.s2_up) : 1.0;
    *hi = (z > 1.0) ? std::exp(ts.s3_up) : 1.0;
}

}  // namespace

double EulerProductState::value() const {
    if (degenerate_zero) return 0.0;
    return std::exp(log_value);
}

EulerProductState euler_product(const FactorSieve& sieve, double z, double x) {
    if (!(z >= 0.0 && z <= 2.0))
        throw std::domain_error("euler_product: z must lie in [0, 2]");
    if (!(x >= 2.0))
        throw std::domain_error("euler_product: x must be >= 2");
    if (x > static_cast<double>(sieve.limit()) + 1.0)
        throw resource_error("euler_product: x exceeds sieve limit");

    EulerProductState st;
    st.z = z;
    st.cutoff_x = x;
    if (z == 2.0 && x > 2.0) {
        st.degenerate_zero = true;
        st.log_value = -std::numeric_limits<double>::infinity();
        return st;
    }
    KahanSum ks;
    for (std::uint64_t p : sieve.primes_upto(static_cast<std::uint64_t>(x))) {
        if (static_cast<double>(p) < x) ks.add(std::log1p(-z / static_cast<double>(p)));
    }
    st.log_value = ks.sum;
    return st;
}

ValueWithError c_z_const(double z, std::uint64_t cutoff) {
    SeriesTolerance tol;
    tol.prime_cutoff = cutoff;
    return c_of_z(z, tol);
}

ValueWithError mu_x(const FactorSieve& sieve, double z, double x,
                    std::uint64_t cutoff) {
    if (!(z > 0.0 && z < 2.0))
        throw std::domain_error("mu_x: z must lie in (0, 2)");
    if (!(x >= 2.0))
        throw std::domain_error("mu_x: x must be >= 2");
    if (x > static_cast<double>(sieve.limit()) + 1.0)
        throw resource_error("mu_x: x exceeds sieve limit");

    ValueWithError c = c_z_const(z, cutoff);
    KahanSum ks;
    for (std::uint64_t p : sieve.primes_upto(static_cast<std::uint64_t>(x))) {
        if (static_cast<double>(p) < x) ks.add(std::log1p(-z / static_cast<double>(p)));
    }
    double v = std::exp(kEulerGamma * z + std::log(c.value) +
                        z * std::log(std::log(x)) + ks.sum);
    double err = v * (c.err / c.value + 1e-13);
    return {v, err};
}

MertensBundle mertens_bundle(const FactorSieve& sieve, std::uint64_t q,
                             double z, std::uint64_t cutoff) {
    if (q == 2)
        throw std::invalid_argument(
            "mertens_bundle: q = 2 is unsupported (certification targets odd primes)");
    if (q < 3 || q > sieve.limit() || !sieve.is_prime(q))
        throw std::invalid_argument("mertens_bundle: q must be an odd prime within the sieve");
    if (!(z > 0.0 && z <= 2.0))
        throw std::domain_error("mertens_bundle: z must lie in (0, 2]");
    if (cutoff < 300 || cutoff > sieve.limit())
        throw std::invalid_argument("mertens_bundle: cutoff must lie in [300, sieve limit]");

    const double slack = 1e-12;  // outward rounding allowance per bracket side
    const TailSums ts = tail_sums(sieve, cutoff);
    double tlo = 0.0, thi = 0.0;
    tail_factor_bracket(z, ts, &tlo, &thi);

    // Uniform bracket for all primes p > cutoff, anchored at the first one.
    const std::uint64_t pt = sieve.next_prime(cutoff);
    const double lpt = std::log(static_cast<double>(pt));
    const double lo1_t = 1.0 - 1.0 / (2.0 * lpt * lpt);
    const double hi1_t = 1.0 + std::min(eps_2e9(), 1.0 / (2.0 * lpt * lpt));
    const double TLO = std::pow(lo1_t, z) * tlo * (1.0 - slack);
    const double THI = std::pow(hi1_t, z) * thi * (1.0 + slack);

    // Exact log mu_p(1) for the primes in [q, cutoff], via the prefix
    // product over r < p, plus the finite z-dependent suffix over
    // r in [p, cutoff].
    const auto all = sieve.primes_upto(cutoff);
    std::vector<double> lmu1;
    std::vector<std::uint64_t> ps;
    {
        KahanSum prefix;
        for (std::uint64_t p : all) {
            double pd = static_cast<double>(p);
            if (p >= q) {
                ps.push_back(p);
                lmu1.push_back(kEulerGamma + std::log(std::log(pd)) + prefix.sum);
            }
            prefix.add(std::log1p(-1.0 / pd));
        }
    }
    const std::size_t n = ps.size();
    std::vector<double> lo(n), hi(n);
    {
        KahanSum suffix;
        for (std::size_t i = n; i-- > 0;) {
            double r = static_cast<double>(ps[i]);
            suffix.add(z * std::log1p(-1.0 / r) - std::log1p(-z / r));
            double core = std::exp(z * lmu1[i] + suffix.sum);
            lo[i] = core * tlo * (1.0 - slack);
            hi[i] = core * thi * (1.0 + slack);
        }
    }

    MertensBundle b;
    b.q = q;
    b.z = z;
    b.m_lower = TLO;
    b.M_upper = THI;
    for (std::size_t i = 0; i < n; ++i) {
        b.m_lower = std::min(b.m_lower, lo[i]);
        b.M_upper = std::max(b.M_upper, hi[i]);
    }
    // r_q(z) = sup_p (sup_{p' >= p} mu_{p'}) / mu_p: suffix maxima of the
    // upper brackets against the per-prime lower bracket, plus the uniform
    // beyond-cutoff ratio.
    b.r_upper = THI / TLO;
    {
        double suffhi = THI;
        for (std::size_t i = n; i-- > 0;) {
            suffhi = std::max(suffhi, hi[i]);
            b.r_upper = std::max(b.r_upper, suffhi / lo[i]);
        }
    }
    if (n > 0) {
        b.mu_lo = lo[0];
        b.mu_hi = hi[0];
    } else {
        // q itself lies beyond the cutoff: bracket mu_q(1) by the explicit
        // Mertens error terms at q.
        double lq = std::log(static_cast<double>(q));
        b.mu_lo = std::pow(1.0 - 1.0 / (2.0 * lq * lq), z) * tlo * (1.0 - slack);
        b.mu_hi = std::pow(1.0 + std::min(eps_2e9(), 1.0 / (2.0 * lq * lq)), z) * thi *
                  (1.0 + slack);
    }
    b.mu = std::sqrt(b.mu_lo * b.mu_hi);
    return b;
}

namespace {

double mertens3_bound_log(double x) {
    double lx = std::log(x);
    return kEulerGamma + std::log(lx) + std::log1p(2.0 / (lx * lx));
}

double two_product_bound_log(double n) {
    return std::log(2.486) + 2.0 * std::log(std::log(n));
}

}  // namespace

GridCheckReport mertens3_check(const FactorSieve& sieve,
                               const std::vector<double>& x_grid) {
    GridCheckReport rep;
    rep.check_name = "mertens3";
    for (double x : x_grid) {
        GridCheckRow row;
        row.x = x;
        if (x < 286.0) {
            row.skipped = true;
            row.note = "bound stated for x >= 286";
            rep.rows.push_back(row);
            continue;
        }
        if (x > static_cast<double>(sieve.limit()))
            throw resource_error("mertens3_check: grid point exceeds sieve limit");
        KahanSum ks;
        for (std::uint64_t p : sieve.primes_upto(static_cast<std::uint64_t>(x))) {
            if (static_cast<double>(p) <= x) ks.add(std::log1p(-1.0 / static_cast<double>(p)));
        }
        double lhs_log = -ks.sum;
        double bound_log = mertens3_bound_log(x);
        row.lhs = std::exp(lhs_log);
        row.bound = std::exp(bound_log);
        row.pass = lhs_log <= bound_log;
        rep.all_pass = rep.all_pass && row.pass;
        rep.rows.push_back(row);
    }
    return rep;
}

SweepSummary mertens3_sweep(const FactorSieve& sieve, std::uint64_t x_max) {
    if (x_max > sieve.limit())
        throw resource_error("mertens3_sweep: x_max exceeds sieve limit");
    SweepSummary s;
    KahanSum ks;
    for (std::uint64_t x = 2; x <= x_max; ++x) {
        if (sieve.is_prime(x)) ks.add(std::log1p(-1.0 / static_cast<double>(x)));
        if (x < 286) continue;
        double margin = mertens3_bound_log(static_cast<double>(x)) - (-ks.sum);
        ++s.checks;
        if (margin < s.worst_margin) {
            s.worst_margin = margin;
            s.worst_x = x;
        }
        if (margin < 0.0) s.all_pass = false;
    }
    return s;
}

GridCheckReport two_product_check(const FactorSieve& sieve,
                                  const std::vector<double>& n_grid) {
    GridCheckReport rep;
    rep.check_name = "two-product";
    for (double nd : n_grid) {
        if (nd < 2.0)
            throw std::invalid_argument("two_product_check: N must be >= 2");
        if (nd > static_cast<double>(sieve.limit()))
            throw resource_error("two_product_check: grid point exceeds sieve limit");
        GridCheckRow row;
        row.x = nd;
        KahanSum ks;
        for (std::uint64_t p : sieve.primes_upto(static_cast<std::uint64_t>(nd))) {
            if (p > 2 && static_cast<double>(p) <= nd)
                ks.add(std::log1p(-2.0 / static_cast<double>(p)));
        }
        double lhs_log = -ks.sum;
        double bound_log = two_product_bound_log(nd);
        row.lhs = std::exp(lhs_log);
        row.bound = std::exp(bound_log);
        row.pass = lhs_log <= bound_log;
        rep.all_pass = rep.all_pass && row.pass;
        rep.rows.push_back(row);
    }
    return rep;
}

SweepSummary two_product_sweep(const FactorSieve& sieve, std::uint64_t n_max) {
    if (n_max > sieve.limit())
        throw resource_error("two_product_sweep: n_max exceeds sieve limit");
    SweepSummary s;
    KahanSum ks;
    for (std::uint64_t n = 2; n <= n_max; ++n) {
        if (n > 2 && sieve.is_prime(n)) ks.add(std::log1p(-2.0 / static_cast<double>(n)));
        double margin = two_product_bound_log(static_cast<double>(n)) - (-ks.sum);
        ++s.checks;
        if (margin < s.worst_margin) {
            s.worst_margin = margin;
            s.worst_x = n;
        }
        if (margin < 0.0) s.all_pass = false;
    }
    return s;
}

}  // namespace primlab
