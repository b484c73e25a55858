#include "primlab/strongprime.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "primlab/quadrature.hpp"
#include "primlab/report.hpp"

namespace primlab {

namespace {

// One-sided logarithmic Lipschitz constant for z -> b_q(z): the right
// derivative of log b_q is at most 3.54 throughout (0, 2), uniformly in q.
constexpr double kLogDerivBound = 3.54;

// Allowance added on top of the reported I(z) quadrature error.
constexpr double kIntegralSlack = 2e-10;

double interval_factor(double width) {
    double d = kLogDerivBound * width;
    // exp(d) <= 1 + d / (1 - d) for d < 1; widths are capped well below 1/3.54.
    return 1.0 + d / (1.0 - d);
}

// Upper bound for the tail quantity sup_{q' >= q} b_{q'}(z): every factor of
// b_{q'} is dominated by the corresponding bracket of the bundle at q.
double tail_b_upper(const MertensBundle& bundle, const ValueWithError& i) {
    double i_hi = i.value + i.err + kIntegralSlack;
    return i_hi * bundle.r_upper * bundle.M_upper / bundle.m_lower;
}

struct IntervalOutcome {
    std::vector<CertInterval> intervals;
    bool pass = true;
    double max_bound = 0.0;
};

// Adaptive subdivision of [z_lo, z_hi]: evaluate the anchored bound on each
// chunk, bisect while it fails, stop refining below the width floor.  The
// evaluator maps an anchor z to an upper bound for the quantity being
// certified at that z.
template <typename Eval>
IntervalOutcome subdivide(double z_lo, double z_hi, const SubdivisionConfig& cfg,
                          const Eval& eval) {
    IntervalOutcome out;
    const double range = z_hi - z_lo;
    const int chunks = std::max(1, static_cast<int>(std::ceil(range / cfg.initial_width)));
    std::vector<std::pair<double, double>> stack;
    for (int i = chunks; i-- > 0;) {
        double a = z_lo + range * i / chunks;
        double b = (i + 1 == chunks) ? z_hi : z_lo + range * (i + 1) / chunks;
        stack.emplace_back(a, b);
    }
    while (!stack.empty()) {
        auto [a, b] = stack.back();
        stack.pop_back();
        double anchor = eval(a);
        double bound = anchor * interval_factor(b - a);
        if (bound < 1.0 || (b - a) * 0.5 < cfg.min_width) {
            out.intervals.push_back({a, b, bound, a, anchor});
            out.max_bound = std::max(out.max_bound, bound);
            if (bound >= 1.0) out.pass = false;
            continue;
        }
        double mid = 0.5 * (a + b);
        stack.emplace_back(mid, b);
        stack.emplace_back(a, mid);
    }
    return out;
}

void validate_range(double z_lo, double z_hi) {
    if (!(z_lo > 0.0 && z_lo < z_hi && z_hi <= 2.0))
        throw std::invalid_argument("z-range must satisfy 0 < z_lo < z_hi <= 2");
}

}  // namespace

ValueWithError i_of_z(double z) {
    if (!(z > 0.0 && z <= 2.0))
        throw std::domain_error("i_of_z: z must lie in (0, 2]");
    const double e = 2.0 / z;
    double err = 0.0;
    double v = integrate_adaptive_scalar(
        [z, e](double t) { return std::pow(1.0 + std::pow(t, e), -z); }, 0.0, 1.0,
        1e-12, &err);
    return {v, err};
}

double b_q_upper(const MertensBundle& bundle) {
    ValueWithError i = i_of_z(bundle.z);
    double i_hi = i.value + i.err + kIntegralSlack;
    return i_hi * bundle.r_upper * bundle.mu_hi / bundle.m_lower;
}

CertInterval certify_interval(const FactorSieve& sieve, std::uint64_t q,
                              double z_lo, double z_hi, std::uint64_t cutoff) {
    validate_range(z_lo, z_hi);
    if (z_hi - z_lo > 0.25)
        throw std::invalid_argument("certify_interval: interval width must be <= 0.25");
    double anchor = b_q_upper(mertens_bundle(sieve, q, z_lo, cutoff));
    CertInterval ci;
    ci.z_lo = z_lo;
    ci.z_hi = z_hi;
    ci.anchor_z = z_lo;
    ci.anchor_value = anchor;
    ci.bound = anchor * interval_factor(z_hi - z_lo);
    return ci;
}

CertificationReport certify_strong(const FactorSieve& sieve, double z_lo,
                                   double z_hi, std::uint64_t q_max,
                                   const SubdivisionConfig& config,
                                   unsigned threads, std::uint64_t cutoff) {
    validate_range(z_lo, z_hi);
    if (q_max < 3)
        throw std::invalid_argument("certify_strong: q_max must be >= 3");
    if (!(config.initial_width > 0.0 && config.initial_width <= 0.25))
        throw std::invalid_argument("certify_strong: initial_width must lie in (0, 0.25]");
    if (!(config.min_width > 0.0))
        throw std::invalid_argument("certify_strong: min_width must be positive");

    CertificationReport rep;
    rep.z_lo = z_lo;
    rep.z_hi = z_hi;
    rep.q_max = q_max;
    rep.cutoff = cutoff;

    std::vector<std::uint64_t> qs;
    for (std::uint32_t p : sieve.primes_upto(q_max))
        if (p >= 3) qs.push_back(p);

    rep.primes.resize(qs.size());
    parallel_for(qs.size(), static_cast<int>(threads), [&](std::size_t i) {
        const std::uint64_t q = qs[i];
        IntervalOutcome oc = subdivide(z_lo, z_hi, config, [&](double a) {
            return b_q_upper(mertens_bundle(sieve, q, a, cutoff));
        });
        PrimeCertificate& pc = rep.primes[i];
        pc.q = q;
        pc.intervals = std::move(oc.intervals);
        pc.pass = oc.pass;
        pc.verdict = oc.pass ? "pass" : "inconclusive";
    });

    const std::uint64_t qt = sieve.next_prime(q_max);
    IntervalOutcome tail = subdivide(z_lo, z_hi, config, [&](double a) {
        return tail_b_upper(mertens_bundle(sieve, qt, a, cutoff), i_of_z(a));
    });
    rep.tail.q_threshold = qt;
    rep.tail.uniform_bound = tail.max_bound;
    rep.tail.pass = tail.pass;

    rep.overall = rep.tail.pass;
    for (const PrimeCertificate& pc : rep.primes) rep.overall = rep.overall && pc.pass;
    return rep;
}

}  // namespace primlab
