#include "primlab/suite.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "primlab/density.hpp"
#include "primlab/errors.hpp"
#include "primlab/mertens.hpp"
#include "primlab/primsets.hpp"
#include "primlab/report.hpp"
#include "primlab/special.hpp"
#include "primlab/strongprime.hpp"

namespace primlab {

namespace {

// Empirical band for D_2(N) * log N over N in [1e2, 1e5], recorded at the
// first full run (measured 1.2974 / 1.5006 / 1.6147 / 1.6986); the theory
// gives boundedness, not the constants.
constexpr double kD2BandLo = 1.25;
constexpr double kD2BandHi = 1.75;

std::string fmt(double v) { return format_double(v); }

CriterionResult certification(const FactorSieve& sieve, SuiteLevel level, int threads) {
    CriterionResult r{1, "certification", false, level == SuiteLevel::smoke, ""};
    const std::uint64_t q_max = level == SuiteLevel::smoke     ? 30
                                : level == SuiteLevel::desk    ? 300
                                                               : 1000;
    CertificationReport rep = certify_strong(sieve, 0.44, 2.0, q_max, {}, threads);
    r.pass = rep.overall;
    std::ostringstream os;
    os << "z in [0.44, 2], odd primes <= " << q_max << ": "
       << (rep.overall ? "all certified" : "NOT certified") << "; tail at q >= "
       << rep.tail.q_threshold << " uniform bound " << fmt(rep.tail.uniform_bound);
    if (level == SuiteLevel::smoke) os << " (reduced prime range at smoke scale)";
    r.detail = os.str();
    return r;
}

CriterionResult inequality_exhaustive(const FactorSieve& sieve, SuiteLevel level,
                                      int /*threads*/) {
    (void)level;
    CriterionResult r{2, "erdos-inequality-exhaustive", false, false, ""};
    const std::uint64_t lo = 2, hi = 12;
    const auto chains = all_antichains(hi, sieve, lo);
    const std::uint64_t bitmask_count = count_antichains_bitmask(hi, sieve, lo);
    const bool counts_agree = chains.size() == bitmask_count;

    const PrimeOrder inc = PrimeOrder::increasing();
    bool all_pass = true;
    double max_lhs = 0.0;
    for (double z : {0.5, 1.0, 1.5, 1.99}) {
        const MultiplicativeWeight f = MultiplicativeWeight::z_over_p(z);
        for (const auto& a : chains) {
            InequalityResult res = erdos_inequality_check(a, f, inc, sieve);
            max_lhs = std::max(max_lhs, res.lhs);
            all_pass = all_pass && res.pass;
        }
    }
    r.pass = counts_agree && all_pass;
    std::ostringstream os;
    os << "antichains of [2, 12]: recursive " << chains.size() << " vs bitmask "
       << bitmask_count << (counts_agree ? " (agree)" : " (MISMATCH)")
       << "; inequality over 4 z-values: " << (all_pass ? "all hold" : "VIOLATED")
       << ", max lhs " << fmt(max_lhs);
    r.detail = os.str();
    return r;
}

CriterionResult gamma6_minimality(const FactorSieve& sieve, SuiteLevel level,
                                  int /*threads*/) {
    CriterionResult r{3, "gamma6-minimality", false, level == SuiteLevel::smoke, ""};
    const auto batch = gamma_k_batch(12, 1.0);
    std::map<unsigned, GammaKResult> by_k;
    for (const auto& g : batch) by_k[g.k] = g;
    bool min_at_6 = true;
    for (unsigned k = 1; k <= 12; ++k)
        if (k != 6 && !(by_k.at(6).value < by_k.at(k).value)) min_at_6 = false;

    std::ostringstream os;
    os << "gamma_k(1) for k=1..12 has minimum at k=6: " << (min_at_6 ? "yes" : "NO")
       << " (gamma_6 = " << fmt(by_k.at(6).value) << ")";

    bool agree = true;
    if (level == SuiteLevel::smoke) {
        os << "; quadrature/direct-sum cross-check needs desk scale (cutoff 1e6), "
              "skipped at smoke";
    } else {
        const std::uint64_t cutoff = std::min<std::uint64_t>(1000000, sieve.limit());
        for (unsigned k = 1; k <= 8; ++k) {
            DirectSumResult ds = direct_sum_oracle(sieve, k, 1.0, cutoff);
            const GammaKResult& g = by_k.at(k);
            const bool ok = g.value + g.est_error >= ds.partial &&
                            g.value - g.est_error <= ds.partial + ds.tail_bound;
            agree = agree && ok;
        }
        os << "; quadrature agrees with direct sum (cutoff " << cutoff
           << ", k <= 8): " << (agree ? "yes" : "NO");
    }
    r.pass = min_at_6 && agree;
    r.detail = os.str();
    return r;
}

CriterionResult gamma_asymptotic_rate(const FactorSieve& /*sieve*/, SuiteLevel /*level*/,
                                      int /*threads*/) {
    CriterionResult r{4, "gamma-asymptotic-rate", false, false, ""};
    const auto batch = gamma_k_batch(25, 1.0);
    std::map<unsigned, double> dev;
    for (const auto& g : batch) dev[g.k] = std::fabs(g.value - 1.0);

    bool decreasing = true;
    for (unsigned k = 10; k < 25; ++k)
        if (!(dev.at(k + 1) < dev.at(k))) decreasing = false;

    bool ratio_ok = true;
    double ratio_lo = 1e300, ratio_hi = 0.0;
    for (unsigned k = 18; k <= 25; ++k) {
        const double main_term = 1.0 - gamma_k_asymptotic(k, 1.0, AsymptoticVariant::eq1);
        const double ratio = dev.at(k) / main_term;
        ratio_lo = std::min(ratio_lo, ratio);
        ratio_hi = std::max(ratio_hi, ratio);
        if (!(ratio >= 0.5 && ratio <= 2.0)) ratio_ok = false;
    }
    r.pass = decreasing && ratio_ok;
    std::ostringstream os;
    os << "|gamma_k(1) - 1| decreasing for k=10..25: " << (decreasing ? "yes" : "NO")
       << "; ratio to the explicit 2^-k k^2 main term in [0.5, 2] for k=18..25: "
       << (ratio_ok ? "yes" : "NO") << " (observed [" << fmt(ratio_lo) << ", "
       << fmt(ratio_hi) << "])";
    r.detail = os.str();
    return r;
}

CriterionResult closed_form_specials(const FactorSieve& sieve, SuiteLevel level,
                                     int /*threads*/) {
    CriterionResult r{5, "closed-form-specials", false, false, ""};
    const ValueWithError i1 = i_of_z(1.0);
    const ValueWithError i2 = i_of_z(2.0);
    const bool i_ok = std::fabs(i1.value - 3.14159265358979323846 / 4.0) <= 1e-10 &&
                      std::fabs(i2.value - 0.5) <= 1e-10;

    const ValueWithError g1 = big_G(1.0);
    const ValueWithError c1 = c_of_z(1.0);
    const bool const_ok = std::fabs(g1.value - 1.0) <= g1.err + 1e-12 &&
                          std::fabs(c1.value - 1.0) <= c1.err + 1e-12;

    const std::size_t k_max = level == SuiteLevel::smoke  ? 1000
                              : level == SuiteLevel::desk ? 10000
                                                          : 100000;
    std::vector<std::uint64_t> primes;
    {
        std::uint64_t p = 1;
        while (primes.size() < k_max) {
            p = sieve.next_prime(p);
            primes.push_back(p);
        }
    }
    const PrimeOrder inc = PrimeOrder::increasing();
    bool tele_ok = true;
    double worst = 0.0;
    for (double z : {1.0, 1.99}) {
        for (std::size_t k : {std::size_t{1}, std::size_t{10}, std::size_t{100},
                              std::size_t{1000}, k_max}) {
            std::vector<std::uint64_t> a(primes.begin(), primes.begin() + k);
            const double lhs = dz_of_l(a, z, inc, sieve);
            long double prod = 1.0L;
            for (std::uint64_t p : a) prod *= 1.0L - static_cast<long double>(z) / p;
            const double rhs = static_cast<double>(1.0L - prod);
            const double diff = std::fabs(lhs - rhs);
            worst = std::max(worst, diff);
            if (diff > 1e-14) tele_ok = false;
        }
    }
    r.pass = i_ok && const_ok && tele_ok;
    std::ostringstream os;
    os << "I(1)=pi/4, I(2)=1/2 to 1e-10: " << (i_ok ? "yes" : "NO") << "; G(1)=1, C_1=1: "
       << (const_ok ? "yes" : "NO") << "; telescoping over first " << k_max
       << " primes to 1e-14: " << (tele_ok ? "yes" : "NO") << " (worst "
       << fmt(worst) << ")";
    r.detail = os.str();
    return r;
}

CriterionResult explicit_constant_sweeps(const FactorSieve& sieve, SuiteLevel level,
                                         int /*threads*/) {
    CriterionResult r{6, "explicit-constant-sweeps", false,
                      level == SuiteLevel::smoke, ""};
    const std::uint64_t x_max = level == SuiteLevel::smoke  ? 10000
                                : level == SuiteLevel::desk ? 1000000
                                                            : 10000000;
    const std::uint64_t z_max = level == SuiteLevel::smoke  ? 10000
                                : level == SuiteLevel::desk ? 100000
                                                            : 1000000;

    SweepSummary layers = layer_bound_sweep(sieve, 20, x_max);
    SweepSummary twoprod = two_product_sweep(sieve, x_max);
    SweepSummary divisors = divisor_bound_sweep(sieve, 16, z_max);
    SweepSummary m3 = mertens3_sweep(sieve, x_max);

    r.pass = layers.all_pass && twoprod.all_pass && divisors.all_pass && m3.all_pass;
    std::ostringstream os;
    os << "layer counts (k<=20, x<=" << x_max << "): " << (layers.all_pass ? "ok" : "FAIL")
       << "; two-product (N<=" << x_max << "): " << (twoprod.all_pass ? "ok" : "FAIL")
       << "; divisor tail (A<=16, Z<=" << z_max << "): "
       << (divisors.all_pass ? "ok" : "FAIL") << "; Mertens-286 (x<=" << x_max
       << "): " << (m3.all_pass ? "ok" : "FAIL");
    r.detail = os.str();
    return r;
}

CriterionResult dz_exactness(const FactorSieve& sieve, SuiteLevel level, int /*threads*/) {
    CriterionResult r{7, "dz-exactness", false, level == SuiteLevel::smoke, ""};
    const std::uint64_t n_max = level == SuiteLevel::smoke ? 12 : 20;

    bool oracle_ok = true;
    for (double z : {0.5, 1.0, 2.0, 3.0}) {
        for (std::uint64_t n = 1; n <= n_max; ++n) {
            DivisibilityPoset poset = build_poset(sieve, n, z);
            AntichainSolution flow = max_weight_antichain(poset, AntichainMethod::flow);
            AntichainSolution brute = max_weight_antichain(poset, AntichainMethod::brute);
            if (std::fabs(flow.weight - brute.weight) > 1e-12 || !flow.certificate_ok ||
                !brute.certificate_ok)
                oracle_ok = false;
        }
    }

    const double d14 = d_z_density(sieve, 4, 1.0, AntichainMethod::flow);
    const double d16 = d_z_density(sieve, 6, 1.0, AntichainMethod::flow);
    const bool pinned_ok =
        std::fabs(d14 - 12.0 / 25.0) <= 1e-12 && std::fabs(d16 - 62.0 / 147.0) <= 1e-12;

    std::vector<std::uint64_t> grid = level == SuiteLevel::smoke
                                          ? std::vector<std::uint64_t>{4, 100}
                                      : level == SuiteLevel::desk
                                          ? std::vector<std::uint64_t>{4, 100, 1000}
                                          : std::vector<std::uint64_t>{4, 100, 1000, 10000};
    bool sarkozy_ok = true;
    for (double z : {2.1, 3.0, 4.0})
        sarkozy_ok = sarkozy_ok && sarkozy_bound_check(sieve, z, grid).all_pass;

    r.pass = oracle_ok && pinned_ok && sarkozy_ok;
    std::ostringstream os;
    os << "flow == brute for N<=" << n_max << ", z in {0.5,1,2,3}: "
       << (oracle_ok ? "yes" : "NO") << "; D_1(4)=12/25 and D_1(6)=62/147: "
       << (pinned_ok ? "yes" : "NO") << " (got " << fmt(d14) << ", " << fmt(d16)
       << "); Sarkozy bound for z in {2.1,3,4}: " << (sarkozy_ok ? "pass" : "FAIL");
    r.detail = os.str();
    return r;
}

CriterionResult d2_band(const FactorSieve& sieve, SuiteLevel level, int /*threads*/) {
    CriterionResult r{8, "d2-band", false, level == SuiteLevel::smoke, ""};
    std::vector<std::uint64_t> grid =
        level == SuiteLevel::smoke ? std::vector<std::uint64_t>{100, 1000}
        : level == SuiteLevel::desk
            ? std::vector<std::uint64_t>{100, 1000, 10000}
            : std::vector<std::uint64_t>{100, 1000, 10000, 100000};
    bool ok = true;
    std::ostringstream vals;
    for (std::uint64_t n : grid) {
        const double v =
            d_z_density(sieve, n, 2.0, AntichainMethod::flow) * std::log(static_cast<double>(n));
        if (!(v >= kD2BandLo && v <= kD2BandHi)) ok = false;
        vals << " " << fmt(v);
    }
    r.pass = ok;
    std::ostringstream os;
    os << "D_2(N) log N at N in {1e2..}:" << vals.str() << "; inside recorded band ["
       << fmt(kD2BandLo) << ", " << fmt(kD2BandHi) << "]: " << (ok ? "yes" : "NO");
    r.detail = os.str();
    return r;
}

CriterionResult dz_convergence(const FactorSieve& sieve, SuiteLevel level,
                               int /*threads*/) {
    CriterionResult r{9, "dz-convergence", false, false, ""};
    std::vector<std::uint64_t> cutoffs =
        level == SuiteLevel::smoke ? std::vector<std::uint64_t>{1000, 10000}
        : level == SuiteLevel::desk
            ? std::vector<std::uint64_t>{10000, 100000, 1000000}
            : std::vector<std::uint64_t>{10000, 100000, 1000000, 10000000};
    const PrimeOrder inc = PrimeOrder::increasing();
    std::vector<double> values;
    for (std::uint64_t x : cutoffs) {
        std::vector<std::uint64_t> layer = enumerate_layer(sieve, 2, x);
        values.push_back(dz_of_l(layer, 1.0, inc, sieve));
    }
    bool monotone = true;
    for (std::size_t i = 1; i < values.size(); ++i)
        if (values[i] < values[i - 1]) monotone = false;

    std::ostringstream os;
    os << "truncated d_1(L) over the 2-prime-factor layer:";
    for (std::size_t i = 0; i < values.size(); ++i)
        os << " [" << cutoffs[i] << "] " << fmt(values[i]);
    os << "; monotone in the cutoff: " << (monotone ? "yes" : "NO");

    if (level == SuiteLevel::smoke) {
        // The 0.9 threshold is a desk-scale claim; at cutoff 1e4 the true
        // value is ~0.74, so only monotonicity is asserted here.
        r.scale_limited = true;
        r.pass = monotone;
        os << "; 0.9 threshold not asserted at smoke scale";
    } else {
        const bool target = values.back() > 0.9;
        r.pass = monotone && target;
        os << "; final value " << fmt(values.back())
           << (target ? " > 0.9" : " <= 0.9 -- the stated 0.9 threshold is not reached: "
                                   "the truncated density converges logarithmically, "
                                   "gaining only ~0.02-0.04 per decade of cutoff");
    }
    r.detail = os.str();
    return r;
}

}  // namespace

SuiteLevel parse_suite_level(const std::string& name) {
    if (name == "smoke") return SuiteLevel::smoke;
    if (name == "desk") return SuiteLevel::desk;
    if (name == "extended") return SuiteLevel::extended;
    throw std::invalid_argument("unknown suite level: " + name);
}

const char* suite_level_name(SuiteLevel level) {
    switch (level) {
        case SuiteLevel::smoke: return "smoke";
        case SuiteLevel::desk: return "desk";
        case SuiteLevel::extended: return "extended";
    }
    return "unknown";
}

std::uint64_t suite_required_sieve(SuiteLevel level) {
    switch (level) {
        case SuiteLevel::smoke: return 10000;
        case SuiteLevel::desk: return 1000000;
        case SuiteLevel::extended: return 10000000;
    }
    return 0;
}

CriterionResult run_criterion(const FactorSieve& sieve, int id, SuiteLevel level,
                              int threads) {
    if (sieve.limit() < suite_required_sieve(level))
        throw resource_error("suite: sieve limit below the level's requirement");
    switch (id) {
        case 1: return certification(sieve, level, threads);
        case 2: return inequality_exhaustive(sieve, level, threads);
        case 3: return gamma6_minimality(sieve, level, threads);
        case 4: return gamma_asymptotic_rate(sieve, level, threads);
        case 5: return closed_form_specials(sieve, level, threads);
        case 6: return explicit_constant_sweeps(sieve, level, threads);
        case 7: return dz_exactness(sieve, level, threads);
        case 8: return d2_band(sieve, level, threads);
        case 9: return dz_convergence(sieve, level, threads);
        default: throw std::invalid_argument("run_criterion: id must be 1..9");
    }
}

std::vector<CriterionResult> run_suite(const FactorSieve& sieve, SuiteLevel level,
                                       int threads) {
    std::vector<CriterionResult> out;
    for (int id = 1; id <= 9; ++id) out.push_back(run_criterion(sieve, id, level, threads));
    return out;
}

}  // namespace primlab
