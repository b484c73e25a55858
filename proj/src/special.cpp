#include "primlab/special.hpp"

#include "primlab/errors.hpp"
#include "primlab/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <mutex>
#include <stdexcept>

namespace primlab {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

// Stieltjes constants for the Laurent expansion of zeta at s = 1.
constexpr double kStieltjes1 = -0.07281584548367672486058637587490131914;
constexpr double kStieltjes2 = -0.00969036319287231848453038632641571407;

// B_{2j} / (2j)!  for the Euler-Maclaurin correction terms.
constexpr double kBernoulliOverFact[9] = {
    8.3333333333333333e-02,  // B2/2!
    -1.3888888888888889e-03, // B4/4!
    3.3068783068783069e-05,  // B6/6!
    -8.2671957671957672e-07, // B8/8!
    2.0876756987868099e-08,  // B10/10!
    -5.2841901386874932e-10, // B12/12!
    1.3382536530684679e-11,  // B14/14!
    -3.3896802963225829e-13, // B16/16!
    8.5860620562778446e-15,  // B18/18!
};

} // namespace

double zeta_real(double s) {
    if (!(s > 1.0))
        throw std::domain_error("zeta_real: requires s > 1");
    if (s > 60.0) {
        // remainder below 7^-60
        return 1.0 + std::pow(2.0, -s) + std::pow(3.0, -s) + std::pow(4.0, -s) +
               std::pow(5.0, -s) + std::pow(6.0, -s);
    }
    constexpr int N = 32;
    double sum = 0;
    for (int n = 1; n <= N; ++n)
        sum += std::pow(static_cast<double>(n), -s);
    sum += std::pow(static_cast<double>(N), 1.0 - s) / (s - 1.0);
    sum -= 0.5 * std::pow(static_cast<double>(N), -s);
    // correction sum: B_{2j}/(2j)! * s(s+1)...(s+2j-2) * N^{-s-2j+1}
    double poch = s;
    double npow = std::pow(static_cast<double>(N), -s - 1.0);
    for (int j = 0; j < 9; ++j) {
        sum += kBernoulliOverFact[j] * poch * npow;
        poch *= (s + 2 * j + 1) * (s + 2 * j + 2);
        npow /= static_cast<double>(N) * static_cast<double>(N);
    }
    return sum;
}

double gamma_fn(double z) {
    if (!(z > 0.0))
        throw std::domain_error("gamma_fn: requires z > 0");
    // Lanczos, g = 7, 9 coefficients.
    static const double c[9] = {0.99999999999980993,     676.5203681218851,
                                -1259.1392167224028,     771.32342877765313,
                                -176.61502916214059,     12.507343278686905,
                                -0.13857109526572012,    9.9843695780195716e-6,
                                1.5056327351493116e-7};
    if (z < 0.5)
        return kPi / (std::sin(kPi * z) * gamma_fn(1.0 - z));
    const double x = z - 1.0;
    double a = c[0];
    for (int i = 1; i < 9; ++i)
        a += c[i] / (x + i);
    const double t = x + 7.5;
    return std::sqrt(2.0 * kPi) * std::pow(t, x + 0.5) * std::exp(-t) * a;
}

double log_zeta_near_one_t(double t) {
    const double eps = std::exp(-t);
    if (!(eps < 0.02))
        throw std::domain_error("log_zeta_near_one_t: requires e^{-t} < 0.02");
    // eps * zeta(1+eps) = 1 + g0 eps - g1 eps^2 + (g2/2) eps^3 + O(eps^4);
    // the omitted term is below 4e-4 * eps^4.
    const double series =
        eps * (kEulerGamma + eps * (-kStieltjes1 + eps * (0.5 * kStieltjes2)));
    return t + std::log1p(series);
}

namespace {

// Moebius function for the inversion series, precomputed to 256.
const std::array<int, 257>& moebius_table() {
    static std::array<int, 257> mu = [] {
        std::array<int, 257> m{};
        m[1] = 1;
        for (int n = 2; n <= 256; ++n) {
            int v = n, cnt = 0;
            bool squarefree = true;
            for (int p = 2; p * p <= v && squarefree; ++p) {
                if (v % p == 0) {
                    v /= p;
                    ++cnt;
                    if (v % p == 0)
                        squarefree = false;
                }
            }
            if (v > 1)
                ++cnt;
            m[n] = squarefree ? (cnt % 2 == 0 ? 1 : -1) : 0;
        }
        return m;
    }();
    return mu;
}

double prime_zeta_direct_large(double s) {
    // for s >= 40 the sum over {2,3,5,7} already has error < 11^-40
    return std::pow(2.0, -s) + std::pow(3.0, -s) + std::pow(5.0, -s) + std::pow(7.0, -s);
}

// Core inversion series; lz1 is log zeta(s) supplied by the caller when
// a stabilized evaluation is required (NaN means compute internally).
double prime_zeta_impl(double s, double lz1, const SeriesTolerance& tol) {
    if (s >= 40.0)
        return prime_zeta_direct_large(s);
    const auto& mu = moebius_table();
    double acc = 0;
    for (int m = 1; m <= tol.max_terms; ++m) {
        if (mu[static_cast<std::size_t>(m)] == 0)
            continue;
        const double ms = m * s;
        double lz;
        if (m == 1 && !std::isnan(lz1))
            lz = lz1;
        else if (ms > 60.0)
            lz = std::log1p(std::pow(2.0, -ms) + std::pow(3.0, -ms) + std::pow(4.0, -ms) +
                            std::pow(5.0, -ms) + std::pow(6.0, -ms));
        else
            lz = std::log(zeta_real(ms));
        acc += mu[static_cast<std::size_t>(m)] * lz / m;
        if (m >= 2 && std::abs(lz) < 0.5 * tol.abs_tol)
            return acc; // remaining terms are geometrically smaller
    }
    throw convergence_error("prime_zeta: inversion series did not reach tolerance");
}

} // namespace

double prime_zeta(double s, const SeriesTolerance& tol) {
    if (!(s > 1.0))
        throw std::domain_error("prime_zeta: requires s > 1");
    double lz1 = std::numeric_limits<double>::quiet_NaN();
    if (s - 1.0 < 1e-5)
        lz1 = log_zeta_near_one_t(-std::log(s - 1.0));
    return prime_zeta_impl(s, lz1, tol);
}

namespace {

// P(j*s) for j = 1..kmax followed by the layer recursion
//   k * L_k(s) = sum_{j=1}^{k} P(j s) L_{k-j}(s),   L_0 = 1.
void layer_series_at(double s, double lz1, unsigned kmax, const SeriesTolerance& tol,
                     std::vector<double>& lay) {
    std::vector<double> ps(kmax + 1, 0.0);
    for (unsigned j = 1; j <= kmax; ++j)
        ps[j] = prime_zeta_impl(j * s, j == 1 ? lz1 : std::numeric_limits<double>::quiet_NaN(),
                                tol);
    lay.assign(kmax + 1, 0.0);
    lay[0] = 1.0;
    for (unsigned k = 1; k <= kmax; ++k) {
        double acc = 0;
        for (unsigned j = 1; j <= k; ++j)
            acc += ps[j] * lay[k - j];
        lay[k] = acc / static_cast<double>(k);
    }
}

} // namespace

double pk_dirichlet(double s, unsigned k, const SeriesTolerance& tol) {
    if (!(s > 1.0))
        throw std::domain_error("pk_dirichlet: requires s > 1");
    if (k == 0)
        return 1.0;
    if (k > 64)
        throw std::invalid_argument("pk_dirichlet: k > 64 unsupported");
    double lz1 = std::numeric_limits<double>::quiet_NaN();
    if (s - 1.0 < 1e-5)
        lz1 = log_zeta_near_one_t(-std::log(s - 1.0));
    std::vector<double> lay;
    layer_series_at(s, lz1, k, tol, lay);
    return lay[k];
}

namespace {

// ---- analytic tail machinery for the substituted integral ----------------

// C(1.9) = sum_{j>=2} 1.9^j P(j) / j, used by the positive-side bound
//   L_k(1+e^{-t}) <= K * (e t / k)^k   for t >= k/1.9.
double c19_constant() {
    static std::once_flag flag;
    static double value = 0;
    std::call_once(flag, [] {
        SeriesTolerance tol;
        double acc = 0;
        for (int j = 2; j < 2000; ++j) {
            double pj = j >= 40 ? prime_zeta_direct_large(j) : prime_zeta_impl(j, NAN, tol);
            double term = std::pow(1.9, j) * pj / j;
            acc += term;
            if (term < 1e-19 && j > 10)
                break;
        }
        value = acc;
    });
    return value;
}

double log_sum_exp(const std::vector<double>& ls) {
    double m = -std::numeric_limits<double>::infinity();
    for (double v : ls)
        m = std::max(m, v);
    if (std::isinf(m))
        return m;
    double s = 0;
    for (double v : ls)
        s += std::exp(v - m);
    return m + std::log(s);
}

// Bound, already scaled by z^k/Gamma(z), for the part of the integral
// with t > T (equivalently s - 1 < e^{-T}).  Requires T >= k/1.8.
double tail_pos_gamma(unsigned k, double z, double T) {
    const double kk = static_cast<double>(k);
    if (T < kk / 1.8)
        return std::numeric_limits<double>::infinity();
    const double logKp = c19_constant() + 0.65 * 1.9 * std::exp(-T);
    const double x = z * T;
    std::vector<double> ls(k + 1);
    for (unsigned j = 0; j <= k; ++j)
        ls[j] = j * std::log(x) - std::lgamma(j + 1.0);
    const double log_upper_gamma = std::lgamma(kk + 1.0) - x + log_sum_exp(ls);
    const double lg =
        logKp + kk - kk * std::log(kk) + log_upper_gamma - std::log(z) - std::lgamma(z);
    return std::exp(lg);
}

// Bound, scaled by z^k/Gamma(z), for s > 60 (t below -log 59), using
// L_k(s) <= zeta(2) 2^{-k(s-2)}.
double tail_neg_gamma(unsigned k, double z, double s_hi) {
    const double Y = s_hi - 1.0;
    const double L = std::log(2.0);
    const double kk = static_cast<double>(k);
    const double integral =
        std::pow(2.0, -kk * Y) * (Y / (kk * L) + 1.0 / (kk * L * kk * L));
    const double pref = std::pow(z, kk) / gamma_fn(z);
    return pref * zeta_real(2.0) * std::pow(2.0, kk) * integral;
}

double choose_T(unsigned k, double z, double tail_tol) {
    double T = std::max(12.0, k / 1.8 + 4.0);
    for (; T <= 6000.0; T += 8.0)
        if (tail_pos_gamma(k, z, T) <= 0.5 * tail_tol)
            return T;
    throw convergence_error("gamma_k: no truncation point reaches the tail tolerance");
}

constexpr double kSHi = 60.0; // integration stops where the 2^{-ks} bound takes over

} // namespace

std::vector<GammaKResult> gamma_k_batch(unsigned k_max, double z, const QuadratureConfig& qc,
                                        const SeriesTolerance& tol) {
    if (k_max < 1)
        throw std::invalid_argument("gamma_k_batch: k_max >= 1 required");
    if (k_max > 64)
        throw std::invalid_argument("gamma_k_batch: k_max > 64 unsupported");
    if (!(z > 0.0) || z > 2.0)
        throw std::domain_error("gamma_k_batch: z must lie in (0, 2]");
    if (!(qc.split_point > 1.0) || qc.split_point >= kSHi)
        throw std::invalid_argument("gamma_k_batch: split_point must lie in (1, 60)");

    double T = 12.0;
    for (unsigned k = 1; k <= k_max; ++k)
        T = std::max(T, choose_T(k, z, qc.tail_tol));

    // prefactors z^k / Gamma(z) and per-component tolerances in integral space
    const double gz = gamma_fn(z);
    std::vector<double> pref(k_max + 1, 0.0);
    pref[0] = 1.0 / gz;
    for (unsigned k = 1; k <= k_max; ++k)
        pref[k] = pref[k - 1] * z;
    std::vector<double> comp_tol(k_max);
    for (unsigned k = 1; k <= k_max; ++k)
        comp_tol[k - 1] = qc.tail_tol / pref[k];

    // Both schemes integrate L_k(1 + e^{-u}) e^{-zu} du over u in
    // [-log(s_hi - 1), T].  In the first scheme u is read as the
    // substitution variable t; in the second it parametrizes the
    // geometrically graded mesh eps = e^{-u} of the s-space integral
    // Int L_k(1+eps) eps^{z-1} deps, which transforms to the identical
    // integrand.  They differ in mesh seeding: the substituted scheme
    // spends its panels uniformly, the graded scheme doubles panel
    // density below the split point.  Agreement between them is a
    // meaningful cross-check of mesh handling, not of the transform.
    const double u_lo = -std::log(kSHi - 1.0);
    const double u_split = -std::log(qc.split_point - 1.0);
    VectorIntegrand f = [&](double u, std::vector<double>& out) {
        const double eps = std::exp(-u);
        const double s = 1.0 + eps;
        const double lz1 = eps < 0.01 ? log_zeta_near_one_t(u) : std::log(zeta_real(s));
        std::vector<double> lay;
        layer_series_at(s, lz1, k_max, tol, lay);
        const double w = std::exp(-z * u);
        for (unsigned k = 1; k <= k_max; ++k)
            out[k - 1] = lay[k] * w;
    };
    std::vector<double> breaks;
    const bool graded = qc.scheme == QuadratureConfig::Scheme::graded_mesh;
    const double coarse = graded ? 4.0 : 2.0;
    const double fine = graded ? 0.5 : 2.0;
    if (qc.panels > 0) {
        const int n = qc.panels;
        for (int i = 0; i <= n; ++i)
            breaks.push_back(u_lo + (T - u_lo) * i / n);
    } else {
        breaks.push_back(u_lo);
        for (double u = u_lo; u < T;) {
            u += (u < u_split ? coarse : fine);
            breaks.push_back(std::min(u, T));
        }
        if (breaks.back() < T)
            breaks.push_back(T);
    }
    QuadResult quad = integrate_adaptive_weighted(f, breaks, k_max, comp_tol, 9000);

    std::vector<GammaKResult> out(k_max);
    for (unsigned k = 1; k <= k_max; ++k) {
        GammaKResult r;
        r.k = k;
        r.z = z;
        r.method = "quadrature";
        r.value = pref[k] * quad.value[k - 1];
        r.est_error = pref[k] * quad.err[k - 1] + tail_pos_gamma(k, z, T) +
                      tail_neg_gamma(k, z, kSHi) + 2e-12;
        out[k - 1] = r;
    }
    return out;
}

GammaKResult gamma_k(unsigned k, double z, const QuadratureConfig& qc,
                     const SeriesTolerance& tol) {
    return gamma_k_batch(k, z, qc, tol).at(k - 1);
}

namespace {

// primes up to `cutoff` via a plain sieve, cached for reuse
const std::vector<std::uint32_t>& cached_primes(std::uint64_t cutoff) {
    static std::mutex mx;
    static std::uint64_t have = 0;
    static std::vector<std::uint32_t> primes;
    std::lock_guard<std::mutex> lock(mx);
    if (cutoff > have) {
        std::vector<bool> comp(cutoff + 1, false);
        primes.clear();
        for (std::uint64_t i = 2; i <= cutoff; ++i) {
            if (!comp[i]) {
                primes.push_back(static_cast<std::uint32_t>(i));
                for (std::uint64_t j = i * i; j <= cutoff; j += i)
                    comp[j] = true;
            }
        }
        have = cutoff;
    }
    // may contain primes beyond a smaller requested cutoff; callers filter
    return primes;
}

// log of prod_{p<=X} (1-z/p)^{-1} (1-1/p)^z plus the exact series tail
// over p > X, together with a crude error bound.
ValueWithError log_c_product(double z, std::uint64_t cutoff, bool skip_two,
                             const SeriesTolerance& tol) {
    const auto& primes = cached_primes(std::max<std::uint64_t>(cutoff, 1000));
    double acc = 0;
    for (std::uint32_t p : primes) {
        if (p > cutoff)
            break;
        if (skip_two && p == 2)
            continue;
        acc += -std::log1p(-z / p) + z * std::log1p(-1.0 / p);
    }
    // tail over p > cutoff:  sum_{m>=2} (z^m - z)/m * sum_{p>cutoff} p^{-m}
    double err = 1e-14 * (1.0 + std::abs(acc));
    for (int m = 2; m <= 40; ++m) {
        double s_partial = 0;
        for (std::uint32_t p : primes) {
            if (p > cutoff)
                break;
            if (skip_two && p == 2)
                continue;
            s_partial += std::pow(static_cast<double>(p), -m);
        }
        double pm = prime_zeta(static_cast<double>(m), tol);
        if (skip_two)
            pm -= std::pow(2.0, -m);
        const double tail_m = pm - s_partial;
        const double term = (std::pow(z, m) - z) / m * tail_m;
        acc += term;
        // the next omitted term is below  z^{m+1} * sum_{p>cutoff} p^{-(m+1)}
        // which is under  z^{m+1} * cutoff^{-m}
        const double rem =
            2.0 * (std::abs(std::pow(z, m + 1)) + std::abs(z)) *
            std::pow(static_cast<double>(cutoff), -m);
        if (rem < 1e-18) {
            err += rem;
            break;
        }
    }
    return {acc, err};
}

} // namespace

ValueWithError c_of_z(double z, const SeriesTolerance& tol) {
    if (!(z > 0.0) || !(z < 2.0))
        throw std::domain_error("c_of_z: z must lie in (0, 2)");
    ValueWithError lc = log_c_product(z, tol.prime_cutoff, false, tol);
    const double v = std::exp(lc.value);
    return {v, v * (lc.err + 1e-15)};
}

ValueWithError big_G(double z, const SeriesTolerance& tol) {
    ValueWithError c = c_of_z(z, tol);
    const double g = gamma_fn(1.0 + z);
    return {c.value / g, c.err / g + 1e-15};
}

ValueWithError d_w_const(double w, const SeriesTolerance& tol) {
    if (!(w > 0.0) || !(w < 3.0))
        throw std::domain_error("d_w_const: w must lie in (0, 3)");
    ValueWithError lc = log_c_product(w, tol.prime_cutoff, true, tol);
    const double v = std::exp(lc.value - w * std::log(2.0));
    return {v, v * (lc.err + 1e-15)};
}

namespace {

// sum over odd primes of z log p / ((p-1)(p-z-1)), with an integral
// estimate for the part beyond the cutoff
double odd_prime_log_sum(double z, const SeriesTolerance& tol) {
    const auto& primes = cached_primes(tol.prime_cutoff);
    double acc = 0;
    for (std::uint32_t p : primes) {
        if (p > tol.prime_cutoff)
            break;
        if (p == 2)
            continue;
        acc += z * std::log(static_cast<double>(p)) /
               ((p - 1.0) * (p - z - 1.0));
    }
    // beyond the cutoff the summand is ~ z log p / p^2; against the prime
    // counting measure this integrates to about z / cutoff
    acc += z / static_cast<double>(tol.prime_cutoff);
    return acc;
}

} // namespace

double gamma_k_asymptotic(unsigned k, double z, AsymptoticVariant variant,
                          const SeriesTolerance& tol) {
    if (k < 1)
        throw std::invalid_argument("gamma_k_asymptotic: k >= 1 required");
    const double kk = static_cast<double>(k);
    switch (variant) {
    case AsymptoticVariant::sub1: {
        if (!(z > 0.0) || !(z < 1.0))
            throw std::domain_error("sub1 variant requires 0 < z < 1");
        const double G = big_G(z, tol).value;
        const double dw = d_w_const(z + 1.0, tol).value;
        const double S = odd_prime_log_sum(z, tol);
        const double bracket = kEulerGamma - z * std::log(2.0) / (1.0 - z) - S;
        const double coef = 2.0 * dw / (gamma_fn(z) * (1.0 - z)) * bracket;
        return G + std::pow(z / (z + 1.0), kk) * coef;
    }
    case AsymptoticVariant::eq1: {
        if (std::abs(z - 1.0) > 1e-9)
            throw std::domain_error("eq1 variant requires z = 1");
        const double d2 = d_w_const(2.0, tol).value;
        return 1.0 - std::pow(2.0, -kk) * (d2 / 4.0) * std::log(2.0) *
                         (kk * kk - 4.0 * kk * std::log(kk));
    }
    case AsymptoticVariant::super1: {
        if (!(z > 1.0) || !(z < 2.0))
            throw std::domain_error("super1 variant requires 1 < z < 2");
        return big_G(z, tol).value;
    }
    case AsymptoticVariant::eq2: {
        if (std::abs(z - 2.0) > 1e-9)
            throw std::domain_error("eq2 variant requires z = 2");
        const double d2 = d_w_const(2.0, tol).value;
        return (d2 / 2.0) * (kk - 2.0 * std::log(kk));
    }
    case AsymptoticVariant::uniform: {
        if (!(z > 0.0) || !(z < 2.0))
            throw std::domain_error("uniform variant requires 0 < z < 2");
        return big_G(z, tol).value;
    }
    }
    throw std::invalid_argument("gamma_k_asymptotic: unknown variant");
}

DirectSumResult direct_sum_oracle(const FactorSieve& sieve, unsigned k, double z,
                                  std::uint64_t cutoff) {
    if (k < 1)
        throw std::invalid_argument("direct_sum_oracle: k >= 1 required");
    if (!(z > 0.0) || z > 2.0)
        throw std::domain_error("direct_sum_oracle: z must lie in (0, 2]");
    if (cutoff < 3 || cutoff > sieve.limit())
        throw std::invalid_argument("direct_sum_oracle: cutoff outside sieve range");

    DirectSumResult r;
    // Kahan summation: about 10^7 terms can otherwise lose 1e-12
    double sum = 0, comp = 0;
    std::uint64_t found = 0;
    for (std::uint64_t n = 2; n <= cutoff; ++n) {
        if (sieve.big_omega(n) != k)
            continue;
        ++found;
        const double term = 1.0 / (static_cast<double>(n) *
                                   std::pow(std::log(static_cast<double>(n)), z));
        const double y = term - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    const double zk = std::pow(z, static_cast<double>(k));
    r.partial = zk * sum;
    r.empty_layer = found == 0;

    const double lx = std::log(static_cast<double>(cutoff));
    if (z > 1.0) {
        // integral comparison over all n > cutoff (rigorous)
        r.tail_bound =
            zk * (std::pow(lx, 1.0 - z) / (z - 1.0) + 1.0 / (static_cast<double>(cutoff) *
                                                             std::pow(lx, z)));
        r.tail_rigorous = true;
    } else {
        // first-order layer-density model with a factor-2 safety margin
        const double x = z * std::log(lx);
        double q = 0, term = std::exp(-x);
        for (unsigned j = 0; j < k; ++j) {
            q += term;
            term *= x / (j + 1.0);
        }
        r.tail_bound = 2.0 * q;
        r.tail_rigorous = false;
    }
    return r;
}

} // namespace primlab
