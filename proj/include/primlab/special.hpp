#pragma once

#include "primlab/arith.hpp"
#include "primlab/report.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace primlab {

struct ValueWithError {
    double value = 0;
    double err = 0;
};

// Riemann zeta on the real ray s > 1 (Euler-Maclaurin; relative error
// around 1e-15 across the ray).
double zeta_real(double s);

// Gamma function for real z > 0 (Lanczos approximation).
double gamma_fn(double z);

// log zeta(1 + e^{-t}) evaluated stably for large t via the Laurent
// expansion at the pole; valid for any t with e^{-t} < 0.02.
double log_zeta_near_one_t(double t);

// Prime zeta function P(s) = sum over primes p of p^{-s}, s > 1.
// Uses the Moebius/log-zeta inversion series; abs error <= tol.abs_tol.
double prime_zeta(double s, const SeriesTolerance& tol = {});

// Dirichlet series of the k-th layer: sum over n with exactly k prime
// factors (with multiplicity) of n^{-s}.  k = 0 gives 1.
double pk_dirichlet(double s, unsigned k, const SeriesTolerance& tol = {});

struct QuadratureConfig {
    enum class Scheme { substituted_exp, graded_mesh };
    Scheme scheme = Scheme::substituted_exp;
    int panels = 0;           // 0 = automatic seeding
    double split_point = 2.0; // s value separating the two mesh regimes
    double tail_tol = 1e-11;  // target absolute error of the final value
};

struct GammaKResult {
    unsigned k = 0;
    double z = 0;
    double value = 0;
    double est_error = 0; // quadrature estimate + analytic tail bounds
    std::string method;   // "quadrature" | "direct_sum" | "asymptotic"
};

// Weighted layer sum for the k-th layer at parameter z in (0, 2],
// computed from its integral representation
//   z^k / Gamma(z) * Int_1^inf  pk_dirichlet(s, k) (s-1)^{z-1} ds
// after the substitution s = 1 + e^{-t}.  k >= 1.
GammaKResult gamma_k(unsigned k, double z, const QuadratureConfig& qc = {},
                     const SeriesTolerance& tol = {});

// All layers 1..k_max in one shared adaptive pass (the integrands only
// differ in the layer recursion, so the mesh is reused).
std::vector<GammaKResult> gamma_k_batch(unsigned k_max, double z,
                                        const QuadratureConfig& qc = {},
                                        const SeriesTolerance& tol = {});

// Limit constant of the layer sums:  big_G(z) = C(z) / Gamma(1+z) with
// C(z) the convergent product over primes of (1-z/p)^{-1} (1-1/p)^z.
// Valid for z in (0, 2); the product is evaluated up to
// tol.prime_cutoff and the remainder is folded in exactly via prime
// zeta values, so err is close to machine precision.
ValueWithError big_G(double z, const SeriesTolerance& tol = {});

// Product constant over odd primes:
//   d_w = 2^{-w} * prod_{p>2} (1-w/p)^{-1} (1-1/p)^w,  w in (0, 3).
// Unlike big_G this stays finite at w = 2.
ValueWithError d_w_const(double w, const SeriesTolerance& tol = {});

// The convergent product C(z) itself (equals big_G(z) * Gamma(1+z)).
ValueWithError c_of_z(double z, const SeriesTolerance& tol = {});

enum class AsymptoticVariant {
    sub1,    // 0 < z < 1: limit plus signed geometric correction term
    eq1,     // z = 1: 1 minus the explicit 2^{-k} k^2 correction
    super1,  // 1 < z < 2: limit constant alone
    eq2,     // z = 2: linear growth (d_2/2)(k - 2 log k)
    uniform, // 0 < z < 2: limit constant alone
};

// Closed-form asymptotic prediction for the k-th layer sum.
double gamma_k_asymptotic(unsigned k, double z, AsymptoticVariant variant,
                          const SeriesTolerance& tol = {});

struct DirectSumResult {
    double partial = 0;        // sum over layer elements <= cutoff
    double tail_bound = 0;     // bound/model for the omitted remainder
    bool tail_rigorous = true; // false when the tail is a calibrated model
    bool empty_layer = false;  // no layer element within the cutoff
};

// Brute-force layer sum: sum of z^k / (n log^z n) over n <= cutoff with
// exactly k prime factors.  For z > 1 the tail bound is a rigorous
// integral comparison; for z <= 1 it is a first-order model (flagged).
DirectSumResult direct_sum_oracle(const FactorSieve& sieve, unsigned k, double z,
                                  std::uint64_t cutoff);

// Euler-Mascheroni constant.
inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243104;

} // namespace primlab
