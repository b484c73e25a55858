#pragma once

#include "primlab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

namespace primlab {

// Vector-valued integrand: fills out[0..dim) with the component values
// at abscissa t.  Components are integrated over a shared adaptive mesh
// so one pass serves a whole family of integrals.
using VectorIntegrand = std::function<void(double t, std::vector<double>& out)>;

struct QuadResult {
    std::vector<double> value;
    std::vector<double> err; // accumulated per-component error estimate
    int panels_used = 0;
};

namespace detail {

// 7-point Gauss / 15-point Kronrod pair on [-1, 1].
inline constexpr double kKronrodNodes[8] = {
    0.99145537112081263920685469752632851664204433837033,
    0.94910791234275852452618968404785126240077093767062,
    0.86486442335976907278971278864092620121097230707409,
    0.74153118559939443986386477328078840707414764714139,
    0.58608723546769113029414483825872959843678075060436,
    0.40584515137739716690660641207696146334738201409937,
    0.20778495500789846760068940377324491347978440714517,
    0.0};
inline constexpr double kKronrodWeights[8] = {
    0.02293532201052922496373200805896959199356081127575,
    0.06309209262997855329070066318920428666507115721155,
    0.10479001032225018383987632254151801744375665421383,
    0.14065325971552591874518959051023792039988975724800,
    0.16900472663926790282658342659855028410624490030294,
    0.19035057806478540991325640242101368282607807545536,
    0.20443294007529889241416199923464908471651760418072,
    0.20948214108472782801299917489171426369776208022370};
inline constexpr double kGaussWeights[4] = {
    0.12948496616886969327061143267908201832858740225995,
    0.27970539148927666790146777142377958648692711181059,
    0.38183005050511894495036977548897513387836508353386,
    0.41795918367346938775510204081632653061224489795918};

struct Panel {
    double a, b;
    std::vector<double> kronrod; // per-component K15 value
    std::vector<double> diff;    // per-component |K15 - G7|
    double score = 0;            // max_d diff[d] / tol[d]
};

inline void rate_panel(const VectorIntegrand& f, std::size_t dim,
                       const std::vector<double>& tol, Panel& p) {
    const double c = 0.5 * (p.a + p.b), h = 0.5 * (p.b - p.a);
    std::vector<double> acc_k(dim, 0.0), acc_g(dim, 0.0), fx(dim), sum(dim);
    for (int i = 0; i < 8; ++i) {
        const double x = kKronrodNodes[i];
        const int n_sides = (i == 7) ? 1 : 2;
        std::fill(sum.begin(), sum.end(), 0.0);
        for (int sgn = 0; sgn < n_sides; ++sgn) {
            f(c + (sgn == 0 ? -h * x : h * x), fx);
            for (std::size_t d = 0; d < dim; ++d)
                sum[d] += fx[d];
        }
        for (std::size_t d = 0; d < dim; ++d)
            acc_k[d] += kKronrodWeights[i] * sum[d];
        if (i % 2 == 1 || i == 7) { // Gauss nodes sit at odd Kronrod indices + center
            const double wg = kGaussWeights[i / 2];
            for (std::size_t d = 0; d < dim; ++d)
                acc_g[d] += wg * sum[d];
        }
    }
    p.kronrod.resize(dim);
    p.diff.resize(dim);
    p.score = 0;
    for (std::size_t d = 0; d < dim; ++d) {
        p.kronrod[d] = h * acc_k[d];
        p.diff[d] = h * std::abs(acc_k[d] - acc_g[d]);
        p.score = std::max(p.score, p.diff[d] / tol[d]);
    }
}

} // namespace detail

// Adaptive Gauss-Kronrod integration of a vector-valued integrand over
// the interval spanned by `breaks` (ascending; consecutive entries seed
// the initial panels).  Panels are split, worst score first, until every
// component's summed error estimate is below its tolerance, or the panel
// budget is exhausted (convergence_error).
inline QuadResult integrate_adaptive_weighted(const VectorIntegrand& f,
                                              const std::vector<double>& breaks,
                                              std::size_t dim,
                                              const std::vector<double>& comp_tol,
                                              int max_panels = 6000) {
    if (breaks.size() < 2)
        throw std::invalid_argument("integrate_adaptive_weighted: need at least 2 breakpoints");
    if (comp_tol.size() != dim)
        throw std::invalid_argument("integrate_adaptive_weighted: tolerance size mismatch");
    for (double t : comp_tol)
        if (!(t > 0))
            throw std::invalid_argument("integrate_adaptive_weighted: tolerances must be > 0");

    auto cmp = [](const detail::Panel& x, const detail::Panel& y) {
        if (x.score != y.score)
            return x.score < y.score; // max-heap on weighted error
        return x.a > y.a;             // deterministic tie-break
    };
    std::vector<detail::Panel> panels;
    std::vector<double> err_sum(dim, 0.0);
    int used = 0;
    const double span = breaks.back() - breaks.front();
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        if (!(breaks[i + 1] > breaks[i]))
            throw std::invalid_argument("integrate_adaptive_weighted: breakpoints not ascending");
        detail::Panel p;
        p.a = breaks[i];
        p.b = breaks[i + 1];
        detail::rate_panel(f, dim, comp_tol, p);
        for (std::size_t d = 0; d < dim; ++d)
            err_sum[d] += p.diff[d];
        panels.push_back(std::move(p));
        ++used;
    }
    std::make_heap(panels.begin(), panels.end(), cmp);

    auto within_tol = [&] {
        for (std::size_t d = 0; d < dim; ++d)
            if (err_sum[d] > comp_tol[d])
                return false;
        return true;
    };
    while (!within_tol()) {
        if (used >= max_panels)
            throw convergence_error(
                "integrate_adaptive_weighted: panel budget exhausted before tolerance");
        std::pop_heap(panels.begin(), panels.end(), cmp);
        detail::Panel top = std::move(panels.back());
        panels.pop_back();
        if (top.b - top.a < 1e-13 * span)
            throw convergence_error("integrate_adaptive_weighted: interval shrank below "
                                    "resolution without reaching tolerance");
        for (std::size_t d = 0; d < dim; ++d)
            err_sum[d] -= top.diff[d];
        const double mid = 0.5 * (top.a + top.b);
        for (int half = 0; half < 2; ++half) {
            detail::Panel p;
            p.a = half == 0 ? top.a : mid;
            p.b = half == 0 ? mid : top.b;
            detail::rate_panel(f, dim, comp_tol, p);
            for (std::size_t d = 0; d < dim; ++d)
                err_sum[d] += p.diff[d];
            panels.push_back(std::move(p));
            std::push_heap(panels.begin(), panels.end(), cmp);
        }
        ++used;
    }

    QuadResult r;
    r.value.assign(dim, 0.0);
    r.err = err_sum;
    r.panels_used = used;
    // deterministic summation order: ascending by left endpoint
    std::sort(panels.begin(), panels.end(),
              [](const detail::Panel& x, const detail::Panel& y) { return x.a < y.a; });
    for (const auto& p : panels)
        for (std::size_t d = 0; d < dim; ++d)
            r.value[d] += p.kronrod[d];
    return r;
}

// Uniform-tolerance wrapper over [a, b] with a uniform initial mesh.
inline QuadResult integrate_adaptive(const VectorIntegrand& f, double a, double b,
                                     std::size_t dim, double abs_tol, int initial_panels = 8,
                                     int max_panels = 4000) {
    if (!(b > a))
        throw std::invalid_argument("integrate_adaptive: empty interval");
    if (initial_panels < 1)
        initial_panels = 1;
    std::vector<double> breaks(initial_panels + 1);
    for (int i = 0; i <= initial_panels; ++i)
        breaks[i] = a + (b - a) * i / initial_panels;
    return integrate_adaptive_weighted(f, breaks, dim, std::vector<double>(dim, abs_tol),
                                       max_panels);
}

// Scalar convenience wrapper.
inline double integrate_adaptive_scalar(const std::function<double(double)>& f, double a,
                                        double b, double abs_tol, double* err_out = nullptr,
                                        int initial_panels = 8, int max_panels = 4000) {
    VectorIntegrand vf = [&](double t, std::vector<double>& out) { out[0] = f(t); };
    QuadResult r = integrate_adaptive(vf, a, b, 1, abs_tol, initial_panels, max_panels);
    if (err_out)
        *err_out = r.err[0];
    return r.value[0];
}

} // namespace primlab
