#include "primlab/density.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

#include "primlab/errors.hpp"
#include "primlab/primsets.hpp"
#include "primlab/report.hpp"

namespace primlab {

namespace {

constexpr std::uint64_t kFlowLimit = 100000;
constexpr std::uint64_t kBruteLimit = 40;

// Dinic max-flow on int64 capacities.
class Dinic {
  public:
    explicit Dinic(std::size_t n) : head_(n, -1), level_(n), iter_(n) {}

    void add_edge(int from, int to, std::int64_t cap) {
        edges_.push_back({to, head_[from], cap});
        head_[from] = static_cast<int>(edges_.size()) - 1;
        edges_.push_back({from, head_[to], 0});
        head_[to] = static_cast<int>(edges_.size()) - 1;
    }

    std::int64_t max_flow(int s, int t) {
        std::int64_t flow = 0;
        while (bfs(s, t)) {
            iter_ = head_;
            std::int64_t f;
            while ((f = dfs(s, t, std::numeric_limits<std::int64_t>::max())) > 0)
                flow += f;
        }
        return flow;
    }

    // After max_flow: the set of nodes reachable from s in the residual
    // network (the source side of a minimum cut).
    std::vector<bool> min_cut_side(int s) const {
        std::vector<bool> seen(head_.size(), false);
        std::queue<int> q;
        q.push(s);
        seen[s] = true;
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int e = head_[v]; e >= 0; e = edges_[e].next) {
                if (edges_[e].cap > 0 && !seen[edges_[e].to]) {
                    seen[edges_[e].to] = true;
                    q.push(edges_[e].to);
                }
            }
        }
        return seen;
    }

  private:
    struct Edge {
        int to;
        int next;
        std::int64_t cap;
    };

    bool bfs(int s, int t) {
        std::fill(level_.begin(), level_.end(), -1);
        std::queue<int> q;
        q.push(s);
        level_[s] = 0;
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int e = head_[v]; e >= 0; e = edges_[e].next) {
                if (edges_[e].cap > 0 && level_[edges_[e].to] < 0) {
                    level_[edges_[e].to] = level_[v] + 1;
                    q.push(edges_[e].to);
                }
            }
        }
        return level_[t] >= 0;
    }

    std::int64_t dfs(int v, int t, std::int64_t limit) {
        if (v == t) return limit;
        for (int& e = iter_[v]; e >= 0; e = edges_[e].next) {
            Edge& ed = edges_[e];
            if (ed.cap > 0 && level_[ed.to] == level_[v] + 1) {
                std::int64_t d = dfs(ed.to, t, std::min(limit, ed.cap));
                if (d > 0) {
                    ed.cap -= d;
                    edges_[e ^ 1].cap += d;
                    return d;
                }
            }
        }
        return 0;
    }

    std::vector<Edge> edges_;
    std::vector<int> head_;
    std::vector<int> level_;
    std::vector<int> iter_;
};

// Declared rational scaling: weights are rounded to multiples of 10^-s with
// the largest s in [6, 15] keeping the total within int64 headroom.
int pick_scale_exponent(double weight_total) {
    for (int s = 15; s >= 6; --s) {
        if (weight_total * std::pow(10.0, s) <= 3.5e18) return s;
    }
    throw resource_error("max_weight_antichain: weights too large for exact scaling");
}

AntichainSolution solve_flow(const DivisibilityPoset& poset) {
    const std::uint64_t n_hi = poset.n_hi;
    if (n_hi > kFlowLimit)
        throw resource_error("max_weight_antichain: flow method requires N <= 100000");

    double total = 0.0;
    for (std::uint64_t v = 1; v <= n_hi; ++v) total += poset.weights[v];
    const int s = pick_scale_exponent(total);
    const double scale = std::pow(10.0, s);

    std::vector<std::int64_t> w_int(n_hi + 1, 0);
    std::int64_t w_sum = 0;
    for (std::uint64_t v = 1; v <= n_hi; ++v) {
        w_int[v] = static_cast<std::int64_t>(std::llround(poset.weights[v] * scale));
        w_sum += w_int[v];
    }

    // Split-vertex network: minimum flow with per-element lower bounds
    // equals the maximum antichain weight; after the standard lower-bound
    // transformation (excess arcs folded into T and S) the value is
    // w_sum - maxflow(T -> S).  A finite T-S cut leaves exactly an
    // antichain "free" (v_out on the T side, v_in on the S side), paying
    // w(v) for every other element.
    const int S = 0, T = 1;
    const auto node_in = [](std::uint64_t v) { return static_cast<int>(2 * v); };
    const auto node_out = [](std::uint64_t v) { return static_cast<int>(2 * v + 1); };
    const std::int64_t inf = std::int64_t{4} * 1000 * 1000 * 1000 * 1000 * 1000 * 1000;

    Dinic dinic(2 * static_cast<std::size_t>(n_hi) + 2);
    for (std::uint64_t v = 1; v <= n_hi; ++v) {
        dinic.add_edge(T, node_out(v), w_int[v]);
        dinic.add_edge(node_in(v), S, w_int[v]);
        dinic.add_edge(node_in(v), node_out(v), inf);
        for (std::uint32_t w : poset.covers[v]) dinic.add_edge(node_out(v), node_in(w), inf);
    }
    const std::int64_t flow = dinic.max_flow(T, S);
    const std::vector<bool> t_side = dinic.min_cut_side(T);

    AntichainSolution sol;
    sol.method = "flow";
    std::int64_t picked_int = 0;
    long double picked_true = 0.0L;
    for (std::uint64_t v = 1; v <= n_hi; ++v) {
        if (t_side[static_cast<std::size_t>(node_out(v))] &&
            !t_side[static_cast<std::size_t>(node_in(v))]) {
            sol.elements.push_back(v);
            picked_int += w_int[v];
            picked_true += static_cast<long double>(poset.weights[v]);
        }
    }
    sol.weight = static_cast<double>(picked_true);
    sol.dual_value = static_cast<double>(w_sum - flow) / scale;

    const bool exact_dual = (picked_int == w_sum - flow);
    const bool close = std::fabs(sol.weight - sol.dual_value) <= 1e-9;
    sol.certificate_ok = exact_dual && close;
    return sol;
}

AntichainSolution solve_brute(const DivisibilityPoset& poset) {
    const std::uint64_t n_hi = poset.n_hi;
    if (n_hi > kBruteLimit)
        throw resource_error("max_weight_antichain: brute method requires N <= 40");

    // Elements ordered by (weight desc, value asc) for strong pruning and a
    // deterministic search tree.
    std::vector<std::uint64_t> order(n_hi);
    for (std::uint64_t v = 1; v <= n_hi; ++v) order[v - 1] = v;
    std::sort(order.begin(), order.end(), [&](std::uint64_t a, std::uint64_t b) {
        if (poset.weights[a] != poset.weights[b]) return poset.weights[a] > poset.weights[b];
        return a < b;
    });

    const std::size_t n = order.size();
    std::vector<std::uint64_t> conflict(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && (order[i] % order[j] == 0 || order[j] % order[i] == 0))
                conflict[i] |= std::uint64_t{1} << j;

    std::vector<double> suffix(n + 1, 0.0);
    for (std::size_t i = n; i-- > 0;) suffix[i] = suffix[i + 1] + poset.weights[order[i]];

    double best = -1.0;
    std::uint64_t best_mask = 0;
    std::uint64_t cur_mask = 0;
    const std::function<void(std::size_t, double, std::uint64_t)> descend =
        [&](std::size_t i, double acc, std::uint64_t banned) {
            if (acc > best) {
                best = acc;
                best_mask = cur_mask;
            }
            if (i == n || acc + suffix[i] <= best) return;
            if (!(banned >> i & 1)) {
                cur_mask |= std::uint64_t{1} << i;
                descend(i + 1, acc + poset.weights[order[i]], banned | conflict[i]);
                cur_mask &= ~(std::uint64_t{1} << i);
            }
            descend(i + 1, acc, banned);
        };
    descend(0, 0.0, 0);

    AntichainSolution sol;
    sol.method = "brute";
    long double w = 0.0L;
    for (std::size_t i = 0; i < n; ++i) {
        if (best_mask >> i & 1) {
            sol.elements.push_back(order[i]);
            w += static_cast<long double>(poset.weights[order[i]]);
        }
    }
    std::sort(sol.elements.begin(), sol.elements.end());
    sol.weight = static_cast<double>(w);
    sol.dual_value = sol.weight;
    sol.certificate_ok = true;
    return sol;
}

LayerHeuristic layer_at_k(const FactorSieve& sieve, std::uint64_t n_hi, double z,
                          unsigned k) {
    long double inv_sum = 0.0L;
    for (std::uint64_t n = 1; n <= n_hi; ++n)
        if (sieve.big_omega(n) == k) inv_sum += 1.0L / static_cast<long double>(n);
    LayerHeuristic h;
    h.k_star = k;
    h.weight = static_cast<double>(
        static_cast<long double>(std::pow(z, static_cast<double>(k))) * inv_sum);
    h.density = h.weight / denominator_sum(sieve, n_hi, z);
    return h;
}

}  // namespace

DivisibilityPoset build_poset(const FactorSieve& sieve, std::uint64_t n_hi,
                              double z, int threads) {
    if (n_hi < 1) throw std::invalid_argument("build_poset: N must be >= 1");
    if (n_hi > sieve.limit()) throw resource_error("build_poset: N exceeds sieve limit");
    if (!(z > 0.0)) throw std::domain_error("build_poset: z must be positive");

    DivisibilityPoset poset;
    poset.n_hi = n_hi;
    poset.z = z;
    poset.weights.assign(n_hi + 1, 0.0);
    poset.covers.assign(n_hi + 1, {});

    parallel_for(n_hi, threads, [&](std::size_t i) {
        std::uint64_t n = i + 1;
        poset.weights[n] =
            std::pow(z, sieve.big_omega(n)) / static_cast<double>(n);
    });

    const auto primes = sieve.primes_upto(n_hi);
    for (std::uint64_t v = 1; v <= n_hi; ++v) {
        for (std::uint32_t p : primes) {
            if (p > n_hi / v) break;
            poset.covers[v].push_back(static_cast<std::uint32_t>(v * p));
        }
    }
    return poset;
}

AntichainSolution max_weight_antichain(const DivisibilityPoset& poset,
                                       AntichainMethod method) {
    switch (method) {
        case AntichainMethod::brute:
            return solve_brute(poset);
        case AntichainMethod::flow:
        case AntichainMethod::automatic:
            return solve_flow(poset);
    }
    throw std::logic_error("max_weight_antichain: unknown method");
}

double denominator_sum(const FactorSieve& sieve, std::uint64_t n_hi, double z) {
    if (n_hi < 1) throw std::invalid_argument("denominator_sum: N must be >= 1");
    if (n_hi > sieve.limit())
        throw resource_error("denominator_sum: N exceeds sieve limit");
    if (!(z > 0.0)) throw std::domain_error("denominator_sum: z must be positive");

    // z^k for the handful of attainable Omega values.
    std::vector<long double> zpow(1, 1.0L);
    long double total = 0.0L;
    for (std::uint64_t n = 1; n <= n_hi; ++n) {
        unsigned k = sieve.big_omega(n);
        while (zpow.size() <= k) zpow.push_back(zpow.back() * static_cast<long double>(z));
        total += zpow[k] / static_cast<long double>(n);
    }
    return static_cast<double>(total);
}

double d_z_density(const FactorSieve& sieve, std::uint64_t n_hi, double z,
                   AntichainMethod method) {
    DivisibilityPoset poset = build_poset(sieve, n_hi, z);
    AntichainSolution sol = max_weight_antichain(poset, method);
    return sol.weight / denominator_sum(sieve, n_hi, z);
}

LayerHeuristic layer_heuristic(const FactorSieve& sieve, std::uint64_t n_hi, double z) {
    if (n_hi < 16)
        throw std::invalid_argument("layer_heuristic: N must be >= 16");
    if (n_hi > sieve.limit())
        throw resource_error("layer_heuristic: N exceeds sieve limit");
    if (!(z > 0.0 && z < 2.0))
        throw std::domain_error("layer_heuristic: z must lie in (0, 2)");
    unsigned k = static_cast<unsigned>(
        std::floor(z * std::log(std::log(static_cast<double>(n_hi)))));
    return layer_at_k(sieve, n_hi, z, k);
}

LayerHeuristic best_layer_bound(const FactorSieve& sieve, std::uint64_t n_hi, double z) {
    if (n_hi < 2) throw std::invalid_argument("best_layer_bound: N must be >= 2");
    if (n_hi > sieve.limit())
        throw resource_error("best_layer_bound: N exceeds sieve limit");
    if (!(z > 0.0)) throw std::domain_error("best_layer_bound: z must be positive");

    unsigned k_max = 0;
    for (std::uint64_t n = 2; n <= n_hi; ++n)
        k_max = std::max(k_max, sieve.big_omega(n));
    LayerHeuristic best;
    best.density = -1.0;
    for (unsigned k = 0; k <= k_max; ++k) {
        LayerHeuristic h = layer_at_k(sieve, n_hi, z, k);
        if (h.density > best.density) best = h;
    }
    return best;
}

SarkozyReport sarkozy_bound_check(const FactorSieve& sieve, double z,
                                  const std::vector<std::uint64_t>& n_grid) {
    if (!(z > 2.0))
        throw std::domain_error("sarkozy_bound_check: z must be > 2");
    SarkozyReport rep;
    rep.z = z;
    const double bound = (1.0 - 2.0 / z) / 3.0;
    for (std::uint64_t n : n_grid) {
        if (n < 4)
            throw std::invalid_argument("sarkozy_bound_check: grid points must be >= 4");
        SarkozyRow row;
        row.n = n;
        row.bound = bound;
        if (n <= kFlowLimit) {
            row.density = d_z_density(sieve, n, z, AntichainMethod::flow);
            row.method = "flow";
        } else {
            row.density = best_layer_bound(sieve, n, z).density;
            row.method = "layer";
        }
        row.pass = row.density >= bound;
        rep.all_pass = rep.all_pass && row.pass;
        rep.rows.push_back(row);
    }
    return rep;
}

}  // namespace primlab
