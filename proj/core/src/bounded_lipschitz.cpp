#include "shadowlab/bounded_lipschitz.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

#include "shadowlab/errors.hpp"
#include "shadowlab/transport.hpp"

namespace shadowlab::metrics {

namespace {

// The norm constraint splits as sup|g| <= lambda, Lip(g) <= 1 - lambda for
// some lambda in [0,1]. Because the objective weights sum to zero, g can be
// recentered, so for fixed lambda the inner problem is the Kantorovich dual
// with the truncated metric cost min((1-lambda) d, 2 lambda); its value is
// the minimum transport cost. The outer function of lambda is concave and
// piecewise linear, so a golden-section search recovers the program optimum.
struct SaddleProblem {
    const DistanceMatrix& d;
    std::int64_t supply;   // units per a-point
    std::int64_t demand;   // units per b-point
    double unit_mass;      // probability mass of one transported unit

    double ot_value(double lambda, TransportPlan* plan_out) const {
        std::vector<double> cost(d.d.size());
        for (std::size_t k = 0; k < cost.size(); ++k)
            cost[k] = std::min((1.0 - lambda) * d.d[k], 2.0 * lambda);
        TransportPlan plan = solve_transport(cost, d.rows, d.cols, supply, demand);
        const double value = unit_mass * plan.cost;
        if (plan_out) *plan_out = std::move(plan);
        return value;
    }
};

// max over lambda in [0,1] of sum_pairs pi * min((1-lambda) d, 2 lambda) for a
// fixed plan pi: piecewise-linear concave, maximum at an edge kink
// lambda = d/(2+d) or at the endpoints. Any fixed plan upper-bounds the
// saddle value, certifying the search result.
double plan_upper_bound(const DistanceMatrix& d, const TransportPlan& plan, double unit_mass) {
    std::vector<double> kinks{0.0, 1.0};
    for (std::size_t k = 0; k < d.d.size(); ++k)
        if (plan.flow[k] > 0) kinks.push_back(d.d[k] / (2.0 + d.d[k]));
    double best = 0.0;
    for (double lambda : kinks) {
        double v = 0.0;
        for (std::size_t k = 0; k < d.d.size(); ++k)
            if (plan.flow[k] > 0)
                v += static_cast<double>(plan.flow[k]) *
                     std::min((1.0 - lambda) * d.d[k], 2.0 * lambda);
        best = std::max(best, unit_mass * v);
    }
    return best;
}

struct DisjointSet {
    std::vector<int> parent;
    explicit DisjointSet(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    }
    void unite(int a, int b) {
        a = find(a), b = find(b);
        if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    }
};

struct Pair {
    int u, v;
    double dist;
};

// Projected supergradient ascent with Polyak steps on the finite program.
// Zero-distance cross pairs are merged into single variables beforehand, so
// every remaining Lipschitz quotient is well defined. Objective coefficients
// live on merged components; the constraint is
//   phi(g) = max_i |g_i| + max_pairs |g_u - g_v| / d_uv <= 1.
struct Ascent {
    std::vector<double> c;
    std::vector<Pair> pairs;
    double target;  // exact program optimum, used for the Polyak step

    double phi(const std::vector<double>& g, std::vector<double>* grad) const {
        double bound = 0.0;
        std::size_t bound_arg = 0;
        for (std::size_t i = 0; i < g.size(); ++i) {
            if (std::abs(g[i]) > bound) bound = std::abs(g[i]), bound_arg = i;
        }
        double lip = 0.0;
        const Pair* lip_arg = nullptr;
        for (const auto& p : pairs) {
            const double q = std::abs(g[static_cast<std::size_t>(p.u)] -
                                      g[static_cast<std::size_t>(p.v)]) / p.dist;
            if (q > lip) lip = q, lip_arg = &p;
        }
        if (grad) {
            grad->assign(g.size(), 0.0);
            if (bound > 0.0) (*grad)[bound_arg] = (g[bound_arg] >= 0.0) ? 1.0 : -1.0;
            if (lip_arg) {
                const double sign =
                    (g[static_cast<std::size_t>(lip_arg->u)] >= g[static_cast<std::size_t>(lip_arg->v)])
                        ? 1.0 : -1.0;
                (*grad)[static_cast<std::size_t>(lip_arg->u)] += sign / lip_arg->dist;
                (*grad)[static_cast<std::size_t>(lip_arg->v)] -= sign / lip_arg->dist;
            }
        }
        return bound + lip;
    }

    // Returns {best value, iterations}; fills g_best with the certificate.
    std::pair<double, std::size_t> run(std::size_t budget, double tol, std::vector<double>& g_best) {
        const std::size_t n = c.size();
        std::vector<double> g(n, 0.0), grad(n, 0.0);
        g_best.assign(n, 0.0);
        double best = 0.0;
        const double c_norm2 = std::inner_product(c.begin(), c.end(), c.begin(), 0.0);
        if (c_norm2 == 0.0 || target <= tol) return {0.0, 0};
        std::size_t it = 0;
        for (; it < budget; ++it) {
            const double phi_val = phi(g, &grad);
            const double obj = std::inner_product(c.begin(), c.end(), g.begin(), 0.0);
            const double feas_val = (phi_val > 1.0) ? obj / phi_val : obj;
            if (feas_val > best) {
                best = feas_val;
                const double scale = (phi_val > 1.0) ? 1.0 / phi_val : 1.0;
                for (std::size_t i = 0; i < n; ++i) g_best[i] = g[i] * scale;
            }
            if (target - best <= tol) break;
            if (phi_val <= 1.0) {
                const double step = (target - obj) / c_norm2;
                for (std::size_t i = 0; i < n; ++i) g[i] += step * c[i];
            } else {
                const double grad_norm2 =
                    std::inner_product(grad.begin(), grad.end(), grad.begin(), 0.0);
                if (grad_norm2 == 0.0) break;
                const double step = (phi_val - 1.0) / grad_norm2;
                for (std::size_t i = 0; i < n; ++i) g[i] -= step * grad[i];
            }
        }
        return {best, it};
    }
};

} // namespace

BlResult bl_distance_empirical(const DistanceMatrix& d) {
    if (d.rows == 0 || d.cols == 0) throw std::invalid_argument("empty sample");
    const auto na = static_cast<std::int64_t>(d.rows);
    const auto nb = static_cast<std::int64_t>(d.cols);
    const std::int64_t g = std::gcd(na, nb);

    SaddleProblem saddle{d, nb / g, na / g,
                         static_cast<double>(g) / (static_cast<double>(na) * static_cast<double>(nb))};

    // Golden-section search for the concave outer maximum over lambda.
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = 0.0, hi = 1.0;
    double x1 = hi - inv_phi * (hi - lo), x2 = lo + inv_phi * (hi - lo);
    double f1 = saddle.ot_value(x1, nullptr), f2 = saddle.ot_value(x2, nullptr);
    double optimum = std::max(f1, f2);
    for (int iter = 0; iter < 160; ++iter) {
        if (f1 < f2) {
            lo = x1; x1 = x2; f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = saddle.ot_value(x2, nullptr);
        } else {
            hi = x2; x2 = x1; f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = saddle.ot_value(x1, nullptr);
        }
        optimum = std::max({optimum, f1, f2});
    }
    TransportPlan plan_at_opt;
    const double lambda_hat = 0.5 * (lo + hi);
    optimum = std::max(optimum, saddle.ot_value(lambda_hat, &plan_at_opt));
    const double upper = plan_upper_bound(d, plan_at_opt, saddle.unit_mass);

    // Merge zero-distance cross pairs, then run the ascent.
    const std::size_t total = d.rows + d.cols;
    DisjointSet ds(total);
    for (std::size_t i = 0; i < d.rows; ++i)
        for (std::size_t j = 0; j < d.cols; ++j)
            if (d.at(i, j) == 0.0)
                ds.unite(static_cast<int>(i), static_cast<int>(d.rows + j));

    std::vector<int> comp_of(total);
    std::vector<int> comp_index(total, -1);
    int n_comp = 0;
    for (std::size_t k = 0; k < total; ++k) {
        const int root = ds.find(static_cast<int>(k));
        if (comp_index[static_cast<std::size_t>(root)] < 0)
            comp_index[static_cast<std::size_t>(root)] = n_comp++;
        comp_of[k] = comp_index[static_cast<std::size_t>(root)];
    }

    Ascent ascent;
    ascent.c.assign(static_cast<std::size_t>(n_comp), 0.0);
    for (std::size_t i = 0; i < d.rows; ++i)
        ascent.c[static_cast<std::size_t>(comp_of[i])] += 1.0 / static_cast<double>(na);
    for (std::size_t j = 0; j < d.cols; ++j)
        ascent.c[static_cast<std::size_t>(comp_of[d.rows + j])] -= 1.0 / static_cast<double>(nb);
    for (std::size_t i = 0; i < d.rows; ++i) {
        for (std::size_t j = 0; j < d.cols; ++j) {
            const int u = comp_of[i], v = comp_of[d.rows + j];
            if (u == v) continue;
            ascent.pairs.push_back({u, v, d.at(i, j)});
        }
    }
    ascent.target = optimum;

    std::vector<double> g_comp;
    const auto [value, iterations] = ascent.run(100000, 1e-9, g_comp);

    BlResult res;
    res.value = value;
    res.iterations = iterations;
    res.duality_gap = std::max(upper, optimum) - value;
    res.g.resize(total);
    for (std::size_t k = 0; k < total; ++k) res.g[k] = g_comp[static_cast<std::size_t>(comp_of[k])];
    if (res.duality_gap > 1e-6)
        throw ToleranceFailure("bounded-Lipschitz ascent did not converge", res.duality_gap);
    return res;
}

std::string BlResult::to_json_string() const {
    nlohmann::json j;
    j["value"] = value;
    j["duality_gap"] = duality_gap;
    j["iterations"] = iterations;
    j["g"] = g;
    return j.dump();
}

} // namespace shadowlab::metrics
