#include "m2m/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "m2m/rng.hpp"

namespace m2m::analytic {

namespace {

struct GaussLegendre {
    std::vector<double> nodes;    // on (-1, 1)
    std::vector<double> weights;
};

// Newton iteration on Legendre roots; cached per order.
const GaussLegendre& gauss_legendre(int n) {
    static std::map<int, GaussLegendre> cache;
    static std::mutex mu;
    std::lock_guard lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    GaussLegendre gl;
    gl.nodes.resize(n);
    gl.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        gl.nodes[i] = -x;
        gl.nodes[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        gl.weights[i] = w;
        gl.weights[n - 1 - i] = w;
    }
    return cache.emplace(n, std::move(gl)).first->second;
}

int order_for_level(int base, int level) {
    return std::max(20, base - 12 * level);
}

struct DecodeCtx {
    std::span<const double> a;  // per-slot marginal rates (cell measure)
    double delta;
    double inv_delta;
    int base_order;
};

// IRC: Q_m(rho) = P( prod_{k=m..M} (1 + SIR_k) >= rho ),  SIR_k^delta ~ Exp(a_k).
double irc_q(const DecodeCtx& ctx, std::size_t m, double rho) {
    if (rho <= 1.0) return 1.0;
    const double cap = std::pow(rho - 1.0, ctx.delta);  // t_m beyond this decodes alone
    if (m + 1 == ctx.a.size()) return std::exp(-ctx.a[m] * cap);
    const auto& gl = gauss_legendre(order_for_level(ctx.base_order, static_cast<int>(m)));
    double result = std::exp(-ctx.a[m] * cap);
    const double half = 0.5 * cap;
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
        const double t = half * (gl.nodes[i] + 1.0);
        const double sir = std::pow(t, ctx.inv_delta);
        result += half * gl.weights[i] * ctx.a[m] * std::exp(-ctx.a[m] * t) *
                  irc_q(ctx, m + 1, rho / (1.0 + sir));
    }
    return result;
}

// RC: Q_m(tau) = P( sum_{k=m..M} SIR_k >= tau ).
double rc_q(const DecodeCtx& ctx, std::size_t m, double tau) {
    if (tau <= 0.0) return 1.0;
    const double cap = std::pow(tau, ctx.delta);
    if (m + 1 == ctx.a.size()) return std::exp(-ctx.a[m] * cap);
    const auto& gl = gauss_legendre(order_for_level(ctx.base_order, static_cast<int>(m)));
    double result = std::exp(-ctx.a[m] * cap);
    const double half = 0.5 * cap;
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
        const double t = half * (gl.nodes[i] + 1.0);
        const double sir = std::pow(t, ctx.inv_delta);
        result += half * gl.weights[i] * ctx.a[m] * std::exp(-ctx.a[m] * t) *
                  rc_q(ctx, m + 1, tau - sir);
    }
    return result;
}

// Marginal rates a_k for the m slot terms seen from point v (cell measure,
// no leading pi; see header).
void marginal_rates(Vec2 v, int m, const AnalyticParams& params,
                    std::span<const double> d_tilde_prefix, std::vector<double>& a) {
    const double coef = params.intensity * params.map_p * spectral_factor(params.alpha);
    a.resize(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k) {
        const double ex = (k == 0) ? 0.0 : d_tilde_prefix[static_cast<std::size_t>(k - 1)];
        a[static_cast<std::size_t>(k)] = coef * dist2(v, {ex, 0.0});
    }
}

double step_c(double area, double d_prev, const AnalyticParams& params) {
    return 0.5 * params.intensity * (1.0 - params.map_p) *
           (area + d_prev * std::sqrt(area));
}

double step_d(double area, double d_prev, double c) {
    // 1 - (1 - e^-c)/c, computed as (c + expm1(-c))/c to survive small c.
    const double factor = (c > 0.0) ? (c + std::expm1(-c)) / c : 0.0;
    return 0.5 * (std::sqrt(area) + d_prev) * factor;
}

}  // namespace

void AnalyticParams::validate() const {
    if (!(alpha > 2.0)) throw std::domain_error("AnalyticParams: alpha must be > 2");
    if (!(map_p > 0.0 && map_p < 1.0))
        throw std::invalid_argument("AnalyticParams: map_p must lie in (0,1)");
    if (!(intensity > 0.0)) throw std::invalid_argument("AnalyticParams: intensity must be > 0");
    if (!(rate > 0.0)) throw std::domain_error("AnalyticParams: rate must be > 0");
    if (diversity < 1) throw std::invalid_argument("AnalyticParams: diversity must be >= 1");
    if (scheme == Scheme::NC)
        throw std::invalid_argument("AnalyticParams: use IRC with M = 1 for the NC case");
}

double spectral_factor(double alpha) {
    if (!(alpha > 2.0)) throw std::domain_error("spectral_factor: alpha must be > 2");
    const double delta = 2.0 / alpha;
    return M_PI * delta / std::sin(M_PI * delta);
}

double w1_area(const AnalyticParams& params) {
    params.validate();
    const double delta = 2.0 / params.alpha;
    const double theta = std::exp2(params.rate) - 1.0;
    return M_PI / (params.intensity * params.map_p * spectral_factor(params.alpha) *
                   std::pow(theta, delta));
}

double success_probability(double r, const AnalyticParams& params) {
    params.validate();
    if (r < 0.0) throw std::invalid_argument("success_probability: r must be >= 0");
    const double delta = 2.0 / params.alpha;
    const double theta = std::exp2(params.rate) - 1.0;
    return std::exp(-M_PI * params.intensity * params.map_p * spectral_factor(params.alpha) *
                    std::pow(theta, delta) * r * r);
}

double decode_probability(Vec2 v, int m, const AnalyticParams& params,
                          std::span<const double> d_tilde_prefix) {
    params.validate();
    if (m < 1 || static_cast<std::size_t>(m - 1) > d_tilde_prefix.size())
        throw std::invalid_argument("decode_probability: need d_tilde prefix for indices < m");

    thread_local std::vector<double> a;
    marginal_rates(v, m, params, d_tilde_prefix, a);
    for (double ak : a)
        if (ak < 1e-14) return 1.0;  // on top of a transmitter

    DecodeCtx ctx{a, 2.0 / params.alpha, 0.5 * params.alpha, params.integration.quad_points};
    const double theta = std::exp2(params.rate) - 1.0;
    if (params.scheme == Scheme::RC) return rc_q(ctx, 0, theta);
    return irc_q(ctx, 0, std::exp2(params.rate));
}

double decode_probability_mc(Vec2 v, int m, const AnalyticParams& params,
                             std::span<const double> d_tilde_prefix,
                             int samples, std::uint64_t seed) {
    params.validate();
    std::vector<double> a;
    marginal_rates(v, m, params, d_tilde_prefix, a);
    const double inv_delta = 0.5 * params.alpha;
    const double theta = std::exp2(params.rate) - 1.0;
    const std::uint64_t key = rng::mix64(seed ^ 0x4d435045ull);

    long hits = 0;
    std::uint64_t counter = 0;
    for (int s = 0; s < samples; ++s) {
        bool ok;
        if (params.scheme == Scheme::RC) {
            double sum = 0.0;
            for (double ak : a)
                sum += (ak < 1e-14) ? kSirInfinite
                                    : std::pow(rng::exp_unit(key, counter++) / ak, inv_delta);
            ok = sum >= theta;
        } else {
            double mi = 0.0;
            for (double ak : a)
                mi += mutual_information((ak < 1e-14)
                                             ? kSirInfinite
                                             : std::pow(rng::exp_unit(key, counter++) / ak,
                                                        inv_delta));
            ok = mi >= params.rate;
        }
        if (ok) ++hits;
    }
    return static_cast<double>(hits) / samples;
}

double cell_area(int m, const AnalyticParams& params,
                 std::span<const double> d_tilde_prefix) {
    params.validate();
    if (m < 1 || static_cast<std::size_t>(m - 1) > d_tilde_prefix.size())
        throw std::invalid_argument("cell_area: need d_tilde prefix for indices < m");

    const double delta = 2.0 / params.alpha;
    const double theta = std::exp2(params.rate) - 1.0;
    const double coef = params.intensity * params.map_p * spectral_factor(params.alpha) *
                        std::pow(theta, delta);
    const double h_r = params.integration.radial_step_scale / std::sqrt(coef);
    const double h_th = params.integration.angular_step;
    const int n_ang = std::max(1, static_cast<int>(std::lround(M_PI / h_th)));
    const double span = (m >= 2) ? d_tilde_prefix[static_cast<std::size_t>(m - 2)] : 0.0;
    const double cx = 0.5 * span;
    const double r_max = params.integration.max_radial_extent / std::sqrt(coef) + span;

    double total = 0.0;
    int below = 0;
    for (int i = 0;; ++i) {
        const double r = (i + 0.5) * h_r;
        if (r > r_max) {
            std::ostringstream os;
            os << "cell_area: radial tail not below " << params.integration.tail_tol
               << " within extent " << r_max << " (m=" << m << ", R=" << params.rate
               << ", p=" << params.map_p << ", accumulated=" << total << ")";
            throw std::runtime_error(os.str());
        }
        double ring = 0.0;
        for (int j = 0; j < n_ang; ++j) {
            const double th = (j + 0.5) * h_th;
            const Vec2 v{cx + r * std::cos(th), r * std::sin(th)};
            ring += decode_probability(v, m, params, d_tilde_prefix);
        }
        ring *= 2.0 * r * h_r * h_th;  // mirror the lower half-plane
        total += ring;
        if (i >= 10 && ring < params.integration.tail_tol * h_r * total) {
            if (++below >= 2) break;
        } else {
            below = 0;
        }
    }
    return total;
}

AnalyticTable assemble_table(std::span<const double> areas, const AnalyticParams& params) {
    params.validate();
    if (areas.empty()) throw std::invalid_argument("assemble_table: no areas supplied");
    AnalyticTable table;
    double d_prev = 0.0;  // d~_0 = 0
    for (double area : areas) {
        if (!(area > 0.0)) throw std::invalid_argument("assemble_table: areas must be positive");
        const double c = step_c(area, d_prev, params);
        const double d = step_d(area, d_prev, c);
        table.cell_area.push_back(area);
        table.c.push_back(c);
        table.d_tilde.push_back(d);
        d_prev = d;
    }
    return table;
}

AnalyticTable expected_progress_approx(const AnalyticParams& params) {
    params.validate();
    AnalyticTable table;
    double d_prev = 0.0;
    for (int m = 1; m <= params.diversity; ++m) {
        const double area =
            (m == 1) ? w1_area(params) : cell_area(m, params, table.d_tilde);
        const double c = step_c(area, d_prev, params);
        const double d = step_d(area, d_prev, c);
        table.cell_area.push_back(area);
        table.c.push_back(c);
        table.d_tilde.push_back(d);
        d_prev = d;
    }
    return table;
}

}  // namespace m2m::analytic
