#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "m2m/geometry.hpp"
#include "m2m/netmodel.hpp"

// Closed forms and the recursive expected-progress approximation: G(alpha),
// |W_1|, the link success probability, decoding-cell areas |W_M| by numerical
// integration, and the d~_M recursion.
//
// Two conventions coexist deliberately. The link success probability carries
// the standard stable-law coefficient pi*lam*p*G(alpha) and is what the
// simulator reproduces. The decoding-cell machinery drops that leading pi so
// that the closed form |W_1| = pi / (lam p G (2^R-1)^delta) and everything
// recursively built on it come out self-consistent; the cell integrand,
// |W_1|, the c_M means and d~_M all share that measure.

namespace m2m::analytic {

struct IntegrationControls {
    double radial_step_scale = 0.05;   // h_r = scale / sqrt(lam p G theta^delta)
    double angular_step = M_PI / 90.0;
    double tail_tol = 1e-3;            // stop when a ring adds < tol of the mass
    double max_radial_extent = 40.0;   // in units of 1/sqrt(coef); error beyond
    int quad_points = 48;              // Gauss-Legendre order, first nesting level
    int mc_samples = 10000;            // per-point samples for the MC estimator
};

struct AnalyticParams {
    double intensity = 1.0;  // lambda
    double map_p = 0.3;      // p
    double alpha = 4.0;
    double rate = 3.0;       // R
    int diversity = 1;       // M
    Scheme scheme = Scheme::IRC;  // IRC or RC (NC == IRC with M = 1)
    IntegrationControls integration{};

    void validate() const;  // throws std::invalid_argument / std::domain_error
};

struct AnalyticTable {
    std::vector<double> d_tilde;    // d~_1 .. d~_M
    std::vector<double> cell_area;  // |W_1| .. |W_M|
    std::vector<double> c;          // c_1 .. c_M
};

// G(alpha) = pi*delta / sin(pi*delta), delta = 2/alpha. Domain error for
// alpha <= 2.
double spectral_factor(double alpha);

// |W_1| = pi / (lam p G(alpha) (2^R - 1)^delta). Domain error for R <= 0.
double w1_area(const AnalyticParams& params);

// P(I_1 >= R) = exp(-pi lam p G(alpha) (2^R-1)^delta r^2).
double success_probability(double r, const AnalyticParams& params);

// Per-point decode probability P(sum_{k<=m} I_k >= R) with transmitters at
// eta_0 = origin, eta_k = (d~_k, 0), evaluated by nested quadrature over the
// exact per-slot SIR marginals (interference field redrawn independently per
// slot term).
double decode_probability(Vec2 v, int m, const AnalyticParams& params,
                          std::span<const double> d_tilde_prefix);

// Monte Carlo estimator of the same quantity, sampling the per-slot marginal
// law directly; kept as an independent cross-check of the quadrature.
double decode_probability_mc(Vec2 v, int m, const AnalyticParams& params,
                             std::span<const double> d_tilde_prefix,
                             int samples, std::uint64_t seed);

// |W_m|: integrates decode_probability over the plane on a polar grid
// centered mid-span of the transmitter row. Throws std::runtime_error if the
// radial tail fails to fall below tail_tol within max_radial_extent.
double cell_area(int m, const AnalyticParams& params,
                 std::span<const double> d_tilde_prefix);

// Theorem recursion only: builds d~ and c from externally supplied areas.
AnalyticTable assemble_table(std::span<const double> areas, const AnalyticParams& params);

// Full pipeline: closed-form |W_1|, then alternate cell_area / recursion up
// to M.
AnalyticTable expected_progress_approx(const AnalyticParams& params);

}  // namespace m2m::analytic
