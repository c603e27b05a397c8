#pragma once

#include <vector>

#include "qmc/engine.hpp"

namespace qmc {

/// Smoothness degree alpha (1 or 2 supported) and projection weight gamma.
struct DiscrepancyParams {
    int alpha = 2;
    double gamma = 1.0;
};

struct DiscrepancyReport {
    double d2 = 0.0;
    double d2_scaled = 0.0;
    double scale_constant = 0.0;
    std::vector<double> per_order; // D^2_j for j = 1..s when requested
};

/// Bernoulli polynomial B_i(y), i = 0..4.
double bernoulli_poly(int i, double y);

/// Squared discrepancy with smoothness weights: the per-dimension kernel
/// factor carries gamma^(2k) on the B_k B_k terms and gamma^(2 alpha) on
/// the B_(2 alpha) term. O(N^2 s) pair sum.
DiscrepancyReport squared_discrepancy(const PointBatch& batch, const DiscrepancyParams& params);

/// Squared discrepancy with a single projection-order weight: per-dimension
/// factor 1 + gamma * w(x,y), where w is the alpha-kernel at unit weight.
/// Coincides with squared_discrepancy at gamma = 1; as a function of gamma
/// it is the polynomial sum_j gamma^j D^2_j.
double squared_discrepancy_order_weighted(const PointBatch& batch, int alpha, double gamma);

/// Dimension constant c(s) with E[D^2] = c(s)/N for i.i.d. uniform points,
/// so the scaled discrepancy d2/c has root mean square N^(-1/2).
double scale_constant(int s, const DiscrepancyParams& params);

/// Coefficients (D^2_1 .. D^2_s) of D^2(P, gamma) = sum_j gamma^j D^2_j,
/// recovered by Newton divided differences through gamma nodes k/s,
/// k = 0..s. Throws ill_conditioned when the reconstruction residual at a
/// probe gamma exceeds 1e-6 relative.
std::vector<double> projection_decomposition(const PointBatch& batch, int alpha);

} // namespace qmc
