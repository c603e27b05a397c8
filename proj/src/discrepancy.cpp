#include "qmc/discrepancy.hpp"

#include <algorithm>
#include <cmath>

#include "qmc/kernels.hpp"

namespace qmc {

double bernoulli_poly(int i, double y) {
    switch (i) {
        case 0: return 1.0;
        case 1: return y - 0.5;
        case 2: return (y - 1.0) * y + 1.0 / 6.0;
        case 3: return ((y - 1.5) * y + 0.5) * y;
        case 4: return (((y - 2.0) * y + 1.0) * y) * y - 1.0 / 30.0;
        default: fail(errc::unsupported_degree, "bernoulli_poly supports degrees 0..4");
    }
}

namespace {

void check_batch(const PointBatch& batch, int alpha) {
    if (batch.n < 1) fail(errc::invalid_argument, "discrepancy needs at least one point");
    if (alpha != 1 && alpha != 2)
        fail(errc::unsupported_degree, "alpha " + std::to_string(alpha) + " not supported (use 1 or 2)");
    for (double v : batch.pts)
        if (!(v >= 0.0 && v < 1.0)) fail(errc::domain_error, "coordinates must lie in [0,1)");
}

// Dimension-major coordinate copies plus their B1/B2 images.
struct KernelData {
    std::vector<std::vector<double>> y, b1, b2;
    std::vector<const double*> yp, b1p, b2p;
    kernels::Columns cols;
};

KernelData prepare(const PointBatch& batch, int alpha) {
    const std::size_t n = batch.n;
    const int s = batch.s;
    KernelData d;
    d.y.assign(s, std::vector<double>(n));
    d.b1.assign(s, std::vector<double>(n));
    if (alpha == 2) d.b2.assign(s, std::vector<double>(n));
    for (int r = 0; r < s; ++r)
        for (std::size_t i = 0; i < n; ++i) {
            const double v = batch.at(i, r);
            d.y[r][i] = v;
            d.b1[r][i] = v - 0.5;
            if (alpha == 2) d.b2[r][i] = (v - 1.0) * v + 1.0 / 6.0;
        }
    for (int r = 0; r < s; ++r) {
        d.yp.push_back(d.y[r].data());
        d.b1p.push_back(d.b1[r].data());
        if (alpha == 2) d.b2p.push_back(d.b2[r].data());
    }
    d.cols = kernels::Columns{d.yp.data(), d.b1p.data(), alpha == 2 ? d.b2p.data() : nullptr, s, n};
    return d;
}

kernels::PairCoeffs smoothness_coeffs(int alpha, double gamma) {
    const double g2 = gamma * gamma;
    if (alpha == 1) return {1, g2, 0.0, g2 / 2.0};
    return {2, g2, g2 * g2 / 4.0, -g2 * g2 / 24.0};
}

kernels::PairCoeffs order_weight_coeffs(int alpha, double gamma) {
    if (alpha == 1) return {1, gamma, 0.0, gamma / 2.0};
    return {2, gamma, gamma / 4.0, -gamma / 24.0};
}

double pair_mean_minus_one(const PointBatch& batch, const kernels::PairCoeffs& coeffs, int alpha) {
    const KernelData data = prepare(batch, alpha);
    const double sum = kernels::active_backend().pair_sum(data.cols, coeffs);
    const double n = double(batch.n);
    return sum / (n * n) - 1.0;
}

} // namespace

DiscrepancyReport squared_discrepancy(const PointBatch& batch, const DiscrepancyParams& params) {
    check_batch(batch, params.alpha);
    DiscrepancyReport report;
    report.d2 = pair_mean_minus_one(batch, smoothness_coeffs(params.alpha, params.gamma), params.alpha);
    report.scale_constant = scale_constant(batch.s, params);
    report.d2_scaled = report.d2 / report.scale_constant;
    return report;
}

double squared_discrepancy_order_weighted(const PointBatch& batch, int alpha, double gamma) {
    check_batch(batch, alpha);
    return pair_mean_minus_one(batch, order_weight_coeffs(alpha, gamma), alpha);
}

double scale_constant(int s, const DiscrepancyParams& params) {
    if (params.alpha != 1 && params.alpha != 2)
        fail(errc::unsupported_degree, "alpha must be 1 or 2");
    if (!(params.gamma > 0.0)) fail(errc::invalid_argument, "gamma must be positive");
    const double g2 = params.gamma * params.gamma;
    // Per-coordinate diagonal kernel integral: int_0^1 F(y,y) dy.
    // int B1^2 = 1/12, int B2^2 = 1/180, B2(0) = 1/6, B4(0) = -1/30.
    double diag;
    if (params.alpha == 1)
        diag = 1.0 + g2 / 12.0 + (g2 / 2.0) * (1.0 / 6.0);
    else
        diag = 1.0 + g2 / 12.0 + (g2 * g2 / 4.0) * (1.0 / 180.0) + (g2 * g2 / 24.0) * (1.0 / 30.0);
    return std::pow(diag, s) - 1.0;
}

std::vector<double> projection_decomposition(const PointBatch& batch, int alpha) {
    check_batch(batch, alpha);
    const int s = batch.s;

    // Nodes 0, 1/s, ..., 1 with the exact root at gamma = 0. Newton's
    // divided differences, then expansion to monomial coefficients.
    std::vector<double> nodes(static_cast<std::size_t>(s) + 1);
    std::vector<double> diffs(static_cast<std::size_t>(s) + 1);
    for (int k = 0; k <= s; ++k) {
        nodes[k] = double(k) / double(s);
        diffs[k] = k == 0 ? 0.0 : squared_discrepancy_order_weighted(batch, alpha, nodes[k]);
    }
    for (int level = 1; level <= s; ++level)
        for (int k = s; k >= level; --k)
            diffs[k] = (diffs[k] - diffs[k - 1]) / (nodes[k] - nodes[k - level]);

    std::vector<double> poly{diffs[s]}; // Horner-style expansion of the Newton form

    for (int k = s - 1; k >= 0; --k) {
        std::vector<double> next(poly.size() + 1, 0.0);
        for (std::size_t d = 0; d < poly.size(); ++d) {
            next[d + 1] += poly[d];
            next[d] -= poly[d] * nodes[k];
        }
        next[0] += diffs[k];
        poly = std::move(next);
    }

    const double probe = 0.6180339887498949; // never a node k/s
    double recon = 0.0;
    for (std::size_t d = poly.size(); d-- > 0;) recon = recon * probe + poly[d];
    const double direct = squared_discrepancy_order_weighted(batch, alpha, probe);
    const double rel = std::abs(recon - direct) / std::max(std::abs(direct), 1e-300);
    if (rel > 1e-6)
        fail(errc::ill_conditioned,
             "projection decomposition residual " + std::to_string(rel) + " exceeds 1e-6");

    return std::vector<double>(poly.begin() + 1, poly.end()); // drop the ~0 constant term
}

} // namespace qmc
