#include <doctest.h>

#include <cmath>
#include <vector>

#include "qmc/discrepancy.hpp"
#include "qmc/engine.hpp"
#include "qmc/kernels.hpp"

using namespace qmc;

namespace {

// Literal transcription of the squared-discrepancy double sum, used as an
// oracle for the kernel implementation. Smoothness weights gamma^2k on the
// B_k B_k terms and -(-(gamma^2))^alpha/(2 alpha)! on the closing term.
double brute_force_d2(const PointBatch& p, int alpha, double gamma) {
    const double n = double(p.n);
    const double g2 = gamma * gamma;
    double factorial2a = 1.0;
    for (int i = 2; i <= 2 * alpha; ++i) factorial2a *= i;
    const double closing = -std::pow(-g2, alpha) / factorial2a;

    double sum = 0.0;
    for (std::size_t i = 0; i < p.n; ++i)
        for (std::size_t j = 0; j < p.n; ++j) {
            double prod = 1.0;
            for (int r = 0; r < p.s; ++r) {
                double frac = p.at(i, r) - p.at(j, r);
                if (frac < 0.0) frac += 1.0;
                double term = closing * bernoulli_poly(2 * alpha, frac);
                double kfac = 1.0;
                for (int k = 0; k <= alpha; ++k) {
                    if (k > 0) kfac *= k;
                    term += std::pow(g2, k) / (kfac * kfac) * bernoulli_poly(k, p.at(i, r)) *
                            bernoulli_poly(k, p.at(j, r));
                }
                prod *= term;
            }
            sum += prod;
        }
    return sum / (n * n) - 1.0;
}

PointBatch batch_from(const std::vector<std::vector<double>>& rows) {
    PointBatch p;
    p.n = rows.size();
    p.s = static_cast<int>(rows[0].size());
    for (const auto& row : rows) p.pts.insert(p.pts.end(), row.begin(), row.end());
    return p;
}

} // namespace

TEST_CASE("bernoulli polynomial values") {
    CHECK(bernoulli_poly(0, 0.3) == 1.0);
    CHECK(bernoulli_poly(2, 0.0) == doctest::Approx(1.0 / 6.0));
    CHECK(bernoulli_poly(1, 0.5) == 0.0);
    CHECK(bernoulli_poly(4, 0.0) == doctest::Approx(-1.0 / 30.0));
    CHECK(bernoulli_poly(3, 0.5) == doctest::Approx(0.0));
    CHECK_THROWS_AS(bernoulli_poly(5, 0.1), Error);
}

TEST_CASE("single point at the origin") {
    const PointBatch p = batch_from({{0.0}});
    const DiscrepancyReport r = squared_discrepancy(p, {2, 1.0});
    CHECK(r.d2 == doctest::Approx(0.25 + 1.0 / 144.0 + 1.0 / 720.0).epsilon(1e-12));
}

TEST_CASE("duplicating every point leaves the discrepancy unchanged") {
    const PointBatch once = batch_from({{0.2, 0.7}, {0.9, 0.4}});
    const PointBatch twice = batch_from({{0.2, 0.7}, {0.9, 0.4}, {0.2, 0.7}, {0.9, 0.4}});
    const DiscrepancyParams params{2, 1.0};
    CHECK(squared_discrepancy(once, params).d2 ==
          doctest::Approx(squared_discrepancy(twice, params).d2).epsilon(1e-12));
}

TEST_CASE("kernel path matches the brute-force double loop") {
    for (int s : {1, 2, 5}) {
        const PointBatch p = mc_sample(64, s, RngStream(500 + static_cast<std::uint64_t>(s)));
        for (int alpha : {1, 2}) {
            for (double gamma : {1.0, 0.5, 2.0}) {
                const DiscrepancyReport r = squared_discrepancy(p, {alpha, gamma});
                const double oracle = brute_force_d2(p, alpha, gamma);
                CHECK(r.d2 == doctest::Approx(oracle).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("order-weighted form equals the smoothness form at gamma 1") {
    // two independent code routes through different coefficient sets
    for (int s : {1, 3}) {
        const PointBatch p = mc_sample(48, s, RngStream(600 + static_cast<std::uint64_t>(s)));
        for (int alpha : {1, 2}) {
            CHECK(squared_discrepancy_order_weighted(p, alpha, 1.0) ==
                  doctest::Approx(squared_discrepancy(p, {alpha, 1.0}).d2).epsilon(1e-12));
        }
    }
}

TEST_CASE("discrepancy is invariant under reordering and coordinate permutation") {
    const PointBatch p = mc_sample(32, 3, RngStream(911));
    PointBatch reordered = p;
    for (std::size_t i = 0; i < p.n; ++i)
        for (int j = 0; j < p.s; ++j) reordered.at(p.n - 1 - i, j) = p.at(i, j);
    PointBatch permuted = p;
    for (std::size_t i = 0; i < p.n; ++i) {
        permuted.at(i, 0) = p.at(i, 2);
        permuted.at(i, 2) = p.at(i, 0);
    }
    const DiscrepancyParams params{2, 1.0};
    const double base = squared_discrepancy(p, params).d2;
    CHECK(squared_discrepancy(reordered, params).d2 == doctest::Approx(base).epsilon(1e-13));
    CHECK(squared_discrepancy(permuted, params).d2 == doctest::Approx(base).epsilon(1e-13));
    CHECK(base >= -1e-9);
}

TEST_CASE("scale constant values and the MC expectation") {
    CHECK(scale_constant(1, {2, 1.0}) == doctest::Approx(1.0 / 12 + 1.0 / 720 + 1.0 / 720).epsilon(1e-14));
    const double per_dim = 1.0 + 1.0 / 12 + 1.0 / 720 + 1.0 / 720;
    CHECK(scale_constant(2, {2, 1.0}) == doctest::Approx(per_dim * per_dim - 1.0).epsilon(1e-14));
    CHECK(scale_constant(1, {1, 1.0}) == doctest::Approx(1.0 / 6.0).epsilon(1e-14));

    // Monte Carlo: mean of N * D^2 approaches c(s)
    for (int s : {1, 2}) {
        const DiscrepancyParams params{2, 1.0};
        const double c = scale_constant(s, params);
        const std::size_t n = 32;
        double mean = 0.0;
        const int reps = 2000;
        for (int rep = 0; rep < reps; ++rep) {
            const PointBatch p = mc_sample(n, s, RngStream(3000 + static_cast<std::uint64_t>(rep)));
            mean += double(n) * squared_discrepancy(p, params).d2;
        }
        mean /= reps;
        CHECK(mean == doctest::Approx(c).epsilon(0.05));
    }
}

TEST_CASE("scaled RMS discrepancy of random points approaches 1/sqrt(n)") {
    const DiscrepancyParams params{2, 1.0};
    for (int s : {2, 5}) {
        for (std::size_t n : {16u, 128u}) {
            double mean_scaled = 0.0;
            const int reps = 500;
            for (int rep = 0; rep < reps; ++rep) {
                const PointBatch p =
                    mc_sample(n, s, RngStream(7000 + static_cast<std::uint64_t>(rep) * 13 + n));
                mean_scaled += squared_discrepancy(p, params).d2_scaled;
            }
            const double rms = std::sqrt(mean_scaled / reps);
            CHECK(rms == doctest::Approx(1.0 / std::sqrt(double(n))).epsilon(0.10));
        }
    }
}

TEST_CASE("projection decomposition") {
    // s = 1: the single coefficient is the discrepancy at gamma = 1
    const PointBatch one = mc_sample(20, 1, RngStream(41));
    const std::vector<double> d1 = projection_decomposition(one, 2);
    CHECK(d1.size() == 1);
    CHECK(d1[0] == doctest::Approx(squared_discrepancy_order_weighted(one, 2, 1.0)).epsilon(1e-10));

    // reconstruction at a held-out gamma
    const PointBatch p = mc_sample(40, 3, RngStream(42));
    const std::vector<double> coeff = projection_decomposition(p, 2);
    CHECK(coeff.size() == 3);
    const double gamma = 0.7;
    double recon = 0.0, g = 1.0;
    for (double c : coeff) {
        g *= gamma;
        recon += g * c;
    }
    CHECK(recon == doctest::Approx(squared_discrepancy_order_weighted(p, 2, gamma)).epsilon(1e-8));
}

TEST_CASE("stratified marginals reduce the order-1 component") {
    // a 1-d tensor grid versus random points at the same size
    const std::size_t n = 64;
    PointBatch grid;
    grid.n = n;
    grid.s = 1;
    for (std::size_t i = 0; i < n; ++i) grid.pts.push_back((double(i) + 0.5) / double(n));
    const PointBatch random = mc_sample(n, 1, RngStream(90));
    const double grid_d1 = projection_decomposition(grid, 2)[0];
    const double mc_d1 = projection_decomposition(random, 2)[0];
    CHECK(grid_d1 < mc_d1);
}

TEST_CASE("input validation") {
    const PointBatch p = batch_from({{0.5}});
    CHECK_THROWS_AS(squared_discrepancy(p, {3, 1.0}), Error);
    PointBatch bad = p;
    bad.pts[0] = 1.0;
    CHECK_THROWS_AS(squared_discrepancy(bad, {2, 1.0}), Error);
}
