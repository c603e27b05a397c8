#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "qmc/rng.hpp"

namespace qmc {

/// Shifted chi-square mixture W = sum_v beta_v X_v + c with X_v ~ chi2(1).
/// betas are kept sorted non-increasing; all parameters non-negative.
struct MixtureModel {
    std::vector<double> betas;
    double c = 0.0;

    double mean() const; // sum betas + c
    double variance() const; // 2 sum betas^2
};

struct QuantileFitConfig {
    int M = 1000;      // empirical sample count
    int Lsamp = 11000; // model sample count, an odd multiple of M
    int n = 3;         // explicit mixture terms
    double xtol = 1e-9;
    double ftol = 1e-12;
    long max_iter = 20000;
    std::uint64_t seed = 1;
};

/// `count` draws of W, sorted ascending.
std::vector<double> sample_mixture(const MixtureModel& model, std::size_t count, RngStream rng);

/// Probability levels p_i = (2i-1)/(2M) and model order-statistic ranks
/// k_i = i L/M - (L-M)/(2M) (1-based, exact integers). L must be an odd
/// multiple of M.
struct QuantileIndices {
    std::vector<double> p;
    std::vector<std::size_t> k;
};
QuantileIndices quantile_indices(int M, int Lsamp);

/// Sum of squared log-quantile gaps between the empirical order statistics
/// and the model order statistics W_(k_i) of a fixed-seed model sample.
/// Deterministic in (model, empirical, config); empirical must be positive
/// and sorted ascending.
double fit_loss(const MixtureModel& model, const std::vector<double>& empirical_sorted,
                const QuantileFitConfig& config);

struct FitResult {
    MixtureModel model;
    double loss = 0.0;
    double initial_loss = 0.0;
    long iterations = 0;
    bool converged = false;
};

/// Quantile-matching fit of the mixture to empirical squared discrepancies.
/// Parameters are optimized in log space (positivity), with common random
/// numbers so the loss is a smooth deterministic surface.
FitResult fit(std::vector<double> empirical, const QuantileFitConfig& config);

struct SimplexResult {
    std::vector<double> x;
    double fx = 0.0;
    long iterations = 0;
    bool converged = false;
};

/// Nelder-Mead with restarts. Terminates when both the simplex diameter and
/// the function spread fall under the tolerances; flags non-convergence at
/// max_iter and returns the best point seen.
SimplexResult simplex_minimize(const std::function<double(const std::vector<double>&)>& f,
                               std::vector<double> x0, double xtol = 1e-9, double ftol = 1e-12,
                               long max_iter = 20000);

} // namespace qmc
