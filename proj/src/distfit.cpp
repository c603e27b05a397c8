#include "qmc/distfit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "qmc/error.hpp"

namespace qmc {

double MixtureModel::mean() const {
    return std::accumulate(betas.begin(), betas.end(), 0.0) + c;
}

double MixtureModel::variance() const {
    double v = 0.0;
    for (double b : betas) v += b * b;
    return 2.0 * v;
}

namespace {

std::vector<double> sorted_betas(const MixtureModel& model) {
    std::vector<double> b = model.betas;
    std::sort(b.begin(), b.end(), std::greater<>());
    return b;
}

// W values from pre-drawn squared normals laid out draw-major:
// z2[l * n + v] is the v-th term of draw l. Betas are canonicalized
// (sorted non-increasing) so the loss is permutation invariant.
std::vector<double> mixture_from_squares(const MixtureModel& model, const std::vector<double>& z2,
                                         std::size_t count) {
    const std::vector<double> betas = sorted_betas(model);
    const std::size_t n = betas.size();
    std::vector<double> w(count);
    for (std::size_t l = 0; l < count; ++l) {
        double v = model.c;
        for (std::size_t k = 0; k < n; ++k) v += betas[k] * z2[l * n + k];
        w[l] = v;
    }
    std::sort(w.begin(), w.end());
    return w;
}

std::vector<double> draw_squares(std::size_t count, std::size_t n, RngStream rng) {
    std::vector<double> z2(count * n);
    for (auto& v : z2) {
        const double z = rng.next_normal();
        v = z * z;
    }
    return z2;
}

double loss_from_sample(const std::vector<double>& w_sorted,
                        const std::vector<double>& empirical_sorted, const QuantileIndices& qi) {
    double loss = 0.0;
    for (std::size_t i = 0; i < empirical_sorted.size(); ++i) {
        const double wq = std::max(w_sorted[qi.k[i] - 1], 1e-300);
        const double gap = std::log(empirical_sorted[i]) - std::log(wq);
        loss += gap * gap;
    }
    return loss;
}

} // namespace

std::vector<double> sample_mixture(const MixtureModel& model, std::size_t count, RngStream rng) {
    if (count < 1) fail(errc::invalid_argument, "sample count must be positive");
    for (double b : model.betas)
        if (b < 0.0) fail(errc::invalid_argument, "mixture weights must be non-negative");
    if (model.c < 0.0) fail(errc::invalid_argument, "mixture tail constant must be non-negative");
    const std::vector<double> z2 = draw_squares(count, model.betas.size(), rng.substream("mixture"));
    return mixture_from_squares(model, z2, count);
}

QuantileIndices quantile_indices(int M, int Lsamp) {
    if (M < 1) fail(errc::invalid_argument, "M must be positive");
    if (Lsamp % M != 0 || (Lsamp / M) % 2 == 0)
        fail(errc::not_odd_multiple,
             "L = " + std::to_string(Lsamp) + " must be an odd multiple of M = " + std::to_string(M));
    const std::size_t a = static_cast<std::size_t>(Lsamp / M) / 2; // L = (2a+1) M
    QuantileIndices qi;
    qi.p.resize(static_cast<std::size_t>(M));
    qi.k.resize(static_cast<std::size_t>(M));
    for (int i = 1; i <= M; ++i) {
        qi.p[i - 1] = (2.0 * i - 1.0) / (2.0 * M);
        qi.k[i - 1] = static_cast<std::size_t>(Lsamp / M) * static_cast<std::size_t>(i) - a;
    }
    return qi;
}

double fit_loss(const MixtureModel& model, const std::vector<double>& empirical_sorted,
                const QuantileFitConfig& config) {
    if (static_cast<int>(empirical_sorted.size()) != config.M)
        fail(errc::invalid_argument, "empirical sample size must equal M");
    for (double z : empirical_sorted)
        if (!(z > 0.0)) fail(errc::non_positive_sample, "log loss needs positive samples");
    const QuantileIndices qi = quantile_indices(config.M, config.Lsamp);
    const std::vector<double> w =
        sample_mixture(model, static_cast<std::size_t>(config.Lsamp), RngStream(config.seed));
    return loss_from_sample(w, empirical_sorted, qi);
}

FitResult fit(std::vector<double> empirical, const QuantileFitConfig& config) {
    if (static_cast<int>(empirical.size()) != config.M)
        fail(errc::invalid_argument, "empirical sample size must equal M");
    if (config.M < 10) fail(errc::invalid_argument, "fit needs M >= 10");
    if (config.n < 0) fail(errc::invalid_argument, "n must be non-negative");
    std::sort(empirical.begin(), empirical.end());
    if (!(empirical.front() > 0.0))
        fail(errc::non_positive_sample, "squared discrepancies must be positive for the log loss");

    const QuantileIndices qi = quantile_indices(config.M, config.Lsamp);
    const std::size_t n = static_cast<std::size_t>(config.n);
    const std::size_t L = static_cast<std::size_t>(config.Lsamp);
    // Common random numbers: one normal draw per (sample, term), reused by
    // every loss evaluation so the surface is deterministic.
    const std::vector<double> z2 = draw_squares(L, n, RngStream(config.seed).substream("mixture"));

    const double mean = std::accumulate(empirical.begin(), empirical.end(), 0.0) / config.M;
    double var = 0.0;
    for (double z : empirical) var += (z - mean) * (z - mean);
    var /= std::max(1, config.M - 1);

    // Geometric-decay start: beta_1 = sqrt(var / 2n), halved per term.
    MixtureModel init;
    init.c = std::max(empirical.front() * 0.9, 1e-12 * std::max(mean, 1e-30));
    const double beta1 = n > 0 ? std::max(std::sqrt(var / (2.0 * double(n))), 1e-6 * std::max(mean, 1e-30))
                               : 0.0;
    for (std::size_t k = 0; k < n; ++k) init.betas.push_back(beta1 * std::pow(0.5, double(k)));

    auto decode = [&](const std::vector<double>& x) {
        MixtureModel m;
        for (std::size_t k = 0; k < n; ++k) m.betas.push_back(std::exp(x[k]));
        m.c = std::exp(x[n]);
        return m;
    };
    auto objective = [&](const std::vector<double>& x) {
        const MixtureModel m = decode(x);
        return loss_from_sample(mixture_from_squares(m, z2, L), empirical, qi);
    };

    std::vector<double> x0;
    for (double b : init.betas) x0.push_back(std::log(b));
    x0.push_back(std::log(init.c));

    const double initial_loss = objective(x0);
    if (!std::isfinite(initial_loss)) fail(errc::fit_diverged, "loss not finite at initialization");

    const SimplexResult sr = simplex_minimize(objective, x0, config.xtol, config.ftol, config.max_iter);
    if (!std::isfinite(sr.fx)) fail(errc::fit_diverged, "loss diverged during optimization");

    FitResult result;
    result.model = decode(sr.x);
    std::sort(result.model.betas.begin(), result.model.betas.end(), std::greater<>());
    result.loss = sr.fx;
    result.initial_loss = initial_loss;
    result.iterations = sr.iterations;
    result.converged = sr.converged;
    return result;
}

SimplexResult simplex_minimize(const std::function<double(const std::vector<double>&)>& f,
                               std::vector<double> x0, double xtol, double ftol, long max_iter) {
    const std::size_t dim = x0.size();
    if (dim == 0) fail(errc::invalid_argument, "simplex needs at least one coordinate");
    const double f0 = f(x0);
    if (!std::isfinite(f0)) fail(errc::invalid_argument, "objective not finite at the start point");

    std::vector<std::vector<double>> pts;
    std::vector<double> vals;
    long iter = 0;

    auto rebuild = [&](const std::vector<double>& center, double scale) {
        pts.assign(1, center);
        vals.assign(1, f(center));
        for (std::size_t d = 0; d < dim; ++d) {
            std::vector<double> p = center;
            p[d] += scale * (std::abs(p[d]) > 1.0 ? std::abs(p[d]) : 1.0);
            pts.push_back(p);
            vals.push_back(f(p));
        }
    };

    auto order = [&] {
        std::vector<std::size_t> idx(pts.size());
        std::iota(idx.begin(), idx.end(), 0u);
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
        std::vector<std::vector<double>> p2;
        std::vector<double> v2;
        for (std::size_t i : idx) {
            p2.push_back(std::move(pts[i]));
            v2.push_back(vals[i]);
        }
        pts = std::move(p2);
        vals = std::move(v2);
    };

    auto small = [&] {
        double spread = 0.0, diam = 0.0;
        for (std::size_t i = 1; i < pts.size(); ++i) {
            spread = std::max(spread, std::abs(vals[i] - vals[0]));
            for (std::size_t d = 0; d < dim; ++d)
                diam = std::max(diam, std::abs(pts[i][d] - pts[0][d]));
        }
        return diam <= xtol * (1.0 + std::abs(pts[0][0])) && spread <= ftol * (1.0 + std::abs(vals[0]));
    };

    bool converged = false;
    double restart_scale = 0.25;
    std::vector<double> best_x = x0;
    double best_f = f0;

    for (int restart = 0; restart < 4; ++restart) {
        rebuild(best_x, restart_scale);
        while (iter < max_iter) {
            ++iter;
            order();
            if (vals[0] < best_f) {
                best_f = vals[0];
                best_x = pts[0];
            }
            if (small()) {
                converged = true;
                break;
            }
            // Centroid of all but the worst.
            std::vector<double> centroid(dim, 0.0);
            for (std::size_t i = 0; i + 1 < pts.size(); ++i)
                for (std::size_t d = 0; d < dim; ++d) centroid[d] += pts[i][d];
            for (double& c : centroid) c /= double(dim);

            auto blend = [&](double w) {
                std::vector<double> p(dim);
                for (std::size_t d = 0; d < dim; ++d)
                    p[d] = centroid[d] + w * (pts.back()[d] - centroid[d]);
                return p;
            };

            const std::vector<double> refl = blend(-1.0);
            const double f_refl = f(refl);
            if (f_refl < vals[0]) {
                const std::vector<double> expd = blend(-2.0);
                const double f_expd = f(expd);
                if (f_expd < f_refl) {
                    pts.back() = expd;
                    vals.back() = f_expd;
                } else {
                    pts.back() = refl;
                    vals.back() = f_refl;
                }
                continue;
            }
            if (f_refl < vals[vals.size() - 2]) {
                pts.back() = refl;
                vals.back() = f_refl;
                continue;
            }
            const std::vector<double> contr = blend(f_refl < vals.back() ? -0.5 : 0.5);
            const double f_contr = f(contr);
            if (f_contr < std::min(f_refl, vals.back())) {
                pts.back() = contr;
                vals.back() = f_contr;
                continue;
            }
            // Shrink toward the best point.
            for (std::size_t i = 1; i < pts.size(); ++i) {
                for (std::size_t d = 0; d < dim; ++d)
                    pts[i][d] = pts[0][d] + 0.5 * (pts[i][d] - pts[0][d]);
                vals[i] = f(pts[i]);
            }
        }
        if (iter >= max_iter) break;
        restart_scale *= 0.1;
    }

    order();
    if (vals[0] < best_f) {
        best_f = vals[0];
        best_x = pts[0];
    }
    return SimplexResult{best_x, best_f, iter, converged};
}

} // namespace qmc
