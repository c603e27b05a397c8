#include "qmc/integrands.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <thread>

namespace qmc {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

Integrand product_integrand(const std::vector<double>& a) {
    Integrand f;
    f.name = "product";
    f.s = static_cast<int>(a.size());
    f.exact = 1.0;
    f.exact_note = "product of centered linear factors integrates to 1";
    f.eval = [a](const double* y) {
        double v = 1.0;
        for (std::size_t j = 0; j < a.size(); ++j) v *= 1.0 + a[j] * (y[j] - 0.5);
        return v;
    };
    return f;
}

std::vector<double> product_coefficients(int s) {
    std::vector<double> a(static_cast<std::size_t>(s));
    for (int j = 1; j <= s; ++j) a[j - 1] = 0.4 + j / 10.0;
    return a;
}

Integrand keister_integrand(int s) {
    if (s < 1) fail(errc::invalid_argument, "keister integrand needs s >= 1");
    Integrand f;
    f.name = "keister";
    f.s = s;
    f.exact_note = "no closed form stored; compare against an independent quadrature";
    const double scale = std::pow(kPi, 0.5 * s);
    f.eval = [s, scale](const double* y) {
        double sum = 0.0;
        for (int j = 0; j < s; ++j) {
            const double p = std::clamp(y[j], 1e-15, 1.0 - 1e-15);
            const double z = inverse_normal_cdf(p);
            sum += z * z;
        }
        return scale * std::cos(std::sqrt(0.5 * sum));
    };
    return f;
}

const char* to_string(GenzKind kind) {
    switch (kind) {
        case GenzKind::oscillatory: return "oscillatory";
        case GenzKind::product_peak: return "product-peak";
        case GenzKind::corner_peak: return "corner-peak";
        case GenzKind::gaussian: return "gaussian";
        case GenzKind::c0: return "c0";
        case GenzKind::discontinuous: return "discontinuous";
    }
    return "?";
}

GenzKind genz_kind_from_string(const std::string& name) {
    if (name == "oscillatory") return GenzKind::oscillatory;
    if (name == "product-peak") return GenzKind::product_peak;
    if (name == "corner-peak") return GenzKind::corner_peak;
    if (name == "gaussian") return GenzKind::gaussian;
    if (name == "c0") return GenzKind::c0;
    if (name == "discontinuous") return GenzKind::discontinuous;
    fail(errc::invalid_argument, "unknown genz family '" + name + "'");
}

GenzParams genz_default_params(GenzKind kind, int s, RngStream rng) {
    // Difficulty targets for sum a_j, after Genz's testpack conventions.
    double target = 1.0;
    switch (kind) {
        case GenzKind::oscillatory: target = 9.0; break;
        case GenzKind::product_peak: target = 7.25; break;
        case GenzKind::corner_peak: target = 1.85; break;
        case GenzKind::gaussian: target = 7.03; break;
        case GenzKind::c0: target = 20.4; break;
        case GenzKind::discontinuous: target = 4.3; break;
    }
    GenzParams params;
    RngStream ra = rng.substream("genz-a"), ru = rng.substream("genz-u");
    double sum = 0.0;
    for (int j = 0; j < s; ++j) {
        params.a.push_back(0.01 + ra.next_double());
        sum += params.a.back();
        params.u.push_back(ru.next_double());
    }
    for (double& a : params.a) a *= target / sum;
    return params;
}

namespace {

Integrand make_oscillatory(int s, const GenzParams& p) {
    Integrand f;
    f.eval = [p](const double* y) {
        double arg = 2.0 * kPi * p.u[0];
        for (std::size_t j = 0; j < p.a.size(); ++j) arg += p.a[j] * y[j];
        return std::cos(arg);
    };
    // Re[ e^{2 pi i u1} prod (e^{i a_j} - 1)/(i a_j) ]
    std::complex<double> v = std::exp(std::complex<double>(0.0, 2.0 * kPi * p.u[0]));
    for (int j = 0; j < s; ++j) {
        const double a = p.a[static_cast<std::size_t>(j)];
        if (std::abs(a) < 1e-14)
            continue; // factor -> 1
        v *= (std::exp(std::complex<double>(0.0, a)) - 1.0) / std::complex<double>(0.0, a);
    }
    f.exact = v.real();
    return f;
}

Integrand make_product_peak(int s, const GenzParams& p) {
    Integrand f;
    f.eval = [p](const double* y) {
        double v = 1.0;
        for (std::size_t j = 0; j < p.a.size(); ++j) {
            const double d = y[j] - p.u[j];
            v *= 1.0 / (1.0 / (p.a[j] * p.a[j]) + d * d);
        }
        return v;
    };
    double exact = 1.0;
    for (int j = 0; j < s; ++j) {
        const double a = p.a[static_cast<std::size_t>(j)], u = p.u[static_cast<std::size_t>(j)];
        exact *= a * (std::atan(a * (1.0 - u)) + std::atan(a * u));
    }
    f.exact = exact;
    return f;
}

Integrand make_corner_peak(int s, const GenzParams& p) {
    Integrand f;
    f.eval = [p, s](const double* y) {
        double base = 1.0;
        for (std::size_t j = 0; j < p.a.size(); ++j) base += p.a[j] * y[j];
        return std::pow(base, -double(s) - 1.0);
    };
    if (s > 20)
        fail(errc::unsupported_dimension,
             "corner-peak exact value uses 2^s inclusion-exclusion; s > 20 unsupported");
    // 1/(s! prod a_j) sum_v (-1)^|v| / (1 + sum_{j in v} a_j)
    double factor = 1.0;
    for (int j = 1; j <= s; ++j) factor *= j;
    for (double a : p.a) factor *= a;
    double exact = 0.0;
    for (std::uint32_t mask = 0; mask < (1u << s); ++mask) {
        double denom = 1.0;
        int bits = 0;
        for (int j = 0; j < s; ++j)
            if (mask & (1u << j)) {
                denom += p.a[static_cast<std::size_t>(j)];
                ++bits;
            }
        exact += (bits % 2 == 0 ? 1.0 : -1.0) / denom;
    }
    f.exact = exact / factor;
    return f;
}

Integrand make_gaussian(int s, const GenzParams& p) {
    Integrand f;
    f.eval = [p](const double* y) {
        double e = 0.0;
        for (std::size_t j = 0; j < p.a.size(); ++j) {
            const double d = y[j] - p.u[j];
            e += p.a[j] * p.a[j] * d * d;
        }
        return std::exp(-e);
    };
    double exact = 1.0;
    for (int j = 0; j < s; ++j) {
        const double a = p.a[static_cast<std::size_t>(j)], u = p.u[static_cast<std::size_t>(j)];
        exact *= std::sqrt(kPi) / (2.0 * a) * (std::erf(a * (1.0 - u)) + std::erf(a * u));
    }
    f.exact = exact;
    return f;
}

Integrand make_c0(int s, const GenzParams& p) {
    Integrand f;
    f.eval = [p](const double* y) {
        double e = 0.0;
        for (std::size_t j = 0; j < p.a.size(); ++j) e += p.a[j] * std::abs(y[j] - p.u[j]);
        return std::exp(-e);
    };
    double exact = 1.0;
    for (int j = 0; j < s; ++j) {
        const double a = p.a[static_cast<std::size_t>(j)], u = p.u[static_cast<std::size_t>(j)];
        exact *= (2.0 - std::exp(-a * u) - std::exp(-a * (1.0 - u))) / a;
    }
    f.exact = exact;
    return f;
}

Integrand make_discontinuous(int s, const GenzParams& p) {
    Integrand f;
    const int cutoff_dims = std::min(s, 2);
    f.eval = [p, s, cutoff_dims](const double* y) {
        for (int j = 0; j < cutoff_dims; ++j)
            if (y[j] > p.u[static_cast<std::size_t>(j)]) return 0.0;
        double e = 0.0;
        for (int j = 0; j < s; ++j) e += p.a[static_cast<std::size_t>(j)] * y[j];
        return std::exp(e);
    };
    double exact = 1.0;
    for (int j = 0; j < s; ++j) {
        const double a = p.a[static_cast<std::size_t>(j)];
        const double top = j < cutoff_dims ? p.u[static_cast<std::size_t>(j)] : 1.0;
        exact *= (std::exp(a * top) - 1.0) / a;
    }
    f.exact = exact;
    return f;
}

} // namespace

Integrand genz_family(GenzKind kind, int s, const GenzParams& params) {
    if (s < 1) fail(errc::invalid_argument, "genz family needs s >= 1");
    if (params.a.size() != static_cast<std::size_t>(s) || params.u.size() != static_cast<std::size_t>(s))
        fail(errc::shape_mismatch, "genz parameters must have one a and one u per dimension");
    Integrand f;
    switch (kind) {
        case GenzKind::oscillatory: f = make_oscillatory(s, params); break;
        case GenzKind::product_peak: f = make_product_peak(s, params); break;
        case GenzKind::corner_peak: f = make_corner_peak(s, params); break;
        case GenzKind::gaussian: f = make_gaussian(s, params); break;
        case GenzKind::c0: f = make_c0(s, params); break;
        case GenzKind::discontinuous: f = make_discontinuous(s, params); break;
    }
    f.name = to_string(kind);
    f.s = s;
    return f;
}

Integrand periodize(const Integrand& f) {
    Integrand g = f;
    g.name = f.name + "-periodized";
    const auto inner = f.eval;
    const int s = f.s;
    g.eval = [inner, s](const double* y) {
        double folded[256];
        if (s > 256) fail(errc::unsupported_dimension, "periodize supports up to 256 dimensions");
        for (int j = 0; j < s; ++j) folded[j] = std::abs(2.0 * y[j] - 1.0);
        return inner(folded);
    };
    return g;
}

std::vector<BenchmarkRow> benchmark(const Integrand& f,
                                    const std::function<PointBatch(std::uint64_t, int)>& source,
                                    const std::vector<std::uint64_t>& n_list, int reps, int threads) {
    if (reps < 1) fail(errc::invalid_argument, "benchmark needs at least one replication");
    std::vector<BenchmarkRow> rows;
    for (std::uint64_t n : n_list) {
        BenchmarkRow row;
        row.n = n;
        row.reps = reps;
        row.estimates.assign(static_cast<std::size_t>(reps), 0.0);

        auto worker = [&](int first, int stride) {
            for (int rep = first; rep < reps; rep += stride) {
                const PointBatch batch = source(n, rep);
                if (batch.s != f.s) fail(errc::dimension_mismatch, "point source dimension != integrand");
                double sum = 0.0;
                for (std::size_t i = 0; i < batch.n; ++i) sum += f(batch.row(i));
                row.estimates[static_cast<std::size_t>(rep)] = sum / double(batch.n);
            }
        };
        const int pool = std::max(1, std::min(threads, reps));
        if (pool == 1) {
            worker(0, 1);
        } else {
            std::vector<std::thread> crew;
            for (int w = 0; w < pool; ++w) crew.emplace_back(worker, w, pool);
            for (auto& t : crew) t.join();
        }

        double mean = 0.0;
        for (double e : row.estimates) mean += e;
        mean /= reps;
        row.mean = mean;
        double spread = 0.0; // sample variance of the estimates
        for (double e : row.estimates) spread += (e - mean) * (e - mean);
        row.std_err = reps > 1 ? std::sqrt(spread / (reps - 1.0) / reps) : 0.0;

        if (f.exact) {
            double mse = 0.0;
            for (double e : row.estimates) mse += (e - *f.exact) * (e - *f.exact);
            row.rms_rel_err = std::sqrt(mse / reps) / std::abs(*f.exact);
        } else {
            row.rms_rel_err = reps > 1 ? std::sqrt(spread / (reps - 1.0)) : 0.0;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

double digit_accuracy(double rel_err) {
    if (rel_err <= 0.0) return 16.0; // all double digits correct
    return std::max(-std::log10(rel_err), 0.0);
}

} // namespace qmc
