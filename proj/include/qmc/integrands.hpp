#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qmc/engine.hpp"
#include "qmc/normal.hpp"

namespace qmc {

/// A test integrand on [0,1)^s with an optional known integral.
struct Integrand {
    std::string name;
    int s = 0;
    std::function<double(const double*)> eval;
    std::optional<double> exact;
    std::string exact_note;

    double operator()(const double* y) const { return eval(y); }
};

/// prod_j (1 + a_j (y_j - 1/2)); the integral is exactly 1 for any a.
Integrand product_integrand(const std::vector<double>& a);

/// Coefficients a_j = 0.4 + j/10 used by the benchmark experiments.
std::vector<double> product_coefficients(int s);

/// pi^(s/2) cos( sqrt( sum_j InvPhi(y_j)^2 / 2 ) ); coordinates are clamped
/// to [eps, 1-eps] before the normal quantile. No closed-form value stored.
Integrand keister_integrand(int s);

enum class GenzKind { oscillatory, product_peak, corner_peak, gaussian, c0, discontinuous };

const char* to_string(GenzKind kind);
GenzKind genz_kind_from_string(const std::string& name);

struct GenzParams {
    std::vector<double> a; // difficulty vector
    std::vector<double> u; // shift vector
};

/// Random parameters with the customary difficulty normalization: u_j
/// uniform, a_j uniform rescaled so sum a_j hits the family constant.
GenzParams genz_default_params(GenzKind kind, int s, RngStream rng);

/// The six standard families with closed-form integrals (corner peak via
/// inclusion-exclusion, refused above s = 20).
Integrand genz_family(GenzKind kind, int s, const GenzParams& params);

/// Composition with the tent map: g(x) = f(|2x - 1|) componentwise. The
/// map is measure preserving, so the exact value carries over.
Integrand periodize(const Integrand& f);

struct BenchmarkRow {
    std::uint64_t n = 0;
    int reps = 0;
    double mean = 0.0;
    double rms_rel_err = 0.0; // vs exact value; absolute RMS spread when unknown
    double std_err = 0.0;
    std::vector<double> estimates;
};

/// Quadrature experiment: for each N, `reps` independent randomizations of
/// the point source, the sample-mean estimates, their RMS relative error
/// and standard error. `source(n, rep)` must return the rep-th randomized
/// point set of size n.
std::vector<BenchmarkRow> benchmark(const Integrand& f,
                                    const std::function<PointBatch(std::uint64_t, int)>& source,
                                    const std::vector<std::uint64_t>& n_list, int reps,
                                    int threads = 1);

/// max(-log10(relative error), 0): counted correct digits.
double digit_accuracy(double rel_err);

} // namespace qmc
